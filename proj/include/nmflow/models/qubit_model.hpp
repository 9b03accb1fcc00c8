#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nmflow/core/bloch.hpp"
#include "nmflow/core/generator.hpp"
#include "nmflow/models/dephasing.hpp"
#include "nmflow/models/random_unitary.hpp"

namespace nmflow::models {

/// A qubit dynamical map t -> Phi_t in Bloch affine form, plus whatever
/// structure (generator, decoherence function) the model knows about itself.
class QubitModel {
 public:
  virtual ~QubitModel() = default;

  virtual std::string name() const = 0;
  virtual BlochAffine bloch_map(double t) const = 0;
  /// Maps on a nondecreasing grid; overridden where sharing work pays off.
  virtual std::vector<BlochAffine> bloch_maps(const std::vector<double>& times) const;
  QuantumMap map(double t) const { return bloch_map(t).to_map(); }

  /// Time-local generator, when the model has one.
  virtual std::optional<TimeLocalGenerator> generator() const { return std::nullopt; }
  /// True when the generator has a single dissipative channel.
  virtual bool single_channel() const { return false; }
  virtual const DecoherenceFunction* decoherence() const { return nullptr; }

  /// Characteristic time (finite-difference steps, RHP epsilon).
  virtual double time_scale() const = 0;
  /// Observation window used when the caller does not give one.
  virtual double default_horizon() const = 0;
};

/// rho_10 -> G rho_10; generator H = phi'/2 sz with phi' = Im(G'/G), channel sz
/// at rate gamma/2 with gamma = -Re(G'/G).
class PureDephasingModel final : public QubitModel {
 public:
  PureDephasingModel(std::string name, DecoherenceFunction g, double horizon);
  std::string name() const override { return name_; }
  BlochAffine bloch_map(double t) const override;
  std::optional<TimeLocalGenerator> generator() const override;
  bool single_channel() const override { return true; }
  const DecoherenceFunction* decoherence() const override { return &g_; }
  double time_scale() const override { return g_.time_scale; }
  double default_horizon() const override { return horizon_; }

 private:
  std::string name_;
  DecoherenceFunction g_;
  double horizon_;
};

/// rho_11 -> |G|^2 rho_11, rho_10 -> G rho_10; generator with sigma_minus at
/// rate -2 Re(G'/G) and Lamb shift H = -S/4 sz, S = -2 Im(G'/G).
class AmplitudeDampingModel final : public QubitModel {
 public:
  AmplitudeDampingModel(std::string name, DecoherenceFunction g, double horizon);
  std::string name() const override { return name_; }
  BlochAffine bloch_map(double t) const override;
  std::optional<TimeLocalGenerator> generator() const override;
  bool single_channel() const override { return true; }
  const DecoherenceFunction* decoherence() const override { return &g_; }
  double time_scale() const override { return g_.time_scale; }
  double default_horizon() const override { return horizon_; }

 private:
  std::string name_;
  DecoherenceFunction g_;
  double horizon_;
};

class RandomUnitaryModel final : public QubitModel {
 public:
  RandomUnitaryModel(std::string name, RandomUnitaryRates rates, double time_scale, double horizon);
  std::string name() const override { return name_; }
  BlochAffine bloch_map(double t) const override;
  std::vector<BlochAffine> bloch_maps(const std::vector<double>& times) const override;
  std::optional<TimeLocalGenerator> generator() const override;
  double time_scale() const override { return time_scale_; }
  double default_horizon() const override { return horizon_; }
  const RandomUnitaryRates& rates() const noexcept { return rates_; }

 private:
  std::string name_;
  RandomUnitaryRates rates_;
  double time_scale_;
  double horizon_;
};

}  // namespace nmflow::models
