#pragma once

#include <string>
#include <variant>
#include <vector>

namespace nmflow::models {

/// J(w) = alpha * wc^(1-s) * w^s * exp(-w / wc).
struct OhmicFamily {
  double coupling;  // alpha
  double exponent;  // s
  double cutoff;    // wc
};

/// J(w) = gamma0 lambda^2 / (2 pi [(w0 + detuning - w)^2 + lambda^2]).
struct Lorentzian {
  double gamma0;
  double width;  // lambda
  double detuning;
  double omega0;
};

/// Piecewise-linear J through the given samples, zero outside.
struct TabulatedDensity {
  std::vector<double> omega;
  std::vector<double> value;
};

class SpectralDensity {
 public:
  enum class Kind { ohmic_family, lorentzian, tabulated };

  static SpectralDensity ohmic(double coupling, double exponent, double cutoff);
  static SpectralDensity lorentzian(double gamma0, double width, double detuning, double omega0);
  static SpectralDensity tabulated(std::vector<double> omega, std::vector<double> value);

  Kind kind() const noexcept;
  double operator()(double omega) const;

  const OhmicFamily* ohmic_params() const noexcept { return std::get_if<OhmicFamily>(&params_); }
  const Lorentzian* lorentzian_params() const noexcept { return std::get_if<Lorentzian>(&params_); }
  const TabulatedDensity* tabulated_params() const noexcept {
    return std::get_if<TabulatedDensity>(&params_);
  }

  /// Frequency above which the contribution to dephasing integrals is negligible.
  double integration_limit() const;
  /// Characteristic frequency used to set time scales (cutoff, width, or grid span).
  double frequency_scale() const;

 private:
  explicit SpectralDensity(std::variant<OhmicFamily, Lorentzian, TabulatedDensity> p)
      : params_(std::move(p)) {}

  std::variant<OhmicFamily, Lorentzian, TabulatedDensity> params_;
};

}  // namespace nmflow::models
