#include "nmflow/models/qubit_model.hpp"

#include "nmflow/core/errors.hpp"
#include "nmflow/models/lossy_cavity.hpp"

namespace nmflow::models {
namespace {

Complex log_derivative(const DecoherenceFunction& g, double t) {
  const Complex v = g(t);
  if (std::abs(v) < 1e-12) throw ZeroCrossing("decoherence function vanishes", t);
  if (g.derivative) return g.derivative(t) / v;
  const double h = 1e-6 * g.time_scale;
  const Complex d = t >= h ? (g(t + h) - g(t - h)) / (2.0 * h)
                           : (-3.0 * v + 4.0 * g(t + h) - g(t + 2.0 * h)) / (2.0 * h);
  return d / v;
}

void check_horizon(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw InvalidArgument("model horizon must be positive");
}

}  // namespace

std::vector<BlochAffine> QubitModel::bloch_maps(const std::vector<double>& times) const {
  std::vector<BlochAffine> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(bloch_map(t));
  return out;
}

PureDephasingModel::PureDephasingModel(std::string name, DecoherenceFunction g, double horizon)
    : name_(std::move(name)), g_(std::move(g)), horizon_(horizon) {
  if (!g_.value) throw InvalidArgument("dephasing model needs a decoherence function");
  check_horizon(horizon_);
}

BlochAffine PureDephasingModel::bloch_map(double t) const { return pure_dephasing_bloch(g_(t)); }

std::optional<TimeLocalGenerator> PureDephasingModel::generator() const {
  auto g = g_;
  auto h = [g](double t) -> CMatrix { return 0.5 * log_derivative(g, t).imag() * pauli::z(); };
  DecayChannel c{pauli::z(), [g](double t) { return -0.5 * log_derivative(g, t).real(); }};
  return TimeLocalGenerator(2, h, {c});
}

AmplitudeDampingModel::AmplitudeDampingModel(std::string name, DecoherenceFunction g,
                                             double horizon)
    : name_(std::move(name)), g_(std::move(g)), horizon_(horizon) {
  if (!g_.value) throw InvalidArgument("amplitude-damping model needs a decoherence function");
  check_horizon(horizon_);
}

BlochAffine AmplitudeDampingModel::bloch_map(double t) const {
  return amplitude_damping_bloch(g_(t));
}

std::optional<TimeLocalGenerator> AmplitudeDampingModel::generator() const {
  auto g = g_;
  // S = -2 Im(G'/G), H = -S/4 sz.
  auto h = [g](double t) -> CMatrix { return 0.5 * log_derivative(g, t).imag() * pauli::z(); };
  DecayChannel c{pauli::lowering(), [g](double t) { return -2.0 * log_derivative(g, t).real(); }};
  return TimeLocalGenerator(2, h, {c});
}

RandomUnitaryModel::RandomUnitaryModel(std::string name, RandomUnitaryRates rates,
                                       double time_scale, double horizon)
    : name_(std::move(name)), rates_(std::move(rates)), time_scale_(time_scale), horizon_(horizon) {
  for (const auto& f : rates_.gamma)
    if (!f) throw InvalidArgument("random-unitary model needs three rate functions");
  if (!(time_scale_ > 0.0)) throw InvalidArgument("time scale must be positive");
  check_horizon(horizon_);
}

BlochAffine RandomUnitaryModel::bloch_map(double t) const {
  return random_unitary_bloch(integrated_rates(rates_, t));
}

std::vector<BlochAffine> RandomUnitaryModel::bloch_maps(const std::vector<double>& times) const {
  std::vector<BlochAffine> out;
  out.reserve(times.size());
  for (const auto& g : integrated_rates_on_grid(rates_, times)) out.push_back(random_unitary_bloch(g));
  return out;
}

std::optional<TimeLocalGenerator> RandomUnitaryModel::generator() const {
  return random_unitary_generator(rates_);
}

}  // namespace nmflow::models
