#include "nmflow/models/dephasing.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "nmflow/core/errors.hpp"
#include "nmflow/models/quadrature.hpp"

namespace nmflow::models {
namespace {

constexpr double kRelTol = 1e-10;
constexpr double kZeroModulus = 1e-12;

double thermal_factor(double beta, double w) {
  if (std::isinf(beta)) return 1.0;
  return 1.0 / std::tanh(0.5 * beta * w);
}

void check_convergence(const SpectralDensity& j, double beta) {
  if (!(beta > 0.0)) throw InvalidArgument("inverse temperature must be positive (or infinite)");
  const bool zero_t = std::isinf(beta);
  if (const auto* o = j.ohmic_params()) {
    if (zero_t && o->exponent <= -1.0)
      throw DivergentIntegral("dephasing integral diverges at w -> 0: Ohmic exponent s <= -1 at T = 0");
    if (!zero_t && o->exponent <= 0.0)
      throw DivergentIntegral("dephasing integral diverges at w -> 0: Ohmic exponent s <= 0 at finite temperature");
    return;
  }
  if (!zero_t && j(0.0) > 0.0)
    throw DivergentIntegral("dephasing integral diverges at w -> 0: J(0) > 0 at finite temperature");
  if (!zero_t) {
    if (const auto* t = j.tabulated_params(); t && t->omega.front() <= 0.0 && t->value.front() > 0.0)
      throw DivergentIntegral("dephasing integral diverges at w -> 0: J(0) > 0 at finite temperature");
  }
}

double lower_limit(const SpectralDensity& j) {
  if (const auto* t = j.tabulated_params()) return std::max(0.0, t->omega.front());
  return 0.0;
}

}  // namespace

double dephasing_G_thermal(const SpectralDensity& j, double beta, double t) {
  check_convergence(j, beta);
  if (t == 0.0) return 1.0;
  const double at = std::abs(t);
  auto integrand = [&](double w) {
    if (w <= 0.0) return 0.0;
    const double s = std::sin(0.5 * w * at);
    return j(w) * thermal_factor(beta, w) * 2.0 * s * s / (w * w);
  };
  const double panel = std::min(std::numbers::pi / at, j.frequency_scale());
  const double exponent =
      integrate_panels(integrand, lower_limit(j), j.integration_limit(), panel, kRelTol);
  return std::exp(-exponent);
}

double dephasing_rate_thermal(const SpectralDensity& j, double beta, double t) {
  check_convergence(j, beta);
  if (t == 0.0) return 0.0;
  auto integrand = [&](double w) {
    if (w <= 0.0) return 0.0;
    return j(w) * thermal_factor(beta, w) * std::sin(w * t) / w;
  };
  const double panel = std::min(std::numbers::pi / std::abs(t), j.frequency_scale());
  return integrate_panels(integrand, lower_limit(j), j.integration_limit(), panel, kRelTol);
}

DecoherenceFunction thermal_decoherence(const SpectralDensity& j, double beta) {
  check_convergence(j, beta);
  DecoherenceFunction g;
  g.value = [j, beta](double t) { return Complex(dephasing_G_thermal(j, beta, t), 0.0); };
  g.derivative = [j, beta](double t) {
    return Complex(-dephasing_rate_thermal(j, beta, t) * dephasing_G_thermal(j, beta, t), 0.0);
  };
  g.provenance = Provenance::quadrature;
  g.time_scale = 1.0 / j.frequency_scale();
  return g;
}

double log_modulus_derivative_fd(const DecoherenceFunction& g, double t) {
  const double h = 1e-6 * g.time_scale;
  auto lnabs = [&](double s) { return std::log(std::abs(g(s))); };
  if (t >= h) return (lnabs(t + h) - lnabs(t - h)) / (2.0 * h);
  // Second-order one-sided difference near the origin.
  return (-3.0 * lnabs(t) + 4.0 * lnabs(t + h) - lnabs(t + 2.0 * h)) / (2.0 * h);
}

double dephasing_rate(const DecoherenceFunction& g, double t) {
  const Complex gt = g(t);
  const double mod = std::abs(gt);
  if (mod < kZeroModulus) {
    std::ostringstream os;
    os << "decoherence function vanishes at t = " << t << " (|G| = " << mod << ")";
    throw ZeroCrossing(os.str(), t);
  }
  if (g.derivative) return -(std::conj(gt) * g.derivative(t)).real() / (mod * mod);
  return -log_modulus_derivative_fd(g, t);
}

}  // namespace nmflow::models
