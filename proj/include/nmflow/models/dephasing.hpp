#pragma once

#include <functional>
#include <limits>

#include "nmflow/core/linalg.hpp"
#include "nmflow/models/spectral_density.hpp"

namespace nmflow::models {

enum class Provenance { closed_form, quadrature, ode, spectrum_fourier, loschmidt_ed };

/// Decoherence function G(t) with G(0) = 1. `derivative` is optional; when
/// present it returns dG/dt and rates use it instead of finite differences.
struct DecoherenceFunction {
  std::function<Complex(double)> value;
  std::function<Complex(double)> derivative;
  Provenance provenance = Provenance::closed_form;
  /// Characteristic time used to scale finite-difference steps.
  double time_scale = 1.0;

  Complex operator()(double t) const { return value(t); }
};

/// Inverse temperature of the zero-temperature branch (coth -> 1).
inline constexpr double kZeroTemperature = std::numeric_limits<double>::infinity();

/// G(t) = exp[-int_0^inf dw J(w) coth(beta w / 2) (1 - cos w t) / w^2].
/// Panels of width pi/t keep the oscillating integrand resolved. Throws
/// DivergentIntegral when the infrared behaviour of J makes the integral
/// diverge (Ohmic family with s <= 0 at finite temperature or s <= -1 at T = 0;
/// J(0) > 0 at finite temperature).
double dephasing_G_thermal(const SpectralDensity& j, double beta, double t);

/// d/dt of the exponent above, int dw J(w) coth(beta w/2) sin(w t) / w; this is
/// the dephasing rate -d ln G / dt.
double dephasing_rate_thermal(const SpectralDensity& j, double beta, double t);

/// Wraps the thermal formula, with the analytic derivative attached.
DecoherenceFunction thermal_decoherence(const SpectralDensity& j, double beta);

/// gamma(t) = -d/dt ln|G(t)|. Uses g.derivative when available, otherwise a
/// central difference with step 1e-6 * g.time_scale. Throws ZeroCrossing when
/// |G(t)| < 1e-12.
double dephasing_rate(const DecoherenceFunction& g, double t);

/// Central-difference derivative of ln|G| with the step above; exposed for
/// tests that check the analytic route.
double log_modulus_derivative_fd(const DecoherenceFunction& g, double t);

}  // namespace nmflow::models
