#pragma once

#include "nmflow/core/bloch.hpp"
#include "nmflow/core/quantum_map.hpp"
#include "nmflow/models/dephasing.hpp"
#include "nmflow/models/spectral_density.hpp"

namespace nmflow::models {

/// Decoherence function of a two-level atom coupled in rotating-wave
/// approximation to a vacuum reservoir with Lorentzian spectral density.
///
/// Resonant case (detuning 0): closed form
///   G = exp(-l t/2) [cosh(d t/2) + (l/d) sinh(d t/2)],  d = sqrt(l^2 - 2 g0 l),
/// with complex d taken as the principal root. Detuned case: the exponential
/// memory kernel f(tau) = g0 l/2 exp(-(l + i Delta) tau) turns the integral
/// equation dG/dt = -int_0^t f(t - s) G(s) ds into the local system
///   dG/dt = -I,  dI/dt = g0 l/2 G - (l + i Delta) I,
/// integrated with adaptive Dormand-Prince steps.
Complex lossy_cavity_G(const SpectralDensity& j, double t);

/// dG/dt from the same route as lossy_cavity_G.
Complex lossy_cavity_G_derivative(const SpectralDensity& j, double t);

DecoherenceFunction lossy_cavity_decoherence(const SpectralDensity& j);

/// First zero of the resonant G for g0 > l/2 (none for g0 <= l/2: returns +inf).
double lossy_cavity_first_zero(double gamma0, double width);

struct LossyCavityRates {
  double lamb_shift;  // S(t) = -2 Im(G'/G)
  double decay;       // gamma(t) = -2 Re(G'/G) = -(2/|G|) d|G|/dt
};

/// Throws ZeroCrossing where |G| < 1e-12.
LossyCavityRates lossy_cavity_rates(const DecoherenceFunction& g, double t);

/// rho_11 -> |G|^2 rho_11, rho_10 -> G rho_10 (index 1 = excited).
QuantumMap amplitude_damping_map(Complex g);
BlochAffine amplitude_damping_bloch(Complex g);

/// rho_10 -> G rho_10 with populations fixed.
QuantumMap pure_dephasing_map(Complex g);
BlochAffine pure_dephasing_bloch(Complex g);

}  // namespace nmflow::models
