#pragma once

#include <array>
#include <functional>
#include <vector>

#include "nmflow/core/bloch.hpp"
#include "nmflow/core/generator.hpp"
#include "nmflow/core/quantum_map.hpp"

namespace nmflow::models {

/// Rates gamma_1..3 of the Pauli channels. The master equation is
///   d rho/dt = sum_i gamma_i(t)/2 (sigma_i rho sigma_i - rho),
/// so the Bloch component along axis i decays with gamma_j + gamma_k.
/// `breakpoints` lists times where a rate is discontinuous or kinked; the
/// quadrature splits there.
struct RandomUnitaryRates {
  std::array<std::function<double(double)>, 3> gamma;
  std::vector<double> breakpoints;
};

/// Gamma_i(t) = int_0^t gamma_i.
std::array<double, 3> integrated_rates(const RandomUnitaryRates& r, double t);

/// Gamma_i at every grid time (nondecreasing times), accumulated panel by panel.
std::vector<std::array<double, 3>> integrated_rates_on_grid(const RandomUnitaryRates& r,
                                                            const std::vector<double>& times);

/// p_0..p_3 from A_ij = exp(-(Gamma_i + Gamma_j)); sums to 1 by construction.
std::array<double, 4> random_unitary_coefficients(const std::array<double, 3>& big_gamma);

/// Phi(rho) = sum_i p_i sigma_i rho sigma_i. Carries Kraus operators when all
/// p_i >= 0; otherwise only the (non-CP) Choi matrix.
QuantumMap random_unitary_map(const std::array<double, 4>& p);

/// Diagonal Bloch map diag(A_23, A_13, A_12).
BlochAffine random_unitary_bloch(const std::array<double, 3>& big_gamma);

/// T_i = 1 / (gamma_j + gamma_k); +inf where the sum vanishes, negative where
/// it is negative.
std::array<double, 3> relaxation_times(const RandomUnitaryRates& r, double t);

TimeLocalGenerator random_unitary_generator(const RandomUnitaryRates& r);

}  // namespace nmflow::models
