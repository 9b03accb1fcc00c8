#pragma once

#include <vector>

namespace nmflow::models {

/// sigma(t) = -(2/t) sgn[J_1(2t)] J_2(2t) for the central spin of an XX chain
/// at h = h0, J = J0 (time in units of 1/J). Returns 0 for t <= 0.
double xx_chain_sigma(double t);

/// D(t) = 1 + int_0^t sigma for the optimal pair, by adaptive quadrature split
/// at the sign changes of J_1(2t).
double xx_chain_distance(double t);

/// Same on a nondecreasing grid, accumulated piece by piece.
std::vector<double> xx_chain_distances(const std::vector<double>& times);

}  // namespace nmflow::models
