#pragma once

#include "nmflow/core/density_matrix.hpp"
#include "nmflow/core/tolerances.hpp"

namespace nmflow {

/// D = 1/2 ||rho1 - rho2||_1. Throws DimensionMismatch on unequal dims.
double trace_distance(const DensityMatrix& r1, const DensityMatrix& r2);

/// Trace distance of raw operators; the difference must be Hermitian within
/// tol.hermitian (InvalidState otherwise).
double trace_distance(const CMatrix& r1, const CMatrix& r2,
                      const Tolerances& tol = default_tolerances());

/// ||p1 rho1 - p2 rho2||_1.
double helstrom_norm(const HelstromMatrix& h);

/// Success probability of the optimal one-shot discrimination, 1/2 (1 + ||Delta||).
double max_success_probability(const HelstromMatrix& h);

/// True when D(r1, r2) >= 1 - tol.orthogonal_support.
bool orthogonal_supports(const DensityMatrix& r1, const DensityMatrix& r2,
                         const Tolerances& tol = default_tolerances());

}  // namespace nmflow
