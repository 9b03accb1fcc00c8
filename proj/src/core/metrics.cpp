#include "nmflow/core/metrics.hpp"

#include <sstream>

#include "nmflow/core/errors.hpp"

namespace nmflow {

double trace_distance(const CMatrix& r1, const CMatrix& r2, const Tolerances& tol) {
  if (r1.rows() != r2.rows() || r1.cols() != r2.cols())
    throw DimensionMismatch("trace_distance: states have different dimensions");
  const CMatrix diff = r1 - r2;
  const double herm = hermiticity_defect(diff);
  if (herm > tol.hermitian) {
    std::ostringstream os;
    os << "trace_distance: difference is not Hermitian (defect " << herm << ")";
    throw InvalidState(os.str());
  }
  return 0.5 * hermitian_eigenvalues(diff).cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& r1, const DensityMatrix& r2) {
  return trace_distance(r1.matrix(), r2.matrix());
}

double helstrom_norm(const HelstromMatrix& h) {
  return hermitian_eigenvalues(h.matrix()).cwiseAbs().sum();
}

double max_success_probability(const HelstromMatrix& h) { return 0.5 * (1.0 + helstrom_norm(h)); }

bool orthogonal_supports(const DensityMatrix& r1, const DensityMatrix& r2, const Tolerances& tol) {
  return trace_distance(r1, r2) >= 1.0 - tol.orthogonal_support;
}

}  // namespace nmflow
