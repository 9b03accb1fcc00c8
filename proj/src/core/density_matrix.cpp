#include "nmflow/core/density_matrix.hpp"

#include <cmath>
#include <sstream>

#include "nmflow/core/errors.hpp"

namespace nmflow {

DensityMatrix::DensityMatrix(CMatrix rho, const Tolerances& tol) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() == 0)
    throw InvalidState("density matrix must be square and non-empty");
  const double herm = hermiticity_defect(rho_);
  if (herm > tol.hermitian) {
    std::ostringstream os;
    os << "density matrix is not Hermitian (defect " << herm << ")";
    throw InvalidState(os.str());
  }
  const Complex tr = rho_.trace();
  if (std::abs(tr - 1.0) > tol.trace) {
    std::ostringstream os;
    os << "density matrix trace " << tr.real() << " differs from 1";
    throw InvalidState(os.str());
  }
  const double lmin = min_eigenvalue();
  if (lmin < -tol.min_eigenvalue) {
    std::ostringstream os;
    os << "density matrix has negative eigenvalue " << lmin;
    throw InvalidState(os.str());
  }
}

DensityMatrix DensityMatrix::pure(const CVector& psi, const Tolerances& tol) {
  const double n = psi.norm();
  if (n == 0.0) throw InvalidState("pure state vector has zero norm");
  const CVector v = psi / n;
  return DensityMatrix(v * v.adjoint(), tol);
}

DensityMatrix DensityMatrix::basis_state(int dim, int k) {
  if (k < 0 || k >= dim) throw InvalidArgument("basis index out of range");
  CMatrix m = CMatrix::Zero(dim, dim);
  m(k, k) = 1.0;
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  if (dim <= 0) throw InvalidArgument("dimension must be positive");
  return DensityMatrix(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::from_bloch(const Eigen::Vector3d& r) {
  if (r.norm() > 1.0 + 1e-12) throw InvalidState("Bloch vector outside the unit ball");
  CMatrix m = 0.5 * (pauli::identity() + r(0) * pauli::x() + r(1) * pauli::y() + r(2) * pauli::z());
  return DensityMatrix(std::move(m));
}

double DensityMatrix::min_eigenvalue() const { return hermitian_eigenvalues(rho_)(0); }

Eigen::Vector3d DensityMatrix::bloch() const {
  if (dim() != 2) throw DimensionMismatch("Bloch vector requested for a non-qubit state");
  return {2.0 * rho_(1, 0).real(), 2.0 * rho_(1, 0).imag(), (rho_(0, 0) - rho_(1, 1)).real()};
}

// Qubit basis: index 0 = |0> (ground), index 1 = |1> (excited), so that
// sigma_- = |0><1| and the z Bloch component is rho_00 - rho_11.
double DensityMatrix::excited_population() const {
  if (dim() != 2) throw DimensionMismatch("population requested for a non-qubit state");
  return rho_(1, 1).real();
}

Complex DensityMatrix::coherence() const {
  if (dim() != 2) throw DimensionMismatch("coherence requested for a non-qubit state");
  return rho_(1, 0);
}

HelstromMatrix::HelstromMatrix(double p1, double p2, CMatrix delta)
    : p1_(p1), p2_(p2), delta_(std::move(delta)) {}

HelstromMatrix::HelstromMatrix(double p1, const DensityMatrix& rho1, double p2,
                               const DensityMatrix& rho2)
    : p1_(p1), p2_(p2) {
  if (rho1.dim() != rho2.dim()) throw DimensionMismatch("Helstrom matrix from states of different dimension");
  if (p1 < 0.0 || p2 < 0.0 || std::abs(p1 + p2 - 1.0) > 1e-12)
    throw InvalidArgument("Helstrom weights must be nonnegative and sum to 1");
  delta_ = p1 * rho1.matrix() - p2 * rho2.matrix();
}

HelstromMatrix HelstromMatrix::from_matrix(double p1, double p2, CMatrix delta) {
  if (p1 < 0.0 || p2 < 0.0 || std::abs(p1 + p2 - 1.0) > 1e-12)
    throw InvalidArgument("Helstrom weights must be nonnegative and sum to 1");
  if (hermiticity_defect(delta) > 1e-12) throw InvalidState("Helstrom matrix is not Hermitian");
  if (std::abs(delta.trace() - (p1 - p2)) > 1e-12)
    throw InvalidState("Helstrom matrix trace differs from p1 - p2");
  return HelstromMatrix(p1, p2, std::move(delta));
}

}  // namespace nmflow
