#include "nmflow/core/linalg.hpp"

#include <cmath>

#include "nmflow/core/errors.hpp"

namespace nmflow {

namespace pauli {

CMatrix identity() { return CMatrix::Identity(2, 2); }

CMatrix x() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

CMatrix y() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = -kI;
  m(1, 0) = kI;
  return m;
}

CMatrix z() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

CMatrix lowering() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

CMatrix raising() { return lowering().adjoint(); }

CMatrix by_index(int i) {
  switch (i) {
    case 0: return identity();
    case 1: return x();
    case 2: return y();
    case 3: return z();
    default: throw InvalidArgument("pauli index must be in 0..3");
  }
}

}  // namespace pauli

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double hermiticity_defect(const CMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("hermiticity check on a non-square matrix");
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

RVector hermitian_eigenvalues(const CMatrix& a) {
  const CMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double trace_norm(const CMatrix& a) {
  if (a.rows() == a.cols() && hermiticity_defect(a) <= 1e-12)
    return hermitian_eigenvalues(a).cwiseAbs().sum();
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues().sum();
}

CMatrix partial_trace_b(const CMatrix& rho, int dim_a, int dim_b) {
  if (rho.rows() != dim_a * dim_b || rho.cols() != dim_a * dim_b)
    throw DimensionMismatch("partial trace: operator size does not match dim_a*dim_b");
  CMatrix out = CMatrix::Zero(dim_a, dim_a);
  for (int i = 0; i < dim_a; ++i)
    for (int j = 0; j < dim_a; ++j)
      out(i, j) = rho.block(i * dim_b, j * dim_b, dim_b, dim_b).trace();
  return out;
}

CMatrix partial_trace_a(const CMatrix& rho, int dim_a, int dim_b) {
  if (rho.rows() != dim_a * dim_b || rho.cols() != dim_a * dim_b)
    throw DimensionMismatch("partial trace: operator size does not match dim_a*dim_b");
  CMatrix out = CMatrix::Zero(dim_b, dim_b);
  for (int i = 0; i < dim_a; ++i) out += rho.block(i * dim_b, i * dim_b, dim_b, dim_b);
  return out;
}

CMatrix random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  CMatrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(n01(rng), n01(rng));
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity of QR so that q is Haar distributed.
  for (int j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double ad = std::abs(d);
    if (ad > 0) q.col(j) *= d / ad;
  }
  return q;
}

CVector random_pure_vector(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  CVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(n01(rng), n01(rng));
  return v / v.norm();
}

CMatrix unitary_propagator(const CMatrix& hamiltonian, double t) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (hamiltonian + hamiltonian.adjoint()));
  const CMatrix& v = es.eigenvectors();
  CVector phases(v.cols());
  for (Eigen::Index k = 0; k < v.cols(); ++k) phases(k) = std::exp(-kI * es.eigenvalues()(k) * t);
  return v * phases.asDiagonal() * v.adjoint();
}

}  // namespace nmflow
