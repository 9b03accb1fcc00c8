#include "nmflow/core/quantum_map.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "nmflow/core/errors.hpp"

namespace nmflow {
namespace {

CVector vec(const CMatrix& a) { return Eigen::Map<const CVector>(a.data(), a.size()); }

CMatrix unvec(const CVector& v, int rows, int cols) {
  return Eigen::Map<const CMatrix>(v.data(), rows, cols);
}

void check_trace_preserving(const CMatrix& choi, int dim_in, int dim_out, const Tolerances& tol) {
  const CMatrix reduced = partial_trace_b(choi, dim_in, dim_out);
  const double defect = (reduced - CMatrix::Identity(dim_in, dim_in)).cwiseAbs().maxCoeff();
  if (defect > tol.trace_preserving) {
    std::ostringstream os;
    os << "map flagged trace preserving but tr_out(Choi) deviates from identity by " << defect;
    throw InvalidArgument(os.str());
  }
}

}  // namespace

CMatrix choi_from_kraus(const std::vector<CMatrix>& kraus) {
  if (kraus.empty()) throw InvalidArgument("empty Kraus set");
  const auto n = kraus.front().size();
  CMatrix c = CMatrix::Zero(n, n);
  for (const auto& k : kraus) {
    const CVector w = vec(k);
    c.noalias() += w * w.adjoint();
  }
  return c;
}

CMatrix choi_from_superoperator(const CMatrix& s, int dim_in, int dim_out) {
  if (s.rows() != dim_out * dim_out || s.cols() != dim_in * dim_in)
    throw DimensionMismatch("superoperator shape does not match dimensions");
  CMatrix c(dim_in * dim_out, dim_in * dim_out);
  for (int i = 0; i < dim_in; ++i)
    for (int j = 0; j < dim_in; ++j)
      c.block(i * dim_out, j * dim_out, dim_out, dim_out) =
          unvec(s.col(i + j * dim_in), dim_out, dim_out);
  return c;
}

CMatrix superoperator_from_choi(const CMatrix& choi, int dim_in, int dim_out) {
  if (choi.rows() != dim_in * dim_out || choi.cols() != dim_in * dim_out)
    throw DimensionMismatch("Choi shape does not match dimensions");
  CMatrix s(dim_out * dim_out, dim_in * dim_in);
  for (int i = 0; i < dim_in; ++i)
    for (int j = 0; j < dim_in; ++j)
      s.col(i + j * dim_in) = vec(choi.block(i * dim_out, j * dim_out, dim_out, dim_out));
  return s;
}

QuantumMap QuantumMap::from_kraus(std::vector<CMatrix> kraus, bool trace_preserving,
                                  const Tolerances& tol) {
  if (kraus.empty()) throw InvalidArgument("empty Kraus set");
  const auto rows = kraus.front().rows();
  const auto cols = kraus.front().cols();
  for (const auto& k : kraus)
    if (k.rows() != rows || k.cols() != cols)
      throw DimensionMismatch("Kraus operators of inconsistent shape");
  if (trace_preserving) {
    CMatrix sum = CMatrix::Zero(cols, cols);
    for (const auto& k : kraus) sum.noalias() += k.adjoint() * k;
    const double defect = (sum - CMatrix::Identity(cols, cols)).cwiseAbs().maxCoeff();
    if (defect > tol.trace_preserving) {
      std::ostringstream os;
      os << "Kraus completeness violated by " << defect;
      throw InvalidArgument(os.str());
    }
  }
  CMatrix choi = choi_from_kraus(kraus);
  return QuantumMap(static_cast<int>(cols), static_cast<int>(rows), std::move(kraus),
                    std::move(choi), trace_preserving);
}

QuantumMap QuantumMap::from_choi(CMatrix choi, int dim_in, int dim_out, bool trace_preserving,
                                 const Tolerances& tol) {
  if (choi.rows() != dim_in * dim_out || choi.cols() != dim_in * dim_out)
    throw DimensionMismatch("Choi shape does not match dimensions");
  if (trace_preserving) check_trace_preserving(choi, dim_in, dim_out, tol);
  return QuantumMap(dim_in, dim_out, std::nullopt, std::move(choi), trace_preserving);
}

QuantumMap QuantumMap::from_kraus_and_choi(std::vector<CMatrix> kraus, CMatrix choi,
                                           bool trace_preserving, const Tolerances& tol) {
  QuantumMap m = from_kraus(std::move(kraus), trace_preserving, tol);
  if (choi.rows() != m.choi_.rows() || choi.cols() != m.choi_.cols())
    throw DimensionMismatch("stored Choi matrix has the wrong shape");
  const double gap = (choi - m.choi_).cwiseAbs().maxCoeff();
  if (gap > tol.representation_agreement) {
    std::ostringstream os;
    os << "Kraus and Choi representations disagree by " << gap;
    throw InvalidArgument(os.str());
  }
  m.choi_ = std::move(choi);
  return m;
}

QuantumMap QuantumMap::from_superoperator(const CMatrix& s, int dim_in, int dim_out,
                                          bool trace_preserving, const Tolerances& tol) {
  return from_choi(choi_from_superoperator(s, dim_in, dim_out), dim_in, dim_out,
                   trace_preserving, tol);
}

QuantumMap QuantumMap::identity(int dim) { return from_kraus({CMatrix::Identity(dim, dim)}); }

QuantumMap QuantumMap::unitary(const CMatrix& u) { return from_kraus({u}); }

CMatrix QuantumMap::superoperator() const {
  return superoperator_from_choi(choi_, dim_in_, dim_out_);
}

std::vector<CMatrix> kraus_from_choi(const QuantumMap& m, double cutoff, const Tolerances& tol) {
  const CMatrix h = 0.5 * (m.choi() + m.choi().adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  if (es.eigenvalues()(0) < -tol.complete_positivity)
    throw InvalidArgument("Kraus decomposition requested for a map that is not completely positive");
  std::vector<CMatrix> out;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double lam = es.eigenvalues()(k);
    if (lam <= cutoff) continue;
    out.push_back(std::sqrt(lam) * unvec(es.eigenvectors().col(k), m.dim_out(), m.dim_in()));
  }
  if (out.empty()) out.push_back(CMatrix::Zero(m.dim_out(), m.dim_in()));
  return out;
}

CMatrix apply_to_operator(const QuantumMap& m, const CMatrix& x) {
  if (x.rows() != m.dim_in() || x.cols() != m.dim_in())
    throw DimensionMismatch("operator dimension does not match map input dimension");
  if (m.kraus()) {
    CMatrix out = CMatrix::Zero(m.dim_out(), m.dim_out());
    for (const auto& k : *m.kraus()) out.noalias() += k * x * k.adjoint();
    return out;
  }
  return apply_via_choi(m, x);
}

CMatrix apply_via_choi(const QuantumMap& m, const CMatrix& x) {
  if (x.rows() != m.dim_in() || x.cols() != m.dim_in())
    throw DimensionMismatch("operator dimension does not match map input dimension");
  const int dout = m.dim_out();
  CMatrix out = CMatrix::Zero(dout, dout);
  for (int i = 0; i < m.dim_in(); ++i)
    for (int j = 0; j < m.dim_in(); ++j)
      if (x(i, j) != Complex(0.0)) out += x(i, j) * m.choi().block(i * dout, j * dout, dout, dout);
  return out;
}

DensityMatrix apply_map(const QuantumMap& m, const DensityMatrix& rho, const Tolerances& tol) {
  CMatrix out = apply_to_operator(m, rho.matrix());
  // Restore exact Hermiticity lost to rounding before validation.
  out = 0.5 * (out + out.adjoint()).eval();
  if (m.trace_preserving()) {
    const Complex tr = out.trace();
    if (std::abs(tr - 1.0) <= 1e-10) out /= tr.real();
  }
  return DensityMatrix(std::move(out), tol);
}

QuantumMap compose(const QuantumMap& m2, const QuantumMap& m1) {
  if (m2.dim_in() != m1.dim_out()) throw DimensionMismatch("compose: dimensions do not chain");
  const bool tp = m1.trace_preserving() && m2.trace_preserving();
  if (m1.kraus() && m2.kraus()) {
    std::vector<CMatrix> ks;
    ks.reserve(m1.kraus()->size() * m2.kraus()->size());
    for (const auto& b : *m2.kraus())
      for (const auto& a : *m1.kraus()) ks.push_back(b * a);
    return QuantumMap::from_kraus(std::move(ks), tp);
  }
  const CMatrix s = m2.superoperator() * m1.superoperator();
  return QuantumMap::from_superoperator(s, m1.dim_in(), m2.dim_out(), tp);
}

InvertibilityReport invertibility(const QuantumMap& m) {
  Eigen::JacobiSVD<CMatrix> svd(m.superoperator());
  const RVector& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  const double smax = sv(0);
  const double cond = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
  return {cond, smin};
}

QuantumMap intermediate_map(const QuantumMap& phi_t, const QuantumMap& phi_s,
                            const Tolerances& tol) {
  if (phi_s.dim_in() != phi_s.dim_out() || phi_t.dim_in() != phi_s.dim_in())
    throw DimensionMismatch("intermediate_map needs square maps on a common space");
  const CMatrix ss = phi_s.superoperator();
  Eigen::JacobiSVD<CMatrix> svd(ss, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVector& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (!(smin > 0.0) || sv(0) / smin > tol.condition_cap) {
    std::ostringstream os;
    os << "map is numerically singular (smallest singular value " << smin << ")";
    throw NonInvertible(os.str(), smin);
  }
  const CMatrix inv = svd.matrixV() * sv.cwiseInverse().asDiagonal() * svd.matrixU().adjoint();
  const CMatrix s = phi_t.superoperator() * inv;
  const int d = phi_s.dim_in();
  return QuantumMap::from_choi(choi_from_superoperator(s, d, phi_t.dim_out()), d, phi_t.dim_out(),
                               phi_t.trace_preserving() && phi_s.trace_preserving(),
                               Tolerances{.trace_preserving = 1e-8});
}

double choi_distance(const QuantumMap& a, const QuantumMap& b) {
  if (a.choi().rows() != b.choi().rows()) throw DimensionMismatch("Choi matrices differ in size");
  return (a.choi() - b.choi()).cwiseAbs().maxCoeff();
}

}  // namespace nmflow
