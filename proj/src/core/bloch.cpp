#include "nmflow/core/bloch.hpp"

#include <sstream>

#include "nmflow/core/errors.hpp"

namespace nmflow {

BlochAffine BlochAffine::from_map(const QuantumMap& m) {
  if (m.dim_in() != 2 || m.dim_out() != 2) throw DimensionMismatch("Bloch form needs a qubit map");
  BlochAffine a;
  const CMatrix centre = apply_to_operator(m, 0.5 * pauli::identity());
  for (int i = 0; i < 3; ++i) a.shift(i) = (centre * pauli::by_index(i + 1)).trace().real();
  for (int j = 0; j < 3; ++j) {
    const CMatrix img = apply_to_operator(m, 0.5 * pauli::by_index(j + 1));
    for (int i = 0; i < 3; ++i) a.linear(i, j) = (img * pauli::by_index(i + 1)).trace().real();
  }
  return a;
}

QuantumMap BlochAffine::to_map() const {
  // Superoperator columns are the images of the matrix units |i><j|.
  CMatrix s(4, 4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      CMatrix unit = CMatrix::Zero(2, 2);
      unit(i, j) = 1.0;
      // unit = (tr(unit) I + sum_k tr(unit sigma_k) sigma_k) / 2
      const Complex t0 = unit.trace();
      Eigen::Vector3cd comps;
      for (int k = 0; k < 3; ++k) comps(k) = (unit * pauli::by_index(k + 1)).trace();
      const Eigen::Vector3cd out = linear.cast<Complex>() * comps + t0 * shift.cast<Complex>();
      CMatrix img = 0.5 * t0 * pauli::identity();
      for (int k = 0; k < 3; ++k) img += 0.5 * out(k) * pauli::by_index(k + 1);
      s.col(i + 2 * j) = Eigen::Map<const CVector>(img.data(), 4);
    }
  }
  return QuantumMap::from_superoperator(s, 2, 2, true, Tolerances{.trace_preserving = 1e-9});
}

Eigen::Matrix4d BlochAffine::homogeneous() const {
  Eigen::Matrix4d h = Eigen::Matrix4d::Zero();
  h(0, 0) = 1.0;
  h.block<3, 1>(1, 0) = shift;
  h.block<3, 3>(1, 1) = linear;
  return h;
}

BlochAffine compose(const BlochAffine& a, const BlochAffine& b) {
  return {a.linear * b.linear, a.linear * b.shift + a.shift};
}

BlochAffine inverse(const BlochAffine& a, double condition_cap) {
  Eigen::JacobiSVD<Eigen::Matrix4d> svd(a.homogeneous(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Vector4d sv = svd.singularValues();
  const double smin = sv(3);
  if (!(smin > 0.0) || sv(0) / smin > condition_cap) {
    std::ostringstream os;
    os << "Bloch map is numerically singular (smallest singular value " << smin << ")";
    throw NonInvertible(os.str(), smin);
  }
  const Eigen::Matrix3d inv = a.linear.inverse();
  return {inv, -inv * a.shift};
}

}  // namespace nmflow
