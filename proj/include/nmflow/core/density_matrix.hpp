#pragma once

#include <Eigen/Dense>

#include "nmflow/core/linalg.hpp"
#include "nmflow/core/tolerances.hpp"

namespace nmflow {

/// A validated quantum state: Hermitian, unit trace, positive semidefinite.
///
/// Construction checks the invariants against `Tolerances` and throws
/// `InvalidState` on violation. Instances are immutable.
class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix rho, const Tolerances& tol = default_tolerances());

  static DensityMatrix pure(const CVector& psi, const Tolerances& tol = default_tolerances());
  static DensityMatrix basis_state(int dim, int k);
  static DensityMatrix maximally_mixed(int dim);
  /// Qubit state (I + r.sigma)/2; |r| <= 1.
  static DensityMatrix from_bloch(const Eigen::Vector3d& r);

  int dim() const noexcept { return static_cast<int>(rho_.rows()); }
  const CMatrix& matrix() const noexcept { return rho_; }
  double min_eigenvalue() const;

  /// Bloch vector (tr rho sigma_x, tr rho sigma_y, tr rho sigma_z). Qubits only.
  Eigen::Vector3d bloch() const;
  /// rho_11, the excited-state population of a qubit.
  double excited_population() const;
  /// rho_10, the coherence between excited and ground state of a qubit.
  Complex coherence() const;

 private:
  CMatrix rho_;
};

/// Weighted difference p1*rho1 - p2*rho2 of two states.
class HelstromMatrix {
 public:
  HelstromMatrix(double p1, const DensityMatrix& rho1, double p2, const DensityMatrix& rho2);
  /// Wraps an already-formed weighted difference; only Hermiticity and the
  /// trace p1 - p2 are checked.
  static HelstromMatrix from_matrix(double p1, double p2, CMatrix delta);

  double p1() const noexcept { return p1_; }
  double p2() const noexcept { return p2_; }
  int dim() const noexcept { return static_cast<int>(delta_.rows()); }
  const CMatrix& matrix() const noexcept { return delta_; }

 private:
  HelstromMatrix(double p1, double p2, CMatrix delta);

  double p1_;
  double p2_;
  CMatrix delta_;
};

}  // namespace nmflow
