#pragma once

#include <functional>
#include <vector>

#include "nmflow/core/linalg.hpp"
#include "nmflow/core/tolerances.hpp"

namespace nmflow {

/// One dissipative channel gamma(t) (A rho A^dag - 1/2 {A^dag A, rho}).
struct DecayChannel {
  CMatrix op;
  std::function<double(double)> rate;
};

/// Time-local generator K_t of a master equation
///   d rho/dt = -i [H(t), rho] + sum_i gamma_i(t) (A_i rho A_i^dag - 1/2 {A_i^dag A_i, rho}).
class TimeLocalGenerator {
 public:
  using HamiltonianFn = std::function<CMatrix(double)>;

  /// Validates that the channel operators are linearly independent and that
  /// H is Hermitian at t = 0. A null hamiltonian means H = 0.
  TimeLocalGenerator(int dim, HamiltonianFn hamiltonian, std::vector<DecayChannel> channels,
                     const Tolerances& tol = default_tolerances());

  int dim() const noexcept { return dim_; }
  const std::vector<DecayChannel>& channels() const noexcept { return channels_; }
  CMatrix hamiltonian(double t) const;
  std::vector<double> rates(double t) const;

  /// K_t applied to an operator.
  CMatrix apply(double t, const CMatrix& rho) const;
  /// Column-stacking matrix of K_t.
  CMatrix superoperator(double t) const;

  /// Integrates d rho/dt = K_t rho with adaptive Dormand-Prince stepping and
  /// returns rho at each requested time (times must be nondecreasing, starting
  /// at or after t0).
  std::vector<CMatrix> evolve(const CMatrix& rho0, double t0, const std::vector<double>& times,
                              double rel_tol = 1e-10, double abs_tol = 1e-12) const;

 private:
  int dim_;
  HamiltonianFn hamiltonian_;
  std::vector<DecayChannel> channels_;
};

}  // namespace nmflow
