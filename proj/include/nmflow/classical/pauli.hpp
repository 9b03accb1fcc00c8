#pragma once

#include <functional>
#include <vector>

#include "nmflow/core/generator.hpp"
#include "nmflow/core/linalg.hpp"

namespace nmflow::classical {

/// Jump rates of a classical Markov process: W(t)(x, z) is the rate from z to
/// x; diagonal entries are ignored.
struct RateMatrix {
  int n_states = 0;
  std::function<RMatrix(double)> w;

  static RateMatrix constant(const RMatrix& w);
  /// Generator Q with dp/dt = Q p (columns sum to zero).
  RMatrix generator(double t) const;
  /// Throws InvalidArgument if an off-diagonal rate is below -tol at any of `times`.
  void validate(const std::vector<double>& times, double tol = 0.0) const;
};

/// Column-stochastic matrix: T(x, y) is the probability to be in x given y.
class TransitionMatrix {
 public:
  /// Columns must sum to 1 within 1e-12 and entries lie in [-1e-9, 1 + 1e-9].
  explicit TransitionMatrix(RMatrix t);
  const RMatrix& matrix() const noexcept { return t_; }
  int n_states() const noexcept { return static_cast<int>(t_.rows()); }
  RVector apply(const RVector& p) const { return t_ * p; }

 private:
  RMatrix t_;
};

/// Integrates dP(x)/dt = sum_z [W_xz P(z) - W_zx P(x)] from t0 = times.front()
/// (or 0 if `t0` given) with adaptive Dormand-Prince stepping. Rates are
/// checked on the output grid; negative ones throw.
std::vector<RVector> pauli_evolve(const RateMatrix& w, const RVector& p0,
                                  const std::vector<double>& times, double t0 = 0.0);

/// T(t, s) from delta initial conditions at s.
TransitionMatrix transition_matrix(const RateMatrix& w, double t, double s);

/// sum_x |p1 P1(x) - p2 P2(x)|.
double kolmogorov_distance(const RVector& a, const RVector& b, double p1 = 0.5, double p2 = 0.5);

/// W_nm(t) = sum_i gamma_i(t) |<n|A_i|m>|^2 in the orthonormal basis given by
/// the columns of `basis`. The generator must map basis projectors to
/// operators diagonal in that basis (checked at `check_times`, leakage < 1e-10);
/// otherwise InvalidArgument.
RateMatrix quantum_to_classical(const TimeLocalGenerator& gen, const CMatrix& basis,
                                const std::vector<double>& check_times = {0.0});

}  // namespace nmflow::classical
