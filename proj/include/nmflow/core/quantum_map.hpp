#pragma once

#include <optional>
#include <vector>

#include "nmflow/core/density_matrix.hpp"
#include "nmflow/core/linalg.hpp"
#include "nmflow/core/tolerances.hpp"

namespace nmflow {

/// Linear map on operators, dim_in x dim_in -> dim_out x dim_out.
///
/// The Choi matrix C = sum_ij |i><j| (x) Phi(|i><j|) is always available;
/// a Kraus set is kept when the map was built from one. Vectorisation is
/// column-stacking, vec(Phi(X)) = S vec(X).
class QuantumMap {
 public:
  static QuantumMap from_kraus(std::vector<CMatrix> kraus, bool trace_preserving = true,
                               const Tolerances& tol = default_tolerances());
  static QuantumMap from_choi(CMatrix choi, int dim_in, int dim_out, bool trace_preserving,
                              const Tolerances& tol = default_tolerances());
  /// Both representations; they must agree within tol.representation_agreement.
  static QuantumMap from_kraus_and_choi(std::vector<CMatrix> kraus, CMatrix choi,
                                        bool trace_preserving,
                                        const Tolerances& tol = default_tolerances());
  static QuantumMap from_superoperator(const CMatrix& s, int dim_in, int dim_out,
                                       bool trace_preserving,
                                       const Tolerances& tol = default_tolerances());
  static QuantumMap identity(int dim);
  static QuantumMap unitary(const CMatrix& u);

  int dim_in() const noexcept { return dim_in_; }
  int dim_out() const noexcept { return dim_out_; }
  bool trace_preserving() const noexcept { return trace_preserving_; }
  const std::optional<std::vector<CMatrix>>& kraus() const noexcept { return kraus_; }
  const CMatrix& choi() const noexcept { return choi_; }
  CMatrix superoperator() const;

 private:
  QuantumMap(int dim_in, int dim_out, std::optional<std::vector<CMatrix>> kraus, CMatrix choi,
             bool tp)
      : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)), choi_(std::move(choi)),
        trace_preserving_(tp) {}

  int dim_in_;
  int dim_out_;
  std::optional<std::vector<CMatrix>> kraus_;
  CMatrix choi_;
  bool trace_preserving_;
};

CMatrix choi_from_kraus(const std::vector<CMatrix>& kraus);
CMatrix choi_from_superoperator(const CMatrix& s, int dim_in, int dim_out);
CMatrix superoperator_from_choi(const CMatrix& choi, int dim_in, int dim_out);

/// Kraus operators from the eigendecomposition of the Choi matrix; eigenvalues
/// below `cutoff` are dropped. Throws InvalidArgument if the map is not CP.
std::vector<CMatrix> kraus_from_choi(const QuantumMap& m, double cutoff = 1e-14,
                                     const Tolerances& tol = default_tolerances());

/// Applies the map to an arbitrary operator (Kraus route when available).
CMatrix apply_to_operator(const QuantumMap& m, const CMatrix& x);
/// Applies the map using only the Choi matrix.
CMatrix apply_via_choi(const QuantumMap& m, const CMatrix& x);
/// Applies the map to a state; the output is validated as a state.
DensityMatrix apply_map(const QuantumMap& m, const DensityMatrix& rho,
                        const Tolerances& tol = default_tolerances());

/// m2 after m1. Kraus sets are concatenated when both maps carry one.
QuantumMap compose(const QuantumMap& m2, const QuantumMap& m1);

/// Phi_{t,s} = Phi_t Phi_s^{-1}, stored through its Choi matrix. Throws
/// NonInvertible when the superoperator of phi_s has condition number above
/// tol.condition_cap.
QuantumMap intermediate_map(const QuantumMap& phi_t, const QuantumMap& phi_s,
                            const Tolerances& tol = default_tolerances());

/// Condition number and smallest singular value of the superoperator.
struct InvertibilityReport {
  double condition_number;
  double smallest_singular_value;
};
InvertibilityReport invertibility(const QuantumMap& m);

/// max |C1 - C2| over Choi entries.
double choi_distance(const QuantumMap& a, const QuantumMap& b);

}  // namespace nmflow
