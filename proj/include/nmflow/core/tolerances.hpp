#pragma once

namespace nmflow {

/// Numerical tolerances shared by all modules. Every check in the library
/// reads its threshold from here unless the caller passes an explicit one.
struct Tolerances {
  double hermitian = 1e-12;       // max |A - A^dag| entrywise
  double trace = 1e-12;           // |tr rho - 1|
  double min_eigenvalue = 1e-10;  // states: lambda_min >= -min_eigenvalue
  double trace_preserving = 1e-10;
  double representation_agreement = 1e-10;  // Kraus vs stored Choi
  double complete_positivity = 1e-10;
  double condition_cap = 1e12;  // superoperator condition number treated as singular
  double orthogonal_support = 1e-9;  // D >= 1 - tol counts as orthogonal
  double generator_independence = 1e-10;
};

inline const Tolerances& default_tolerances() {
  static const Tolerances t{};
  return t;
}

}  // namespace nmflow
