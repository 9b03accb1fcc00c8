#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "nmflow/core/quantum_map.hpp"

namespace nmflow {

struct CpReport {
  bool completely_positive;
  /// Smallest eigenvalue of Choi / dim_in (the Choi state of the map).
  double min_choi_eigenvalue;
};

/// Choi criterion: CP iff the normalised Choi matrix has no eigenvalue below -tol.
CpReport is_completely_positive(const QuantumMap& m, double tol = 1e-10);

struct PositivityReport {
  bool positive;
  double min_output_eigenvalue;
  int samples;
  /// True for qubit inputs where the pure-state grid covers the extremal
  /// inputs; false means "sampled-positive" only.
  bool exhaustive;
};

/// Checks the smallest output eigenvalue over pure inputs: for qubit inputs a
/// deterministic Fibonacci lattice on the Bloch sphere, plus `n_samples`
/// Haar-random pure states in any dimension.
PositivityReport is_positive_map(const QuantumMap& m, int n_samples, double tol = 1e-10,
                                 std::uint64_t seed = 12345);

/// n unit vectors spread over the sphere by the golden-angle spiral.
std::vector<Eigen::Vector3d> fibonacci_sphere(int n);

}  // namespace nmflow
