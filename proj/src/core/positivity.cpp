#include "nmflow/core/positivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace nmflow {

CpReport is_completely_positive(const QuantumMap& m, double tol) {
  const double lmin = hermitian_eigenvalues(m.choi())(0) / static_cast<double>(m.dim_in());
  return {lmin >= -tol, lmin};
}

std::vector<Eigen::Vector3d> fibonacci_sphere(int n) {
  std::vector<Eigen::Vector3d> pts;
  pts.reserve(n);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < n; ++k) {
    const double z = n == 1 ? 1.0 : 1.0 - 2.0 * k / (n - 1.0);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * k;
    pts.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return pts;
}

namespace {

constexpr int kQubitGrid = 2000;

double min_output_eigenvalue(const QuantumMap& m, const CVector& psi) {
  const CMatrix out = apply_to_operator(m, psi * psi.adjoint());
  return hermitian_eigenvalues(out)(0);
}

}  // namespace

PositivityReport is_positive_map(const QuantumMap& m, int n_samples, double tol,
                                 std::uint64_t seed) {
  double lmin = std::numeric_limits<double>::infinity();
  int count = 0;
  const bool qubit = m.dim_in() == 2;
  if (qubit) {
    for (const auto& n : fibonacci_sphere(kQubitGrid)) {
      const double theta = std::acos(std::clamp(n.z(), -1.0, 1.0));
      const double phi = std::atan2(n.y(), n.x());
      CVector psi(2);
      // Bloch direction n; index 0 = |0> sits at the north pole.
      psi << std::cos(theta / 2), std::exp(kI * phi) * std::sin(theta / 2);
      lmin = std::min(lmin, min_output_eigenvalue(m, psi));
      ++count;
    }
  }
  std::mt19937_64 rng(seed);
  for (int k = 0; k < n_samples; ++k) {
    lmin = std::min(lmin, min_output_eigenvalue(m, random_pure_vector(m.dim_in(), rng)));
    ++count;
  }
  return {lmin >= -tol, lmin, count, qubit};
}

}  // namespace nmflow
