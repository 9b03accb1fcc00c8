#pragma once

#include <Eigen/Dense>

#include "nmflow/core/quantum_map.hpp"

namespace nmflow {

/// Trace-preserving, Hermiticity-preserving qubit map written as r -> M r + c
/// on Bloch vectors.
struct BlochAffine {
  Eigen::Matrix3d linear = Eigen::Matrix3d::Identity();
  Eigen::Vector3d shift = Eigen::Vector3d::Zero();

  static BlochAffine identity() { return {}; }
  static BlochAffine from_map(const QuantumMap& m);
  QuantumMap to_map() const;

  Eigen::Vector3d apply(const Eigen::Vector3d& r) const { return linear * r + shift; }
  /// The real 4x4 matrix acting on (1, r).
  Eigen::Matrix4d homogeneous() const;

  /// Volume of the image of the Bloch ball relative to the ball.
  double volume() const { return std::abs(linear.determinant()); }
};

/// a after b.
BlochAffine compose(const BlochAffine& a, const BlochAffine& b);

/// Throws NonInvertible if the 4x4 homogeneous matrix exceeds the condition cap.
BlochAffine inverse(const BlochAffine& a, double condition_cap = 1e12);

/// Trace distance between the images of two Bloch vectors: |M (r1 - r2)| / 2.
inline double bloch_trace_distance(const BlochAffine& a, const Eigen::Vector3d& r1,
                                   const Eigen::Vector3d& r2) {
  return 0.5 * (a.linear * (r1 - r2)).norm();
}

}  // namespace nmflow
