#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace nmflow::measures {

/// Pair that produced a trajectory. For an unbiased antipodal pure pair only
/// `direction` is set (alpha = 0); a Helstrom matrix 1/2 (alpha I + w.sigma)
/// sets both.
struct PairMetadata {
  Eigen::Vector3d direction = Eigen::Vector3d::UnitX();
  double alpha = 0.0;
};

/// D(t) (or a Helstrom norm) sampled on a strictly increasing grid, with
/// central-difference derivative estimates.
struct DistinguishabilityTrajectory {
  std::vector<double> times;
  std::vector<double> values;
  std::vector<double> derivative;
  std::optional<PairMetadata> pair;
  /// Initial value; divide by it to get the scaled derivative.
  double normalization = 1.0;

  /// Validates the grid and values (in [0, 1 + 1e-12]) and fills the derivative.
  static DistinguishabilityTrajectory from_samples(std::vector<double> times,
                                                   std::vector<double> values);
};

/// Increase intervals of a sampled curve and the total rise over them.
struct Backflow {
  double total = 0.0;
  std::vector<std::pair<double, double>> intervals;
};

/// Sum of the rises of `values`, ignoring excursions smaller than `band`.
///
/// A rise opens once the curve climbs more than `band` above its running
/// minimum and closes once it drops more than `band` below the running maximum.
/// For the piecewise-linear interpolant this equals the trapezoid integral of
/// the positive part of the derivative, minus sub-band noise.
Backflow positive_variation(const std::vector<double>& times, const std::vector<double>& values,
                            double band = 1e-10);

/// Uniform grid of n points on [0, horizon].
std::vector<double> uniform_grid(double horizon, int n);

}  // namespace nmflow::measures
