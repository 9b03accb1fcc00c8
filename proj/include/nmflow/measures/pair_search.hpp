#pragma once

#include <vector>

#include "nmflow/core/bloch.hpp"
#include "nmflow/measures/trajectory.hpp"

namespace nmflow::measures {

struct SearchConfig {
  int polar_points = 12;
  int azimuth_points = 24;
  bool local_ascent = true;
  /// Grid points used as ascent seeds.
  int ascent_seeds = 3;
  double ascent_tolerance = 1e-7;  // radians
  /// Helstrom bias values alpha = p1 - p2 on [-1, 1] (0 always included).
  int helstrom_bias_points = 11;
  double band = 1e-10;
  int threads = 1;
};

struct PairResult {
  double value = 0.0;
  PairMetadata pair;
  DistinguishabilityTrajectory trajectory;
  /// |value - value on every other grid point|.
  double integration_error = 0.0;
  int evaluations = 0;
};

/// D(t) = |M_t n| for the antipodal pure pair with Bloch vectors +-n.
std::vector<double> antipodal_distance(const std::vector<BlochAffine>& maps,
                                       const Eigen::Vector3d& n);

/// ||Phi_t (1/2)(alpha I + n.sigma)|| = max(|alpha|, |M_t n + alpha c_t|), |n| = 1.
std::vector<double> helstrom_trace_norm(const std::vector<BlochAffine>& maps,
                                        const Eigen::Vector3d& n, double alpha);

/// Maximises the backflow over antipodal pure pairs: direction grid, then
/// compass-search ascent in (theta, phi) from the best grid points.
PairResult search_blp(const std::vector<double>& times, const std::vector<BlochAffine>& maps,
                      const SearchConfig& cfg = {});

/// Same over Helstrom matrices of unit trace norm (alpha in [-1, 1], unit
/// Bloch part). `seed` (normally the BLP optimum) is always evaluated.
PairResult search_helstrom(const std::vector<double>& times, const std::vector<BlochAffine>& maps,
                           const PairMetadata& seed, const SearchConfig& cfg = {});

Eigen::Vector3d direction(double theta, double phi);

}  // namespace nmflow::measures
