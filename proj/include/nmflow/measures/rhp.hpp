#pragma once

#include <optional>
#include <vector>

#include "nmflow/core/bloch.hpp"
#include "nmflow/models/qubit_model.hpp"

namespace nmflow::measures {

/// First time in the window at which the map is numerically singular
/// (condition number of the homogeneous Bloch matrix above `cap`).
///
/// Local minima of the smallest singular value along the grid are refined by
/// golden-section search on the model itself. A decayed tail (see
/// decay_cutoff) is not a singularity.
struct Singularity {
  double time;
  double smallest_singular_value;
  double condition_number;
};
std::optional<Singularity> find_singularity(const models::QubitModel& model,
                                            const std::vector<double>& times,
                                            const std::vector<BlochAffine>& maps,
                                            double cap = 1e12);

/// First grid index from which every map has condition number above `cap`
/// up to the end of the window: the dynamics has decayed onto a
/// lower-dimensional fixed set instead of crossing a singularity and
/// recovering. maps.size() when there is no such tail.
std::size_t decay_cutoff(const std::vector<BlochAffine>& maps, double cap = 1e12);

struct RhpResult {
  double value = 0.0;  // finite part (up to the singular time if any)
  bool infinite = false;
  std::optional<double> singular_time;
  std::vector<double> g;  // g(t) on the grid (NaN past a singularity)
  double epsilon = 0.0;
  /// Rate-based value for single-channel generators, when available.
  std::optional<double> rate_based;
};

/// g(t) = (||(Phi_{t+eps,t} (x) I)|Psi><Psi|||_1 - 1) / eps from the Choi matrix
/// of the intermediate map, Richardson-extrapolated as 2 g(eps/2) - g(eps);
/// integrated by the trapezoid rule. eps = eps_factor * model.time_scale().
RhpResult rhp_measure(const models::QubitModel& model, const std::vector<double>& times,
                      const std::vector<BlochAffine>& maps, double eps_factor = 1e-4,
                      double cap = 1e12);

/// -(2 tr(A^dag A)/d) int_{gamma<0} gamma dt for a single traceless channel,
/// trapezoid on the grid. Empty when the model has no single-channel generator
/// or a rate evaluation fails.
std::optional<double> rate_based_rhp(const models::QubitModel& model, const std::vector<double>& times);

}  // namespace nmflow::measures
