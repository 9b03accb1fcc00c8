#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nmflow/core/bloch.hpp"
#include "nmflow/models/qubit_model.hpp"

namespace nmflow::measures {

enum class Divisibility { cp_divisible, p_divisible_only, non_p_divisible, non_invertible };

std::string to_string(Divisibility d);

struct DivisibilityResult {
  Divisibility cls = Divisibility::cp_divisible;
  /// "rates" or "maps".
  std::string path;
  /// First grid time violating CP / P divisibility, if any.
  std::optional<double> first_cp_violation;
  std::optional<double> first_p_violation;
  double min_rate = 0.0;        // rate path: smallest gamma_i(t)
  double min_p_condition = 0.0; // rate path: smallest sum_i gamma_i |<n|A_i|m>|^2
};

struct DivisibilityConfig {
  double tolerance = 1e-10;
  int basis_samples = 400;     // qubit bases for the P condition
  int map_steps = 200;         // map path: intermediate maps on this many steps
  int positivity_samples = 0;  // extra random states for is_positive_map
  std::uint64_t seed = 12345;  // RNG seed for those samples
};

/// Rate path when the model has a generator, otherwise map path.
/// `singular` short-circuits to non_invertible.
DivisibilityResult classify_divisibility(const models::QubitModel& model,
                                         const std::vector<double>& times,
                                         bool singular, const DivisibilityConfig& cfg = {});

/// Map path on its own: CP via Choi and positivity of Phi_{t_{k+1}, t_k}.
DivisibilityResult classify_by_maps(const std::vector<double>& times,
                                    const std::vector<BlochAffine>& maps,
                                    const DivisibilityConfig& cfg = {});

struct VolumeResult {
  bool monotone = true;
  std::optional<double> first_violation;
  std::vector<double> volume;
};

/// |det M_t| on the grid; monotone unless it rises by more than `band`
/// above its running minimum.
VolumeResult volume_monotone(const std::vector<double>& times, const std::vector<BlochAffine>& maps,
                             double band = 1e-10);

}  // namespace nmflow::measures
