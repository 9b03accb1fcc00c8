#pragma once

#include <optional>
#include <vector>

#include "nmflow/measures/divisibility.hpp"
#include "nmflow/measures/pair_search.hpp"
#include "nmflow/measures/rhp.hpp"
#include "nmflow/models/qubit_model.hpp"

namespace nmflow::measures {

struct MeasureConfig {
  /// Observation window; <= 0 means model.default_horizon().
  double horizon = 0.0;
  int grid_points = 4001;
  SearchConfig search;
  DivisibilityConfig divisibility;
  double rhp_epsilon_factor = 1e-4;
  double condition_cap = 1e12;
  bool compute_helstrom = true;
  bool compute_rhp = true;
  /// Skip the search and report blp = helstrom = 0 when a single-channel
  /// generator has gamma >= 0 on the whole grid.
  bool short_circuit = true;
};

struct MeasureReport {
  double blp = 0.0;
  PairMetadata blp_pair;
  double blp_integration_error = 0.0;
  double helstrom = 0.0;
  PairMetadata helstrom_pair;
  double rhp = 0.0;
  bool rhp_infinite = false;
  std::optional<double> singular_time;
  std::optional<double> rhp_rate_based;
  Divisibility divisibility = Divisibility::cp_divisible;
  DivisibilityResult divisibility_detail;
  bool volume_monotone = true;
  std::optional<double> volume_violation_time;
  bool short_circuited = false;
  /// Set when the maps decay past the condition cap before the window ends;
  /// RHP, the singularity search and divisibility stop there.
  std::optional<double> decay_time;

  // Diagnostics.
  int grid_points = 0;
  double horizon = 0.0;
  int pair_evaluations = 0;
  int helstrom_evaluations = 0;

  std::vector<double> times;
  DistinguishabilityTrajectory blp_trajectory;
  std::vector<double> volume;
  std::vector<double> rhp_density;  // on the grid up to decay_time
};

/// BLP only (with short-circuit when certified).
PairResult blp_measure(const models::QubitModel& model, const MeasureConfig& cfg = {});

/// Everything: BLP, Helstrom, RHP, divisibility class and volume monotonicity.
MeasureReport evaluate(const models::QubitModel& model, const MeasureConfig& cfg = {});

/// Rate certificate for the short-circuit: single channel, gamma >= 0 on the grid.
bool monotonicity_certified(const models::QubitModel& model, const std::vector<double>& times);

/// Local representation check: pairs (I/2, rho) with rho on a Bloch sphere of
/// radius `radius` around I/2, distance rescaled by its initial value,
/// maximised over the direction grid. Evaluated through density matrices.
double local_representation_measure(const std::vector<double>& times,
                                    const std::vector<BlochAffine>& maps, double radius = 0.1,
                                    const SearchConfig& cfg = {});

}  // namespace nmflow::measures
