#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nmflow/cli/config.hpp"
#include "nmflow/core/errors.hpp"

namespace nmflow::cli {

/// A library error raised while running a scenario, tagged with the step.
class NumericalFailure : public Error {
 public:
  NumericalFailure(std::string operation, const std::string& what)
      : Error(operation + ": " + what), operation_(std::move(operation)) {}
  const std::string& operation() const noexcept { return operation_; }

 private:
  std::string operation_;
};

struct TrajectoryRow {
  double t, d, sigma, g_abs, g_phase, volume;
};

/// One scenario evaluation. Quantities a model does not support are NaN
/// (divisibility "n/a").
struct PointResult {
  double blp = 0.0;
  double helstrom = 0.0;
  double rhp = 0.0;
  bool rhp_infinite = false;
  std::string divisibility = "n/a";
  double volume_monotone = 0.0;  // 1, 0 or NaN
  std::vector<TrajectoryRow> trajectory;
  std::string report;
};

/// Copy of `cfg` with the swept parameters set.
ScenarioConfig at_point(const ScenarioConfig& cfg, const std::vector<double>& values);

/// Builds the model and computes all measures. Throws ConfigError for
/// inconsistent model parameters and NumericalFailure otherwise.
PointResult evaluate_point(const ScenarioConfig& cfg, int threads = 1);

/// Threads from --threads (if > 0), else NMFLOW_THREADS, else logical cores.
int resolve_threads(int cli_threads);

std::string format_double(double x);
void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryRow>& rows);

/// Writes trajectory.csv, measures.csv and report.txt for the base point.
void run(const ScenarioConfig& cfg, int threads);

struct SweepSummary {
  int points = 0;
  int failures = 0;
};

/// Cartesian sweep over cfg.sweep (a single point without axes): measures.csv
/// with one row per point (flushed in order as points finish),
/// trajectories/point_NNNN.csv and report.txt. Per-point failures go to the
/// errors column.
SweepSummary sweep(const ScenarioConfig& cfg, int threads);

}  // namespace nmflow::cli
