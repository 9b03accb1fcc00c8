#include "nmflow/measures/report.hpp"

#include <cmath>
#include <numbers>

#include "nmflow/core/errors.hpp"
#include "nmflow/core/metrics.hpp"

namespace nmflow::measures {
namespace {

std::vector<double> window(const models::QubitModel& model, const MeasureConfig& cfg) {
  const double h = cfg.horizon > 0.0 ? cfg.horizon : model.default_horizon();
  return uniform_grid(h, cfg.grid_points);
}

// Drops the decayed tail (keeping at least 3 points); returns the cut time.
std::optional<double> truncate_decayed(std::vector<double>& times, std::vector<BlochAffine>& maps, double cap) {
  const std::size_t n = std::max<std::size_t>(3, decay_cutoff(maps, cap));
  if (n >= times.size()) return std::nullopt;
  const double cut = times[n];
  times.resize(n);
  maps.resize(n);
  return cut;
}

PairResult zero_result(const std::vector<double>& times, const std::vector<BlochAffine>& maps) {
  PairResult r;
  r.pair.direction = Eigen::Vector3d::UnitX();
  r.trajectory = DistinguishabilityTrajectory::from_samples(times, antipodal_distance(maps, r.pair.direction));
  r.trajectory.pair = r.pair;
  return r;
}

}  // namespace

bool monotonicity_certified(const models::QubitModel& model, const std::vector<double>& times) {
  if (!model.single_channel()) return false;
  const auto gen = model.generator();
  if (!gen || gen->channels().size() != 1) return false;
  try {
    for (double t : times)
      if (gen->rates(t)[0] < 0.0) return false;
  } catch (const Error&) {
    return false;
  }
  return true;
}

PairResult blp_measure(const models::QubitModel& model, const MeasureConfig& cfg) {
  const auto times = window(model, cfg);
  const auto maps = model.bloch_maps(times);
  if (cfg.short_circuit && monotonicity_certified(model, times)) return zero_result(times, maps);
  return search_blp(times, maps, cfg.search);
}

MeasureReport evaluate(const models::QubitModel& model, const MeasureConfig& cfg) {
  MeasureReport rep;
  rep.times = window(model, cfg);
  const auto maps = model.bloch_maps(rep.times);
  // Inverse-based measures stop where the maps have decayed past the cap.
  auto inv_times = rep.times;
  auto inv_maps = maps;
  rep.decay_time = truncate_decayed(inv_times, inv_maps, cfg.condition_cap);
  rep.grid_points = static_cast<int>(rep.times.size());
  rep.horizon = rep.times.back();

  const bool certified = cfg.short_circuit && monotonicity_certified(model, rep.times);
  rep.short_circuited = certified;
  const PairResult blp = certified ? zero_result(rep.times, maps) : search_blp(rep.times, maps, cfg.search);
  rep.blp = blp.value;
  rep.blp_pair = blp.pair;
  rep.blp_integration_error = blp.integration_error;
  rep.blp_trajectory = blp.trajectory;
  rep.pair_evaluations = blp.evaluations;

  if (cfg.compute_helstrom && !certified) {
    const PairResult h = search_helstrom(rep.times, maps, blp.pair, cfg.search);
    rep.helstrom = std::max(h.value, rep.blp);
    rep.helstrom_pair = h.value >= rep.blp ? h.pair : blp.pair;
    rep.helstrom_evaluations = h.evaluations;
  } else {
    rep.helstrom = rep.blp;
    rep.helstrom_pair = rep.blp_pair;
  }

  bool singular = false;
  if (cfg.compute_rhp) {
    const RhpResult r = rhp_measure(model, inv_times, inv_maps, cfg.rhp_epsilon_factor, cfg.condition_cap);
    rep.rhp = r.value;
    rep.rhp_infinite = r.infinite;
    rep.singular_time = r.singular_time;
    rep.rhp_rate_based = r.rate_based;
    rep.rhp_density = r.g;
    singular = r.infinite;
  } else if (const auto s = find_singularity(model, inv_times, inv_maps, cfg.condition_cap)) {
    singular = true;
    rep.singular_time = s->time;
  }

  rep.divisibility_detail = classify_divisibility(model, inv_times, singular, cfg.divisibility);
  rep.divisibility = rep.divisibility_detail.cls;

  const VolumeResult v = volume_monotone(rep.times, maps, cfg.search.band);
  rep.volume_monotone = v.monotone;
  rep.volume_violation_time = v.first_violation;
  rep.volume = v.volume;
  return rep;
}

double local_representation_measure(const std::vector<double>& times,
                                    const std::vector<BlochAffine>& maps, double radius,
                                    const SearchConfig& cfg) {
  if (!(radius > 0.0 && radius <= 1.0)) throw InvalidArgument("local sphere radius must be in (0, 1]");
  const auto centre = DensityMatrix::maximally_mixed(2);
  double best = 0.0;
  for (int i = 0; i < cfg.polar_points; ++i) {
    for (int j = 0; j < cfg.azimuth_points; ++j) {
      const Eigen::Vector3d n = direction((i + 0.5) * std::numbers::pi / cfg.polar_points,
                                          j * 2.0 * std::numbers::pi / cfg.azimuth_points);
      const auto rho = DensityMatrix::from_bloch(radius * n);
      std::vector<double> d(times.size());
      for (std::size_t k = 0; k < times.size(); ++k) {
        const QuantumMap m = maps[k].to_map();
        d[k] = trace_distance(apply_map(m, rho), apply_map(m, centre)) / (0.5 * radius);
      }
      best = std::max(best, positive_variation(times, d, cfg.band).total);
    }
  }
  return best;
}

}  // namespace nmflow::measures
