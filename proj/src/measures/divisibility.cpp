#include "nmflow/measures/divisibility.hpp"

#include <algorithm>
#include <cmath>

#include "nmflow/core/errors.hpp"
#include "nmflow/core/positivity.hpp"
#include "nmflow/measures/trajectory.hpp"

namespace nmflow::measures {
namespace {

// Orthonormal qubit bases {|n>, |m>} from Bloch directions (|m> is antipodal).
std::vector<std::pair<CVector, CVector>> qubit_bases(int samples) {
  std::vector<Eigen::Vector3d> dirs = fibonacci_sphere(samples);
  for (int i = 0; i < 3; ++i) dirs.push_back(Eigen::Vector3d::Unit(i));
  std::vector<std::pair<CVector, CVector>> out;
  for (const auto& d : dirs) {
    const double th = std::acos(std::clamp(d.z(), -1.0, 1.0)), ph = std::atan2(d.y(), d.x());
    CVector n(2), m(2);
    n << std::cos(th / 2), std::exp(kI * ph) * std::sin(th / 2);
    m << -std::exp(-kI * ph) * std::sin(th / 2), std::cos(th / 2);
    out.emplace_back(n, m);
  }
  return out;
}

}  // namespace

std::string to_string(Divisibility d) {
  switch (d) {
    case Divisibility::cp_divisible: return "CP_divisible";
    case Divisibility::p_divisible_only: return "P_divisible_only";
    case Divisibility::non_p_divisible: return "non_P_divisible";
    case Divisibility::non_invertible: return "non_invertible";
  }
  return "unknown";
}

DivisibilityResult classify_divisibility(const models::QubitModel& model,
                                         const std::vector<double>& times, bool singular,
                                         const DivisibilityConfig& cfg) {
  DivisibilityResult r;
  if (singular) {
    r.cls = Divisibility::non_invertible;
    r.path = "maps";
    return r;
  }
  const auto gen = model.generator();
  if (!gen || gen->dim() != 2) {
    std::vector<double> ts;
    const int steps = std::max(2, cfg.map_steps);
    for (int k = 0; k <= steps; ++k) ts.push_back(times.front() + (times.back() - times.front()) * k / steps);
    return classify_by_maps(ts, model.bloch_maps(ts), cfg);
  }
  r.path = "rates";
  const auto bases = qubit_bases(cfg.basis_samples);
  const auto& ch = gen->channels();
  std::vector<std::vector<double>> weights(bases.size(), std::vector<double>(ch.size()));
  for (std::size_t b = 0; b < bases.size(); ++b)
    for (std::size_t i = 0; i < ch.size(); ++i) {
      const auto& [n, m] = bases[b];
      // Both orderings: <n|A|m> and <m|A|n>.
      weights[b][i] = std::norm(n.dot(ch[i].op * m));
    }
  std::vector<std::vector<double>> weights_rev(bases.size(), std::vector<double>(ch.size()));
  for (std::size_t b = 0; b < bases.size(); ++b)
    for (std::size_t i = 0; i < ch.size(); ++i) {
      const auto& [n, m] = bases[b];
      weights_rev[b][i] = std::norm(m.dot(ch[i].op * n));
    }
  r.min_rate = std::numeric_limits<double>::infinity();
  r.min_p_condition = std::numeric_limits<double>::infinity();
  for (double t : times) {
    std::vector<double> g;
    try {
      g = gen->rates(t);
    } catch (const ZeroCrossing&) {
      r.cls = Divisibility::non_invertible;
      return r;
    }
    const double gmin = *std::min_element(g.begin(), g.end());
    r.min_rate = std::min(r.min_rate, gmin);
    if (gmin < -cfg.tolerance && !r.first_cp_violation) r.first_cp_violation = t;
    for (std::size_t b = 0; b < bases.size(); ++b) {
      double s1 = 0.0, s2 = 0.0;
      for (std::size_t i = 0; i < ch.size(); ++i) {
        s1 += g[i] * weights[b][i];
        s2 += g[i] * weights_rev[b][i];
      }
      const double s = std::min(s1, s2);
      r.min_p_condition = std::min(r.min_p_condition, s);
      if (s < -cfg.tolerance && !r.first_p_violation) r.first_p_violation = t;
    }
  }
  r.cls = r.first_p_violation    ? Divisibility::non_p_divisible
          : r.first_cp_violation ? Divisibility::p_divisible_only
                                 : Divisibility::cp_divisible;
  return r;
}

DivisibilityResult classify_by_maps(const std::vector<double>& times,
                                    const std::vector<BlochAffine>& maps,
                                    const DivisibilityConfig& cfg) {
  DivisibilityResult r;
  r.path = "maps";
  for (std::size_t k = 0; k + 1 < maps.size(); ++k) {
    BlochAffine inv;
    try {
      inv = inverse(maps[k]);
    } catch (const NonInvertible&) {
      r.cls = Divisibility::non_invertible;
      return r;
    }
    const QuantumMap step = compose(maps[k + 1], inv).to_map();
    if (!r.first_cp_violation && !is_completely_positive(step, cfg.tolerance).completely_positive)
      r.first_cp_violation = times[k];
    if (!r.first_p_violation && !is_positive_map(step, cfg.positivity_samples, cfg.tolerance, cfg.seed).positive)
      r.first_p_violation = times[k];
  }
  r.cls = r.first_p_violation    ? Divisibility::non_p_divisible
          : r.first_cp_violation ? Divisibility::p_divisible_only
                                 : Divisibility::cp_divisible;
  return r;
}

VolumeResult volume_monotone(const std::vector<double>& times, const std::vector<BlochAffine>& maps,
                             double band) {
  VolumeResult r;
  for (const auto& a : maps) r.volume.push_back(a.volume());
  const auto bf = positive_variation(times, r.volume, band);
  if (!bf.intervals.empty()) {
    r.monotone = false;
    r.first_violation = bf.intervals.front().first;
  }
  return r;
}

}  // namespace nmflow::measures
