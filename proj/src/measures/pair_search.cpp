#include "nmflow/measures/pair_search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "nmflow/core/errors.hpp"

namespace nmflow::measures {
namespace {

struct Candidate {
  double theta, phi, alpha, value;
};

double backflow(const std::vector<double>& times, const std::vector<double>& v, double band) {
  return positive_variation(times, v, band).total;
}

// Evaluates f on every index in [0, n) with up to `threads` workers.
template <class F>
void parallel_for(int n, int threads, F&& f) {
  threads = std::clamp(threads, 1, std::max(1, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += threads) f(i);
    });
  for (auto& th : pool) th.join();
}

void check_inputs(const std::vector<double>& times, const std::vector<BlochAffine>& maps,
                  const SearchConfig& cfg) {
  if (times.size() != maps.size() || times.size() < 3)
    throw InvalidArgument("pair search needs matching times and maps (>= 3)");
  if (cfg.polar_points < 1 || cfg.azimuth_points < 1)
    throw InvalidArgument("direction grid must be nonempty");
}

// Compass search on (theta, phi[, alpha]) maximising `obj`.
Candidate ascend(Candidate c, double step, bool with_alpha, double tol,
                 const std::function<double(const Candidate&)>& obj, int& evals) {
  double astep = with_alpha ? 0.1 : 0.0;
  while (step > tol || astep > tol) {
    bool moved = false;
    for (int dim = 0; dim < (with_alpha ? 3 : 2); ++dim) {
      const double s = dim == 2 ? astep : step;
      if (s <= tol) continue;
      for (double sign : {1.0, -1.0}) {
        Candidate t = c;
        if (dim == 0) t.theta += sign * s;
        else if (dim == 1) t.phi += sign * s;
        else t.alpha = std::clamp(t.alpha + sign * s, -1.0, 1.0);
        t.value = obj(t);
        ++evals;
        if (t.value > c.value) {
          c = t;
          moved = true;
          break;
        }
      }
    }
    if (!moved) {
      step *= 0.5;
      astep *= 0.5;
    }
  }
  return c;
}

PairResult finish(const std::vector<double>& times, const std::vector<BlochAffine>& maps,
                  const Candidate& best, bool helstrom, double band, int evals) {
  PairResult r;
  r.pair.direction = direction(best.theta, best.phi);
  r.pair.alpha = helstrom ? best.alpha : 0.0;
  auto vals = helstrom ? helstrom_trace_norm(maps, r.pair.direction, r.pair.alpha)
                       : antipodal_distance(maps, r.pair.direction);
  r.value = backflow(times, vals, band);
  std::vector<double> ht, hv;
  for (std::size_t k = 0; k < times.size(); k += 2) {
    ht.push_back(times[k]);
    hv.push_back(vals[k]);
  }
  r.integration_error = std::abs(r.value - backflow(ht, hv, band));
  r.trajectory = DistinguishabilityTrajectory::from_samples(times, std::move(vals));
  r.trajectory.pair = r.pair;
  r.evaluations = evals;
  return r;
}

}  // namespace

Eigen::Vector3d direction(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

std::vector<double> antipodal_distance(const std::vector<BlochAffine>& maps, const Eigen::Vector3d& n) {
  std::vector<double> d(maps.size());
  for (std::size_t k = 0; k < maps.size(); ++k) d[k] = std::min(1.0, (maps[k].linear * n).norm());
  return d;
}

std::vector<double> helstrom_trace_norm(const std::vector<BlochAffine>& maps, const Eigen::Vector3d& n,
                                        double alpha) {
  std::vector<double> d(maps.size());
  for (std::size_t k = 0; k < maps.size(); ++k)
    d[k] = std::min(1.0, std::max(std::abs(alpha), (maps[k].linear * n + alpha * maps[k].shift).norm()));
  return d;
}

PairResult search_blp(const std::vector<double>& times, const std::vector<BlochAffine>& maps,
                      const SearchConfig& cfg) {
  check_inputs(times, maps, cfg);
  const int np = cfg.polar_points, na = cfg.azimuth_points;
  std::vector<Candidate> grid(np * na);
  parallel_for(np * na, cfg.threads, [&](int i) {
    const double th = (i / na + 0.5) * std::numbers::pi / np;
    const double ph = (i % na) * 2.0 * std::numbers::pi / na;
    grid[i] = {th, ph, 0.0, backflow(times, antipodal_distance(maps, direction(th, ph)), cfg.band)};
  });
  int evals = np * na;
  std::stable_sort(grid.begin(), grid.end(),
                   [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
  Candidate best = grid.front();
  if (cfg.local_ascent && best.value > 0.0) {
    auto obj = [&](const Candidate& c) {
      return backflow(times, antipodal_distance(maps, direction(c.theta, c.phi)), cfg.band);
    };
    const double step = std::numbers::pi / np;
    const int seeds = std::min<int>(cfg.ascent_seeds, grid.size());
    for (int s = 0; s < seeds; ++s) {
      const Candidate c = ascend(grid[s], step, false, cfg.ascent_tolerance, obj, evals);
      if (c.value > best.value) best = c;
    }
  }
  return finish(times, maps, best, false, cfg.band, evals);
}

PairResult search_helstrom(const std::vector<double>& times, const std::vector<BlochAffine>& maps,
                           const PairMetadata& seed, const SearchConfig& cfg) {
  check_inputs(times, maps, cfg);
  const int np = cfg.polar_points, na = cfg.azimuth_points;
  const int nb = std::max(1, cfg.helstrom_bias_points);
  std::vector<double> biases;
  for (int b = 0; b < nb; ++b) biases.push_back(nb == 1 ? 0.0 : -1.0 + 2.0 * b / (nb - 1));
  if (std::find(biases.begin(), biases.end(), 0.0) == biases.end()) biases.push_back(0.0);
  const int nbias = static_cast<int>(biases.size());

  auto obj = [&](const Candidate& c) {
    return backflow(times, helstrom_trace_norm(maps, direction(c.theta, c.phi), c.alpha), cfg.band);
  };
  std::vector<Candidate> grid(np * na * nbias);
  parallel_for(static_cast<int>(grid.size()), cfg.threads, [&](int i) {
    const int b = i / (np * na), d = i % (np * na);
    Candidate c{(d / na + 0.5) * std::numbers::pi / np, (d % na) * 2.0 * std::numbers::pi / na,
                biases[b], 0.0};
    c.value = obj(c);
    grid[i] = c;
  });
  // The seed direction expressed in angles.
  const Eigen::Vector3d sd = seed.direction.normalized();
  Candidate sc{std::acos(std::clamp(sd.z(), -1.0, 1.0)), std::atan2(sd.y(), sd.x()), seed.alpha, 0.0};
  sc.value = obj(sc);
  grid.push_back(sc);
  int evals = static_cast<int>(grid.size());
  std::stable_sort(grid.begin(), grid.end(),
                   [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
  Candidate best = grid.front();
  if (cfg.local_ascent && best.value > 0.0) {
    const double step = std::numbers::pi / np;
    const int seeds = std::min<int>(cfg.ascent_seeds, grid.size());
    for (int s = 0; s < seeds; ++s) {
      const Candidate c = ascend(grid[s], step, true, cfg.ascent_tolerance, obj, evals);
      if (c.value > best.value) best = c;
    }
    const Candidate c = ascend(sc, step, true, cfg.ascent_tolerance, obj, evals);
    if (c.value > best.value) best = c;
  }
  return finish(times, maps, best, true, cfg.band, evals);
}

}  // namespace nmflow::measures
