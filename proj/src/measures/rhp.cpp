#include "nmflow/measures/rhp.hpp"

#include <cmath>
#include <limits>

#include <Eigen/SVD>

#include "nmflow/core/errors.hpp"
#include "nmflow/core/linalg.hpp"

namespace nmflow::measures {
namespace {

struct Svd {
  double smin, cond;
};

Svd singular_values(const BlochAffine& a) {
  Eigen::JacobiSVD<Eigen::Matrix4d> svd(a.homogeneous());
  const auto& s = svd.singularValues();
  const double smin = s(3);
  return {smin, smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity()};
}

// Golden-section minimisation of the smallest singular value on [a, b].
std::pair<double, Svd> refine_minimum(const models::QubitModel& m, double a, double b) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  auto f = [&](double t) { return singular_values(m.bloch_map(t)); };
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  Svd f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-14 * std::max(1.0, std::abs(b)); ++it) {
    if (f1.smin < f2.smin) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = f(x2);
    }
  }
  return f1.smin < f2.smin ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

double choi_g(const BlochAffine& later, const BlochAffine& earlier_inverse, double eps) {
  const QuantumMap step = compose(later, earlier_inverse).to_map();
  // Choi/d is the output of Phi (x) I on the maximally entangled state.
  const double norm = trace_norm(step.choi() / 2.0);
  return (norm - 1.0) / eps;
}

double trapezoid(const std::vector<double>& t, const std::vector<double>& y, std::size_t upto) {
  double s = 0.0;
  for (std::size_t k = 1; k < upto; ++k) s += 0.5 * (t[k] - t[k - 1]) * (y[k] + y[k - 1]);
  return s;
}

}  // namespace

std::optional<Singularity> find_singularity(const models::QubitModel& model,
                                            const std::vector<double>& times,
                                            const std::vector<BlochAffine>& maps, double cap) {
  if (times.size() != maps.size()) throw DimensionMismatch("times and maps differ in length");
  std::vector<Svd> sv;
  sv.reserve(maps.size());
  for (const auto& a : maps) sv.push_back(singular_values(a));
  std::size_t n = sv.size();
  while (n > 0 && sv[n - 1].cond > cap) --n;
  for (std::size_t k = 0; k < n; ++k) {
    if (sv[k].cond > cap) return Singularity{times[k], sv[k].smin, sv[k].cond};
    const bool left = k == 0 || sv[k].smin <= sv[k - 1].smin;
    const bool right = k + 1 == sv.size() || sv[k].smin <= sv[k + 1].smin;
    if (!(left && right) || k == 0) continue;
    const double a = times[k - 1], b = k + 1 < sv.size() ? times[k + 1] : times[k];
    const auto [t, s] = refine_minimum(model, a, b);
    if (s.cond > cap) return Singularity{t, s.smin, s.cond};
  }
  return std::nullopt;
}

std::size_t decay_cutoff(const std::vector<BlochAffine>& maps, double cap) {
  std::size_t n = maps.size();
  while (n > 0 && singular_values(maps[n - 1]).cond > cap) --n;
  return n;
}

std::optional<double> rate_based_rhp(const models::QubitModel& model, const std::vector<double>& times) {
  if (!model.single_channel()) return std::nullopt;
  const auto gen = model.generator();
  if (!gen || gen->channels().size() != 1) return std::nullopt;
  const CMatrix& a = gen->channels()[0].op;
  const double weight = 2.0 * (a.adjoint() * a).trace().real() / gen->dim();
  std::vector<double> neg(times.size());
  try {
    for (std::size_t k = 0; k < times.size(); ++k) neg[k] = std::min(0.0, gen->rates(times[k])[0]);
  } catch (const ZeroCrossing&) {
    return std::nullopt;
  }
  return -weight * trapezoid(times, neg, times.size());
}

RhpResult rhp_measure(const models::QubitModel& model, const std::vector<double>& times,
                      const std::vector<BlochAffine>& maps, double eps_factor, double cap) {
  if (times.size() != maps.size()) throw DimensionMismatch("times and maps differ in length");
  if (!(eps_factor > 0.0)) throw InvalidArgument("RHP epsilon factor must be positive");
  RhpResult r;
  r.epsilon = eps_factor * model.time_scale();
  const auto sing = find_singularity(model, times, maps, cap);
  std::size_t upto = times.size();
  if (sing) {
    r.infinite = true;
    r.singular_time = sing->time;
    upto = 0;
    while (upto < times.size() && times[upto] < sing->time) ++upto;
  }
  r.g.assign(times.size(), std::numeric_limits<double>::quiet_NaN());
  const double eps = r.epsilon;
  std::size_t done = 0;
  for (std::size_t k = 0; k < upto; ++k) {
    BlochAffine inv;
    try {
      inv = inverse(maps[k], cap);
    } catch (const NonInvertible& e) {
      r.infinite = true;
      if (!r.singular_time) r.singular_time = times[k];
      break;
    }
    const double t = times[k];
    const double g1 = choi_g(model.bloch_map(t + eps), inv, eps);
    const double g2 = choi_g(model.bloch_map(t + 0.5 * eps), inv, 0.5 * eps);
    r.g[k] = std::max(0.0, 2.0 * g2 - g1);
    done = k + 1;
  }
  r.value = trapezoid(times, r.g, done);
  if (!r.infinite) r.rate_based = rate_based_rhp(model, times);
  return r;
}

}  // namespace nmflow::measures
