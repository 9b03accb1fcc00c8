#include "nmflow/models/random_unitary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nmflow/core/errors.hpp"
#include "nmflow/models/quadrature.hpp"

namespace nmflow::models {
namespace {

std::array<double, 3> integrate_span(const RandomUnitaryRates& r, double a, double b) {
  std::array<double, 3> out{0.0, 0.0, 0.0};
  if (b <= a) return out;
  std::vector<double> cuts{a};
  for (double x : r.breakpoints)
    if (x > a && x < b) cuts.push_back(x);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  for (int i = 0; i < 3; ++i) {
    if (!r.gamma[i]) throw InvalidArgument("random-unitary rate function is empty");
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
      out[i] += integrate(r.gamma[i], cuts[k], cuts[k + 1], 1e-10);
  }
  return out;
}

}  // namespace

std::array<double, 3> integrated_rates(const RandomUnitaryRates& r, double t) {
  return integrate_span(r, 0.0, t);
}

std::vector<std::array<double, 3>> integrated_rates_on_grid(const RandomUnitaryRates& r,
                                                            const std::vector<double>& times) {
  std::vector<std::array<double, 3>> out;
  out.reserve(times.size());
  std::array<double, 3> acc{0.0, 0.0, 0.0};
  double prev = 0.0;
  for (double t : times) {
    if (t < prev) throw InvalidArgument("time grid must be nondecreasing and start at t >= 0");
    const auto inc = integrate_span(r, prev, t);
    for (int i = 0; i < 3; ++i) acc[i] += inc[i];
    out.push_back(acc);
    prev = t;
  }
  return out;
}

std::array<double, 4> random_unitary_coefficients(const std::array<double, 3>& g) {
  const double a12 = std::exp(-(g[0] + g[1]));
  const double a13 = std::exp(-(g[0] + g[2]));
  const double a23 = std::exp(-(g[1] + g[2]));
  return {0.25 * (1.0 + a12 + a13 + a23), 0.25 * (1.0 - a12 - a13 + a23),
          0.25 * (1.0 - a12 + a13 - a23), 0.25 * (1.0 + a12 - a13 - a23)};
}

QuantumMap random_unitary_map(const std::array<double, 4>& p) {
  const bool cp = std::all_of(p.begin(), p.end(), [](double x) { return x >= 0.0; });
  if (cp) {
    std::vector<CMatrix> ks;
    for (int i = 0; i < 4; ++i)
      if (p[i] > 0.0) ks.push_back(std::sqrt(p[i]) * pauli::by_index(i));
    if (ks.empty()) throw InvalidArgument("random-unitary coefficients are all zero");
    return QuantumMap::from_kraus(std::move(ks));
  }
  CMatrix choi = CMatrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) {
    const CMatrix s = pauli::by_index(i);
    const CVector v = Eigen::Map<const CVector>(s.data(), 4);
    choi += p[i] * v * v.adjoint();
  }
  return QuantumMap::from_choi(choi, 2, 2, true);
}

BlochAffine random_unitary_bloch(const std::array<double, 3>& g) {
  BlochAffine a;
  a.linear = Eigen::Vector3d(std::exp(-(g[1] + g[2])), std::exp(-(g[0] + g[2])),
                             std::exp(-(g[0] + g[1])))
                 .asDiagonal();
  return a;
}

std::array<double, 3> relaxation_times(const RandomUnitaryRates& r, double t) {
  const std::array<double, 3> g{r.gamma[0](t), r.gamma[1](t), r.gamma[2](t)};
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i) {
    const double s = g[(i + 1) % 3] + g[(i + 2) % 3];
    out[i] = s == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / s;
  }
  return out;
}

TimeLocalGenerator random_unitary_generator(const RandomUnitaryRates& r) {
  std::vector<DecayChannel> ch;
  for (int i = 0; i < 3; ++i) {
    auto f = r.gamma[i];
    ch.push_back({pauli::by_index(i + 1), [f](double t) { return 0.5 * f(t); }});
  }
  return TimeLocalGenerator(2, nullptr, std::move(ch));
}

}  // namespace nmflow::models
