// Acceptance checks: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "../unit/helpers.hpp"
#include "nmflow/classical/pauli.hpp"
#include "nmflow/core/metrics.hpp"
#include "nmflow/correlations/total_system.hpp"
#include "nmflow/measures/report.hpp"
#include "nmflow/models/dephasing.hpp"
#include "nmflow/models/ising_probe.hpp"
#include "nmflow/models/lossy_cavity.hpp"
#include "nmflow/models/photonic.hpp"
#include "nmflow/models/qubit_model.hpp"
#include "nmflow/models/spectral_density.hpp"

using namespace nmflow;
using namespace nmflow::models;
using namespace nmflow::measures;
using nmflow::testing::random_cptp_qubit;
using nmflow::testing::random_state;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

constexpr double kPi = std::numbers::pi;

// ---- 1 ----------------------------------------------------------------------

double lossy_blp(double gamma0) {
  const auto j = SpectralDensity::lorentzian(gamma0, 1.0, 0.0, 0.0);
  AmplitudeDampingModel m("lossy", lossy_cavity_decoherence(j), 80.0);
  MeasureConfig cfg;
  cfg.grid_points = 4001;
  return blp_measure(m, cfg).value;
}

double bisect(const std::function<bool(double)>& positive, double lo, double hi) {
  while (hi - lo > 1e-4) {
    const double mid = 0.5 * (lo + hi);
    (positive(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

Outcome threshold() {
  const double below = lossy_blp(0.45), above = lossy_blp(0.55);
  // "Positive" at the resolution of the measure (rises beyond the 1e-10 band)
  // and, for comparison, at the 1e-8 level used for "zero" above.
  const double at_band = bisect([](double g) { return lossy_blp(g) > 0.0; }, 0.45, 0.55);
  const double at_1e8 = bisect([](double g) { return lossy_blp(g) > 1e-8; }, 0.45, 0.55);
  const bool ok = below <= 1e-8 && above > 1e-3 && std::abs(at_band - 0.5) <= 0.01;
  return {ok, fmt::format("blp(0.45)={:.3e} blp(0.55)={:.3e} (need >1e-3) transition: {:.4f} (blp>0), "
                          "{:.4f} (blp>1e-8)",
                          below, above, at_band, at_1e8)};
}

// ---- 2, 3 -------------------------------------------------------------------

struct TwoPeak {
  double w1 = 0.7, w2 = 0.3, sep = 2.0, dn = 1.0;
  FrequencySpectrum spectrum() const { return FrequencySpectrum({0.0, sep}, {w1, w2}); }
  double modulus(double t) const { return std::sqrt(w1 * w1 + w2 * w2 + 2 * w1 * w2 * std::cos(sep * dn * t)); }
  double period() const { return 2 * kPi / (sep * dn); }
  // Rises of |G| between its exact minima and maxima, and the log-rises.
  std::pair<double, double> oracle(double horizon, int& intervals) const {
    double rise = 0.0, log_rise = 0.0;
    intervals = 0;
    for (int k = 0;; ++k) {
      const double tmin = (k + 0.5) * period();
      if (tmin >= horizon) break;
      const double tmax = std::min(horizon, (k + 1) * period());
      rise += modulus(tmax) - modulus(tmin);
      log_rise += std::log(modulus(tmax) / modulus(tmin));
      ++intervals;
    }
    return {rise, log_rise};
  }
};

Outcome closed_form_sum() {
  const TwoPeak tp;
  const double horizon = 2.7 * tp.period();
  PureDephasingModel m("two-peak", spectrum_decoherence(tp.spectrum(), tp.dn), horizon);
  MeasureConfig cfg;
  cfg.compute_rhp = false;
  const auto r = blp_measure(m, cfg);
  int intervals = 0;
  const double expected = tp.oracle(horizon, intervals).first;
  const double rel = std::abs(r.value - expected) / expected;
  return {rel < 0.01 && intervals >= 2,
          fmt::format("blp={:.6f} sum of G rises={:.6f} rel.err={:.2e} intervals={}", r.value, expected, rel,
                      intervals)};
}

Outcome rhp_consistency() {
  const TwoPeak tp;
  const double horizon = 2.7 * tp.period();
  PureDephasingModel m("two-peak", spectrum_decoherence(tp.spectrum(), tp.dn), horizon);
  const auto times = uniform_grid(horizon, 4001);
  const auto maps = m.bloch_maps(times);
  const auto r = rhp_measure(m, times, maps);
  // -2 int_{coef < 0} coef dt with the master-equation coefficient of the sigma_z channel.
  const auto gen = *m.generator();
  const auto fine = uniform_grid(horizon, 40001);
  double integral = 0.0;
  for (std::size_t k = 0; k + 1 < fine.size(); ++k) {
    const double a = std::min(0.0, gen.rates(fine[k])[0]), b = std::min(0.0, gen.rates(fine[k + 1])[0]);
    integral += 0.5 * (a + b) * (fine[k + 1] - fine[k]);
  }
  const double rate_value = -2.0 * integral;
  int intervals = 0;
  const double exact = tp.oracle(horizon, intervals).second;
  const double rel = std::abs(r.value - rate_value) / rate_value;
  return {!r.infinite && rel < 1e-3,
          fmt::format("Choi RHP={:.6f} -2*int(gamma<0)={:.6f} rel.err={:.2e} (sum of ln rises {:.6f})", r.value,
                      rate_value, rel, exact)};
}

// ---- 4 ----------------------------------------------------------------------

Outcome ohmic() {
  double worst = 0.0;
  std::string classes;
  double max_blp = 0.0;
  bool ok = true;
  for (double alpha : {0.1, 1.0}) {
    const auto j = SpectralDensity::ohmic(alpha, 1.0, 1.0);
    for (int k = 0; k <= 500; ++k) {
      const double t = 50.0 * k / 500;
      const double exact = std::pow(1.0 + t * t, -alpha / 2.0);
      worst = std::max(worst, std::abs(dephasing_G_thermal(j, kZeroTemperature, t) - exact));
    }
    PureDephasingModel m("ohmic", thermal_decoherence(j, kZeroTemperature), 50.0);
    MeasureConfig cfg;
    cfg.grid_points = 1001;
    const auto rep = evaluate(m, cfg);
    classes += fmt::format("{}{}", classes.empty() ? "" : ",", to_string(rep.divisibility));
    max_blp = std::max(max_blp, rep.blp);
    ok = ok && rep.divisibility == Divisibility::cp_divisible;
  }
  ok = ok && worst < 1e-6 && max_blp == 0.0;
  return {ok, fmt::format("max |G - closed form|={:.2e} classes={} blp={:.1e}", worst, classes, max_blp)};
}

// ---- 5 ----------------------------------------------------------------------

Outcome hierarchy() {
  RandomUnitaryRates tanh_rates{{[](double) { return 1.0; }, [](double) { return 1.0; },
                                 [](double t) { return -std::tanh(t); }},
                                {}};
  RandomUnitaryModel a("tanh", tanh_rates, 1.0, 5.0);
  MeasureConfig cfg;
  cfg.grid_points = 2001;
  const auto ra = evaluate(a, cfg);
  RandomUnitaryRates bump{{[](double) { return 0.1; }, [](double) { return 0.1; },
                           [](double t) { return t >= 5.0 && t <= 6.0 ? -0.15 : 0.0; }},
                          {5.0, 6.0}};
  RandomUnitaryModel b("bump", bump, 1.0, 8.0);
  const auto rb = evaluate(b, cfg);
  const bool ok = ra.divisibility == Divisibility::p_divisible_only && ra.blp <= 1e-8 && ra.rhp > 0.0 &&
                  rb.volume_monotone && rb.blp > 0.0;
  return {ok, fmt::format("tanh: class={} blp={:.1e} rhp={:.4f}; finite interval: volume_monotone={} blp={:.4e}",
                          to_string(ra.divisibility), ra.blp, ra.rhp, rb.volume_monotone, rb.blp)};
}

// ---- 6 ----------------------------------------------------------------------

Outcome contraction() {
  std::mt19937_64 rng(606);
  int violations = 0, checks = 0;
  double worst = -1.0;
  for (int m = 0; m < 500; ++m) {
    const auto phi = random_cptp_qubit(rng);
    for (int p = 0; p < 50; ++p) {
      const auto r1 = random_state(2, rng), r2 = random_state(2, rng);
      const double excess = trace_distance(apply_map(phi, r1), apply_map(phi, r2)) - trace_distance(r1, r2);
      worst = std::max(worst, excess);
      if (excess > 1e-10) ++violations;
      ++checks;
    }
  }
  return {violations == 0, fmt::format("{} pairs, violations={}, max excess={:.2e}", checks, violations, worst)};
}

// ---- 7 ----------------------------------------------------------------------

Outcome geometry() {
  std::mt19937_64 rng(707);
  const TwoPeak tp;
  std::vector<std::unique_ptr<QubitModel>> models;
  models.push_back(std::make_unique<PureDephasingModel>("dephasing", spectrum_decoherence(tp.spectrum(), tp.dn),
                                                        2.7 * tp.period()));
  models.push_back(std::make_unique<AmplitudeDampingModel>(
      "lossy", lossy_cavity_decoherence(SpectralDensity::lorentzian(3.0, 1.0, 0.0, 0.0)), 15.0));
  bool ok = true;
  std::string detail;
  for (const auto& m : models) {
    const auto times = uniform_grid(m->default_horizon(), 2001);
    const auto maps = m->bloch_maps(times);
    const auto best = search_blp(times, maps);
    // States (I +- n.sigma)/2: antipodal and pure when alpha = 0 and |n| = 1.
    const bool antipodal = best.pair.alpha == 0.0 && std::abs(best.pair.direction.norm() - 1.0) < 1e-12;
    const Eigen::Vector3d n = best.pair.direction.normalized();
    const double off_equator = std::abs(std::asin(std::clamp(n.z(), -1.0, 1.0))) * 180.0 / kPi;
    double worst = -1.0;
    int exceed = 0;
    for (int s = 0; s < 1000; ++s) {
      const auto r1 = random_state(2, rng), r2 = random_state(2, rng);
      std::vector<double> d(times.size());
      for (std::size_t k = 0; k < times.size(); ++k) {
        const Eigen::Vector3d a = maps[k].apply(r1.bloch()), b = maps[k].apply(r2.bloch());
        d[k] = 0.5 * (a - b).norm();
      }
      const double v = positive_variation(times, d).total;
      worst = std::max(worst, v - best.value);
      if (v > best.value + 1e-9) ++exceed;
    }
    ok = ok && antipodal && off_equator <= 2.0 && exceed == 0;
    detail += fmt::format("{}{}: blp={:.5f} antipodal={} off-equator={:.3f} deg, interior pairs above optimum={} (max diff {:.2e})",
                          detail.empty() ? "" : "; ", m->name(), best.value, antipodal, off_equator, exceed, worst);
  }
  return {ok, detail};
}

// ---- 8 ----------------------------------------------------------------------

Outcome ising() {
  const int n = 8;
  const double delta = 0.1, coupling = 1.0;
  std::vector<double> grid, blp;
  for (int i = 0; i < 25; ++i) {
    const double lstar = 0.25 + 1.5 * i / 24;
    SpinChainSpec s;
    s.n = n;
    s.coupling = coupling;
    s.delta = delta;
    s.field = lstar - delta;
    const IsingProbe probe(s);
    PureDephasingModel m("ising", probe.decoherence(), 0.2 * n / coupling);
    MeasureConfig cfg;
    cfg.grid_points = 1001;
    grid.push_back(lstar);
    blp.push_back(blp_measure(m, cfg).value);
  }
  const double mn = *std::min_element(blp.begin(), blp.end());
  const double mx = *std::max_element(blp.begin(), blp.end());
  std::size_t nearest = 0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (std::abs(grid[i] - 1.0) < std::abs(grid[nearest] - 1.0)) nearest = i;
  int ties = 0;
  for (double v : blp) ties += v <= mn + 1e-12;
  const bool ok = blp[nearest] <= mn + 1e-12 && mn < 0.1 * mx;
  return {ok, fmt::format("blp(lambda*={:.4f})={:.3e} grid min={:.3e} (attained at {} points) max={:.3e}", grid[nearest],
                          blp[nearest], mn, ties, mx)};
}

// ---- 9 ----------------------------------------------------------------------

double max_increase(const std::vector<double>& v) {
  double worst = 0.0;
  for (std::size_t k = 1; k < v.size(); ++k) worst = std::max(worst, v[k] - v[k - 1]);
  return worst;
}

Outcome nonlocal() {
  const double tau = 3.0;
  const auto anti = nonlocal_dephasing_trajectory({1.0, -0.8, 1.0}, PlateSchedule::consecutive, tau, 4001);
  const auto indep = nonlocal_dephasing_trajectory({1.0, 0.0, 1.0}, PlateSchedule::consecutive, tau, 4001);
  const double inc1 = max_increase(anti.local1), inc2 = max_increase(anti.local2);
  const double g_anti = positive_variation(anti.times, anti.global).total;
  const double g_indep = positive_variation(indep.times, indep.global).total;
  const bool ok = inc1 <= 1e-10 && inc2 <= 1e-10 && g_anti > 1e-3 && g_indep <= 1e-8;
  return {ok, fmt::format("K=-0.8: local max increase {:.1e}/{:.1e}, global blp={:.4f}; K=0: global blp={:.1e}", inc1,
                          inc2, g_anti, g_indep)};
}

// ---- 10, 11 -------------------------------------------------------------------

CMatrix random_hermitian(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  CMatrix a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = Complex(nd(rng), nd(rng));
  return 0.5 * (a + a.adjoint());
}

correlations::TotalSystem random_system(int ds, int de, std::mt19937_64& rng) {
  return {ds, de, random_hermitian(ds, rng), random_hermitian(de, rng), 0.5 * random_hermitian(ds * de, rng)};
}

Outcome info_flow_check() {
  std::mt19937_64 rng(1010);
  const std::pair<int, int> dims[] = {{2, 2}, {2, 8}, {4, 4}};
  bool ok = true;
  std::string detail;
  for (auto [ds, de] : dims) {
    const auto ts = random_system(ds, de, rng);
    const auto env = random_state(de, rng);
    const DensityMatrix r1(kron(random_state(ds, rng).matrix(), env.matrix()));
    const DensityMatrix r2(kron(random_state(ds, rng).matrix(), env.matrix()));
    const auto f = correlations::info_flow(ts, r1, r2, uniform_grid(10.0, 501));
    double err = 0.0;
    for (std::size_t k = 0; k < f.times.size(); ++k)
      err = std::max(err, std::abs(f.i_int[k] + f.i_ext[k] - f.i_int[0]));
    ok = ok && err < 1e-9 && f.bound_holds;
    detail += fmt::format("{}{}x{}: max|I_int+I_ext-I_int(0)|={:.1e} bound slack={:.2e}", detail.empty() ? "" : "; ",
                          ds, de, err, f.bound_slack);
  }
  return {ok, detail};
}

Outcome witness() {
  std::mt19937_64 rng(1111);
  const auto times = uniform_grid(5.0, 101);
  int false_positives = 0;
  for (int i = 0; i < 100; ++i) {
    const auto ts = random_system(2, 3, rng);
    const DensityMatrix rho(kron(random_state(2, rng).matrix(), random_state(3, rng).matrix()));
    if (correlations::initial_correlation_witness(ts, rho, random_cptp_qubit(rng), times).witness) ++false_positives;
  }
  const correlations::TotalSystem engineered(2, 2, CMatrix::Zero(2, 2), CMatrix::Zero(2, 2),
                                             kron(pauli::x(), pauli::z()));
  CMatrix corr = CMatrix::Zero(4, 4);
  corr(0, 0) = corr(3, 3) = 0.5;
  const auto w = correlations::initial_correlation_witness(engineered, DensityMatrix(corr),
                                                           QuantumMap::unitary(pauli::x()), uniform_grid(2.0, 201));
  double min_slack = 1.0;
  const auto ts = random_system(2, 2, rng);
  for (int i = 0; i < 50; ++i) {
    const auto b = correlations::discord_lower_bound(ts, random_state(4, rng), times);
    min_slack = std::min(min_slack, b.c - b.lower_bound);
  }
  const bool ok = false_positives == 0 && w.max_excursion > 0.05 && min_slack >= -1e-9;
  return {ok, fmt::format("false positives={}/100, engineered excursion={:.4f}, min(C - bound)={:.3e}", false_positives,
                          w.max_excursion, min_slack)};
}

// ---- 12 ---------------------------------------------------------------------

Outcome quantum_classical() {
  const double gamma = 0.8;
  CMatrix sm = CMatrix::Zero(2, 2);
  sm(0, 1) = 1.0;
  const TimeLocalGenerator gen(2, [](double) { return CMatrix(CMatrix::Zero(2, 2)); },
                               {DecayChannel{sm, [gamma](double) { return gamma; }}});
  const auto w = classical::quantum_to_classical(gen, CMatrix::Identity(2, 2));
  const auto times = uniform_grid(6.0, 121);
  CMatrix rho0 = CMatrix::Zero(2, 2);
  rho0(0, 0) = 0.3;
  rho0(1, 1) = 0.7;
  const auto quantum = gen.evolve(rho0, 0.0, times, 1e-12, 1e-14);
  const auto classical_p = classical::pauli_evolve(w, RVector(rho0.diagonal().real()), times);
  double err = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k)
    err = std::max(err, (quantum[k].diagonal().real() - classical_p[k]).cwiseAbs().maxCoeff());

  std::mt19937_64 rng(1212);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int increases = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const double a = u(rng), b = u(rng);
    const RVector p(RVector::Map(std::vector<double>{a, 1 - a}.data(), 2));
    const RVector q(RVector::Map(std::vector<double>{b, 1 - b}.data(), 2));
    const double p1 = u(rng);
    double last = classical::kolmogorov_distance(p, q, p1, 1 - p1);
    for (std::size_t k = 1; k < times.size(); ++k) {
      const auto t = classical::transition_matrix(w, times[k], 0.0);
      const double d = classical::kolmogorov_distance(t.apply(p), t.apply(q), p1, 1 - p1);
      if (d > last + 1e-12) ++increases;
      last = d;
    }
  }
  return {err < 1e-8 && increases == 0,
          fmt::format("max |diag rho - P|={:.2e}, Kolmogorov increases={}", err, increases)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
  };
  const Criterion all[] = {
      {1, "Markovian/non-Markovian threshold (lossy cavity)", threshold},
      {2, "dephasing BLP equals summed G rises", closed_form_sum},
      {3, "RHP Choi vs rate integral", rhp_consistency},
      {4, "Ohmic T=0 quadrature and Markovianity", ohmic},
      {5, "measure hierarchy discrimination", hierarchy},
      {6, "contraction under CPTP maps", contraction},
      {7, "optimal pair geometry", geometry},
      {8, "Ising probe criticality", ising},
      {9, "nonlocal memory effects", nonlocal},
      {10, "information-flow conservation", info_flow_check},
      {11, "initial-correlation witness and discord bound", witness},
      {12, "quantum to classical reduction", quantum_classical},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %2d %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(all)) - failed, std::size(all));
  return failed == 0 ? 0 : 1;
}
