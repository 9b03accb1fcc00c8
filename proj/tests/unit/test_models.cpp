#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>

#include "doctest.h"
#include "helpers.hpp"

#include "nmflow/core/errors.hpp"
#include "nmflow/core/metrics.hpp"
#include "nmflow/models/dephasing.hpp"
#include "nmflow/models/ising_probe.hpp"
#include "nmflow/models/lossy_cavity.hpp"
#include "nmflow/models/photonic.hpp"
#include "nmflow/models/qubit_model.hpp"
#include "nmflow/models/random_unitary.hpp"
#include "nmflow/models/xx_chain.hpp"

using namespace nmflow;
using namespace nmflow::models;
using namespace nmflow::testing;

namespace {

// Closed form for the detuned cavity: roots of r^2 + (l + i D) r + g0 l / 2 = 0.
Complex detuned_closed_form(double g0, double l, double delta, double t) {
  const Complex b(l, delta);
  const Complex disc = std::sqrt(b * b - 2.0 * g0 * l);
  const Complex r1 = 0.5 * (-b + disc), r2 = 0.5 * (-b - disc);
  return (r2 * std::exp(r1 * t) - r1 * std::exp(r2 * t)) / (r2 - r1);
}

// Direct trapezoidal discretisation of dG/dt = -int_0^t f(t - s) G(s) ds.
std::vector<Complex> volterra(double g0, double l, double delta, double h, int n) {
  auto f = [&](double tau) { return 0.5 * g0 * l * std::exp(-Complex(l, delta) * tau); };
  std::vector<Complex> g(n + 1), fk(n + 1);
  for (int k = 0; k <= n; ++k) fk[k] = f(k * h);
  g[0] = 1.0;
  Complex prev_rhs = 0.0;
  for (int m = 0; m < n; ++m) {
    // F_{m+1} = h [f_{m+1} G_0 / 2 + sum_{k=1}^{m} f_{m+1-k} G_k + f_0 G_{m+1} / 2]
    Complex known = 0.5 * fk[m + 1] * g[0];
    for (int k = 1; k <= m; ++k) known += fk[m + 1 - k] * g[k];
    known *= h;
    const Complex c = 0.5 * h * fk[0];
    // G_{m+1} = G_m - h/2 (F_m + F_{m+1}), F_{m+1} = known + c G_{m+1}
    g[m + 1] = (g[m] - 0.5 * h * (prev_rhs + known)) / (1.0 + 0.5 * h * c);
    prev_rhs = known + c * g[m + 1];
  }
  return g;
}

DensityMatrix bloch_state(const Eigen::Vector3d& r) { return DensityMatrix::from_bloch(r); }

Eigen::Vector3d random_ball(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::Vector3d v(n(rng), n(rng), n(rng));
  return v.normalized() * std::cbrt(u(rng));
}

RandomUnitaryRates constant_rates(double a, double b, double c) {
  return {{[a](double) { return a; }, [b](double) { return b; }, [c](double) { return c; }}, {}};
}

}  // namespace

TEST_CASE("Ohmic zero-temperature decoherence matches its closed form") {
  for (double alpha : {0.1, 1.0}) {
    const double wc = 2.0;
    const auto j = SpectralDensity::ohmic(alpha, 1.0, wc);
    for (int k = 0; k <= 100; ++k) {
      const double t = 50.0 / wc * k / 100.0;
      const double exact = std::pow(1.0 + wc * wc * t * t, -0.5 * alpha);
      CHECK(dephasing_G_thermal(j, kZeroTemperature, t) == doctest::Approx(exact).epsilon(1e-6));
    }
  }
}

TEST_CASE("Ohmic dephasing rate matches the differentiated closed form") {
  const double alpha = 0.5, wc = 1.0;
  const auto j = SpectralDensity::ohmic(alpha, 1.0, wc);
  auto g = thermal_decoherence(j, kZeroTemperature);
  DecoherenceFunction fd_only = g;
  fd_only.derivative = nullptr;
  for (double t : {0.1, 0.5, 1.0, 3.0, 10.0}) {
    const double exact = alpha * wc * wc * t / (1.0 + wc * wc * t * t);
    CHECK(std::abs(dephasing_rate(g, t) - exact) < 1e-5);
    CHECK(std::abs(dephasing_rate(fd_only, t) - exact) < 1e-5);
    CHECK(dephasing_rate(g, t) >= 0.0);
  }
}

TEST_CASE("super-Ohmic decoherence reaches a plateau") {
  const double alpha = 0.3, wc = 1.0;
  const auto j = SpectralDensity::ohmic(alpha, 3.0, wc);
  // exponent = alpha [1 - Re (1 - i wc t)^-2]
  auto exact = [&](double t) {
    const Complex z = 1.0 - Complex(0.0, wc * t);
    return std::exp(-alpha * (1.0 - (1.0 / (z * z)).real()));
  };
  for (double t : {0.5, 2.0, 10.0, 40.0})
    CHECK(dephasing_G_thermal(j, kZeroTemperature, t) == doctest::Approx(exact(t)).epsilon(1e-7));
  const double late = dephasing_G_thermal(j, kZeroTemperature, 200.0);
  CHECK(late > 0.0);
  CHECK(late == doctest::Approx(std::exp(-alpha)).epsilon(1e-4));
}

TEST_CASE("divergent dephasing integrals are rejected") {
  CHECK_THROWS_AS(dephasing_G_thermal(SpectralDensity::ohmic(0.1, 0.0, 1.0), 2.0, 1.0), DivergentIntegral);
  CHECK_THROWS_AS(dephasing_G_thermal(SpectralDensity::ohmic(0.1, -1.5, 1.0), kZeroTemperature, 1.0),
                  DivergentIntegral);
  CHECK_NOTHROW(dephasing_G_thermal(SpectralDensity::ohmic(0.1, -0.5, 1.0), kZeroTemperature, 1.0));
  CHECK(dephasing_G_thermal(SpectralDensity::ohmic(0.1, 1.0, 1.0), 2.0, 0.0) == 1.0);
}

TEST_CASE("finite-temperature decoherence is faster than zero temperature") {
  const auto j = SpectralDensity::ohmic(0.2, 1.0, 1.0);
  for (double t : {0.5, 2.0, 5.0})
    CHECK(dephasing_G_thermal(j, 1.0, t) < dephasing_G_thermal(j, kZeroTemperature, t));
}

TEST_CASE("exponential decoherence has a constant rate") {
  const double kappa = 0.7;
  DecoherenceFunction g;
  g.value = [kappa](double t) { return Complex(std::exp(-kappa * t)); };
  for (double t : {0.0, 0.3, 2.0, 8.0}) CHECK(dephasing_rate(g, t) == doctest::Approx(kappa).epsilon(1e-7));
  DecoherenceFunction zero;
  zero.value = [](double) { return Complex(0.0); };
  CHECK_THROWS_AS(dephasing_rate(zero, 1.0), ZeroCrossing);
}

TEST_CASE("resonant lossy cavity: first zero at strong coupling") {
  const double l = 1.3;
  const auto j = SpectralDensity::lorentzian(2.0 * l, l, 0.0, 10.0);
  const double tz = 4.0 * std::numbers::pi / (3.0 * std::sqrt(3.0) * l);
  CHECK(std::abs(lossy_cavity_first_zero(2.0 * l, l) - tz) < 1e-8);
  CHECK(std::abs(lossy_cavity_G(j, tz)) < 1e-8);
  CHECK(lossy_cavity_G(j, 0.0) == Complex(1.0));
  const auto g = lossy_cavity_decoherence(j);
  CHECK(std::abs(lossy_cavity_rates(g, 0.999 * tz).decay) > 100.0);
  CHECK_THROWS_AS(lossy_cavity_rates(g, tz), ZeroCrossing);
  CHECK(std::isinf(lossy_cavity_first_zero(0.4, 1.0)));
}

TEST_CASE("resonant lossy cavity: weak coupling is monotone and Lindblad-like") {
  const auto j = SpectralDensity::lorentzian(0.4, 1.0, 0.0, 10.0);
  double prev = 1.0;
  for (int k = 1; k <= 2000; ++k) {
    const double m = std::abs(lossy_cavity_G(j, 20.0 * k / 2000.0));
    CHECK(m < prev);
    prev = m;
  }
  const auto weak = lossy_cavity_decoherence(SpectralDensity::lorentzian(0.01, 1.0, 0.0, 10.0));
  CHECK(lossy_cavity_rates(weak, 50.0).decay == doctest::Approx(0.01).epsilon(0.01));
  CHECK(lossy_cavity_rates(weak, 50.0).lamb_shift == 0.0);
}

TEST_CASE("resonant lossy cavity derivative agrees with finite differences") {
  for (double g0 : {0.3, 0.5, 3.0}) {
    const auto j = SpectralDensity::lorentzian(g0, 1.0, 0.0, 10.0);
    for (double t : {0.2, 1.0, 2.5}) {
      const double h = 1e-5;
      const Complex fd = (lossy_cavity_G(j, t + h) - lossy_cavity_G(j, t - h)) / (2.0 * h);
      CHECK(std::abs(lossy_cavity_G_derivative(j, t) - fd) < 1e-8);
    }
  }
}

TEST_CASE("detuned lossy cavity ODE matches closed form and Volterra discretisation") {
  const double g0 = 1.5, l = 1.0, delta = 0.8;
  const auto j = SpectralDensity::lorentzian(g0, l, delta, 10.0);
  for (double t : {0.0, 0.5, 2.0, 5.0, 10.0}) {
    CHECK(std::abs(lossy_cavity_G(j, t) - detuned_closed_form(g0, l, delta, t)) < 1e-8);
  }
  const double h = 2.5e-4;
  const int n = 16000;  // t up to 4
  const auto gv = volterra(g0, l, delta, h, n);
  for (int k : {2000, 8000, 16000})
    CHECK(std::abs(lossy_cavity_G(j, k * h) - gv[k]) < 1e-6);
  const Complex fd = (lossy_cavity_G(j, 1.0 + 1e-5) - lossy_cavity_G(j, 1.0 - 1e-5)) / 2e-5;
  CHECK(std::abs(lossy_cavity_G_derivative(j, 1.0) - fd) < 1e-6);
}

TEST_CASE("lossy cavity map: identity at 0, populations and trace distance") {
  const auto j = SpectralDensity::lorentzian(3.0, 1.0, 0.0, 10.0);
  CHECK(choi_distance(amplitude_damping_map(lossy_cavity_G(j, 0.0)), QuantumMap::identity(2)) < 1e-10);
  std::mt19937_64 rng(7);
  for (double t : {0.3, 1.0, 2.2, 4.0}) {
    const Complex g = lossy_cavity_G(j, t);
    const auto m = amplitude_damping_map(g);
    const auto bl = amplitude_damping_bloch(g);
    CHECK(BlochAffine::from_map(m).linear.isApprox(bl.linear, 1e-12));
    for (int s = 0; s < 20; ++s) {
      const auto r1 = random_state(2, rng), r2 = random_state(2, rng);
      const auto o1 = apply_map(m, r1), o2 = apply_map(m, r2);
      CHECK(std::abs(o1.matrix()(1, 1) - std::norm(g) * r1.matrix()(1, 1)) < 1e-12);
      CHECK(std::abs(o1.coherence() - g * r1.coherence()) < 1e-12);
      const double a = (r1.matrix()(1, 1) - r2.matrix()(1, 1)).real();
      const double b = std::abs(r1.coherence() - r2.coherence());
      const double m2 = std::norm(g);
      const double expected = std::abs(g) * std::sqrt(m2 * a * a + b * b);
      CHECK(std::abs(trace_distance(o1, o2) - expected) < 1e-9);
    }
  }
}

TEST_CASE("pure dephasing map: populations frozen, trace distance closed form") {
  std::mt19937_64 rng(11);
  for (Complex g : {Complex(0.7, 0.1), Complex(-0.2, 0.5), Complex(0.0, 0.0)}) {
    const auto m = pure_dephasing_map(g);
    for (int s = 0; s < 20; ++s) {
      const auto r1 = random_state(2, rng), r2 = random_state(2, rng);
      const auto o1 = apply_map(m, r1), o2 = apply_map(m, r2);
      CHECK(std::abs(o1.matrix()(0, 0) - r1.matrix()(0, 0)) < 1e-14);
      const double a = (r1.matrix()(1, 1) - r2.matrix()(1, 1)).real();
      const double b = std::abs(r1.coherence() - r2.coherence());
      CHECK(std::abs(trace_distance(o1, o2) - std::sqrt(a * a + std::norm(g) * b * b)) < 1e-9);
    }
  }
  CHECK_THROWS_AS(pure_dephasing_map(Complex(1.1, 0.0)), InvalidArgument);
}

TEST_CASE("amplitude-damping generator reproduces the map, detuned case included") {
  for (double delta : {0.0, 0.9}) {
    const auto j = SpectralDensity::lorentzian(0.4, 1.0, delta, 10.0);
    AmplitudeDampingModel model("cavity", lossy_cavity_decoherence(j), 10.0);
    const auto gen = *model.generator();
    const CMatrix rho0 = DensityMatrix::from_bloch(Eigen::Vector3d(0.5, -0.3, -0.6)).matrix();
    const std::vector<double> ts{0.5, 1.5, 4.0};
    const auto out = gen.evolve(rho0, 0.0, ts, 1e-11, 1e-13);
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const CMatrix expect = apply_to_operator(model.map(ts[k]), rho0);
      CHECK((out[k] - expect).norm() < 1e-7);
    }
  }
}

TEST_CASE("dephasing generator reproduces a complex decoherence function") {
  const FrequencySpectrum f({1.0, 3.0, 4.0}, {0.5, 0.3, 0.2});
  PureDephasingModel model("spectrum", spectrum_decoherence(f, 0.5), 4.0);
  const auto gen = *model.generator();
  const CMatrix rho0 = DensityMatrix::from_bloch(Eigen::Vector3d(0.6, 0.2, 0.1)).matrix();
  const std::vector<double> ts{0.5, 1.0, 2.0};
  const auto out = gen.evolve(rho0, 0.0, ts, 1e-11, 1e-13);
  for (std::size_t k = 0; k < ts.size(); ++k)
    CHECK((out[k] - apply_to_operator(model.map(ts[k]), rho0)).norm() < 1e-7);
}

TEST_CASE("random-unitary coefficients") {
  const double gam = 0.4;
  const auto eq = constant_rates(gam, gam, gam);
  for (double t : {0.0, 0.5, 3.0}) {
    const auto p = random_unitary_coefficients(integrated_rates(eq, t));
    const double e = std::exp(-2.0 * gam * t);
    CHECK(p[0] == doctest::Approx(0.25 * (1.0 + 3.0 * e)).epsilon(1e-12));
    for (int i = 1; i < 4; ++i) CHECK(p[i] == doctest::Approx(0.25 * (1.0 - e)).epsilon(1e-10));
    CHECK(p[0] + p[1] + p[2] + p[3] == doctest::Approx(1.0).epsilon(1e-15));
  }
  const auto zero = random_unitary_coefficients({0.0, 0.0, 0.0});
  CHECK(zero[0] == 1.0);
  CHECK(choi_distance(random_unitary_map(zero), QuantumMap::identity(2)) < 1e-14);

  RandomUnitaryRates tanh_rates{{[](double) { return 1.0; }, [](double) { return 1.0; },
                                 [](double t) { return -std::tanh(t); }},
                                {}};
  std::vector<double> grid;
  for (int k = 0; k <= 200; ++k) grid.push_back(0.05 * k);
  const auto gs = integrated_rates_on_grid(tanh_rates, grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto p = random_unitary_coefficients(gs[k]);
    for (double x : p) CHECK(x >= -1e-12);
    const double t = grid[k];
    CHECK(p[1] == doctest::Approx(0.25 * (1.0 - std::exp(-2.0 * t))).epsilon(1e-9));
    CHECK(std::abs(p[3]) < 1e-9);
  }
}

TEST_CASE("random-unitary map, volume, generator and relaxation times") {
  RandomUnitaryRates r{{[](double t) { return 0.3 + 0.1 * std::sin(t); }, [](double) { return 0.2; },
                        [](double t) { return t > 1.0 && t < 2.0 ? -0.1 : 0.05; }},
                       {1.0, 2.0}};
  RandomUnitaryModel model("ru", r, 1.0, 5.0);
  const auto gen = *model.generator();
  const CMatrix rho0 = DensityMatrix::from_bloch(Eigen::Vector3d(0.3, 0.5, -0.4)).matrix();
  const std::vector<double> ts{0.7, 1.5, 3.0};
  const auto maps = model.bloch_maps(ts);
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const auto big = integrated_rates(r, ts[k]);
    CHECK(maps[k].volume() == doctest::Approx(std::exp(-2.0 * (big[0] + big[1] + big[2]))).epsilon(1e-9));
    const auto p = random_unitary_coefficients(big);
    CHECK(choi_distance(random_unitary_map(p), maps[k].to_map()) < 1e-10);
    CHECK(maps[k].linear.isApprox(model.bloch_map(ts[k]).linear, 1e-10));
  }
  const auto out = gen.evolve(rho0, 0.0, ts, 1e-11, 1e-13);
  for (std::size_t k = 0; k < ts.size(); ++k)
    CHECK((out[k] - apply_to_operator(maps[k].to_map(), rho0)).norm() < 1e-7);
  const auto tr = relaxation_times(constant_rates(1.0, 2.0, 3.0), 0.0);
  CHECK(tr[0] == doctest::Approx(0.2));
  CHECK(tr[2] == doctest::Approx(1.0 / 3.0));
  const auto nonpos = random_unitary_map({1.2, -0.1, -0.05, -0.05});
  CHECK_FALSE(nonpos.kraus().has_value());
}

TEST_CASE("Ising probe: N = 2 agrees with brute-force exponentials") {
  const int n = 2;
  const double jc = 1.0, lam = 0.4, delta = 0.3;
  const RMatrix hg = ising_hamiltonian(n, jc, lam);
  const RMatrix he = ising_hamiltonian(n, jc, lam + delta);
  Eigen::SelfAdjointEigenSolver<RMatrix> es(hg);
  const CVector phi = es.eigenvectors().col(0).cast<Complex>();
  IsingProbe ground({n, jc, lam, delta, std::nullopt});
  IsingProbe tab({n, jc, lam, delta, phi});
  for (double t : {0.0, 0.4, 1.3, 5.0}) {
    const CVector a = unitary_propagator(he.cast<Complex>(), t) * phi;
    const CVector b = unitary_propagator(hg.cast<Complex>(), t) * phi;
    const Complex exact = b.dot(a);
    CHECK(std::abs(ground.G(t) - exact) < 1e-9);
    CHECK(std::abs(tab.G(t) - exact) < 1e-9);
    const double h = 1e-6;
    const Complex fd = (tab.G(t + h) - tab.G(t - h)) / (2.0 * h);
    CHECK(std::abs(tab.G_derivative(t) - fd) < 1e-7);
    CHECK(std::abs(ground.G_derivative(t) - fd) < 1e-7);
  }
}

TEST_CASE("Ising probe: limits, criticality and revivals") {
  IsingProbe same({8, 1.0, 0.5, 0.0, std::nullopt});
  for (double t : {0.3, 2.0}) CHECK(std::abs(same.G(t) - Complex(1.0)) < 1e-10);
  CHECK_THROWS_AS(IsingProbe({13, 1.0, 0.5, 0.1, std::nullopt}), InvalidArgument);

  const double delta = 0.1, window = 0.2 * 8;
  auto sqrt_l = [](const IsingProbe& p, double t) { return std::sqrt(p.loschmidt(t)); };
  IsingProbe critical({8, 1.0, 1.0 - delta, delta, std::nullopt});
  double prev = 1.0 + 1e-15;
  for (int k = 0; k <= 400; ++k) {
    const double v = sqrt_l(critical, window * k / 400.0);
    CHECK(v <= prev + 1e-12);
    prev = v;
  }
  IsingProbe ordered({8, 1.0, 0.5 - delta, delta, std::nullopt});
  bool rose = false;
  prev = 1.0;
  for (int k = 1; k <= 2000; ++k) {
    const double v = sqrt_l(ordered, 20.0 * k / 2000.0);
    if (v > prev + 1e-6) rose = true;
    prev = v;
  }
  CHECK(rose);
  CHECK(std::abs(ordered.G(0.0)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("XX chain rate") {
  CHECK(xx_chain_sigma(0.0) == 0.0);
  CHECK(std::abs(xx_chain_sigma(1e-6)) < 1e-5);
  const double root = 3.8317059702075125 / 2.0;
  CHECK(xx_chain_sigma(root - 1e-4) * xx_chain_sigma(root + 1e-4) < 0.0);
  double positive = 0.0;
  const int n = 200000;
  for (int k = 1; k <= n; ++k) positive += std::max(0.0, xx_chain_sigma(20.0 * k / n)) * 20.0 / n;
  CHECK(positive > 0.0);
  // D(t) = 1 + int sigma stays a trace distance.
  for (double t : {0.5, 2.0, 7.0, 15.0}) {
    const double d = xx_chain_distance(t);
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
  }
}

TEST_CASE("spectrum-driven decoherence") {
  const FrequencySpectrum delta_peak({5.0}, {1.0});
  for (double t : {0.0, 1.0, 17.0}) CHECK(std::abs(spectrum_dephasing_G(delta_peak, 0.3, t)) == doctest::Approx(1.0));

  const double omega_sep = 2.0, dn = 0.5;
  const FrequencySpectrum two({10.0 - 0.5 * omega_sep, 10.0 + 0.5 * omega_sep}, {0.5, 0.5});
  for (double t : {0.0, 0.7, 2.0, 5.5})
    CHECK(std::abs(spectrum_dephasing_G(two, dn, t)) ==
          doctest::Approx(std::abs(std::cos(omega_sep * dn * t / 2.0))).epsilon(1e-12));

  const double c = 0.8, w0 = 3.0;
  std::vector<double> om, wt;
  for (int k = -4000; k <= 4000; ++k) {
    const double w = w0 + 12.0 * std::sqrt(c) * k / 4000.0;
    om.push_back(w);
    wt.push_back(std::exp(-(w - w0) * (w - w0) / (2.0 * c)));
  }
  const auto gauss = FrequencySpectrum::normalized(om, wt);
  for (double t : {0.5, 1.5, 3.0})
    CHECK(std::abs(spectrum_dephasing_G(gauss, dn, t)) ==
          doctest::Approx(std::exp(-0.5 * c * dn * dn * t * t)).epsilon(1e-9));
  CHECK_THROWS_AS(FrequencySpectrum({1.0, 2.0}, {0.5, 0.6}), InvalidArgument);
  CHECK_THROWS_AS(FrequencySpectrum({1.0, 2.0}, {1.5, -0.5}), InvalidArgument);
}

TEST_CASE("spectrum file reader") {
  const std::string path = "nmflow_test_spectrum.txt";
  {
    std::ofstream out(path);
    out << "# omega weight\n1.0 2.0\n\n  # indented comment\n3.0 2.0\n";
  }
  const auto s = FrequencySpectrum::read(path);
  CHECK(s.omega().size() == 2);
  CHECK(s.weight()[0] == doctest::Approx(0.5));
  {
    std::ofstream out(path);
    out << "1.0 oops\n";
  }
  CHECK_THROWS_AS(FrequencySpectrum::read(path), InvalidArgument);
  std::remove(path.c_str());
}

TEST_CASE("Fabry-Perot spectrum goes from one peak to two") {
  auto peaks = [](const FrequencySpectrum& s) {
    const auto& w = s.weight();
    const double top = *std::max_element(w.begin(), w.end());
    int count = 0;
    for (std::size_t k = 1; k + 1 < w.size(); ++k)
      if (w[k] > w[k - 1] && w[k] >= w[k + 1] && w[k] > 0.05 * top) ++count;
    return count;
  };
  FabryPerotParams p;
  CHECK(peaks(fabry_perot_spectrum(p)) == 1);
  // Centre midway between orders m - 1 and m: cos(theta) = (m - 1/2) fsr / w0.
  p.theta = std::acos((p.center / p.fsr - 0.5) * p.fsr / p.center);
  const auto two = fabry_perot_spectrum(p);
  CHECK(peaks(two) == 2);
  // Equal weights on both sides of the input centre.
  double lo = 0.0, hi = 0.0;
  for (std::size_t k = 0; k < two.omega().size(); ++k) (two.omega()[k] < p.center ? lo : hi) += two.weight()[k];
  CHECK(lo == doctest::Approx(hi).epsilon(0.02));
}

TEST_CASE("nonlocal photon dephasing") {
  const NonlocalPhotonParams uncorrelated{1.0, 0.0, 1.0};
  const auto simul = nonlocal_dephasing_trajectory(uncorrelated, PlateSchedule::simultaneous, 2.0, 41);
  for (std::size_t k = 0; k < simul.times.size(); ++k) {
    const double t = simul.times[k];
    CHECK(std::abs(simul.global[k] - std::exp(-t * t)) < 1e-12);
    if (k > 0) CHECK(simul.global[k] <= simul.global[k - 1]);
  }
  const NonlocalPhotonParams anti{1.0, -1.0, 1.0};
  for (double t : {0.5, 3.0}) CHECK(nonlocal_bell_distance(anti, t, t) == doctest::Approx(1.0));

  const NonlocalPhotonParams p{1.0, -0.8, 1.0};
  const auto tr = nonlocal_dephasing_trajectory(p, PlateSchedule::consecutive, 1.5, 61);
  bool increased = false;
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    const auto [t1, t2] = plate_times(PlateSchedule::consecutive, 1.5, tr.times[k]);
    CHECK(std::abs(tr.global[k] - nonlocal_bell_distance(p, t1, t2)) < 1e-12);
    CHECK(std::abs(tr.local1[k] - std::exp(-0.5 * t1 * t1)) < 1e-12);
    CHECK(std::abs(tr.local2[k] - std::exp(-0.5 * t2 * t2)) < 1e-12);
    if (k > 0) {
      CHECK(tr.local1[k] <= tr.local1[k - 1] + 1e-12);
      CHECK(tr.local2[k] <= tr.local2[k - 1] + 1e-12);
      if (tr.global[k] > tr.global[k - 1] + 1e-6) increased = true;
    }
  }
  CHECK(increased);
  CHECK_THROWS_AS(nonlocal_dephasing_map({1.0, 1.5, 1.0}, 0.1, 0.1), InvalidArgument);
}

TEST_CASE("every model starts at the identity and keeps |G| <= 1") {
  std::vector<std::unique_ptr<QubitModel>> ms;
  ms.push_back(std::make_unique<PureDephasingModel>(
      "ohmic", thermal_decoherence(SpectralDensity::ohmic(0.5, 1.0, 1.0), kZeroTemperature), 10.0));
  ms.push_back(std::make_unique<AmplitudeDampingModel>(
      "cavity", lossy_cavity_decoherence(SpectralDensity::lorentzian(3.0, 1.0, 0.0, 10.0)), 10.0));
  ms.push_back(std::make_unique<AmplitudeDampingModel>(
      "detuned", lossy_cavity_decoherence(SpectralDensity::lorentzian(3.0, 1.0, 1.0, 10.0)), 10.0));
  ms.push_back(std::make_unique<PureDephasingModel>(
      "ising", IsingProbe({6, 1.0, 0.4, 0.1, std::nullopt}).decoherence(), 2.0));
  ms.push_back(std::make_unique<RandomUnitaryModel>("ru", constant_rates(0.1, 0.2, 0.3), 1.0, 5.0));
  for (const auto& m : ms) {
    CHECK(choi_distance(m->map(0.0), QuantumMap::identity(2)) < 1e-10);
    if (const auto* g = m->decoherence()) {
      for (int k = 0; k <= 50; ++k) CHECK(std::abs((*g)(m->default_horizon() * k / 50.0)) <= 1.0 + 1e-8);
    }
  }
}
