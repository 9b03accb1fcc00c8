#include "nmflow/models/lossy_cavity.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "nmflow/core/errors.hpp"

namespace nmflow::models {
namespace {

const Lorentzian& require_lorentzian(const SpectralDensity& j) {
  const auto* l = j.lorentzian_params();
  if (!l) throw InvalidArgument("lossy cavity model needs a Lorentzian spectral density");
  if (!(l->gamma0 > 0.0)) throw InvalidArgument("lossy cavity coupling gamma0 must be positive");
  return *l;
}

struct Resonant {
  Complex g;
  Complex dg;
};

Resonant resonant_closed_form(double gamma0, double lam, double t) {
  const Complex d = std::sqrt(Complex(lam * lam - 2.0 * gamma0 * lam, 0.0));
  const double damp = std::exp(-0.5 * lam * t);
  if (std::abs(d) < 1e-8 * lam) {
    // Critical coupling d -> 0: G = e^{-l t/2} (1 + l t/2).
    const double g = damp * (1.0 + 0.5 * lam * t);
    return {Complex(g), Complex(-0.25 * lam * lam * t * damp)};
  }
  const Complex ch = std::cosh(0.5 * d * t);
  const Complex sh = std::sinh(0.5 * d * t);
  const Complex g = damp * (ch + (lam / d) * sh);
  // d/dt: -l/2 G + e^{-lt/2} [d/2 sinh + l/2 cosh]
  const Complex dg = -0.5 * lam * g + damp * (0.5 * d * sh + 0.5 * lam * ch);
  return {g, dg};
}

using State = std::array<double, 4>;  // Re G, Im G, Re I, Im I

State integrate_detuned(const Lorentzian& l, double t) {
  namespace odeint = boost::numeric::odeint;
  State x{1.0, 0.0, 0.0, 0.0};
  if (t <= 0.0) return x;
  const double k0 = 0.5 * l.gamma0 * l.width;
  const Complex decay(l.width, l.detuning);
  auto rhs = [&](const State& s, State& ds, double) {
    const Complex g(s[0], s[1]);
    const Complex i(s[2], s[3]);
    const Complex dg = -i;
    const Complex di = k0 * g - decay * i;
    ds = {dg.real(), dg.imag(), di.real(), di.imag()};
  };
  auto stepper = odeint::make_controlled(1e-13, 1e-10, odeint::runge_kutta_dopri5<State>());
  const double scale = 1.0 / std::max({l.width, std::abs(l.detuning), l.gamma0});
  odeint::integrate_adaptive(stepper, rhs, x, 0.0, t, 0.01 * scale);
  return x;
}

}  // namespace

Complex lossy_cavity_G(const SpectralDensity& j, double t) {
  const auto& l = require_lorentzian(j);
  if (l.detuning == 0.0) return resonant_closed_form(l.gamma0, l.width, t).g;
  const State s = integrate_detuned(l, t);
  return {s[0], s[1]};
}

Complex lossy_cavity_G_derivative(const SpectralDensity& j, double t) {
  const auto& l = require_lorentzian(j);
  if (l.detuning == 0.0) return resonant_closed_form(l.gamma0, l.width, t).dg;
  const State s = integrate_detuned(l, t);
  return -Complex(s[2], s[3]);
}

DecoherenceFunction lossy_cavity_decoherence(const SpectralDensity& j) {
  const auto& l = require_lorentzian(j);
  DecoherenceFunction g;
  g.value = [j](double t) { return lossy_cavity_G(j, t); };
  g.derivative = [j](double t) { return lossy_cavity_G_derivative(j, t); };
  g.provenance = l.detuning == 0.0 ? Provenance::closed_form : Provenance::ode;
  g.time_scale = 1.0 / l.width;
  return g;
}

double lossy_cavity_first_zero(double gamma0, double width) {
  const double disc = 2.0 * gamma0 * width - width * width;
  if (disc <= 0.0) return std::numeric_limits<double>::infinity();
  // With d = i w: G ~ cos(w t/2) + (l/w) sin(w t/2), zero at tan(w t/2) = -w/l.
  const double w = std::sqrt(disc);
  const double x = std::numbers::pi - std::atan(w / width);
  return 2.0 * x / w;
}

LossyCavityRates lossy_cavity_rates(const DecoherenceFunction& g, double t) {
  const Complex gt = g(t);
  if (std::abs(gt) < 1e-12) {
    std::ostringstream os;
    os << "decoherence function vanishes at t = " << t;
    throw ZeroCrossing(os.str(), t);
  }
  Complex ratio;
  if (g.derivative) {
    ratio = g.derivative(t) / gt;
  } else {
    const double h = 1e-6 * g.time_scale;
    const Complex dg = t >= h ? (g(t + h) - g(t - h)) / (2.0 * h)
                              : (-3.0 * gt + 4.0 * g(t + h) - g(t + 2.0 * h)) / (2.0 * h);
    ratio = dg / gt;
  }
  return {-2.0 * ratio.imag(), -2.0 * ratio.real()};
}

QuantumMap amplitude_damping_map(Complex g) {
  const double m2 = std::norm(g);
  if (m2 > 1.0 + 1e-12) throw InvalidArgument("|G| > 1 does not define a CPTP amplitude-damping map");
  CMatrix k0 = CMatrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = g;
  CMatrix k1 = CMatrix::Zero(2, 2);
  k1(0, 1) = std::sqrt(std::max(0.0, 1.0 - m2));
  return QuantumMap::from_kraus({k0, k1});
}

BlochAffine amplitude_damping_bloch(Complex g) {
  BlochAffine a;
  const double m2 = std::norm(g);
  a.linear << g.real(), -g.imag(), 0.0,
              g.imag(), g.real(), 0.0,
              0.0, 0.0, m2;
  a.shift = Eigen::Vector3d(0.0, 0.0, 1.0 - m2);
  return a;
}

QuantumMap pure_dephasing_map(Complex g) {
  const double m2 = std::norm(g);
  if (m2 > 1.0 + 1e-12) throw InvalidArgument("|G| > 1 does not define a CPTP dephasing map");
  CMatrix k0 = CMatrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = g;
  CMatrix k1 = CMatrix::Zero(2, 2);
  k1(1, 1) = std::sqrt(std::max(0.0, 1.0 - m2));
  return QuantumMap::from_kraus({k0, k1});
}

BlochAffine pure_dephasing_bloch(Complex g) {
  BlochAffine a;
  a.linear << g.real(), -g.imag(), 0.0,
              g.imag(), g.real(), 0.0,
              0.0, 0.0, 1.0;
  return a;
}

}  // namespace nmflow::models
