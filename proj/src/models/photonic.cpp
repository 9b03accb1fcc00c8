#include "nmflow/models/photonic.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>

#include "nmflow/core/errors.hpp"
#include "nmflow/core/metrics.hpp"

namespace nmflow::models {

FrequencySpectrum::FrequencySpectrum(std::vector<double> omega, std::vector<double> weight)
    : omega_(std::move(omega)), weight_(std::move(weight)) {
  if (omega_.empty() || omega_.size() != weight_.size())
    throw InvalidArgument("frequency spectrum needs equally many frequencies and weights");
  double sum = 0.0;
  for (std::size_t k = 0; k < weight_.size(); ++k) {
    if (!std::isfinite(omega_[k]) || !std::isfinite(weight_[k]))
      throw InvalidArgument("frequency spectrum has non-finite entries");
    if (weight_[k] < 0.0) throw InvalidArgument("frequency spectrum has a negative weight");
    sum += weight_[k];
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    std::ostringstream os;
    os << "frequency spectrum is not normalised (weights sum to " << sum << ")";
    throw InvalidArgument(os.str());
  }
}

FrequencySpectrum FrequencySpectrum::normalized(std::vector<double> omega,
                                                std::vector<double> weight) {
  const double sum = std::accumulate(weight.begin(), weight.end(), 0.0);
  if (!(sum > 0.0)) throw InvalidArgument("frequency spectrum has zero total weight");
  for (double& w : weight) w /= sum;
  return FrequencySpectrum(std::move(omega), std::move(weight));
}

FrequencySpectrum FrequencySpectrum::read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open spectrum file " + path);
  std::vector<double> om, wt;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    double a, b;
    if (!(ls >> a >> b)) {
      std::ostringstream os;
      os << path << ":" << lineno << ": expected two numeric columns";
      throw InvalidArgument(os.str());
    }
    om.push_back(a);
    wt.push_back(b);
  }
  return normalized(std::move(om), std::move(wt));
}

double FrequencySpectrum::mean() const {
  double m = 0.0;
  for (std::size_t k = 0; k < omega_.size(); ++k) m += weight_[k] * omega_[k];
  return m;
}

double FrequencySpectrum::spread() const {
  const double m = mean();
  double v = 0.0;
  for (std::size_t k = 0; k < omega_.size(); ++k) v += weight_[k] * (omega_[k] - m) * (omega_[k] - m);
  return std::sqrt(v);
}

Complex spectrum_dephasing_G(const FrequencySpectrum& f, double delta_n, double t) {
  Complex g = 0.0;
  const auto& om = f.omega();
  const auto& w = f.weight();
  for (std::size_t k = 0; k < om.size(); ++k) g += w[k] * std::exp(kI * (om[k] * delta_n * t));
  return g;
}

DecoherenceFunction spectrum_decoherence(const FrequencySpectrum& f, double delta_n) {
  DecoherenceFunction g;
  g.value = [f, delta_n](double t) { return spectrum_dephasing_G(f, delta_n, t); };
  g.derivative = [f, delta_n](double t) {
    Complex d = 0.0;
    for (std::size_t k = 0; k < f.omega().size(); ++k) {
      const double w = f.omega()[k] * delta_n;
      d += f.weight()[k] * kI * w * std::exp(kI * (w * t));
    }
    return d;
  };
  g.provenance = Provenance::spectrum_fourier;
  const double s = f.spread() * std::abs(delta_n);
  g.time_scale = s > 0.0 ? 1.0 / s : 1.0;
  return g;
}

FrequencySpectrum fabry_perot_spectrum(const FabryPerotParams& p) {
  if (!(p.input_width > 0.0) || !(p.fsr > 0.0) || !(p.finesse >= 0.0) || p.points < 2 ||
      !(p.span > 0.0))
    throw InvalidArgument("invalid Fabry-Perot parameters");
  if (std::abs(std::cos(p.theta)) < 1e-6) throw InvalidArgument("Fabry-Perot tilt too close to 90 degrees");
  std::vector<double> om(p.points), wt(p.points);
  const double lo = p.center - p.span * p.input_width;
  const double step = 2.0 * p.span * p.input_width / (p.points - 1);
  const double c = std::cos(p.theta);
  for (int k = 0; k < p.points; ++k) {
    const double w = lo + step * k;
    const double x = (w - p.center) / p.input_width;
    const double s = std::sin(std::numbers::pi * w * c / p.fsr);
    om[k] = w;
    wt[k] = std::exp(-0.5 * x * x) / (1.0 + p.finesse * s * s);
  }
  return FrequencySpectrum::normalized(std::move(om), std::move(wt));
}

namespace {

double chi(const NonlocalPhotonParams& p, double u, double v) {
  return std::exp(-0.5 * p.variance * p.delta_n * p.delta_n * (u * u + v * v + 2.0 * p.correlation * u * v));
}

void check(const NonlocalPhotonParams& p) {
  if (!(p.variance >= 0.0)) throw InvalidArgument("frequency variance C must be nonnegative");
  if (!(std::abs(p.correlation) <= 1.0)) throw InvalidArgument("correlation K must lie in [-1, 1]");
}

}  // namespace

QuantumMap nonlocal_dephasing_map(const NonlocalPhotonParams& p, double t1, double t2) {
  check(p);
  // Basis index i = a + 2 b (photon 1 least significant).
  CMatrix choi = CMatrix::Zero(16, 16);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const int a = i & 1, b = i >> 1, c = j & 1, d = j >> 1;
      const double f = chi(p, t1 * (a - c), t2 * (b - d));
      // Block (i, j) of the Choi matrix is Phi(|i><j|) = f |i><j|.
      choi(4 * i + i, 4 * j + j) = f;
    }
  }
  return QuantumMap::from_choi(choi, 4, 4, true);
}

double nonlocal_bell_distance(const NonlocalPhotonParams& p, double t1, double t2) {
  check(p);
  return chi(p, t1, t2);
}

std::pair<double, double> plate_times(PlateSchedule s, double tau, double t) {
  if (s == PlateSchedule::simultaneous) {
    const double x = std::clamp(t, 0.0, tau);
    return {x, x};
  }
  return {std::clamp(t - tau, 0.0, tau), std::clamp(t, 0.0, tau)};
}

NonlocalTrajectories nonlocal_dephasing_trajectory(const NonlocalPhotonParams& p,
                                                   PlateSchedule s, double tau, int n) {
  check(p);
  if (!(tau > 0.0) || n < 2) throw InvalidArgument("plate duration must be positive and n >= 2");
  const double total = s == PlateSchedule::consecutive ? 2.0 * tau : tau;

  const double r = 1.0 / std::sqrt(2.0);
  CVector bp = CVector::Zero(4), bm = CVector::Zero(4);
  bp(0) = r; bp(3) = r;
  bm(0) = r; bm(3) = -r;
  const DensityMatrix bell_p = DensityMatrix::pure(bp), bell_m = DensityMatrix::pure(bm);
  CVector plus(2), minus(2);
  plus << r, r;
  minus << r, -r;
  const CVector h = CVector::Unit(2, 0);
  // Local pairs: the other photon sits in |H>.
  const DensityMatrix l1p = DensityMatrix::pure(kron(h, plus)), l1m = DensityMatrix::pure(kron(h, minus));
  const DensityMatrix l2p = DensityMatrix::pure(kron(plus, h)), l2m = DensityMatrix::pure(kron(minus, h));

  NonlocalTrajectories out;
  for (int k = 0; k < n; ++k) {
    const double t = total * k / (n - 1);
    const auto [t1, t2] = plate_times(s, tau, t);
    const QuantumMap m = nonlocal_dephasing_map(p, t1, t2);
    out.times.push_back(t);
    out.global.push_back(trace_distance(apply_map(m, bell_p), apply_map(m, bell_m)));
    const auto a1 = partial_trace_a(apply_map(m, l1p).matrix(), 2, 2);
    const auto b1 = partial_trace_a(apply_map(m, l1m).matrix(), 2, 2);
    out.local1.push_back(trace_distance(a1, b1));
    const auto a2 = partial_trace_b(apply_map(m, l2p).matrix(), 2, 2);
    const auto b2 = partial_trace_b(apply_map(m, l2m).matrix(), 2, 2);
    out.local2.push_back(trace_distance(a2, b2));
  }
  return out;
}

}  // namespace nmflow::models
