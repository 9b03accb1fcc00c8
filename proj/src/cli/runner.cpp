#include "nmflow/cli/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <thread>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "nmflow/core/linalg.hpp"
#include "nmflow/core/metrics.hpp"
#include "nmflow/correlations/total_system.hpp"
#include "nmflow/measures/report.hpp"
#include "nmflow/models/ising_probe.hpp"
#include "nmflow/models/lossy_cavity.hpp"
#include "nmflow/models/photonic.hpp"
#include "nmflow/models/qubit_model.hpp"
#include "nmflow/models/spectral_density.hpp"
#include "nmflow/models/xx_chain.hpp"

namespace nmflow::cli {
namespace {

namespace fs = std::filesystem;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <class F>
auto step(const std::string& operation, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const NumericalFailure&) {
    throw;
  } catch (const std::exception& e) {
    throw NumericalFailure(operation, e.what());
  }
}

double horizon_or(const ScenarioConfig& c, double fallback) { return c.horizon > 0.0 ? c.horizon : fallback; }

int as_int(const ScenarioConfig& c, const std::string& key, int lo) {
  const double v = c.number(key);
  if (v != std::floor(v) || v < lo)
    throw ConfigError(fmt::format("model.params.{} must be an integer >= {}", key, lo), 0);
  return static_cast<int>(v);
}

// ---- qubit models -------------------------------------------------------

std::unique_ptr<models::QubitModel> build_qubit_model(const ScenarioConfig& c) {
  using namespace models;
  if (c.model == "ohmic_dephasing") {
    const double temp = c.number("temperature");
    if (temp < 0.0) throw ConfigError("model.params.temperature must be >= 0", 0);
    const auto j = SpectralDensity::ohmic(c.number("coupling"), c.number("exponent"), c.number("cutoff"));
    const double beta = temp == 0.0 ? kZeroTemperature : 1.0 / temp;
    return std::make_unique<PureDephasingModel>("ohmic_dephasing", thermal_decoherence(j, beta),
                                                horizon_or(c, 50.0 / c.number("cutoff")));
  }
  if (c.model == "lossy_cavity") {
    const double width = c.number("width");
    const auto j = SpectralDensity::lorentzian(c.number("gamma0"), width, c.number("detuning"), 0.0);
    return std::make_unique<AmplitudeDampingModel>("lossy_cavity", lossy_cavity_decoherence(j),
                                                   horizon_or(c, 80.0 / width));
  }
  if (c.model == "random_unitary") {
    RandomUnitaryRates r;
    double last = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double amp = c.number(fmt::format("gamma{}", i + 1));
      const double on = c.number(fmt::format("start{}", i + 1));
      const double off = c.number(fmt::format("end{}", i + 1));
      if (on < 0.0 || off < 0.0 || (off > 0.0 && off <= on))
        throw ConfigError(fmt::format("model.params: need 0 <= start{0} < end{0} (end{0} = 0: no end)", i + 1), 0);
      const bool tanh_shape = c.string(fmt::format("shape{}", i + 1)) == "tanh";
      r.gamma[i] = [amp, tanh_shape, on, off](double t) {
        if (t < on || (off > 0.0 && t > off)) return 0.0;
        return tanh_shape ? amp * std::tanh(t) : amp;
      };
      for (double b : {on, off})
        if (b > 0.0) r.breakpoints.push_back(b);
      last = std::max({last, on, off});
    }
    std::sort(r.breakpoints.begin(), r.breakpoints.end());
    r.breakpoints.erase(std::unique(r.breakpoints.begin(), r.breakpoints.end()), r.breakpoints.end());
    const double ts = c.number("time_scale");
    return std::make_unique<RandomUnitaryModel>("random_unitary", std::move(r), ts,
                                                horizon_or(c, std::max(10.0 * ts, 1.5 * last)));
  }
  if (c.model == "ising") {
    SpinChainSpec s;
    s.n = as_int(c, "n", 2);
    if (s.n > kMaxIsingSpins) throw ConfigError(fmt::format("model.params.n must be <= {}", kMaxIsingSpins), 0);
    s.coupling = c.number("coupling");
    s.delta = c.number("delta");
    s.field = c.numbers.count("lambda_star") ? c.number("lambda_star") - s.delta : c.number("field");
    const IsingProbe probe(s);
    return std::make_unique<PureDephasingModel>("ising", probe.decoherence(),
                                                horizon_or(c, 0.2 * s.n / s.coupling));
  }
  if (c.model == "spectrum_dephasing") {
    const std::string& src = c.string("source");
    std::optional<FrequencySpectrum> f;
    if (src == "file") {
      if (c.string("path").empty()) throw ConfigError("model.params.path is required for source: file", 0);
      f = FrequencySpectrum::read(c.string("path"));
    } else if (src == "two_peak") {
      const double w1 = c.number("weight1");
      if (!(w1 >= 0.0 && w1 <= 1.0)) throw ConfigError("model.params.weight1 must be in [0, 1]", 0);
      f = FrequencySpectrum({c.number("omega1"), c.number("omega2")}, {w1, 1.0 - w1});
    } else {
      FabryPerotParams p;
      p.center = c.number("center");
      p.input_width = c.number("input_width");
      p.fsr = c.number("fsr");
      p.finesse = c.number("finesse");
      p.theta = c.number("theta");
      p.points = as_int(c, "points", 3);
      p.span = c.number("span");
      f = fabry_perot_spectrum(p);
    }
    auto g = spectrum_decoherence(*f, c.number("delta_n"));
    const double h = horizon_or(c, 10.0 * g.time_scale);
    return std::make_unique<PureDephasingModel>("spectrum_dephasing", std::move(g), h);
  }
  return nullptr;
}

std::string vec3(const Eigen::Vector3d& v) {
  return fmt::format("({:.6f}, {:.6f}, {:.6f})", v.x(), v.y(), v.z());
}

PointResult qubit_point(const ScenarioConfig& c, int threads) {
  const auto model = step("build model", [&] { return build_qubit_model(c); });
  measures::MeasureConfig mc = c.measures;
  mc.search.threads = threads;
  mc.divisibility.seed = c.seed;
  const auto rep = step("evaluate measures", [&] { return measures::evaluate(*model, mc); });

  PointResult r;
  r.blp = rep.blp;
  r.helstrom = rep.helstrom;
  r.rhp = rep.rhp;
  r.rhp_infinite = rep.rhp_infinite;
  r.divisibility = measures::to_string(rep.divisibility);
  r.volume_monotone = rep.volume_monotone ? 1.0 : 0.0;
  const auto* g = model->decoherence();
  const auto& tr = rep.blp_trajectory;
  step("sample trajectory", [&] {
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
      const Complex gv = g ? (*g)(tr.times[k]) : Complex(kNaN, kNaN);
      r.trajectory.push_back({tr.times[k], tr.values[k], tr.derivative[k], std::abs(gv), std::arg(gv),
                              k < rep.volume.size() ? rep.volume[k] : kNaN});
    }
    return 0;
  });

  const Eigen::Vector3d n = rep.blp_pair.direction.normalized();
  std::string s;
  s += fmt::format("horizon: {}\ngrid_points: {}\n", format_double(rep.horizon), rep.grid_points);
  if (rep.decay_time)
    s += fmt::format("  maps decayed past the condition cap at t = {}; RHP and divisibility use the window up to there\n", format_double(*rep.decay_time));
  s += fmt::format("blp: {}\n", format_double(rep.blp));
  s += fmt::format("  optimal pair Bloch vectors: +n = {}  -n = {}\n", vec3(n), vec3(-n));
  s += fmt::format("  grid integration error estimate: {:.3e}\n", rep.blp_integration_error);
  if (rep.short_circuited) s += "  (rates certified nonnegative; search skipped)\n";
  const Eigen::Vector3d w = rep.helstrom_pair.direction.normalized();
  const double a = rep.helstrom_pair.alpha;
  s += fmt::format("helstrom: {}\n  bias alpha = p1 - p2: {:.6f}, Bloch direction {}\n", format_double(rep.helstrom), a,
                   vec3(w));
  if (rep.rhp_infinite)
    s += fmt::format("rhp: infinite (map singular at t = {})\n", format_double(rep.singular_time.value_or(kNaN)));
  else
    s += fmt::format("rhp: {}\n", format_double(rep.rhp));
  if (rep.rhp_rate_based) s += fmt::format("  rate-based cross-check: {}\n", format_double(*rep.rhp_rate_based));
  s += fmt::format("divisibility: {} (path: {})\n", r.divisibility, rep.divisibility_detail.path);
  if (rep.divisibility_detail.first_cp_violation)
    s += fmt::format("  first CP violation: t = {}\n", format_double(*rep.divisibility_detail.first_cp_violation));
  if (rep.divisibility_detail.first_p_violation)
    s += fmt::format("  first P violation: t = {}\n", format_double(*rep.divisibility_detail.first_p_violation));
  s += fmt::format("volume monotone: {}\n", rep.volume_monotone ? "yes" : "no");
  if (rep.volume_violation_time) s += fmt::format("  first increase at t = {}\n", format_double(*rep.volume_violation_time));
  r.report = s;
  return r;
}

// ---- curve-only models --------------------------------------------------

void fill_curve(PointResult& r, const std::vector<double>& t, const std::vector<double>& d,
                const std::vector<Complex>& g, double band) {
  const auto tr = measures::DistinguishabilityTrajectory::from_samples(t, d);
  r.blp = measures::positive_variation(t, d, band).total;
  for (std::size_t k = 0; k < t.size(); ++k) {
    const Complex gv = g.empty() ? Complex(kNaN, kNaN) : g[k];
    r.trajectory.push_back({t[k], d[k], tr.derivative[k], std::abs(gv), std::arg(gv), kNaN});
  }
}

PointResult nonlocal_point(const ScenarioConfig& c) {
  models::NonlocalPhotonParams p{c.number("variance"), c.number("correlation"), c.number("delta_n")};
  if (!(p.correlation >= -1.0 && p.correlation <= 1.0))
    throw ConfigError("model.params.correlation must be in [-1, 1]", 0);
  const auto sched = c.string("schedule") == "consecutive" ? models::PlateSchedule::consecutive
                                                           : models::PlateSchedule::simultaneous;
  const double tau = c.number("tau");
  const auto tr = step("nonlocal trajectory",
                       [&] { return models::nonlocal_dephasing_trajectory(p, sched, tau, c.grid_points); });
  PointResult r;
  r.helstrom = r.rhp = r.volume_monotone = kNaN;
  const double band = c.measures.search.band;
  step("backflow", [&] {
    fill_curve(r, tr.times, tr.global, {}, band);
    return 0;
  });
  const double l1 = measures::positive_variation(tr.times, tr.local1, band).total;
  const double l2 = measures::positive_variation(tr.times, tr.local2, band).total;
  r.report = fmt::format(
      "schedule: {}\nplate duration: {}\nglobal (Bell pair) backflow: {}\nlocal backflow photon 1: {}\n"
      "local backflow photon 2: {}\nD column: Bell-pair trace distance\n",
      c.string("schedule"), format_double(tau), format_double(r.blp), format_double(l1), format_double(l2));
  return r;
}

PointResult xx_point(const ScenarioConfig& c) {
  const auto t = measures::uniform_grid(horizon_or(c, 30.0), c.grid_points);
  auto d = step("xx chain distance", [&] { return models::xx_chain_distances(t); });
  for (double& x : d) x = std::clamp(x, 0.0, 1.0);
  PointResult r;
  r.helstrom = r.rhp = r.volume_monotone = kNaN;
  fill_curve(r, t, d, {}, c.measures.search.band);
  r.report = fmt::format("blp (antipodal pair starting at D = 1): {}\n", format_double(r.blp));
  return r;
}

// ---- total system -------------------------------------------------------

CMatrix to_cmatrix(const Matrix& m) {
  CMatrix out(m.size(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out(i, j) = m[i][j];
  return out;
}

PointResult total_point(const ScenarioConfig& c) {
  using namespace correlations;
  const std::string& preset = c.string("preset");
  std::optional<TotalSystem> ts;
  CMatrix r1, r2;
  double fallback_horizon = 10.0;
  const double g = c.number("coupling");
  if (preset == "mode_dephasing") {
    const int nm = as_int(c, "modes", 2);
    const double w = c.number("frequency");
    CMatrix a = CMatrix::Zero(nm, nm);
    for (int k = 1; k < nm; ++k) a(k - 1, k) = std::sqrt(double(k));
    const CMatrix x = a + a.adjoint();
    ts = step("build total system", [&] {
      return TotalSystem(2, nm, CMatrix::Zero(2, 2), w * a.adjoint() * a, g * kron(pauli::z(), x));
    });
    CMatrix vac = CMatrix::Zero(nm, nm);
    vac(0, 0) = 1.0;
    r1 = kron(DensityMatrix::from_bloch({1, 0, 0}).matrix(), vac);
    r2 = kron(DensityMatrix::from_bloch({-1, 0, 0}).matrix(), vac);
    fallback_horizon = 4.0 * std::numbers::pi / w;
  } else if (preset == "correlated_pair") {
    ts = step("build total system", [&] {
      return TotalSystem(2, 2, CMatrix::Zero(2, 2), CMatrix::Zero(2, 2), g * kron(pauli::x(), pauli::z()));
    });
    r1 = CMatrix::Zero(4, 4);
    r1(0, 0) = r1(3, 3) = 0.5;
    const CMatrix flip = kron(pauli::x(), pauli::identity());
    r2 = flip * r1 * flip;
    fallback_horizon = std::numbers::pi / std::abs(g);
  } else {
    for (const char* key : {"h_s", "h_e", "h_i", "rho1", "rho2"})
      if (!c.matrices.count(key))
        throw ConfigError(fmt::format("model.params.{} is required for preset: custom", key), 0);
    const int ds = static_cast<int>(c.matrices.at("h_s").size());
    const int de = static_cast<int>(c.matrices.at("h_e").size());
    for (const char* key : {"h_i", "rho1", "rho2"})
      if (static_cast<int>(c.matrices.at(key).size()) != ds * de)
        throw ConfigError(fmt::format("model.params.{} must be {}x{}", key, ds * de, ds * de), 0);
    ts = step("build total system", [&] {
      return TotalSystem(ds, de, to_cmatrix(c.matrices.at("h_s")), to_cmatrix(c.matrices.at("h_e")),
                         to_cmatrix(c.matrices.at("h_i")));
    });
    r1 = to_cmatrix(c.matrices.at("rho1"));
    r2 = to_cmatrix(c.matrices.at("rho2"));
  }
  const auto times = measures::uniform_grid(horizon_or(c, fallback_horizon), c.grid_points);
  const auto flow = step("information flow", [&] {
    return info_flow(*ts, DensityMatrix(r1), DensityMatrix(r2), times);
  });
  std::vector<Complex> coh;
  if (ts->dim_s() == 2) {
    const auto tr = step("evolve total system", [&] { return evolve_total(*ts, DensityMatrix(r1), times); });
    for (const auto& s : tr.system) coh.push_back(2.0 * s(1, 0));
  }
  PointResult r;
  r.helstrom = r.rhp = r.volume_monotone = kNaN;
  std::vector<double> d = flow.i_int;
  for (double& x : d) x = std::clamp(x, 0.0, 1.0);
  step("backflow", [&] {
    fill_curve(r, times, d, coh, c.measures.search.band);
    return 0;
  });
  const double d0 = flow.i_int.front();
  const double dmax = *std::max_element(flow.i_int.begin(), flow.i_int.end());
  r.report = fmt::format(
      "preset: {}\ndimensions: {} x {}\nD column: reduced trace distance I_int\n"
      "backflow of I_int: {}\nI_int(0): {}\nmax excursion above I_int(0): {}\n"
      "conservation error max |I_int + I_ext - I_int(0) - I_ext(0)|: {:.3e}\n"
      "external-information bound: {} (min slack {:.3e})\n",
      preset, ts->dim_s(), ts->dim_e(), format_double(r.blp), format_double(d0), format_double(dmax - d0),
      flow.conservation_error, flow.bound_holds ? "holds" : "VIOLATED", flow.bound_slack);
  return r;
}

// ---- output -------------------------------------------------------------

std::string measures_header(const ScenarioConfig& c) {
  std::string h;
  for (const auto& ax : c.sweep) h += ax.param + ",";
  return h + "blp,helstrom,rhp,rhp_infinite_flag,divisibility_class,volume_monotone,errors\n";
}

std::string csv_field(std::string s) {
  for (char& ch : s)
    if (ch == '\n' || ch == '\r') ch = ' ';
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

std::string measures_row(const std::vector<double>& point, const PointResult* r, const std::string& error) {
  std::string row;
  for (double v : point) row += format_double(v) + ",";
  if (r) {
    row += fmt::format("{},{},{},{},{},{},", format_double(r->blp), format_double(r->helstrom),
                       format_double(r->rhp), r->rhp_infinite ? 1 : 0, r->divisibility,
                       std::isnan(r->volume_monotone) ? "nan" : (r->volume_monotone > 0 ? "1" : "0"));
  } else {
    row += "nan,nan,nan,0,error,nan,";
  }
  return row + csv_field(error) + "\n";
}

std::string header_block(const ScenarioConfig& c) {
  std::string s = fmt::format("model: {}\n", c.model);
  for (const auto& [k, v] : c.numbers) s += fmt::format("  {} = {}\n", k, v);
  for (const auto& [k, v] : c.strings)
    if (!v.empty()) s += fmt::format("  {} = {}\n", k, v);
  for (const auto& [k, v] : c.matrices) s += fmt::format("  {} = <{}x{} matrix>\n", k, v.size(), v.size());
  s += fmt::format("seed: {}\n", c.seed);
  return s;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw NumericalFailure("write output", "cannot open " + p.string());
  return os;
}

void prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw NumericalFailure("write output", "cannot create " + dir.string() + ": " + ec.message());
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", x);
}

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryRow>& rows) {
  os << "t,D,sigma,G_abs,G_phase,volume\n";
  for (const auto& r : rows)
    os << format_double(r.t) << ',' << format_double(r.d) << ',' << format_double(r.sigma) << ','
       << format_double(r.g_abs) << ',' << format_double(r.g_phase) << ',' << format_double(r.volume) << '\n';
}

int resolve_threads(int cli_threads) {
  if (cli_threads > 0) return cli_threads;
  if (const char* env = std::getenv("NMFLOW_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ScenarioConfig at_point(const ScenarioConfig& cfg, const std::vector<double>& values) {
  ScenarioConfig c = cfg;
  for (std::size_t i = 0; i < values.size() && i < cfg.sweep.size(); ++i) c.numbers[cfg.sweep[i].param] = values[i];
  return c;
}

PointResult evaluate_point(const ScenarioConfig& c, int threads) {
  if (c.model == "nonlocal_photons") return nonlocal_point(c);
  if (c.model == "xx_chain") return xx_point(c);
  if (c.model == "total_system") return total_point(c);
  return qubit_point(c, threads);
}

void run(const ScenarioConfig& cfg, int threads) {
  const fs::path dir(cfg.output_dir);
  prepare_dir(dir);
  const PointResult r = evaluate_point(cfg, threads);
  {
    auto os = open_out(dir / "trajectory.csv");
    write_trajectory_csv(os, r.trajectory);
  }
  {
    ScenarioConfig flat = cfg;
    flat.sweep.clear();
    auto os = open_out(dir / "measures.csv");
    os << measures_header(flat) << measures_row({}, &r, "");
  }
  auto os = open_out(dir / "report.txt");
  os << header_block(cfg) << r.report;
}

SweepSummary sweep(const ScenarioConfig& cfg, int threads) {
  const fs::path dir(cfg.output_dir);
  prepare_dir(dir / "trajectories");
  std::vector<std::vector<double>> points{{}};
  for (const auto& ax : cfg.sweep) {
    std::vector<std::vector<double>> next;
    for (const auto& p : points)
      for (double v : ax.values) {
        auto q = p;
        q.push_back(v);
        next.push_back(std::move(q));
      }
    points = std::move(next);
  }
  const std::size_t n = points.size();

  struct Done {
    std::optional<PointResult> result;
    std::string error;
  };
  std::vector<std::optional<Done>> done(n);
  std::size_t next_to_write = 0;
  std::mutex writer;
  auto measures = open_out(dir / "measures.csv");
  auto report = open_out(dir / "report.txt");
  measures << measures_header(cfg) << std::flush;
  report << header_block(cfg) << fmt::format("sweep points: {}\n", n);
  SweepSummary summary;
  summary.points = static_cast<int>(n);

  // Rows are written in point order as soon as every earlier point is done.
  auto flush_ready = [&] {
    while (next_to_write < n && done[next_to_write]) {
      const std::size_t i = next_to_write;
      const auto& d = *done[i];
      measures << measures_row(points[i], d.result ? &*d.result : nullptr, d.error);
      std::string label;
      for (std::size_t a = 0; a < cfg.sweep.size(); ++a)
        label += fmt::format("{}{} = {}", a ? ", " : "", cfg.sweep[a].param, format_double(points[i][a]));
      report << fmt::format("\n[point {}] {}\n", i, label);
      if (d.result) {
        report << d.result->report;
        auto os = open_out(dir / "trajectories" / fmt::format("point_{:04d}.csv", i));
        write_trajectory_csv(os, d.result->trajectory);
      } else {
        report << "error: " << d.error << "\n";
        ++summary.failures;
      }
      done[i]->result.reset();
      ++next_to_write;
    }
    measures.flush();
    report.flush();
  };

  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (std::size_t i = cursor++; i < n; i = cursor++) {
      Done d;
      try {
        d.result = evaluate_point(at_point(cfg, points[i]), 1);
      } catch (const std::exception& e) {
        d.error = e.what();
      }
      std::lock_guard<std::mutex> lock(writer);
      done[i] = std::move(d);
      flush_ready();
    }
  };
  const int nt = std::max(1, std::min<int>(threads, static_cast<int>(n)));
  std::vector<std::thread> pool;
  for (int k = 1; k < nt; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return summary;
}

}  // namespace nmflow::cli
