#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "nmflow/cli/config.hpp"
#include "nmflow/cli/runner.hpp"
#include "nmflow/measures/trajectory.hpp"

using namespace nmflow;
using namespace nmflow::cli;
namespace fs = std::filesystem;

namespace {

const char* kBump = R"(model:
  id: random_unitary
  params:
    gamma1: 0.1
    gamma2: 0.1
    gamma3: -0.15
    start3: 5.0
    end3: 6.0
time:
  horizon: 8.0
  grid_points: 401
measures:
  helstrom: true
)";

int error_line(const std::string& text) {
  try {
    (void)parse_config_text(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("nmflow_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("config parsing fills defaults") {
  const auto c = parse_config_text(kBump);
  CHECK(c.model == "random_unitary");
  CHECK(c.number("gamma3") == -0.15);
  CHECK(c.string("shape1") == "constant");
  CHECK(c.grid_points == 401);
  CHECK(c.measures.grid_points == 401);
  CHECK(c.sweep.empty());
}

TEST_CASE("config errors carry line numbers") {
  CHECK(error_line("model:\n  id: lossy_cavity\n  params:\n    gamma0: [1\n") > 0);
  CHECK(error_line("model:\n  id: warp_drive\n") == 2);
  CHECK(error_line("model:\n  id: lossy_cavity\n  params:\n    gamma0: 1\n    bogus: 2\n") == 5);
  CHECK(error_line("model:\n  id: lossy_cavity\n  params:\n    gamma0: abc\n") == 4);
  CHECK(error_line("model:\n  id: lossy_cavity\n  params:\n    gamma0: 1\ntime:\n  grid_points: 8\n") == 6);
  CHECK(error_line("model:\n  id: lossy_cavity\n  params:\n    gamma0: 1\n"
                   "sweep:\n  - param: gamma0\n    from: 0\n    to: 1\n    steps: 0\n") == 9);
  CHECK(error_line("model:\n  id: lossy_cavity\n  params:\n    gamma0: 1\n"
                   "sweep:\n  - param: gamma0\n    values: [1]\n  - param: width\n    values: [1]\n"
                   "  - param: detuning\n    values: [1]\n") == 6);
  CHECK(error_line("model:\n  id: lossy_cavity\n  params:\n    gamma0: 1\n"
                   "sweep:\n  - param: nonsense\n    values: [1]\n") == 6);
  // gamma0 is required for the lossy cavity.
  CHECK(error_line("model:\n  id: lossy_cavity\n  params:\n    width: 1\n") == 4);
}

TEST_CASE("sweep axes expand ranges") {
  const auto c = parse_config_text(std::string(kBump) + "sweep:\n  - param: gamma3\n    from: -0.2\n    to: 0.2\n    steps: 5\n");
  REQUIRE(c.sweep.size() == 1);
  CHECK(c.sweep[0].values.size() == 5);
  CHECK(c.sweep[0].values[4] == doctest::Approx(0.2));
  CHECK(at_point(c, {0.1}).number("gamma3") == doctest::Approx(0.1));
}

TEST_CASE("format_double round-trips") {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23}) CHECK(std::stod(format_double(x)) == x);
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("run writes artifacts; D column reproduces blp; reruns are byte-identical") {
  auto c = parse_config_text(kBump);
  const auto dir = scratch("run");
  c.output_dir = dir.string();
  run(c, 1);
  const auto traj = read_csv(dir / "trajectory.csv");
  REQUIRE(traj.size() == 402);
  CHECK(traj[0] == std::vector<std::string>{"t", "D", "sigma", "G_abs", "G_phase", "volume"});
  std::vector<double> t, d;
  for (std::size_t i = 1; i < traj.size(); ++i) {
    t.push_back(std::stod(traj[i][0]));
    d.push_back(std::stod(traj[i][1]));
  }
  const auto m = read_csv(dir / "measures.csv");
  REQUIRE(m.size() == 2);
  CHECK(m[0][0] == "blp");
  const double blp = std::stod(m[1][0]);
  CHECK(blp > 1e-3);
  CHECK(std::abs(measures::positive_variation(t, d).total - blp) < 1e-9);
  CHECK(slurp(dir / "report.txt").find("optimal pair Bloch vectors") != std::string::npos);

  const std::string first = slurp(dir / "trajectory.csv") + slurp(dir / "measures.csv");
  run(c, 1);
  CHECK(first == slurp(dir / "trajectory.csv") + slurp(dir / "measures.csv"));
}

TEST_CASE("single-point sweep equals run output") {
  auto c = parse_config_text(std::string(kBump) + "sweep:\n  - param: gamma3\n    values: [-0.15]\n");
  const auto a = scratch("single_run");
  const auto b = scratch("single_sweep");
  c.output_dir = a.string();
  run(c, 1);
  c.output_dir = b.string();
  const auto s = sweep(c, 2);
  CHECK(s.points == 1);
  CHECK(s.failures == 0);
  const auto ra = read_csv(a / "measures.csv");
  const auto rb = read_csv(b / "measures.csv");
  REQUIRE(rb.size() == 2);
  CHECK(rb[0][0] == "gamma3");
  CHECK(std::vector<std::string>(rb[1].begin() + 1, rb[1].end()) == ra[1]);
  CHECK(slurp(a / "trajectory.csv") == slurp(b / "trajectories" / "point_0000.csv"));
}

TEST_CASE("sweep is ordered, deterministic across thread counts, and records failures") {
  // A negative window end is rejected per point while the others succeed.
  auto c = parse_config_text(
      "model:\n  id: random_unitary\n  params:\n    gamma1: 0.1\n    gamma2: 0.1\n    end3: 1\n"
      "time:\n  horizon: 2\n  grid_points: 101\nmeasures:\n  helstrom: false\n"
      "sweep:\n  - param: gamma3\n    values: [-0.15, 0.0, 0.1]\n  - param: end3\n    values: [1.0, -1.0]\n");
  const auto a = scratch("sweep1");
  const auto b = scratch("sweep3");
  c.output_dir = a.string();
  const auto s1 = sweep(c, 1);
  c.output_dir = b.string();
  (void)sweep(c, 3);
  CHECK(s1.points == 6);
  CHECK(s1.failures == 3);
  CHECK(slurp(a / "measures.csv") == slurp(b / "measures.csv"));
  const auto rows = read_csv(a / "measures.csv");
  REQUIRE(rows.size() == 7);
  CHECK(rows[2][1] == "-1");
  CHECK(rows[2][6] == "error");
  CHECK(rows[2].back().find("end3") != std::string::npos);
  CHECK(rows[3][0] == "0");
}

TEST_CASE("every model id runs") {
  const std::vector<std::string> cases = {
      "model:\n  id: ohmic_dephasing\ntime:\n  horizon: 5\n  grid_points: 41\n",
      "model:\n  id: lossy_cavity\n  params:\n    gamma0: 2\ntime:\n  horizon: 5\n  grid_points: 101\n",
      "model:\n  id: ising\n  params:\n    n: 4\ntime:\n  grid_points: 41\n",
      "model:\n  id: spectrum_dephasing\n  params:\n    source: two_peak\ntime:\n  grid_points: 101\n",
      "model:\n  id: nonlocal_photons\n  params:\n    correlation: -0.8\ntime:\n  grid_points: 101\n",
      "model:\n  id: xx_chain\ntime:\n  horizon: 10\n  grid_points: 101\n",
      "model:\n  id: total_system\n  params:\n    preset: mode_dephasing\n    modes: 8\ntime:\n  grid_points: 41\n",
      "model:\n  id: total_system\n  params:\n    preset: custom\n    h_s: [[1, 0], [0, -1]]\n    h_e: [[0, 1], [1, 0]]\n"
      "    h_i: [[0,0,1,0],[0,0,0,1],[1,0,0,0],[0,1,0,0]]\n"
      "    rho1: [[1,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]\n"
      "    rho2: [[0,0,0,0],[0,0,0,0],[0,0,1,0],[0,0,0,0]]\ntime:\n  horizon: 3\n  grid_points: 31\n",
  };
  for (const auto& text : cases) {
    const auto c = parse_config_text(text);
    INFO(c.model);
    const auto r = evaluate_point(c, 1);
    CHECK(r.trajectory.size() >= 31);
    CHECK(std::isfinite(r.blp));
    CHECK(!r.report.empty());
  }
}

TEST_CASE("model-level inconsistencies are config errors; numerical trouble names the step") {
  auto c = parse_config_text(
      "model:\n  id: total_system\n  params:\n    preset: custom\n    h_s: [[1]]\n    h_e: [[1]]\n"
      "    h_i: [[1]]\n    rho1: [[1]]\n");
  CHECK_THROWS_AS(evaluate_point(c, 1), ConfigError);
  auto bad = parse_config_text(
      "model:\n  id: ohmic_dephasing\n  params:\n    exponent: -2\ntime:\n  grid_points: 20\n");
  try {
    (void)evaluate_point(bad, 1);
    FAIL("expected NumericalFailure");
  } catch (const NumericalFailure& e) {
    CHECK(e.operation() == "build model");
  }
}
