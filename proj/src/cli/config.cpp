#include "nmflow/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace nmflow::cli {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

enum class Kind { number, string, matrix };

struct ParamSpec {
  std::string name;
  Kind kind;
  double number_default = kNaN;  // NaN: required (numbers) / optional (see `optional`)
  std::string string_default;
  std::vector<std::string> choices;
  bool optional = false;
};

ParamSpec num(std::string n, double d) { return {std::move(n), Kind::number, d, {}, {}, false}; }
ParamSpec req(std::string n) { return {std::move(n), Kind::number, kNaN, {}, {}, false}; }
ParamSpec opt(std::string n) { return {std::move(n), Kind::number, kNaN, {}, {}, true}; }
ParamSpec str(std::string n, std::string d, std::vector<std::string> c) {
  return {std::move(n), Kind::string, kNaN, std::move(d), std::move(c), false};
}
ParamSpec mat(std::string n) { return {std::move(n), Kind::matrix, kNaN, {}, {}, true}; }

const std::map<std::string, std::vector<ParamSpec>>& schema() {
  static const std::map<std::string, std::vector<ParamSpec>> s = {
      {"ohmic_dephasing",
       {num("coupling", 0.1), num("exponent", 1.0), num("cutoff", 1.0), num("temperature", 0.0)}},
      {"lossy_cavity", {req("gamma0"), num("width", 1.0), num("detuning", 0.0)}},
      {"random_unitary",
       {num("gamma1", 0.0), num("gamma2", 0.0), num("gamma3", 0.0), num("start1", 0.0), num("start2", 0.0),
        num("start3", 0.0), num("end1", 0.0), num("end2", 0.0), num("end3", 0.0), num("time_scale", 1.0), str("shape1", "constant", {"constant", "tanh"}),
        str("shape2", "constant", {"constant", "tanh"}), str("shape3", "constant", {"constant", "tanh"})}},
      {"ising",
       {num("n", 8), num("coupling", 1.0), num("field", 0.5), opt("lambda_star"), num("delta", 0.1)}},
      {"spectrum_dephasing",
       {str("source", "fabry_perot", {"fabry_perot", "two_peak", "file"}), str("path", "", {}),
        num("delta_n", 1.0), num("center", 100.0), num("input_width", 1.0), num("fsr", 4.0),
        num("finesse", 50.0), num("theta", 0.0), num("points", 4001), num("span", 8.0),
        num("omega1", 0.0), num("omega2", 2.0), num("weight1", 0.7)}},
      {"nonlocal_photons",
       {num("variance", 1.0), num("correlation", 0.0), num("delta_n", 1.0), num("tau", 3.0),
        str("schedule", "consecutive", {"consecutive", "simultaneous"})}},
      {"xx_chain", {}},
      {"total_system",
       {str("preset", "mode_dephasing", {"mode_dephasing", "correlated_pair", "custom"}),
        num("coupling", 0.3), num("frequency", 1.0), num("modes", 20), mat("h_s"), mat("h_e"),
        mat("h_i"), mat("rho1"), mat("rho2")}},
  };
  return s;
}

int line_of(const YAML::Node& n) { return n.Mark().is_null() ? 0 : n.Mark().line + 1; }

template <class T>
T scalar(const YAML::Node& n, const std::string& what) {
  if (!n.IsScalar()) throw ConfigError(what + " must be a scalar", line_of(n));
  try {
    return n.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(what + ": cannot convert '" + n.Scalar() + "'", line_of(n));
  }
}

double finite(const YAML::Node& n, const std::string& what) {
  const double v = scalar<double>(n, what);
  if (!std::isfinite(v)) throw ConfigError(what + " must be finite", line_of(n));
  return v;
}

void check_keys(const YAML::Node& map, const std::set<std::string>& allowed, const std::string& section) {
  if (!map.IsMap()) throw ConfigError("section '" + section + "' must be a mapping", line_of(map));
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in '" + section + "'", line_of(kv.first));
  }
}

Matrix read_matrix(const YAML::Node& n, const std::string& what) {
  if (!n.IsSequence() || n.size() == 0) throw ConfigError(what + " must be a list of rows", line_of(n));
  Matrix m;
  for (const auto& row : n) {
    if (!row.IsSequence()) throw ConfigError(what + ": each row must be a list", line_of(row));
    std::vector<double> r;
    for (const auto& x : row) r.push_back(finite(x, what));
    if (!m.empty() && r.size() != m.front().size())
      throw ConfigError(what + ": rows have different lengths", line_of(row));
    m.push_back(std::move(r));
  }
  if (m.size() != m.front().size()) throw ConfigError(what + " must be square", line_of(n));
  return m;
}

void read_model(const YAML::Node& node, ScenarioConfig& c) {
  check_keys(node, {"id", "params"}, "model");
  if (!node["id"]) throw ConfigError("model.id is required", line_of(node));
  c.model = scalar<std::string>(node["id"], "model.id");
  const auto it = schema().find(c.model);
  if (it == schema().end()) {
    std::string ids;
    for (const auto& id : model_ids()) ids += (ids.empty() ? "" : ", ") + id;
    throw ConfigError("unknown model '" + c.model + "' (known: " + ids + ")", line_of(node["id"]));
  }
  const auto& specs = it->second;
  const YAML::Node params = node["params"] ? node["params"] : YAML::Node(YAML::NodeType::Map);
  std::set<std::string> allowed;
  for (const auto& s : specs) allowed.insert(s.name);
  check_keys(params, allowed, "model.params");
  for (const auto& s : specs) {
    const YAML::Node v = params[s.name];
    const std::string what = "model.params." + s.name;
    switch (s.kind) {
      case Kind::number:
        if (v) c.numbers[s.name] = finite(v, what);
        else if (!std::isnan(s.number_default)) c.numbers[s.name] = s.number_default;
        else if (!s.optional) throw ConfigError(what + " is required for model " + c.model, line_of(params));
        break;
      case Kind::string: {
        const std::string value = v ? scalar<std::string>(v, what) : s.string_default;
        if (!s.choices.empty() && std::find(s.choices.begin(), s.choices.end(), value) == s.choices.end())
          throw ConfigError(what + ": invalid value '" + value + "'", line_of(v));
        c.strings[s.name] = value;
        break;
      }
      case Kind::matrix:
        if (v) c.matrices[s.name] = read_matrix(v, what);
        break;
    }
  }
}

void read_sweep(const YAML::Node& node, ScenarioConfig& c) {
  if (!node.IsSequence()) throw ConfigError("'sweep' must be a list of axes", line_of(node));
  if (node.size() > 2) throw ConfigError("at most 2 sweep axes are supported", line_of(node));
  for (const auto& ax : node) {
    check_keys(ax, {"param", "from", "to", "steps", "values"}, "sweep");
    if (!ax["param"]) throw ConfigError("sweep axis needs 'param'", line_of(ax));
    SweepAxis a;
    a.param = scalar<std::string>(ax["param"], "sweep.param");
    if (!c.numbers.count(a.param) && !(c.model == "ising" && a.param == "lambda_star"))
      throw ConfigError("sweep parameter '" + a.param + "' is not a numeric parameter of " + c.model,
                        line_of(ax["param"]));
    for (const auto& other : c.sweep)
      if (other.param == a.param) throw ConfigError("parameter swept twice: " + a.param, line_of(ax));
    if (ax["values"]) {
      if (ax["from"] || ax["to"] || ax["steps"])
        throw ConfigError("give either 'values' or 'from'/'to'/'steps'", line_of(ax));
      if (!ax["values"].IsSequence() || ax["values"].size() == 0)
        throw ConfigError("sweep 'values' must be a non-empty list", line_of(ax["values"]));
      for (const auto& v : ax["values"]) a.values.push_back(finite(v, "sweep.values"));
    } else {
      if (!ax["from"] || !ax["steps"]) throw ConfigError("sweep axis needs 'from' and 'steps'", line_of(ax));
      const double from = finite(ax["from"], "sweep.from");
      const int steps = scalar<int>(ax["steps"], "sweep.steps");
      if (steps < 1) throw ConfigError("sweep steps must be >= 1", line_of(ax["steps"]));
      if (steps > 1 && !ax["to"]) throw ConfigError("sweep axis with steps > 1 needs 'to'", line_of(ax));
      const double to = ax["to"] ? finite(ax["to"], "sweep.to") : from;
      for (int i = 0; i < steps; ++i) a.values.push_back(steps == 1 ? from : from + (to - from) * i / (steps - 1));
    }
    c.sweep.push_back(std::move(a));
  }
}

ScenarioConfig build(const YAML::Node& root) {
  if (!root.IsMap()) throw ConfigError("configuration must be a mapping", line_of(root));
  check_keys(root, {"model", "time", "measures", "search", "divisibility", "sweep", "output", "seed"}, "top level");
  ScenarioConfig c;
  if (!root["model"]) throw ConfigError("section 'model' is required", 1);
  read_model(root["model"], c);

  if (const auto t = root["time"]) {
    check_keys(t, {"horizon", "grid_points"}, "time");
    if (t["horizon"]) {
      c.horizon = finite(t["horizon"], "time.horizon");
      if (c.horizon <= 0.0) throw ConfigError("time.horizon must be positive", line_of(t["horizon"]));
    }
    if (t["grid_points"]) {
      c.grid_points = scalar<int>(t["grid_points"], "time.grid_points");
      if (c.grid_points < 16) throw ConfigError("time.grid_points must be >= 16", line_of(t["grid_points"]));
    }
  }
  auto& m = c.measures;
  if (const auto s = root["measures"]) {
    check_keys(s, {"helstrom", "rhp", "short_circuit", "rhp_epsilon_factor", "condition_cap"}, "measures");
    if (s["helstrom"]) m.compute_helstrom = scalar<bool>(s["helstrom"], "measures.helstrom");
    if (s["rhp"]) m.compute_rhp = scalar<bool>(s["rhp"], "measures.rhp");
    if (s["short_circuit"]) m.short_circuit = scalar<bool>(s["short_circuit"], "measures.short_circuit");
    if (s["rhp_epsilon_factor"]) m.rhp_epsilon_factor = finite(s["rhp_epsilon_factor"], "measures.rhp_epsilon_factor");
    if (s["condition_cap"]) m.condition_cap = finite(s["condition_cap"], "measures.condition_cap");
  }
  if (const auto s = root["search"]) {
    check_keys(s, {"polar_points", "azimuth_points", "local_ascent", "ascent_seeds", "ascent_tolerance",
                   "helstrom_bias_points", "band"},
               "search");
    auto positive_int = [&](const char* key, int& out) {
      if (!s[key]) return;
      out = scalar<int>(s[key], std::string("search.") + key);
      if (out < 1) throw ConfigError(std::string("search.") + key + " must be >= 1", line_of(s[key]));
    };
    positive_int("polar_points", m.search.polar_points);
    positive_int("azimuth_points", m.search.azimuth_points);
    positive_int("ascent_seeds", m.search.ascent_seeds);
    positive_int("helstrom_bias_points", m.search.helstrom_bias_points);
    if (s["local_ascent"]) m.search.local_ascent = scalar<bool>(s["local_ascent"], "search.local_ascent");
    if (s["ascent_tolerance"]) m.search.ascent_tolerance = finite(s["ascent_tolerance"], "search.ascent_tolerance");
    if (s["band"]) m.search.band = finite(s["band"], "search.band");
  }
  if (const auto s = root["divisibility"]) {
    check_keys(s, {"tolerance", "basis_samples", "map_steps", "positivity_samples"}, "divisibility");
    if (s["tolerance"]) m.divisibility.tolerance = finite(s["tolerance"], "divisibility.tolerance");
    if (s["basis_samples"]) m.divisibility.basis_samples = scalar<int>(s["basis_samples"], "divisibility.basis_samples");
    if (s["map_steps"]) m.divisibility.map_steps = scalar<int>(s["map_steps"], "divisibility.map_steps");
    if (s["positivity_samples"])
      m.divisibility.positivity_samples = scalar<int>(s["positivity_samples"], "divisibility.positivity_samples");
  }
  if (const auto s = root["sweep"]) read_sweep(s, c);
  if (const auto s = root["output"]) {
    check_keys(s, {"dir"}, "output");
    if (s["dir"]) c.output_dir = scalar<std::string>(s["dir"], "output.dir");
  }
  if (const auto s = root["seed"]) c.seed = scalar<std::uint64_t>(s, "seed");
  c.measures.horizon = c.horizon;
  c.measures.grid_points = c.grid_points;
  return c;
}

}  // namespace

double ScenarioConfig::number(const std::string& key) const {
  const auto it = numbers.find(key);
  if (it == numbers.end()) throw ConfigError("missing numeric parameter '" + key + "'", 0);
  return it->second;
}

const std::string& ScenarioConfig::string(const std::string& key) const {
  const auto it = strings.find(key);
  if (it == strings.end()) throw ConfigError("missing parameter '" + key + "'", 0);
  return it->second;
}

bool ScenarioConfig::has(const std::string& key) const {
  return numbers.count(key) || strings.count(key) || matrices.count(key);
}

std::vector<std::string> model_ids() {
  std::vector<std::string> ids;
  for (const auto& kv : schema()) ids.push_back(kv.first);
  return ids;
}

ScenarioConfig parse_config_text(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(e.msg, e.mark.line + 1);
  }
  if (!root || root.IsNull()) throw ConfigError("configuration is empty", 0);
  return build(root);
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read configuration file '" + path + "'", 0);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace nmflow::cli
