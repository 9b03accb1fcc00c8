#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nmflow/core/errors.hpp"
#include "nmflow/measures/report.hpp"

namespace nmflow::cli {

/// Malformed or inconsistent configuration. `line` is 1-based, 0 if unknown.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int line) : Error(format(what, line)), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& what, int line) {
    return line > 0 ? "line " + std::to_string(line) + ": " + what : what;
  }
  int line_;
};

struct SweepAxis {
  std::string param;
  std::vector<double> values;
};

using Matrix = std::vector<std::vector<double>>;

struct ScenarioConfig {
  std::string model;
  /// Model parameters with schema defaults filled in.
  std::map<std::string, double> numbers;
  std::map<std::string, std::string> strings;
  std::map<std::string, Matrix> matrices;

  double horizon = 0.0;  // <= 0: model default
  int grid_points = 4001;
  measures::MeasureConfig measures;
  std::vector<SweepAxis> sweep;
  std::string output_dir = "nmflow_out";
  std::uint64_t seed = 1;

  double number(const std::string& key) const;
  const std::string& string(const std::string& key) const;
  bool has(const std::string& key) const;
};

/// Model ids accepted in `model.id`.
std::vector<std::string> model_ids();

ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig load_config(const std::string& path);

}  // namespace nmflow::cli
