#pragma once

#include "dms/core.hpp"
#include "dms/design.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace dms::cli {

/// Malformed or inconsistent run configuration (exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class Command { ScanDetuning, ScanArea, Evolve, LzScan, Design, Verify };

const char* to_string(Command command);
std::optional<Command> command_from_string(const std::string& name);

struct ScanSpec {
  std::string variable;
  double from = 0.0;
  double to = 0.0;
  int points = 1;

  /// Grid values; a zero-width scan yields a single point.
  std::vector<double> grid() const;
};

struct Tolerances {
  double rel_tol = 1e-11;
  double abs_tol = 1e-13;
  double design = 1e-6;
  double lz_window_factor = 30.0;
};

/// Validated contents of one JSON run configuration.
///
/// Ground-state indices in the JSON document are 1-based (N+1 is the excited
/// state) to match the P_1..P_{N+1} column names; `initial` here is 0-based.
struct RunConfig {
  Command command = Command::ScanDetuning;
  nlohmann::json document;  ///< normalised document, echoed into output headers
  ModelSpec model;
  CouplingSet couplings{1.0};  ///< direction only; rescaled to the model's chi
  std::optional<DesignTarget> coupling_design;
  std::optional<ScanSpec> scan;
  Index initial = 0;
  std::string output;
  bool oracle = false;
  Tolerances tolerances;

  // design command
  std::optional<DesignTarget> target;
  int l = 0;
  double chi = 1.0;
  std::optional<double> chi_T;
};

/// Parses and validates a configuration for `command`; every schema problem
/// found is listed in the ConfigError message.
RunConfig parse_config(Command command, const nlohmann::json& document);
RunConfig parse_config(Command command, const std::string& text);
RunConfig load_config(Command command, const std::string& path);

}  // namespace dms::cli
