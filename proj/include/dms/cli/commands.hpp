#pragma once

#include "dms/cli/config.hpp"
#include "dms/cli/csv.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace dms::cli {

inline constexpr const char* kVersion = "dms 0.1.0";

/// Final populations against the detuning Delta0 T (Rosen-Zener or Demkov-Kunike).
CsvTable scan_detuning(const RunConfig& cfg);
/// Final populations against the rms pulse area, with a deviation column.
CsvTable scan_area(const RunConfig& cfg);
/// Time-resolved populations; the footer carries peak_excited.
CsvTable evolve(const RunConfig& cfg);
/// Degenerate Landau-Zener populations against Lambda.
CsvTable lz_scan(const RunConfig& cfg);

struct DesignReport {
  nlohmann::json json;
  bool passed = true;
};

DesignReport design(const RunConfig& cfg);

/// Entry point of the command-line tool; returns the process exit code
/// (0 ok, 1 acceptance failure, 2 config error, 3 numerical failure, 4 design failure).
int run(int argc, const char* const* argv);

}  // namespace dms::cli
