#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dms::cli {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Writes the table and figure CSVs into `dir` (created if missing) and
/// returns the file names written.
std::vector<std::string> write_artifacts(const std::string& dir);

/// Runs the acceptance criteria, printing one PASS/FAIL line per criterion
/// to `log` as it goes. Artifacts go under `artifact_dir`.
std::vector<CriterionResult> run_acceptance(const std::string& artifact_dir, std::ostream& log);

}  // namespace dms::cli
