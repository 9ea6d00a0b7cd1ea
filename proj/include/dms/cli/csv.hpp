#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dms::cli {

/// Numeric table with `#` comment lines before and after the data.
struct CsvTable {
  std::vector<std::string> header_comments;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> footer_comments;

  /// Value of a `# key=value` comment, or empty.
  std::string comment_value(const std::string& key) const;
};

/// 17 significant digits, scientific notation; parses back to the same double.
std::string format_number(double x);

void write_csv(std::ostream& out, const CsvTable& table);
void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

}  // namespace dms::cli
