#include "dms/cli/csv.hpp"

#include "dms/core.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace dms::cli {

std::string CsvTable::comment_value(const std::string& key) const {
  const std::string prefix = key + "=";
  for (const auto* block : {&header_comments, &footer_comments})
    for (const auto& line : *block)
      if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
  return {};
}

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::scientific, 16);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const CsvTable& table) {
  for (const auto& line : table.header_comments) out << "# " << line << '\n';
  for (std::size_t k = 0; k < table.columns.size(); ++k) out << (k ? "," : "") << table.columns[k];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << format_number(row[k]);
    out << '\n';
  }
  for (const auto& line : table.footer_comments) out << "# " << line << '\n';
}

void write_csv(const std::string& path, const CsvTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  write_csv(out, table);
  if (!out) throw Error("write failed for '" + path + "'");
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  bool have_columns = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string text = line.size() > 2 ? line.substr(2) : std::string();
      (have_columns ? table.footer_comments : table.header_comments).push_back(text);
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!have_columns) {
      table.columns = fields;
      have_columns = true;
      continue;
    }
    if (!table.footer_comments.empty()) throw Error("data row after footer comments");
    if (fields.size() != table.columns.size()) throw Error("row width does not match the header: " + line);
    std::vector<double> row;
    for (const auto& f : fields) {
      double v = 0.0;
      const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
      if (res.ec != std::errc() || res.ptr != f.data() + f.size()) throw Error("not a number: '" + f + "'");
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  if (!have_columns) throw Error("CSV has no header row");
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  return read_csv(in);
}

}  // namespace dms::cli
