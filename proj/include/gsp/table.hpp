#pragma once

// Rectangular result tables written as CSV: `# key=value` metadata lines,
// one header row, then data. Numbers use 9 significant digits.

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gsp/config.hpp"
#include "gsp/error.hpp"

namespace gsp {

using Cell = std::variant<double, std::string>;

inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline std::string format_cell(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return format_number(*d);
  return std::get<std::string>(c);
}

class ResultTable {
 public:
  ResultTable() = default;
  explicit ResultTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }
  const std::vector<std::pair<std::string, std::string>>& metadata() const noexcept { return metadata_; }
  std::size_t size() const noexcept { return rows_.size(); }

  void add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size()) throw Error(ErrorCode::DimensionMismatch, "row width differs from header");
    rows_.push_back(std::move(row));
  }

  void add_metadata(std::string key, std::string value) {
    for (char& ch : value)
      if (ch == '\n' || ch == '\r') ch = ' ';
    metadata_.emplace_back(std::move(key), std::move(value));
  }

  /// Value of the first metadata entry with this key, or "".
  std::string meta(const std::string& key) const {
    for (const auto& [k, v] : metadata_)
      if (k == key) return v;
    return {};
  }

  /// Column index by name; DimensionMismatch if absent.
  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < columns_.size(); ++i)
      if (columns_[i] == name) return i;
    throw Error(ErrorCode::DimensionMismatch, "no column named " + name);
  }

  double number(std::size_t row, const std::string& name) const {
    const Cell& c = rows_.at(row).at(column(name));
    if (const double* d = std::get_if<double>(&c)) return *d;
    throw Error(ErrorCode::DimensionMismatch, "column " + name + " is not numeric");
  }

  std::string text(std::size_t row, const std::string& name) const { return format_cell(rows_.at(row).at(column(name))); }

  void write_csv(std::ostream& out) const {
    for (const auto& [k, v] : metadata_) out << "# " << k << '=' << v << '\n';
    for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
    out << '\n';
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_cell(row[i]);
      out << '\n';
    }
  }

  /// Inverse of write_csv. Cells that parse fully as numbers become numbers.
  static ResultTable read_csv(std::istream& in) {
    ResultTable t;
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!header && line.rfind("# ", 0) == 0) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::ParseError, "metadata line without '='");
        t.metadata_.emplace_back(line.substr(2, eq - 2), line.substr(eq + 1));
        continue;
      }
      if (line.empty()) continue;
      const auto fields = detail::split(line, ',');
      if (!header) {
        t.columns_ = fields;
        header = true;
        continue;
      }
      std::vector<Cell> row;
      for (const auto& f : fields) row.push_back(parse_cell(f));
      t.add_row(std::move(row));
    }
    if (!header) throw Error(ErrorCode::EmptyFile, "table has no header row");
    return t;
  }

 private:
  static Cell parse_cell(const std::string& s) {
    if (s == "nan") return std::nan("");
    if (s == "inf") return HUGE_VAL;
    if (s == "-inf") return -HUGE_VAL;
    std::size_t used = 0;
    try {
      const double v = std::stod(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    return s;
  }

  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<std::pair<std::string, std::string>> metadata_;
};

}  // namespace gsp
