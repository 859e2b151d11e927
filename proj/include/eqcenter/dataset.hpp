#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eqcenter {

/// A loaded tabular dataset. Cells are kept as raw strings; `numeric_columns`
/// lists the columns (by position) whose every cell parses as a finite
/// decimal number. Columns with any empty cell are classified non-numeric.
struct RawDataset {
  std::vector<std::string> column_names;
  std::vector<std::vector<std::string>> rows;  // rows[i][c]
  std::vector<std::size_t> numeric_columns;    // positions into column_names
  std::string provenance;

  std::size_t row_count() const { return rows.size(); }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline bool parse_finite_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string_view rest = line;
  while (true) {
    auto pos = rest.find(',');
    if (pos == std::string_view::npos) {
      cells.emplace_back(trim(rest));
      break;
    }
    cells.emplace_back(trim(rest.substr(0, pos)));
    rest.remove_prefix(pos + 1);
  }
  return cells;
}

}  // namespace detail

/// Reads a CSV file with a header row. A column is classified numeric iff
/// every cell is non-empty and parses as a finite decimal number.
inline RawDataset load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset: " + path);

  RawDataset ds;
  ds.provenance = path;

  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty file (no header row): " + path);
  ds.column_names = detail::split_csv_line(line);
  const std::size_t ncols = ds.column_names.size();

  std::vector<bool> numeric(ncols, true);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = detail::split_csv_line(line);
    cells.resize(ncols);  // short rows read as empty cells
    for (std::size_t c = 0; c < ncols; ++c) {
      if (!numeric[c]) continue;
      double v;
      if (!detail::parse_finite_double(cells[c], v)) numeric[c] = false;
    }
    ds.rows.push_back(std::move(cells));
  }
  for (std::size_t c = 0; c < ncols; ++c)
    if (numeric[c]) ds.numeric_columns.push_back(c);
  return ds;
}

/// Builds a dataset directly from numeric feature rows (used by tests and
/// generators; every column is numeric by construction).
inline RawDataset dataset_from_features(const std::vector<std::vector<double>>& features) {
  RawDataset ds;
  ds.provenance = "<memory>";
  const std::size_t ncols = features.empty() ? 0 : features.front().size();
  for (std::size_t c = 0; c < ncols; ++c) {
    ds.column_names.push_back("f" + std::to_string(c));
    ds.numeric_columns.push_back(c);
  }
  for (const auto& row : features) {
    if (row.size() != ncols) throw std::invalid_argument("ragged feature rows");
    std::vector<std::string> cells;
    cells.reserve(ncols);
    for (double v : row) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      cells.emplace_back(buf);
    }
    ds.rows.push_back(std::move(cells));
  }
  return ds;
}

}  // namespace eqcenter
