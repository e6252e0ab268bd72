#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace qkdrate {

/// Row-oriented result table rendered as CSV or a JSON array of objects.
class Table {
 public:
  using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

  explicit Table(std::vector<std::string> columns);

  void add_row(std::vector<Cell> row);
  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t size() const { return rows_.size(); }

  /// Header line, then one line per row. Doubles use 9 significant digits;
  /// empty cells render as nothing.
  std::string to_csv() const;
  /// Top-level array; empty cells become null.
  std::string to_json() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

/// printf("%.9g") in the C locale.
std::string format_double(double value);

}  // namespace qkdrate
