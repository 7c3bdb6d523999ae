#pragma once

#include <string>
#include <variant>
#include <vector>

namespace pcmc::table {

using Cell = std::variant<std::monostate, double, long long, std::string>;

/// Column-ordered table with deterministic formatting, so identical runs
/// emit byte-identical CSV/JSON regardless of worker count.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  std::string to_csv() const;
  std::string to_json() const;
};

/// Fixed 10-significant-digit rendering used for every numeric cell.
std::string format_number(double v);

}  // namespace pcmc::table
