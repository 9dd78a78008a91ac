#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "run_spec.hpp"

namespace kernel_eig::cli {

/// Empty, real, integer, text or flag.
using Cell = std::variant<std::monostate, double, long long, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// csv: header plus rows, reals as %.14e, empty cells blank.
/// json: one object per row, empty cells null.
/// pretty: aligned columns for reading.
void write_table(const Table& table, OutputFormat format, std::ostream& out);

}  // namespace kernel_eig::cli
