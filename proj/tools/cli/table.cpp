#include "table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "kernel_eig/io.hpp"

namespace kernel_eig::cli {

namespace {

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string text_of(const Cell& cell, bool pretty) {
  return std::visit(
      [pretty](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return pretty ? "-" : "";
        } else if constexpr (std::is_same_v<T, double>) {
          if (!pretty) return format_sci(v);
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.12g", v);
          return buf;
        } else if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          return v;
        }
      },
      cell);
}

nlohmann::json json_of(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
          return v;
        } else {
          return v;
        }
      },
      cell);
}

}  // namespace

void write_table(const Table& table, OutputFormat format, std::ostream& out) {
  switch (format) {
    case OutputFormat::csv: {
      for (std::size_t c = 0; c < table.columns.size(); ++c)
        out << (c ? "," : "") << csv_quote(table.columns[c]);
      out << '\n';
      for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
          out << (c ? "," : "") << csv_quote(text_of(row[c], false));
        out << '\n';
      }
      break;
    }
    case OutputFormat::json: {
      for (const auto& row : table.rows) {
        nlohmann::ordered_json j;
        for (std::size_t c = 0; c < row.size(); ++c) j[table.columns[c]] = json_of(row[c]);
        out << j.dump() << '\n';
      }
      break;
    }
    case OutputFormat::pretty: {
      std::vector<std::vector<std::string>> cells;
      std::vector<std::size_t> width(table.columns.size());
      for (std::size_t c = 0; c < table.columns.size(); ++c) width[c] = table.columns[c].size();
      for (const auto& row : table.rows) {
        auto& line = cells.emplace_back();
        for (std::size_t c = 0; c < row.size(); ++c) {
          line.push_back(text_of(row[c], true));
          width[c] = std::max(width[c], line.back().size());
        }
      }
      auto emit = [&](const std::vector<std::string>& line) {
        for (std::size_t c = 0; c < line.size(); ++c) {
          out << (c ? "  " : "") << line[c];
          if (c + 1 < line.size()) out << std::string(width[c] - line[c].size(), ' ');
        }
        out << '\n';
      };
      emit(table.columns);
      for (const auto& line : cells) emit(line);
      break;
    }
  }
}

}  // namespace kernel_eig::cli
