#include "kernel_eig/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kernel_eig/error.hpp"

namespace kernel_eig {

using nlohmann::json;

namespace {

std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json number_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

Eigen::MatrixXd parse_matrix_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("matrix JSON syntax error at " + line_column(text, e.byte) + ": " +
                     e.what());
  }
  if (!doc.is_object() || !doc.contains("matrix")) {
    throw InputError("matrix JSON: expected an object with field \"matrix\"");
  }
  const json& rows = doc.at("matrix");
  if (!rows.is_array() || rows.empty()) {
    throw InputError("matrix: expected a non-empty array of rows");
  }
  const auto k = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd m(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    const std::string where = "matrix[" + std::to_string(i) + "]";
    if (!row.is_array()) throw InputError(where + ": expected an array");
    if (static_cast<Eigen::Index>(row.size()) != k) {
      throw InputError(where + ": expected " + std::to_string(k) + " entries (square matrix), found " +
                       std::to_string(row.size()));
    }
    for (Eigen::Index j = 0; j < k; ++j) {
      const json& cell = row[static_cast<std::size_t>(j)];
      if (!cell.is_number()) {
        throw InputError(where + "[" + std::to_string(j) + "]: expected a number");
      }
      m(i, j) = cell.get<double>();
    }
  }
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) {
      const double scale = std::max({1.0, std::abs(m(i, j)), std::abs(m(j, i))});
      if (std::abs(m(i, j) - m(j, i)) > kSymmetryTolerance * scale) {
        std::ostringstream os;
        os << "matrix[" << i << "][" << j << "] = " << m(i, j) << " but matrix[" << j << "][" << i
           << "] = " << m(j, i) << ": matrix must be symmetric";
        throw InputError(os.str());
      }
    }
  }
  return m;
}

Eigen::MatrixXd load_matrix_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open matrix file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_matrix_json(buf.str());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string to_json(const EigenResult& r, const ResultContext& ctx) {
  json j;
  j["gamma"] = r.gamma;
  j["lambda"] = ctx.lambda ? json(*ctx.lambda) : json(nullptr);
  j["basis"] = ctx.basis;
  j["method"] = r.method == SolveMethod::series
                    ? "series(" + std::to_string(r.series_order) + ")"
                    : to_string(r.method);
  j["E0"] = number_or_null(r.E0);
  j["deltaE"] = number_or_null(r.deltaE);
  j["E_total"] = number_or_null(r.E_total);
  j["iterations"] = r.iterations;
  j["residual"] = number_or_null(r.residual);
  j["converged"] = r.converged;
  if (ctx.oracle) j["oracle"] = *ctx.oracle;
  if (r.method == SolveMethod::series) {
    json partial = json::array();
    for (double p : r.partial_sums) partial.push_back(number_or_null(p));
    j["partial_sums"] = std::move(partial);
  }
  return j.dump();
}

std::string to_json(const IdentityReport& rep) {
  json j;
  j["identity"] = to_string(rep.identity);
  if (rep.identity == IdentityKind::power_relation) j["n"] = rep.n;
  if (rep.identity == IdentityKind::derivative_identity) {
    j["k"] = rep.k;
    j["n"] = rep.n;
  }
  j["inputs"] = rep.inputs;
  j["lhs"] = number_or_null(rep.lhs);
  j["rhs"] = number_or_null(rep.rhs);
  j["residual"] = number_or_null(rep.residual);
  j["tolerance"] = rep.tolerance;
  j["last_term"] = number_or_null(rep.last_term);
  j["passed"] = rep.passed;
  return j.dump();
}

std::string format_sci(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.14e", value);
  return buf;
}

}  // namespace kernel_eig
