#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "kernel_eig/eigensolve.hpp"
#include "kernel_eig/verify.hpp"

namespace kernel_eig {

/// Parses {"matrix": [[...], ...]}. Errors name the offending line/column for
/// syntax problems and the JSON path (e.g. matrix[2][0]) for shape problems.
Eigen::MatrixXd parse_matrix_json(const std::string& text);
Eigen::MatrixXd load_matrix_json(const std::filesystem::path& path);

/// Extra fields carried next to an EigenResult when serialized.
struct ResultContext {
  std::optional<double> lambda;
  std::size_t basis = 0;
  /// Closest oracle eigenvalue, when one was computed.
  std::optional<double> oracle;
};

/// One-line JSON object with keys gamma, lambda, basis, method, E0, deltaE,
/// E_total, iterations, residual (plus oracle / series fields when present).
std::string to_json(const EigenResult& result, const ResultContext& ctx);

/// One-line JSON object for an identity report.
std::string to_json(const IdentityReport& report);

/// printf("%.14e"): 15 significant digits in scientific notation.
std::string format_sci(double value);

}  // namespace kernel_eig
