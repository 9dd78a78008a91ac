#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace kernel_eig::reference {

/// Bumped whenever a published value below is corrected or added.
inline constexpr std::string_view kVersion = "2";

/// Coupling constants of the quartic-oscillator tables.
inline constexpr std::array<double, 7> kLambdas = {0.1, 0.2, 1.0, 2.0, 10.0, 20.0, 100.0};

/// Cut levels of the R_0^c(0, n) table. Labels are one-based basis labels.
inline constexpr std::array<std::size_t, 7> kCutLevels = {3, 5, 11, 21, 51, 101, 199};

/// Truncation rows of the ground-state table (number of basis states).
inline constexpr std::array<std::size_t, 6> kTruncations = {10, 20, 30, 50, 100, 200};

/// Published R_0^c(0, n) (five significant digits), or nullopt if the lambda
/// or level is not in the table.
std::optional<double> cut_value(double lambda, std::size_t level);

/// Published ground-state energy for a truncation row.
std::optional<double> truncated_energy(double lambda, std::size_t truncation);

/// High-precision literature value of the quartic ground-state energy.
std::optional<double> known_energy(double lambda);

/// Provenance note printed alongside comparisons.
std::string_view provenance();

}  // namespace kernel_eig::reference
