#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "kernel_eig/jet.hpp"
#include "kernel_eig/kernel.hpp"
#include "kernel_eig/model.hpp"

namespace kernel_eig {

enum class SolveMethod { root, series, diagonalization };

std::string to_string(SolveMethod m);

/// One level's eigenvalue. E_total is always E0 + deltaE.
struct EigenResult {
  std::size_t gamma = 0;
  /// Unperturbed E_gamma (the diagonal entry).
  double E0 = 0.0;
  /// Shift Delta E_gamma = -alpha_gamma.
  double deltaE = 0.0;
  double E_total = 0.0;
  SolveMethod method = SolveMethod::root;
  /// Cut order M for the series method.
  std::size_t series_order = 0;
  std::size_t iterations = 0;
  /// Root: |R(-deltaE) - deltaE|. Series: magnitude of the last retained term.
  double residual = 0.0;
  bool converged = true;

  /// Root: the pole-free interval of deltaE that was searched.
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;

  /// Series: terms and running sums, index m = 0..M.
  std::vector<double> terms;
  std::vector<double> partial_sums;
};

struct RootOptions {
  double tol = 1e-13;
  std::size_t max_iter = 200;
};

/// Solves R_gamma(-Delta) = Delta by safeguarded Newton.
///
/// The search runs inside one pole-free interval. Cauchy interlacing puts
/// exactly one eigenvalue of the connected block between consecutive poles,
/// and the level continuously connected to E_gamma as the coupling is switched
/// on keeps its rank; the interval is picked by the rank of E_gamma among the
/// connected diagonal energies. Newton starts at Delta_0 = R_gamma(0) when that
/// lies inside the interval and otherwise at the midpoint. f(Delta) =
/// R(-Delta) - Delta is strictly decreasing on the interval, so bisection on
/// the running bracket always makes progress.
EigenResult solve_root(const KernelContext& ctx, RootOptions opts = {});
EigenResult solve_root(const SpectrumSplit& split, std::size_t gamma, RootOptions opts = {});

/// Terms (-1)^m/(m+1) [z^m] R^{m+1}, m = 0..order, from a jet of R at z = 0.
std::vector<double> eigenvalue_series_terms(const Jet& r);

/// The complete eigenvalue-shift series cut at order M.
EigenResult eval_series(const KernelContext& ctx, std::size_t order);
EigenResult eval_series(const SpectrumSplit& split, std::size_t gamma, std::size_t order);

/// All eigenvalues of the reassembled matrix, ascending.
std::vector<double> diagonalize_oracle(const SpectrumSplit& split);

/// Oracle eigenvalue closest to `value`.
double nearest_eigenvalue(const std::vector<double>& eigenvalues, double value);

/// Dense diagonalization of gamma's connected block, picking the eigenvalue
/// whose rank matches E_gamma's rank among the block's diagonal energies.
/// Same level selection as solve_root, without the resolvent.
EigenResult oracle_level(const SpectrumSplit& split, std::size_t gamma);

}  // namespace kernel_eig
