#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kernel_eig/jet.hpp"
#include "kernel_eig/model.hpp"

namespace kernel_eig {

/// States reachable from `gamma` through nonzero couplings, excluding gamma,
/// in ascending basis order.
std::vector<std::size_t> connected_states(const SpectrumSplit& split, std::size_t gamma);

/// Literal partial sum of the kernel's path expansion.
struct PathSum {
  double value = 0.0;
  /// terms[l-1] is the sum over all paths with l intermediate states.
  std::vector<double> terms;
};

namespace detail {
class ShiftedSolver;
}

/// Path-sum ingredients of R_gamma(z) for one reference state.
///
/// With v the couplings gamma -> i, D(z) = diag(E_gamma - E_i - z) and G the
/// coupling block over the intermediate states,
///
///   R(z) = sum_l v^T D^-1 (G D^-1)^(l-1) v = v^T (D(z) - G)^-1 v.
///
/// The closed form is what `eval` computes. Writing S = D(0) - G, the kernel
/// has poles exactly at the eigenvalues of S, and its Taylor coefficients at
/// z0 are v^T (S - z0)^-(k+1) v.
///
/// Immutable after construction and safe to share between threads.
class KernelContext {
 public:
  /// Intermediate states are those connected to gamma.
  KernelContext(const SpectrumSplit& split, std::size_t gamma);

  /// Explicit intermediate set; entries must be distinct and differ from gamma.
  KernelContext(const SpectrumSplit& split, std::size_t gamma,
                std::vector<std::size_t> intermediates);

  KernelContext(const KernelContext&) = delete;
  KernelContext& operator=(const KernelContext&) = delete;
  KernelContext(KernelContext&&) noexcept;
  KernelContext& operator=(KernelContext&&) noexcept;
  ~KernelContext();

  std::size_t gamma() const noexcept { return gamma_; }
  double reference_energy() const noexcept { return energy_; }
  std::span<const std::size_t> intermediates() const noexcept { return states_; }
  std::size_t size() const noexcept { return states_.size(); }

  /// v: couplings g^{gamma i}.
  const Eigen::VectorXd& couplings() const noexcept { return v_; }
  /// D0: gaps E_gamma - E_i.
  const Eigen::VectorXd& gaps() const noexcept { return gaps_; }
  /// G: coupling block over the intermediate states.
  const Eigen::MatrixXd& block() const noexcept { return g_; }

  /// Poles of R in z (eigenvalues of S), ascending.
  std::span<const double> poles() const noexcept { return poles_; }
  /// Distance from z to the nearest pole (infinity when there are none).
  double pole_distance(double z) const;
  /// True when every coupling out of gamma is zero, so R vanishes identically.
  bool trivially_zero() const noexcept { return trivial_; }

  /// R(z) via the resolvent solve.
  double eval(double z) const;

  /// Sum of the first l_max path orders. Throws DivergenceError if the term
  /// magnitude fails to decrease for five consecutive orders.
  PathSum eval_path_sum(double z, std::size_t l_max) const;

  /// Taylor coefficients of R about z = 0 up to `order`.
  Jet jet(std::size_t order) const;

  /// Taylor coefficients of R about z0, in powers of (z - z0).
  Jet jet_at(double z0, std::size_t order) const;

 private:
  void initialise(const SpectrumSplit& split);
  void check_pole(double z) const;
  Jet jet_with(const detail::ShiftedSolver& solver, std::size_t order) const;

  std::size_t gamma_;
  double energy_;
  std::vector<std::size_t> states_;
  Eigen::VectorXd v_;
  Eigen::VectorXd gaps_;
  Eigen::MatrixXd g_;
  Eigen::MatrixXd s_;
  std::vector<double> poles_;
  bool trivial_ = false;
  std::unique_ptr<detail::ShiftedSolver> at_zero_;
};

enum class EvalMode { resolvent, path_sum };

struct EvalOptions {
  EvalMode mode = EvalMode::resolvent;
  std::size_t l_max = 200;
};

/// R_gamma(z) on the connected intermediate states.
double eval_r(const SpectrumSplit& split, std::size_t gamma, double z, EvalOptions opts = {});

/// Taylor coefficients r_0..r_order of R_gamma about z = 0.
Jet jet_r(const SpectrumSplit& split, std::size_t gamma, std::size_t order);

// ---------------------------------------------------------------------------
// Cut series
// ---------------------------------------------------------------------------

/// How a cut label n maps to basis states.
///  - raw_index: label n is basis state n (labels start at 0).
///  - coupled_subspace: states not connected to gamma are dropped and the
///    survivors other than gamma are numbered 1, 2, 3, ...
///  - one_based: one-based basis labels; label n is basis state n - 1.
enum class CutConvention { raw_index, coupled_subspace, one_based };

std::string to_string(CutConvention c);
CutConvention parse_convention(const std::string& name);

/// R^c(z, n) for every label up to N, plus running sums.
///
/// values[i] is the sum over all paths whose largest intermediate label is
/// labels[i]; cumulative[i] is the kernel restricted to intermediates with
/// label <= labels[i].
struct CutSeriesReport {
  std::size_t gamma = 0;
  double z = 0.0;
  CutConvention convention = CutConvention::coupled_subspace;
  std::vector<std::size_t> labels;
  /// Basis state for each label.
  std::vector<std::size_t> states;
  std::vector<double> values;
  std::vector<double> cumulative;

  /// Value for a label; throws if the label is not in the report.
  double value(std::size_t label) const;
  double cumulative_at(std::size_t label) const;
};

/// Largest label usable with a split of this size under `convention`.
std::size_t max_cut_label(const SpectrumSplit& split, std::size_t gamma, CutConvention convention);

CutSeriesReport cut_series(const SpectrumSplit& split, std::size_t gamma, double z,
                           std::size_t max_label, CutConvention convention);

/// Intermediate states admitted once labels up to `max_label` are included.
std::vector<std::size_t> cut_states(const SpectrumSplit& split, std::size_t gamma,
                                    std::size_t max_label, CutConvention convention);

/// CSV with header "n,R_c,cumulative", 15 significant digits.
std::string to_csv(const CutSeriesReport& report);

}  // namespace kernel_eig
