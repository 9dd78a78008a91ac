#include "kernel_eig/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

#include "kernel_eig/error.hpp"

namespace kernel_eig {

std::string to_string(SolveMethod m) {
  switch (m) {
    case SolveMethod::root:
      return "root";
    case SolveMethod::series:
      return "series";
    case SolveMethod::diagonalization:
      return "diagonalization";
  }
  return "unknown";
}

namespace {

struct Interval {
  double lo;
  double hi;
};

// Pole-free interval of Delta holding the level of rank r, with the unbounded
// ends closed off by Gershgorin discs of the connected block.
Interval branch_interval(const KernelContext& ctx) {
  const auto& gaps = ctx.gaps();
  const auto& v = ctx.couplings();
  const auto& g = ctx.block();

  std::size_t rank = 0;
  double disc_lo = -v.cwiseAbs().sum();
  double disc_hi = -disc_lo;
  for (Eigen::Index i = 0; i < gaps.size(); ++i) {
    if (gaps(i) > 0.0) ++rank;  // E_i < E_gamma
    const double radius = std::abs(v(i)) + g.row(i).cwiseAbs().sum();
    disc_lo = std::min(disc_lo, -gaps(i) - radius);
    disc_hi = std::max(disc_hi, -gaps(i) + radius);
  }
  const double pad = 1.0 + 1e-8 * std::max(std::abs(disc_lo), std::abs(disc_hi));

  // Delta-space poles are -p for each pole p of R(z).
  std::vector<double> dpoles;
  for (double p : ctx.poles()) dpoles.push_back(-p);
  std::sort(dpoles.begin(), dpoles.end());

  Interval out;
  out.lo = rank == 0 ? disc_lo - pad : dpoles[rank - 1];
  out.hi = rank == dpoles.size() ? disc_hi + pad : dpoles[rank];
  return out;
}

}  // namespace

EigenResult solve_root(const KernelContext& ctx, RootOptions opts) {
  EigenResult res;
  res.gamma = ctx.gamma();
  res.E0 = ctx.reference_energy();
  res.method = SolveMethod::root;
  if (ctx.trivially_zero()) {
    res.E_total = res.E0;
    return res;
  }

  const Interval bracket = branch_interval(ctx);
  double lo = bracket.lo;
  double hi = bracket.hi;
  res.bracket_lo = lo;
  res.bracket_hi = hi;

  double delta = 0.5 * (lo + hi);
  if (ctx.pole_distance(0.0) > 0.0) {
    try {
      const double guess = ctx.eval(0.0);
      if (guess > lo && guess < hi) {
        delta = guess;
      } else {
        // Mirror an out-of-range guess through the nearer end. The unbounded
        // side is closed by a Gershgorin bound, far wider than the root's
        // distance to the pole, so the midpoint would be a poor start.
        const double mirrored = guess >= hi ? 2.0 * hi - guess : 2.0 * lo - guess;
        if (mirrored > lo && mirrored < hi) delta = mirrored;
      }
    } catch (const PoleError&) {
    }
  }

  const double eps = std::numeric_limits<double>::epsilon();
  double prev_abs_f = std::numeric_limits<double>::infinity();
  double f = 0.0;
  std::size_t it = 0;
  bool done = false;
  for (;; ++it) {
    double slope = 0.0;
    try {
      const Jet local = ctx.jet_at(-delta, 1);
      f = local[0] - delta;
      slope = -local[1] - 1.0;
    } catch (const PoleError&) {
      // Numerically on an interior pole: nudge toward the bracket centre.
      delta = 0.5 * (delta + 0.5 * (lo + hi));
      if (it >= opts.max_iter) break;
      continue;
    }
    res.residual = std::abs(f);
    if (res.residual <= opts.tol * (1.0 + std::abs(delta))) {
      done = true;
      // One more Newton step is nearly free and usually lands on the rounding floor.
      const double next = delta - f / slope;
      if (res.residual > 0.0 && next > lo && next < hi && next != delta) {
        try {
          const double f_next = ctx.eval(-next) - next;
          if (std::abs(f_next) < res.residual) {
            delta = next;
            res.residual = std::abs(f_next);
            ++it;
          }
        } catch (const PoleError&) {
        }
      }
      break;
    }
    if (it >= opts.max_iter) break;
    // f decreases through its root.
    if (f > 0.0) {
      lo = delta;
    } else {
      hi = delta;
    }
    if (hi - lo <= 4.0 * eps * std::max(1.0, std::abs(delta))) {
      // The bracket has collapsed onto adjacent doubles; f's rounding floor
      // sits above the requested tolerance.
      done = true;
      break;
    }
    double next = delta - f / slope;
    const bool inside = next > lo && next < hi;
    const bool stalled = res.residual > 0.5 * prev_abs_f;
    if (!inside || stalled || !std::isfinite(next)) next = 0.5 * (lo + hi);
    prev_abs_f = res.residual;
    delta = next;
  }

  res.iterations = it;
  res.deltaE = delta;
  res.E_total = res.E0 + res.deltaE;
  res.converged = done;
  if (!done) {
    std::ostringstream os;
    os.precision(17);
    os << "root search for level " << ctx.gamma() << " did not converge in " << opts.max_iter
       << " iterations; bracket [" << lo << ", " << hi << "], last residual " << res.residual;
    throw ConvergenceError(os.str(), lo, hi, res.residual);
  }
  if (res.residual > 1e-6 * (1.0 + std::abs(delta))) {
    std::ostringstream os;
    os.precision(17);
    os << "no sign change of R(-Delta) - Delta in [" << bracket.lo << ", " << bracket.hi
       << "] for level " << ctx.gamma() << "; last residual " << res.residual;
    throw ConvergenceError(os.str(), bracket.lo, bracket.hi, res.residual);
  }
  return res;
}

EigenResult solve_root(const SpectrumSplit& split, std::size_t gamma, RootOptions opts) {
  return solve_root(KernelContext(split, gamma), opts);
}

std::vector<double> eigenvalue_series_terms(const Jet& r) {
  const std::size_t order = r.order();
  std::vector<double> terms;
  terms.reserve(order + 1);
  Jet power = r;  // R^{m+1}
  for (std::size_t m = 0; m <= order; ++m) {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    terms.push_back(sign * power[m] / static_cast<double>(m + 1));
    if (m < order) power *= r;
  }
  return terms;
}

EigenResult eval_series(const KernelContext& ctx, std::size_t order) {
  EigenResult res;
  res.gamma = ctx.gamma();
  res.E0 = ctx.reference_energy();
  res.method = SolveMethod::series;
  res.series_order = order;
  res.terms = eigenvalue_series_terms(ctx.jet(order));
  double sum = 0.0;
  for (double t : res.terms) {
    sum += t;
    res.partial_sums.push_back(sum);
  }
  res.deltaE = sum;
  res.E_total = res.E0 + res.deltaE;
  res.residual = std::abs(res.terms.back());
  res.converged = std::isfinite(sum);
  return res;
}

EigenResult eval_series(const SpectrumSplit& split, std::size_t gamma, std::size_t order) {
  return eval_series(KernelContext(split, gamma), order);
}

std::vector<double> diagonalize_oracle(const SpectrumSplit& split) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(split.hamiltonian(),
                                                           Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw Error("dense eigensolver failed");
  const auto& ev = eig.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  return out;
}

double nearest_eigenvalue(const std::vector<double>& eigenvalues, double value) {
  if (eigenvalues.empty()) throw InputError("no eigenvalues");
  double best = eigenvalues.front();
  for (double e : eigenvalues) {
    if (std::abs(e - value) < std::abs(best - value)) best = e;
  }
  return best;
}

EigenResult oracle_level(const SpectrumSplit& split, std::size_t gamma) {
  if (gamma >= split.dim()) throw InputError("gamma out of range");
  std::vector<std::size_t> block = connected_states(split, gamma);
  block.push_back(gamma);
  std::sort(block.begin(), block.end());
  const auto n = static_cast<Eigen::Index>(block.size());
  Eigen::MatrixXd h(n, n);
  std::size_t rank = 0;
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) h(a, b) = split.coupling(block[a], block[b]);
    h(a, a) = split.energy(block[a]);
    if (split.energy(block[a]) < split.energy(gamma)) ++rank;
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw Error("dense eigensolver failed");
  EigenResult res;
  res.gamma = gamma;
  res.E0 = split.energy(gamma);
  res.method = SolveMethod::diagonalization;
  res.E_total = eig.eigenvalues()(static_cast<Eigen::Index>(rank));
  res.deltaE = res.E_total - res.E0;
  return res;
}

}  // namespace kernel_eig
