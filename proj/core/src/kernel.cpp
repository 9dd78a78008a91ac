#include "kernel_eig/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kernel_eig/error.hpp"
#include "shifted_solver.hpp"

namespace kernel_eig {

namespace detail {

ShiftedSolver::ShiftedSolver(const Eigen::MatrixXd& s, double shift) {
  Eigen::MatrixXd a = s;
  a.diagonal().array() -= shift;
  Eigen::LLT<Eigen::MatrixXd> pos(a);
  if (pos.info() == Eigen::Success) {
    factor_ = std::move(pos);
    return;
  }
  Eigen::LLT<Eigen::MatrixXd> neg(-a);
  if (neg.info() == Eigen::Success) {
    sign_ = -1.0;
    factor_ = std::move(neg);
    return;
  }
  factor_ = Eigen::PartialPivLU<Eigen::MatrixXd>(a);
}

Eigen::VectorXd ShiftedSolver::solve(const Eigen::VectorXd& rhs) const {
  return std::visit([&](const auto& f) -> Eigen::VectorXd { return sign_ * f.solve(rhs); },
                    factor_);
}

double ShiftedSolver::rcond() const {
  return std::visit([](const auto& f) { return f.rcond(); }, factor_);
}

}  // namespace detail

namespace {

constexpr double kPoleTolerance = 1e-12;
constexpr std::size_t kDivergenceRun = 5;

double pole_scale(double z) { return kPoleTolerance * std::max(1.0, std::abs(z)); }

}  // namespace

std::vector<std::size_t> connected_states(const SpectrumSplit& split, std::size_t gamma) {
  const std::size_t k = split.dim();
  if (gamma >= k) throw InputError("state index " + std::to_string(gamma) + " out of range");
  std::vector<bool> seen(k, false);
  std::vector<std::size_t> stack{gamma};
  seen[gamma] = true;
  while (!stack.empty()) {
    const std::size_t a = stack.back();
    stack.pop_back();
    for (std::size_t b = 0; b < k; ++b) {
      if (!seen[b] && split.coupling(a, b) != 0.0) {
        seen[b] = true;
        stack.push_back(b);
      }
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < k; ++i) {
    if (seen[i] && i != gamma) out.push_back(i);
  }
  return out;
}

KernelContext::KernelContext(const SpectrumSplit& split, std::size_t gamma)
    : KernelContext(split, gamma, connected_states(split, gamma)) {}

KernelContext::KernelContext(const SpectrumSplit& split, std::size_t gamma,
                             std::vector<std::size_t> intermediates)
    : gamma_(gamma), energy_(0.0), states_(std::move(intermediates)) {
  if (gamma >= split.dim()) {
    throw InputError("state index " + std::to_string(gamma) + " out of range for basis of " +
                     std::to_string(split.dim()));
  }
  std::vector<bool> used(split.dim(), false);
  for (std::size_t s : states_) {
    if (s >= split.dim() || s == gamma || used[s]) {
      throw InputError("invalid intermediate state " + std::to_string(s));
    }
    used[s] = true;
  }
  initialise(split);
}

KernelContext::KernelContext(KernelContext&&) noexcept = default;
KernelContext& KernelContext::operator=(KernelContext&&) noexcept = default;
KernelContext::~KernelContext() = default;

void KernelContext::initialise(const SpectrumSplit& split) {
  energy_ = split.energy(gamma_);
  const auto n = static_cast<Eigen::Index>(states_.size());
  v_.resize(n);
  gaps_.resize(n);
  g_.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::size_t si = states_[static_cast<std::size_t>(i)];
    v_(i) = split.coupling(gamma_, si);
    gaps_(i) = energy_ - split.energy(si);
    for (Eigen::Index j = 0; j < n; ++j) {
      g_(i, j) = split.coupling(si, states_[static_cast<std::size_t>(j)]);
    }
  }
  trivial_ = n == 0 || v_.isZero(0.0);
  if (n == 0) return;

  s_ = -g_;
  s_.diagonal() += gaps_;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s_, Eigen::EigenvaluesOnly);
  poles_.assign(eig.eigenvalues().data(), eig.eigenvalues().data() + n);

  if (pole_distance(0.0) > pole_scale(0.0)) {
    at_zero_ = std::make_unique<detail::ShiftedSolver>(s_, 0.0);
  }
}

double KernelContext::pole_distance(double z) const {
  double best = std::numeric_limits<double>::infinity();
  auto it = std::lower_bound(poles_.begin(), poles_.end(), z);
  if (it != poles_.end()) best = std::min(best, *it - z);
  if (it != poles_.begin()) best = std::min(best, z - *std::prev(it));
  return best;
}

void KernelContext::check_pole(double z) const {
  if (trivial_) return;
  if (pole_distance(z) <= pole_scale(z)) {
    std::ostringstream os;
    os.precision(17);
    os << "z = " << z << " lies on a pole of R_" << gamma_;
    throw PoleError(os.str(), z);
  }
}

double KernelContext::eval(double z) const {
  if (trivial_) return 0.0;
  check_pole(z);
  const detail::ShiftedSolver solver(s_, z);
  return v_.dot(solver.solve(v_));
}

PathSum KernelContext::eval_path_sum(double z, std::size_t l_max) const {
  PathSum out;
  if (states_.empty() || l_max == 0) return out;
  Eigen::VectorXd inv_d(gaps_.size());
  for (Eigen::Index i = 0; i < gaps_.size(); ++i) {
    const double d = gaps_(i) - z;
    if (std::abs(d) <= pole_scale(z)) {
      throw PoleError("z coincides with a path-sum denominator E_gamma - E_i", z);
    }
    inv_d(i) = 1.0 / d;
  }

  Eigen::VectorXd y = v_.cwiseProduct(inv_d);
  std::size_t growing = 0;
  for (std::size_t l = 1; l <= l_max; ++l) {
    if (l > 1) {
      y = (g_ * y).cwiseProduct(inv_d);
      if (y.isZero(0.0)) break;
    }
    const double term = v_.dot(y);
    if (!out.terms.empty()) {
      const double prev = std::abs(out.terms.back());
      growing = (prev > 0.0 && std::abs(term) >= prev) ? growing + 1 : 0;
    }
    out.terms.push_back(term);
    out.value += term;
    if (growing >= kDivergenceRun) {
      throw DivergenceError("path sum for R_" + std::to_string(gamma_) +
                            " diverges: term ratio >= 1 for " + std::to_string(kDivergenceRun) +
                            " consecutive orders ending at l = " + std::to_string(l));
    }
  }
  return out;
}

Jet KernelContext::jet_with(const detail::ShiftedSolver& solver, std::size_t order) const {
  Jet out(order);
  Eigen::VectorXd x = v_;
  for (std::size_t k = 0; k <= order; ++k) {
    x = solver.solve(x);
    out[k] = v_.dot(x);
  }
  return out;
}

Jet KernelContext::jet(std::size_t order) const {
  if (trivial_) return Jet(order);
  if (!at_zero_) {
    throw PoleError("S = D(0) - G is singular: z = 0 is a pole of R_" + std::to_string(gamma_),
                    0.0);
  }
  return jet_with(*at_zero_, order);
}

Jet KernelContext::jet_at(double z0, std::size_t order) const {
  if (trivial_) return Jet(order);
  if (z0 == 0.0) return jet(order);
  check_pole(z0);
  return jet_with(detail::ShiftedSolver(s_, z0), order);
}

double eval_r(const SpectrumSplit& split, std::size_t gamma, double z, EvalOptions opts) {
  const KernelContext ctx(split, gamma);
  if (opts.mode == EvalMode::path_sum) return ctx.eval_path_sum(z, opts.l_max).value;
  return ctx.eval(z);
}

Jet jet_r(const SpectrumSplit& split, std::size_t gamma, std::size_t order) {
  return KernelContext(split, gamma).jet(order);
}

}  // namespace kernel_eig
