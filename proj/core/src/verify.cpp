#include "kernel_eig/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "kernel_eig/eigensolve.hpp"
#include "kernel_eig/error.hpp"

namespace kernel_eig {

namespace {

double factorial(std::size_t n) {
  double f = 1.0;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<double>(i);
  return f;
}

double sign_of(std::size_t power) { return power % 2 == 0 ? 1.0 : -1.0; }

std::string describe(const SpectrumSplit& split, std::size_t gamma, std::size_t order) {
  std::ostringstream os;
  os << split.meta().name;
  if (split.meta().lambda) os << " lambda=" << *split.meta().lambda;
  if (split.meta().seed) os << " seed=" << *split.meta().seed;
  os << " dim=" << split.dim() << " gamma=" << gamma << " M=" << order;
  return os.str();
}

double relative_difference(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace

std::string to_string(IdentityKind kind) {
  switch (kind) {
    case IdentityKind::laurent_f:
      return "laurent_F";
    case IdentityKind::power_relation:
      return "power_relation";
    case IdentityKind::derivative_identity:
      return "derivative_identity";
    case IdentityKind::rs_linear:
      return "rs_linear";
    case IdentityKind::rs_quadratic:
      return "rs_quadratic";
  }
  return "unknown";
}

double laurent_zero_coeff_f(const Jet& r) {
  // F(z) = R(z) * ln(1+u)/u with u = R/z expands as
  // sum_k (-1)^k/(k+1) R^{k+1} z^{-k}; the z^0 coefficient of the k-th piece
  // is the z^k Taylor coefficient of R^{k+1}.
  const std::size_t order = r.order();
  double total = 0.0;
  for (std::size_t k = 0; k <= order; ++k) {
    const Jet piece = pow(r, static_cast<unsigned>(k + 1));
    total += sign_of(k) / static_cast<double>(k + 1) * piece[k];
  }
  return total;
}

double laurent_zero_coeff_f(const SpectrumSplit& split, std::size_t gamma, std::size_t order) {
  return laurent_zero_coeff_f(jet_r(split, gamma, order));
}

IdentityReport check_laurent(const SpectrumSplit& split, std::size_t gamma, std::size_t order,
                             double tol) {
  const KernelContext ctx(split, gamma);
  const Jet r = ctx.jet(order);
  IdentityReport rep;
  rep.identity = IdentityKind::laurent_f;
  rep.tolerance = tol;
  rep.inputs = describe(split, gamma, order);
  rep.lhs = laurent_zero_coeff_f(r);
  rep.rhs = solve_root(ctx).deltaE;
  rep.residual = std::abs(rep.lhs - rep.rhs);
  const auto terms = eigenvalue_series_terms(r);
  rep.last_term = std::abs(terms.back());
  rep.passed = rep.residual <= tol;
  return rep;
}

double power_coefficient(const Jet& r, std::size_t n) {
  if (n < 1) throw InputError("C_n needs n >= 1");
  const std::size_t order = r.order();
  if (n - 1 > order) throw InputError("jet order too small for C_" + std::to_string(n));
  // n (-1)^{m-n+1} / ((m+1)(m-n+1)!) * d^{m-n+1} R^{m+1}|_0, with the
  // derivative written as (m-n+1)! [z^{m-n+1}] R^{m+1}.
  const auto pw = powers(r, order + 1);
  double total = 0.0;
  for (std::size_t m = n - 1; m <= order; ++m) {
    const std::size_t j = m - n + 1;
    total += static_cast<double>(n) * sign_of(j) / static_cast<double>(m + 1) * pw[m][j];
  }
  return total;
}

IdentityReport check_power_relation(const Jet& r, std::size_t n, double tol) {
  if (n < 2) throw InputError("power relation needs n >= 2");
  IdentityReport rep;
  rep.identity = IdentityKind::power_relation;
  rep.n = n;
  rep.tolerance = tol;
  const double c1 = power_coefficient(r, 1);
  const double cn = power_coefficient(r, n);
  const double c1n = std::pow(c1, static_cast<double>(n));
  rep.lhs = cn;
  rep.rhs = c1n;
  rep.residual = std::abs(cn - c1n) / (1.0 + std::abs(c1n));
  rep.passed = rep.residual <= tol;
  // Last m = order term of C_n.
  const std::size_t order = r.order();
  const std::size_t j = order - n + 1;
  rep.last_term = static_cast<double>(n) / static_cast<double>(order + 1) *
                  std::abs(pow(r, static_cast<unsigned>(order + 1))[j]);
  return rep;
}

IdentityReport check_power_relation(const SpectrumSplit& split, std::size_t gamma, std::size_t n,
                                    std::size_t order, double tol) {
  if (n < 2) throw InputError("power relation needs n >= 2");
  if (order < n + 5) {
    throw InputError("power relation needs jet order M >= n + 5 (got M=" + std::to_string(order) +
                     ", n=" + std::to_string(n) + ")");
  }
  IdentityReport rep = check_power_relation(jet_r(split, gamma, order), n, tol);
  rep.inputs = describe(split, gamma, order);
  return rep;
}

IdentityReport check_derivative_identity(const Jet& r, std::size_t k, std::size_t n,
                                         double tol) {
  if (n < 1) throw InputError("derivative identity needs n >= 1");
  if (k + n + 1 > r.order()) {
    throw InputError("derivative identity order overflow: k+n+1 = " + std::to_string(k + n + 1) +
                     " exceeds jet order " + std::to_string(r.order()));
  }
  const auto pw = powers(r, k + n + 1);  // pw[p-1] = R^p
  auto d = [&](std::size_t deriv, std::size_t p) { return factorial(deriv) * pw[p - 1][deriv]; };

  const double lhs = d(k, k + n + 1);
  double rhs = 0.0;
  const double nn = static_cast<double>(n);
  for (std::size_t m = 0; m <= k; ++m) {
    const double weight = nn / (nn + 1.0) * static_cast<double>(k + n + 1) /
                          static_cast<double>(k + n - m) * factorial(k) /
                          (factorial(m + 1) * factorial(k - m));
    rhs += weight * d(k - m, k + n - m) * d(m, m + 1);
  }

  IdentityReport rep;
  rep.identity = IdentityKind::derivative_identity;
  rep.k = k;
  rep.n = n;
  rep.tolerance = tol;
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.residual = relative_difference(lhs, rhs);
  rep.passed = rep.residual <= tol;
  return rep;
}

IdentityReport check_derivative_identity(const SpectrumSplit& split, std::size_t gamma,
                                         std::size_t k, std::size_t n, std::size_t order,
                                         double tol) {
  IdentityReport rep = check_derivative_identity(jet_r(split, gamma, order), k, n, tol);
  rep.inputs = describe(split, gamma, order);
  return rep;
}

double second_order_rs_quartic(std::size_t basis) {
  const Eigen::MatrixXd x4 = position_power(4, basis, 4);
  double total = 0.0;
  for (Eigen::Index kk = 1; kk < x4.rows(); ++kk) {
    const double gap = static_cast<double>(2 * kk);  // (2k+1) - 1
    total -= x4(0, kk) * x4(0, kk) / gap;
  }
  return total;
}

RsConsistency rs_consistency(const RsOptions& opts) {
  RsConsistency out;
  std::vector<double> grid = opts.lambdas;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (opts.degree < 2) throw InputError("RS fit needs degree >= 2");
  if (grid.size() < opts.degree + 1 || grid.front() <= 0.0) {
    throw InputError("RS fit ill-conditioned: need at least " + std::to_string(opts.degree + 1) +
                     " distinct positive lambda values");
  }

  const auto rows = static_cast<Eigen::Index>(grid.size());
  const auto cols = static_cast<Eigen::Index>(opts.degree);
  Eigen::MatrixXd design(rows, cols);
  Eigen::VectorXd rhs(rows);
  const double scale = grid.back();
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double lam = grid[static_cast<std::size_t>(i)];
    const EigenResult r = solve_root(build_anharmonic(lam, 2, opts.basis), 0);
    out.lambdas.push_back(lam);
    out.energies.push_back(r.E_total);
    rhs(i) = r.E_total - 1.0;
    // Columns in the scaled variable lambda/scale keep the design well conditioned.
    double p = 1.0;
    for (Eigen::Index d = 0; d < cols; ++d) {
      p *= lam / scale;
      design(i, d) = p;
    }
  }
  const Eigen::VectorXd scaled = design.colPivHouseholderQr().solve(rhs);
  double unscale = 1.0;
  for (Eigen::Index d = 0; d < cols; ++d) {
    unscale *= scale;
    out.coefficients.push_back(scaled(d) / unscale);
  }

  out.first_order = position_power(4, 1, 4)(0, 0);
  out.second_order = second_order_rs_quartic(opts.basis);

  std::ostringstream os;
  os << "quartic gamma=0 K=" << opts.basis << " lambda in [" << grid.front() << ", "
     << grid.back() << "] points=" << grid.size() << " degree=" << opts.degree;

  out.linear.identity = IdentityKind::rs_linear;
  out.linear.inputs = os.str();
  out.linear.lhs = out.coefficients[0];
  out.linear.rhs = out.first_order;
  out.linear.residual = std::abs(out.coefficients[0] - out.first_order);
  out.linear.tolerance = opts.linear_tol;
  out.linear.passed = out.linear.residual <= opts.linear_tol;
  out.linear.last_term = std::abs(out.coefficients.back()) * std::pow(scale, cols);

  out.quadratic = out.linear;
  out.quadratic.identity = IdentityKind::rs_quadratic;
  out.quadratic.lhs = out.coefficients[1];
  out.quadratic.rhs = out.second_order;
  out.quadratic.residual = std::abs(out.coefficients[1] - out.second_order);
  out.quadratic.tolerance = opts.quadratic_tol;
  out.quadratic.passed = out.quadratic.residual <= opts.quadratic_tol;
  return out;
}

}  // namespace kernel_eig
