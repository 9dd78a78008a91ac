#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "kernel_eig/jet.hpp"
#include "kernel_eig/kernel.hpp"
#include "kernel_eig/model.hpp"

namespace kernel_eig {

enum class IdentityKind { laurent_f, power_relation, derivative_identity, rs_linear, rs_quadratic };

std::string to_string(IdentityKind kind);

/// Outcome of one numeric identity check. `passed` is residual <= tolerance.
struct IdentityReport {
  IdentityKind identity = IdentityKind::laurent_f;
  /// n for the power relation and derivative identity.
  std::size_t n = 0;
  /// k for the derivative identity.
  std::size_t k = 0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  /// Free-form description of the split and orders used.
  std::string inputs;
  /// Magnitude of the last series term kept, so a pass can be judged against
  /// truncation.
  double last_term = 0.0;
  /// Identity-specific values (e.g. C_n and C_1^n).
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Coefficient of z^0 in the Laurent expansion of F(z) = z ln(1 + R(z)/z),
/// summed over k = 0..order. Equals Delta E when the expansion converges.
double laurent_zero_coeff_f(const Jet& r);
double laurent_zero_coeff_f(const SpectrumSplit& split, std::size_t gamma, std::size_t order);

/// Compares the Laurent coefficient at order M with the root-solved shift;
/// the residual is their absolute difference.
IdentityReport check_laurent(const SpectrumSplit& split, std::size_t gamma, std::size_t order,
                             double tol = 1e-9);

/// C_n: coefficient of (-it)^n/n! in the time expansion of the diagonal
/// amplitude, summed over m = n-1..order.
double power_coefficient(const Jet& r, std::size_t n);

/// |C_n - C_1^n| / (1 + |C_1|^n).
IdentityReport check_power_relation(const Jet& r, std::size_t n, double tol = 1e-9);
IdentityReport check_power_relation(const SpectrumSplit& split, std::size_t gamma, std::size_t n,
                                    std::size_t order, double tol = 1e-9);

/// Both sides of
///   d^k R^{k+n+1} = sum_{m<=k} n/(n+1) (k+n+1)/(k+n-m) k!/((m+1)!(k-m)!)
///                   d^{k-m} R^{k+n-m} d^m R^{m+1}
/// at z = 0; the residual is their relative difference.
IdentityReport check_derivative_identity(const Jet& r, std::size_t k, std::size_t n,
                                         double tol = 1e-10);
IdentityReport check_derivative_identity(const SpectrumSplit& split, std::size_t gamma,
                                         std::size_t k, std::size_t n, std::size_t order,
                                         double tol = 1e-10);

/// Low-order fit of the ground-state energy over a lambda grid near zero,
/// compared with first- and second-order Rayleigh-Schrodinger values.
struct RsConsistency {
  std::vector<double> lambdas;
  std::vector<double> energies;
  /// c_1..c_degree of E(lambda) - 1 = sum_d c_d lambda^d.
  std::vector<double> coefficients;
  double first_order = 0.0;
  double second_order = 0.0;
  IdentityReport linear;
  IdentityReport quadratic;
};

struct RsOptions {
  std::vector<double> lambdas = {0.002, 0.004, 0.006, 0.008, 0.010,
                                 0.012, 0.014, 0.016, 0.018, 0.020};
  std::size_t degree = 5;
  std::size_t basis = 60;
  double linear_tol = 1e-4;
  double quadratic_tol = 1e-3;
};

/// Quartic oscillator ground state, gamma = 0.
RsConsistency rs_consistency(const RsOptions& opts = {});

/// Second-order Rayleigh-Schrodinger coefficient -sum_k |<0|x^4|k>|^2 / (E_k - E_0)
/// with harmonic energies 2k+1, from the model's matrix elements.
double second_order_rs_quartic(std::size_t basis);

}  // namespace kernel_eig
