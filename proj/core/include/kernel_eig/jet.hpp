#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace kernel_eig {

/// Truncated Taylor polynomial sum_{k<=order} c_k z^k about z = 0.
///
/// Arithmetic is exact truncated-polynomial arithmetic: products drop every
/// term above `order`. Binary operations require equal orders.
class Jet {
 public:
  explicit Jet(std::size_t order) : coeffs_(order + 1, 0.0) {}
  explicit Jet(std::vector<double> coeffs);
  Jet(std::initializer_list<double> coeffs) : Jet(std::vector<double>(coeffs)) {}

  static Jet constant(double value, std::size_t order);
  /// The jet of f(z) = z.
  static Jet variable(std::size_t order);

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }

  double operator[](std::size_t k) const { return coeffs_.at(k); }
  double& operator[](std::size_t k) { return coeffs_.at(k); }

  /// m-th derivative at z = 0, i.e. m! * c_m.
  double derivative(std::size_t m) const;

  /// Horner evaluation of the truncated polynomial.
  double evaluate(double z) const;

  Jet& operator+=(const Jet& other);
  Jet& operator-=(const Jet& other);
  Jet& operator*=(const Jet& other);
  Jet& operator*=(double scale);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }

  friend bool operator==(const Jet&, const Jet&) = default;

 private:
  std::vector<double> coeffs_;
};

/// Integer power by repeated squaring; pow(j, 0) is the constant 1.
Jet pow(const Jet& base, unsigned exponent);

/// The sequence base^1, base^2, ..., base^count, each at base's order.
std::vector<Jet> powers(const Jet& base, std::size_t count);

}  // namespace kernel_eig
