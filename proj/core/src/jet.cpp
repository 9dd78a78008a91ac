#include "kernel_eig/jet.hpp"

#include <stdexcept>

#include "kernel_eig/error.hpp"

namespace kernel_eig {

namespace {

void require_same_order(const Jet& a, const Jet& b) {
  if (a.order() != b.order()) {
    throw InputError("jet order mismatch: " + std::to_string(a.order()) + " vs " +
                     std::to_string(b.order()));
  }
}

}  // namespace

Jet::Jet(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) {
    throw InputError("a jet needs at least one coefficient");
  }
}

Jet Jet::constant(double value, std::size_t order) {
  Jet j(order);
  j.coeffs_[0] = value;
  return j;
}

Jet Jet::variable(std::size_t order) {
  Jet j(order);
  if (order >= 1) j.coeffs_[1] = 1.0;
  return j;
}

double Jet::derivative(std::size_t m) const {
  double factorial = 1.0;
  for (std::size_t i = 2; i <= m; ++i) factorial *= static_cast<double>(i);
  return factorial * coeffs_.at(m);
}

double Jet::evaluate(double z) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Jet& Jet::operator+=(const Jet& other) {
  require_same_order(*this, other);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& other) {
  require_same_order(*this, other);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  return *this;
}

Jet& Jet::operator*=(const Jet& other) {
  require_same_order(*this, other);
  std::vector<double> out(coeffs_.size(), 0.0);
  for (std::size_t k = 0; k < out.size(); ++k) {
    double acc = 0.0;
    for (std::size_t j = 0; j <= k; ++j) acc += coeffs_[j] * other.coeffs_[k - j];
    out[k] = acc;
  }
  coeffs_ = std::move(out);
  return *this;
}

Jet& Jet::operator*=(double scale) {
  for (double& c : coeffs_) c *= scale;
  return *this;
}

Jet pow(const Jet& base, unsigned exponent) {
  Jet result = Jet::constant(1.0, base.order());
  Jet square = base;
  while (exponent != 0) {
    if (exponent & 1u) result *= square;
    exponent >>= 1u;
    if (exponent != 0) square *= square;
  }
  return result;
}

std::vector<Jet> powers(const Jet& base, std::size_t count) {
  std::vector<Jet> out;
  out.reserve(count);
  if (count == 0) return out;
  out.push_back(base);
  for (std::size_t p = 2; p <= count; ++p) out.push_back(out.back() * base);
  return out;
}

}  // namespace kernel_eig
