#include <cmath>
#include <random>

#include <doctest.h>

#include "kernel_eig/error.hpp"
#include "kernel_eig/jet.hpp"

using kernel_eig::Jet;

TEST_CASE("jet product truncates at the order") {
  const Jet a{1.0, 2.0, 3.0};
  const Jet b{4.0, 5.0, 6.0};
  const Jet c = a * b;
  CHECK(c[0] == 4.0);
  CHECK(c[1] == 13.0);       // 1*5 + 2*4
  CHECK(c[2] == 28.0);       // 1*6 + 2*5 + 3*4
  CHECK(c.order() == 2);
}

TEST_CASE("derivative at zero is m! times the coefficient") {
  const Jet a{0.5, -1.0, 0.25, 2.0};
  CHECK(a.derivative(0) == 0.5);
  CHECK(a.derivative(1) == -1.0);
  CHECK(a.derivative(2) == 0.5);
  CHECK(a.derivative(3) == 12.0);
}

TEST_CASE("geometric series: 1/(2+z) as a jet raised to powers") {
  // 1/(2+z) = sum (-1)^k z^k / 2^{k+1}; its square is sum (-1)^k (k+1) z^k / 2^{k+2}.
  const std::size_t order = 12;
  Jet g(order);
  for (std::size_t k = 0; k <= order; ++k) g[k] = std::pow(-1.0, k) / std::pow(2.0, k + 1);
  const Jet sq = kernel_eig::pow(g, 2);
  for (std::size_t k = 0; k <= order; ++k) {
    CHECK(sq[k] == doctest::Approx(std::pow(-1.0, k) * (k + 1) / std::pow(2.0, k + 2)).epsilon(1e-15));
  }
  CHECK(g.evaluate(0.1) == doctest::Approx(1.0 / 2.1).epsilon(1e-14));
}

TEST_CASE("pow matches repeated multiplication and powers() sequence") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Jet a(9);
    for (std::size_t k = 0; k <= 9; ++k) a[k] = u(rng);
    const auto seq = kernel_eig::powers(a, 7);
    Jet manual = Jet::constant(1.0, 9);
    for (unsigned p = 1; p <= 7; ++p) {
      manual *= a;
      const Jet fast = kernel_eig::pow(a, p);
      for (std::size_t k = 0; k <= 9; ++k) {
        CHECK(fast[k] == doctest::Approx(manual[k]).epsilon(1e-13).scale(1.0));
        CHECK(seq[p - 1][k] == doctest::Approx(manual[k]).epsilon(1e-13).scale(1.0));
      }
    }
    CHECK(kernel_eig::pow(a, 0) == Jet::constant(1.0, 9));
  }
}

TEST_CASE("jet arithmetic is a commutative ring on truncated polynomials") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    Jet a(6), b(6), c(6);
    for (std::size_t k = 0; k <= 6; ++k) {
      a[k] = u(rng);
      b[k] = u(rng);
      c[k] = u(rng);
    }
    const Jet lhs = a * (b + c);
    const Jet rhs = a * b + a * c;
    const Jet ab = a * b;
    const Jet ba = b * a;
    for (std::size_t k = 0; k <= 6; ++k) {
      CHECK(lhs[k] == doctest::Approx(rhs[k]).epsilon(1e-13).scale(1.0));
      CHECK(ab[k] == doctest::Approx(ba[k]).epsilon(1e-15).scale(1.0));
    }
  }
}

TEST_CASE("mismatched orders are rejected") {
  CHECK_THROWS_AS(Jet(2) * Jet(3), kernel_eig::InputError);
  CHECK_THROWS_AS(Jet(std::vector<double>{}), kernel_eig::InputError);
  CHECK(Jet::variable(3)[1] == 1.0);
}
