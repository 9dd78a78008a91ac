#include <cmath>

#include <doctest.h>

#include "kernel_eig/error.hpp"
#include "kernel_eig/model.hpp"
#include "oracles.hpp"

using namespace kernel_eig;

TEST_CASE("lambda = 0 is the harmonic oscillator") {
  const auto split = build_anharmonic(0.0, 2, 10);
  CHECK(split.coupling().isZero(0.0));
  for (std::size_t n = 0; n < 10; ++n) CHECK(split.energy(n) == 2.0 * n + 1.0);
}

TEST_CASE("x^4 elements match the closed-form bands") {
  const auto split = build_anharmonic(1.0, 2, 30);
  CHECK(split.energy(0) == doctest::Approx(1.75).epsilon(1e-15));
  CHECK(split.coupling(0, 2) == doctest::Approx(3.0 * std::sqrt(2.0) / 2.0).epsilon(1e-14));
  CHECK(split.coupling(0, 4) == doctest::Approx(std::sqrt(24.0) / 4.0).epsilon(1e-14));
  for (int n = 0; n < 30; ++n) {
    CHECK(split.energy(n) ==
          doctest::Approx(2.0 * n + 1.0 + oracle::x4_element(n, n)).epsilon(1e-13));
    for (int m = 0; m < 30; ++m) {
      if (m == n) continue;
      CHECK(split.coupling(n, m) == doctest::Approx(oracle::x4_element(n, m)).epsilon(1e-13).scale(1.0));
    }
  }
}

TEST_CASE("oscillator parity and bandwidth") {
  for (int power : {2, 3, 4}) {
    const auto split = build_anharmonic(0.3, power, 40);
    for (std::size_t i = 0; i < 40; ++i) {
      for (std::size_t j = 0; j < 40; ++j) {
        const auto d = static_cast<int>(i > j ? i - j : j - i);
        if (d % 2 == 1 || d > 2 * power || d == 0) {
          CHECK(split.coupling(i, j) == 0.0);
        } else {
          CHECK(split.coupling(i, j) != 0.0);
        }
      }
    }
  }
}

TEST_CASE("padding beyond 2m does not change the cropped block") {
  for (int power : {2, 3}) {
    const std::size_t pad = 2 * static_cast<std::size_t>(power);
    const auto a = position_power(2 * power, 25, pad);
    const auto b = position_power(2 * power, 25, 2 * pad);
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
    // No padding corrupts the bottom-right corner.
    const auto c = position_power(2 * power, 25, 0);
    CHECK(std::abs(c(24, 24) - a(24, 24)) > 1.0);
  }
}

TEST_CASE("reassembly reproduces the source Hamiltonian") {
  const auto split = build_anharmonic(0.7, 2, 20);
  const Eigen::MatrixXd x4 = position_power(4, 20, 4);
  Eigen::MatrixXd h = 0.7 * x4;
  for (int i = 0; i < 20; ++i) h(i, i) += 2.0 * i + 1.0;
  // The construction keeps the upper triangle of the banded product.
  h.triangularView<Eigen::StrictlyLower>() = h.transpose();
  CHECK((split.hamiltonian() - h).cwiseAbs().maxCoeff() == 0.0);

  Eigen::MatrixXd m(3, 3);
  m << 1, 0.1, 0, 0.1, 2, 0.1, 0, 0.1, 4;
  const auto custom = build_from_matrix(m);
  CHECK(custom.hamiltonian() == m);
  CHECK(custom.energy(2) == 4.0);
  CHECK(custom.coupling(1, 2) == 0.1);
  CHECK(custom.coupling(1, 1) == 0.0);
}

TEST_CASE("two-level split") {
  Eigen::MatrixXd m(2, 2);
  m << 0, 1, 1, 2;
  const auto split = build_from_matrix(m);
  CHECK(split.energy(0) == 0.0);
  CHECK(split.energy(1) == 2.0);
  CHECK(split.coupling(0, 1) == 1.0);
  CHECK(split.meta().name == "custom");
}

TEST_CASE("invalid inputs are rejected") {
  CHECK_THROWS_AS(build_from_matrix(Eigen::MatrixXd::Identity(4, 4)), DegenerateSpectrumError);
  try {
    build_from_matrix(Eigen::MatrixXd::Identity(4, 4));
  } catch (const DegenerateSpectrumError& e) {
    CHECK(std::string(e.what()).find("degenerate case unsupported") != std::string::npos);
  }
  Eigen::MatrixXd ns(2, 2);
  ns << 0, 1, 1.5, 2;
  CHECK_THROWS_AS(build_from_matrix(ns), InputError);
  CHECK_THROWS_AS(build_from_matrix(Eigen::MatrixXd::Zero(2, 3)), InputError);
  CHECK_THROWS_AS(build_anharmonic(-0.1, 2, 10), InputError);
  CHECK_THROWS_AS(build_anharmonic(1.0, 2, 4), InputError);
  CHECK_THROWS_AS(build_anharmonic(1.0, 1, 10), InputError);
  CHECK_NOTHROW(build_anharmonic(1.0, 2, 5));
}

TEST_CASE("near-symmetric input within tolerance is accepted and symmetrised") {
  Eigen::MatrixXd m(2, 2);
  m << 0, 1, 1 + 1e-14, 2;
  const auto split = build_from_matrix(m);
  CHECK(split.coupling(0, 1) == split.coupling(1, 0));
}

TEST_CASE("random splits are seeded and well formed") {
  const auto a = build_random(8, 42);
  const auto b = build_random(8, 42);
  const auto c = build_random(8, 43);
  CHECK(a.hamiltonian() == b.hamiltonian());
  CHECK(a.hamiltonian() != c.hamiltonian());
  CHECK(a.coupling().cwiseAbs().maxCoeff() <= 0.2);
  for (std::size_t i = 0; i < 8; ++i) CHECK(a.energy(i) == static_cast<double>(i + 1));
}
