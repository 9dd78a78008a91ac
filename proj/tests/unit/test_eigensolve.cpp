#include <algorithm>
#include <cmath>

#include <doctest.h>

#include "kernel_eig/eigensolve.hpp"
#include "kernel_eig/error.hpp"
#include "oracles.hpp"

using namespace kernel_eig;

namespace {

SpectrumSplit two_level() {
  Eigen::MatrixXd m(2, 2);
  m << 0, 1, 1, 2;
  return build_from_matrix(m);
}

}  // namespace

TEST_CASE("uncoupled levels keep their energies with no iterations") {
  const auto split = build_anharmonic(0.0, 2, 24);
  for (std::size_t g = 0; g <= 10; ++g) {
    const auto r = solve_root(split, g);
    CHECK(r.deltaE == 0.0);
    CHECK(r.E_total == 2.0 * g + 1.0);
    CHECK(r.iterations == 0);
  }
}

TEST_CASE("two-level root is 1 - sqrt 2") {
  const auto r = solve_root(two_level(), 0);
  CHECK(std::abs(r.E_total - (1.0 - std::sqrt(2.0))) <= 1e-12);
  CHECK(r.E_total == r.E0 + r.deltaE);
  CHECK(r.residual <= 1e-13 * (1.0 + std::abs(r.deltaE)));
  // alpha = -deltaE solves alpha^2 + 2 alpha - 1 = 0.
  const double alpha = -r.deltaE;
  CHECK(alpha * alpha + 2 * alpha - 1 == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
  const auto upper = solve_root(two_level(), 1);
  CHECK(std::abs(upper.E_total - (1.0 + std::sqrt(2.0))) <= 1e-12);
}

TEST_CASE("quartic ground state converges to the literature value") {
  const auto r = solve_root(build_anharmonic(1.0, 2, 400), 0);
  CHECK(std::abs(r.E_total - 1.3923516415303) <= 1e-9);
}

TEST_CASE("series: M = 0 is R(0) and two-level terms are Catalan numbers") {
  const auto split = build_anharmonic(0.3, 2, 40);
  CHECK(eval_series(split, 0, 0).deltaE == doctest::Approx(KernelContext(split, 0).eval(0.0)).epsilon(1e-15));

  const auto s = eval_series(two_level(), 0, 40);
  for (unsigned m = 0; m <= 10; ++m) {
    const double expected = -std::pow(-1.0, m) * oracle::catalan(m) / std::pow(2.0, 2 * m + 1);
    CHECK(std::abs(s.terms[m] - expected) <= 1e-14);
  }
  // The two-level series sits on its radius of convergence: terms decay like
  // m^{-3/2} with alternating signs, so the partial sum is only bracketed by
  // consecutive terms.
  const double exact = 1.0 - std::sqrt(2.0);
  for (std::size_t m = 10; m < 40; ++m) {
    CHECK(std::abs(s.partial_sums[m] - exact) <= std::abs(s.terms[m + 1]));
    CHECK((s.partial_sums[m] - exact) * (s.partial_sums[m + 1] - exact) < 0.0);
  }
  CHECK(s.residual == std::abs(s.terms.back()));
}

TEST_CASE("series agrees with the root at weak coupling") {
  const auto split = build_anharmonic(0.1, 2, 200);
  const KernelContext ctx(split, 0);
  const auto series = eval_series(ctx, 25);
  const auto root = solve_root(ctx);
  CHECK(std::abs(series.deltaE - root.deltaE) <= 1e-10);
}

TEST_CASE("series matches root within ten times the last term when terms decrease") {
  int checked = 0;
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    const auto split = build_random(3 + seed % 8, seed, 0.15);
    for (std::size_t g = 0; g < split.dim(); ++g) {
      const KernelContext ctx(split, g);
      const auto s = eval_series(ctx, 30);
      bool decreasing = true;
      for (std::size_t m = 6; m < s.terms.size(); ++m)
        decreasing = decreasing && std::abs(s.terms[m]) <= std::abs(s.terms[m - 1]);
      if (!decreasing) continue;
      ++checked;
      const auto r = solve_root(ctx);
      INFO("root residual " << r.residual << " iterations " << r.iterations);
      CHECK(std::abs(s.deltaE - r.deltaE) <= 10.0 * s.residual + 1e-15);
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("oracle spectra") {
  const auto ev = diagonalize_oracle(build_anharmonic(0.0, 2, 10));
  for (std::size_t n = 0; n < 10; ++n) CHECK(ev[n] == doctest::Approx(2.0 * n + 1.0).epsilon(1e-14));
  const auto two = diagonalize_oracle(two_level());
  CHECK(two[0] == doctest::Approx(1.0 - std::sqrt(2.0)).epsilon(1e-14));
  CHECK(two[1] == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-14));
  const auto big = diagonalize_oracle(build_anharmonic(1.0, 2, 600));
  CHECK(std::abs(big[0] - 1.3923516415303) <= 1e-10);
  CHECK(std::is_sorted(big.begin(), big.end()));
}

TEST_CASE("root is an exact eigenvalue of every finite matrix") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const std::size_t dim = 4 + (seed * 7) % 27;
    const auto split = build_random(dim, seed, 0.6, 0.8);
    const auto oracle_ev = diagonalize_oracle(split);
    for (std::size_t g = 0; g < dim; ++g) {
      const auto r = solve_root(split, g);
      CHECK(std::abs(r.E_total - nearest_eigenvalue(oracle_ev, r.E_total)) <= 1e-11);
    }
  }
}

TEST_CASE("branch selection follows the level continuously connected to E_gamma") {
  for (double lambda : {0.1, 1.0, 10.0, 100.0}) {
    const auto split = build_anharmonic(lambda, 2, 120);
    CHECK(solve_root(split, 0).E_total ==
          doctest::Approx(diagonalize_oracle(split)[0]).epsilon(1e-9));
  }
  // Weak coupling at small K: the maximal-overlap eigenvector is unambiguous.
  const auto small = build_anharmonic(0.05, 2, 12);
  for (std::size_t g = 0; g < 12; ++g) {
    CHECK(solve_root(small, g).E_total ==
          doctest::Approx(oracle::max_overlap_eigenvalue(small.hamiltonian(), g)).epsilon(1e-11));
  }
  for (std::uint64_t seed = 40; seed < 45; ++seed) {
    const auto split = build_random(10, seed, 0.05);
    for (std::size_t g = 0; g < 10; ++g) {
      CHECK(solve_root(split, g).E_total ==
            doctest::Approx(oracle::max_overlap_eigenvalue(split.hamiltonian(), g)).epsilon(1e-11));
    }
  }
}

TEST_CASE("ground-state energy is non-increasing in the basis size") {
  for (double lambda : {1.0, 100.0}) {
    double prev = std::numeric_limits<double>::infinity();
    double last_step = std::numeric_limits<double>::infinity();
    bool settled = false;
    for (std::size_t k = 40; k <= 1000; k += 40) {
      const double e = solve_root(build_anharmonic(lambda, 2, k), 0).E_total;
      CHECK(e <= prev + 1e-13);
      if (std::isfinite(prev)) last_step = prev - e;
      if (last_step < 1e-12) settled = true;
      prev = e;
    }
    CHECK(settled);
  }
}

TEST_CASE("Newton converges quickly from R(0) at weak coupling") {
  const auto r = solve_root(build_anharmonic(0.1, 2, 100), 0);
  CHECK(r.iterations <= 6);
  CHECK(r.bracket_lo < r.deltaE);
  CHECK(r.deltaE < r.bracket_hi);
  CHECK(nearest_eigenvalue({1.0, 2.0, 4.0}, 2.9) == 2.0);
}

TEST_CASE("block oracle agrees with the root for every level") {
  for (std::uint64_t seed = 40; seed < 45; ++seed) {
    const auto split = build_random(9, seed, 0.4);
    for (std::size_t g = 0; g < split.dim(); ++g) {
      const auto o = oracle_level(split, g);
      CHECK(o.method == SolveMethod::diagonalization);
      CHECK(o.E_total == doctest::Approx(solve_root(split, g).E_total).epsilon(1e-11));
    }
  }
  const auto quartic = build_anharmonic(1.0, 2, 200);
  CHECK(oracle_level(quartic, 1).E_total ==
        doctest::Approx(solve_root(quartic, 1).E_total).epsilon(1e-11));
}
