#include <algorithm>
#include <cmath>
#include <limits>

#include <doctest.h>

#include "kernel_eig/error.hpp"
#include "kernel_eig/kernel.hpp"
#include "kernel_eig/reference_tables.hpp"

using namespace kernel_eig;

TEST_CASE("raw-index cut values vanish on odd levels by parity") {
  const auto split = build_anharmonic(0.1, 2, 40);
  const auto rep = cut_series(split, 0, 0.0, 39, CutConvention::raw_index);
  CHECK(rep.labels.front() == 0);
  for (std::size_t i = 0; i < rep.labels.size(); ++i) {
    if (rep.labels[i] % 2 == 1 || rep.labels[i] == 0) CHECK(rep.values[i] == 0.0);
    else CHECK(rep.values[i] < 0.0);
  }
}

TEST_CASE("cumulative sums telescope to the truncated kernel") {
  const auto split = build_anharmonic(1.0, 2, 60);
  for (auto conv : {CutConvention::raw_index, CutConvention::coupled_subspace,
                    CutConvention::one_based}) {
    for (double z : {0.0, -0.4}) {
      const auto rep = cut_series(split, 0, z, 25, conv);
      for (std::size_t n : {5u, 10u, 20u}) {
        const KernelContext trunc(split, 0, cut_states(split, 0, n, conv));
        const double direct = trunc.eval(z);
        CHECK(std::abs(rep.cumulative_at(n) - direct) <= 1e-12 * (1.0 + std::abs(direct)));
      }
      for (std::size_t i = 1; i < rep.values.size(); ++i) {
        const double step = rep.cumulative[i] - rep.cumulative[i - 1];
        CHECK(std::abs(step - rep.values[i]) <= 4.0 * 2.3e-16 * std::abs(rep.cumulative[i]));
      }
    }
  }
}

TEST_CASE("cut series converges to the full kernel") {
  const auto split = build_anharmonic(0.2, 2, 80);
  const auto rep = cut_series(split, 0, 0.0, 39, CutConvention::coupled_subspace);
  CHECK(rep.cumulative.back() == doctest::Approx(KernelContext(split, 0).eval(0.0)).epsilon(1e-13));
}

TEST_CASE("one-based labels reproduce the published R_0^c(0,n) table") {
  // Labels n are one-based basis labels, so n = 3 is the state |2>.
  for (double lambda : reference::kLambdas) {
    const auto split = build_anharmonic(lambda, 2, 200);
    const auto rep = cut_series(split, 0, 0.0, 199, CutConvention::one_based);
    for (std::size_t n : reference::kCutLevels) {
      const double published = *reference::cut_value(lambda, n);
      CHECK(rep.value(n) == doctest::Approx(published).epsilon(6e-5));
    }
  }
}

TEST_CASE("coupled-subspace labels count coupled states") {
  const auto split = build_anharmonic(0.1, 2, 30);
  const auto coupled = cut_series(split, 0, 0.0, 14, CutConvention::coupled_subspace);
  const auto published = cut_series(split, 0, 0.0, 29, CutConvention::one_based);
  // Coupled label 1 is |2>, which the one-based labelling calls 3.
  CHECK(coupled.value(1) == published.value(3));
  CHECK(coupled.value(1) == doctest::Approx(-9.1837e-3).epsilon(1e-4));
  CHECK(coupled.states[0] == 2);
  CHECK(coupled.states[4] == 10);
}

TEST_CASE("cut magnitudes decay in blocks but are not monotone") {
  for (double lambda : {0.1, 1.0}) {
    const auto split = build_anharmonic(lambda, 2, 260);
    const auto rep = cut_series(split, 0, 0.0, 120, CutConvention::coupled_subspace);
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t start = 0; start + 4 <= rep.values.size(); start += 4) {
      double peak = 0.0;
      for (std::size_t i = start; i < start + 4; ++i) peak = std::max(peak, std::abs(rep.values[i]));
      CHECK(peak < prev);
      prev = peak;
    }
    std::size_t rises = 0;
    for (std::size_t i = 60; i < rep.values.size(); ++i) {
      if (std::abs(rep.values[i]) >= std::abs(rep.values[i - 1])) ++rises;
    }
    CHECK(rises > 0);
  }
  // Checked against truncated-basis differences at 60 digits.
  const auto one = cut_series(build_anharmonic(1.0, 2, 60), 0, 0.0, 4, CutConvention::coupled_subspace);
  CHECK(one.value(3) == doctest::Approx(-4.8138e-5).epsilon(1e-4));
  CHECK(one.value(4) == doctest::Approx(-1.4809e-3).epsilon(1e-4));
}

TEST_CASE("cut series argument checks and CSV layout") {
  const auto split = build_anharmonic(0.1, 2, 10);
  CHECK_THROWS_AS(cut_series(split, 0, 0.0, 10, CutConvention::raw_index), InputError);
  CHECK_THROWS_AS(cut_series(split, 0, 0.0, 11, CutConvention::one_based), InputError);
  CHECK_THROWS_AS(cut_series(split, 0, 0.0, 5, CutConvention::coupled_subspace), InputError);
  CHECK_THROWS_AS(parse_convention("sideways"), InputError);
  CHECK(parse_convention("coupled-subspace") == CutConvention::coupled_subspace);

  const auto rep = cut_series(split, 0, 0.0, 3, CutConvention::one_based);
  const std::string csv = to_csv(rep);
  CHECK(csv.rfind("n,R_c,cumulative\n", 0) == 0);
  CHECK(csv.find("3,-9.18367346938776e-03,") != std::string::npos);
}
