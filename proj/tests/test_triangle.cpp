#include "doctest.h"

#include "symseq/rng.hpp"
#include "symseq/triangle.hpp"

#include "oracles.hpp"

#include <cmath>

using namespace symseq;

TEST_CASE("triangle_project: definition and edge cases") {
  Mat A(2, 2);
  A << 1, 2, 3, 4;
  Mat T = triangle_project(A, 2);
  Mat expect(2, 2);
  expect << 1, 0, 3, 4;
  CHECK(T.isApprox(expect));

  Mat T1 = triangle_project(A, 1);
  CHECK(T1(0, 0) == doctest::Approx(1.0));
  CHECK(T1.cwiseAbs().sum() == doctest::Approx(1.0));

  Mat L = triangle_matrix(3);
  CHECK(triangle_project(L, 3).isApprox(L));
  CHECK_THROWS_AS(triangle_project(A, 3), std::invalid_argument);
  CHECK_THROWS_AS(triangle_project(A, 0), std::invalid_argument);
}

TEST_CASE("triangle_project: idempotence and entry contraction") {
  Rng rng(3);
  for (int t = 0; t < 8; ++t) {
    int m = rng.uniform_int(2, 6), k = rng.uniform_int(1, m);
    Mat A = rng.mat_uniform(m, m, -2.0, 2.0);
    Mat T = triangle_project(A, k);
    CHECK(triangle_project(T, k).isApprox(T));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) CHECK(std::abs(T(i, j)) <= std::abs(A(i, j)) + 1e-15);
  }
}

TEST_CASE("triangle_multiplier_norm: small sizes") {
  NormBounds one = triangle_multiplier_norm(1);
  CHECK(one.lower == doctest::Approx(1.0));
  CHECK(one.upper == doctest::Approx(1.0));

  NormBounds two = triangle_multiplier_norm(2);
  double oracle = oracles::gamma2_2x2_search(triangle_matrix(2));
  CHECK(two.upper == doctest::Approx(oracle).epsilon(1e-4));
  CHECK(two.lower == doctest::Approx(oracle).epsilon(1e-4));

  NormBounds eight = triangle_multiplier_norm(8);
  NormBounds sixteen = triangle_multiplier_norm(16);
  CHECK(sixteen.lower > eight.lower);
}

TEST_CASE("growth_experiment: gamma2 mode is increasing with a positive log slope") {
  GrowthOptions opt;
  GrowthCurve single = growth_experiment({1}, opt);
  REQUIRE(single.values.size() == 1);
  CHECK(single.values[0] == doctest::Approx(1.0));

  GrowthCurve curve = growth_experiment({2, 4, 8, 16}, opt);
  REQUIRE(curve.values.size() == 4);
  for (size_t i = 0; i + 1 < curve.values.size(); ++i)
    CHECK(curve.values[i] < curve.values[i + 1] + 1e-6);
  CHECK(curve.fit_b > 0.0);
  CHECK(curve.r_squared >= 0.95);

  // the stored fit reproduces on recomputation
  GrowthCurve refit = curve;
  refit_growth(refit);
  CHECK(refit.fit_a == doctest::Approx(curve.fit_a).epsilon(1e-12));
  CHECK(refit.fit_b == doctest::Approx(curve.fit_b).epsilon(1e-12));
  CHECK(refit.r_squared == doctest::Approx(curve.r_squared).epsilon(1e-12));

  CHECK_THROWS_AS(growth_experiment({4, 2}, opt), std::invalid_argument);
}

TEST_CASE("growth_experiment: ratio mode with the Hilbert-type witness") {
  GrowthOptions opt;
  opt.mode = GrowthMode::RatioPQ;
  opt.p = 2;
  opt.q = 2;
  GrowthCurve curve = growth_experiment({4, 8, 16}, opt);
  REQUIRE(curve.values.size() == 3);
  for (size_t i = 0; i + 1 < curve.values.size(); ++i)
    CHECK(curve.values[i] <= curve.values[i + 1] + 1e-9);
  // conservative ratios are genuine lower bounds on the gamma2 curve
  for (size_t i = 0; i < curve.sizes.size(); ++i) {
    NormBounds g2 = triangle_multiplier_norm(curve.sizes[i]);
    CHECK(curve.values[i] <= g2.upper + 1e-6);
  }
}

TEST_CASE("growth_experiment: lower bounds are nondecreasing across sizes") {
  GrowthOptions opt;
  GrowthCurve curve = growth_experiment({2, 3, 4, 5, 6, 8}, opt);
  for (size_t i = 0; i + 1 < curve.values.size(); ++i)
    CHECK(curve.values[i] <= curve.values[i + 1] + 1e-6);
}
