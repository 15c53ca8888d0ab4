#include "doctest.h"

#include "symseq/opnorm.hpp"
#include "symseq/rng.hpp"

#include "oracles.hpp"

#include <cmath>

using namespace symseq;

namespace {

Mat mat2(double a, double b, double c, double d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST_CASE("apply: products and dimension checks") {
  Mat id = Mat::Identity(2, 2);
  Vec x(2);
  x << 1, 2;
  CHECK(apply(id, x).isApprox(x));
  Vec y = apply(mat2(1, 1, 0, 1), Vec(Vec::Ones(2)));
  CHECK(y[0] == doctest::Approx(2));
  CHECK(y[1] == doctest::Approx(1));
  CHECK(apply(Mat(Mat::Zero(2, 2)), x).cwiseAbs().maxCoeff() == 0.0);
  Vec bad(3);
  bad << 1, 2, 3;
  CHECK_THROWS_AS(apply(id, bad), std::invalid_argument);
}

TEST_CASE("norm_1_to_E: column formula") {
  CHECK(norm_1_to_E(mat2(1, 0, 0, 2), SpaceSpec::lp(2)) == doctest::Approx(2.0));
  CHECK(norm_1_to_E(Mat(Mat::Ones(2, 2)), SpaceSpec::lp(2)) == doctest::Approx(std::sqrt(2.0)));
  Mat u11 = Mat::Zero(2, 2);
  u11(0, 0) = 1.0;
  CHECK(norm_1_to_E(u11, SpaceSpec::orlicz_lorentz(OrliczFn::power(1.5), WeightSeq::harmonic(4))) ==
        doctest::Approx(1.0));
}

TEST_CASE("norm_E_to_inf: row dual formula") {
  Mat row(1, 2);
  row << 1, 1;
  CHECK(norm_E_to_inf(row, SpaceSpec::lp(1)).lower == doctest::Approx(1.0));
  NormBounds b = norm_E_to_inf(row, SpaceSpec::lp(2));
  CHECK(b.lower == doctest::Approx(std::sqrt(2.0)));
  CHECK(b.upper == doctest::Approx(std::sqrt(2.0)));
  CHECK(norm_E_to_inf(Mat(Mat::Zero(3, 3)), SpaceSpec::lp(2)).upper == doctest::Approx(0.0));
}

TEST_CASE("opnorm_estimate: exact routes") {
  OpNormBudget b;
  NormBounds id = opnorm_estimate(Mat(Mat::Identity(4, 4)), SpaceSpec::lp(2), SpaceSpec::lp(2), b);
  CHECK(id.lower == doctest::Approx(1.0));
  CHECK(id.upper == doctest::Approx(1.0));

  NormBounds ones22 = opnorm_estimate(Mat(Mat::Ones(2, 2)), SpaceSpec::lp(2), SpaceSpec::lp(2), b);
  CHECK(ones22.lower == doctest::Approx(2.0));

  // l1 -> linf is the sup of the entries; brute force over the l1 ball
  // vertices +-e_j gives the same number.
  NormBounds inf1 = opnorm_estimate(Mat(Mat::Ones(2, 2)), SpaceSpec::lp(1), SpaceSpec::lp(kInf), b);
  CHECK(inf1.lower == doctest::Approx(1.0));
  CHECK(inf1.upper == doctest::Approx(1.0));
}

TEST_CASE("opnorm_estimate: ascent matches the exact formulas when forced") {
  Rng rng(13);
  OpNormBudget forced;
  forced.use_exact_routes = false;
  forced.starts = 40;
  forced.iters = 150;
  for (int t = 0; t < 10; ++t) {
    Mat A = rng.mat_uniform(8, 8, -1.0, 1.0);
    for (double p : {1.5, 2.0, 3.0}) {
      SpaceSpec E = SpaceSpec::lp(p);
      double col = norm_1_to_E(A, E);
      NormBounds est = opnorm_estimate(A, SpaceSpec::lp(1), E, forced);
      CHECK(est.lower == doctest::Approx(col).epsilon(1e-6));
      double row = norm_E_to_inf(A, E).lower;
      NormBounds est2 = opnorm_estimate(A, E, SpaceSpec::lp(kInf), forced);
      CHECK(est2.lower == doctest::Approx(row).epsilon(1e-6));
    }
  }
}

TEST_CASE("opnorm_estimate: witness reproduces the lower bound") {
  Rng rng(19);
  std::vector<std::pair<SpaceSpec, SpaceSpec>> pairs = {
      {SpaceSpec::lp(1.5), SpaceSpec::lp(3)},
      {SpaceSpec::lp(4), SpaceSpec::lp(1.5)},
      {SpaceSpec::lp(2), SpaceSpec::lp(2)},
      {SpaceSpec::lp(1), SpaceSpec::lp(2.5)},
  };
  for (const auto& [E, F] : pairs) {
    for (int t = 0; t < 5; ++t) {
      Mat A = rng.mat_uniform(rng.uniform_int(2, 6), rng.uniform_int(2, 6), -2.0, 2.0);
      NormBounds nb = opnorm_estimate(A, E, F);
      REQUIRE(nb.witness.size() == A.cols());
      double wn = norm(E, nb.witness);
      REQUIRE(wn > 0.0);
      CHECK(norm(F, A * nb.witness) / wn == doctest::Approx(nb.lower).epsilon(1e-9));
      CHECK(nb.lower <= nb.upper + 1e-12);
    }
  }
  NormBounds z = opnorm_estimate(Mat(Mat::Zero(3, 2)), SpaceSpec::lp(2), SpaceSpec::lp(2));
  CHECK(z.lower == 0.0);
  CHECK(z.upper == 0.0);
}

TEST_CASE("opnorm_estimate: dimension-2 grid oracle on a generic pair") {
  Rng rng(21);
  SpaceSpec E = SpaceSpec::lp(1.5), F = SpaceSpec::lp(3);
  for (int t = 0; t < 6; ++t) {
    Mat A = rng.mat_uniform(2, 2, -2.0, 2.0);
    double ref = oracles::grid_ball_max_2d(E, [&](const Vec& x) { return norm(F, A * x); });
    NormBounds nb = opnorm_estimate(A, E, F);
    CHECK(nb.lower == doctest::Approx(ref).epsilon(1e-5));
    CHECK(nb.upper >= ref - 1e-9);
  }
}

TEST_CASE("norm_1_to_E is entrywise monotone on nonnegative matrices") {
  Rng rng(29);
  for (int t = 0; t < 10; ++t) {
    Mat A = rng.mat_uniform(5, 5, 0.0, 1.0);
    Mat B = A;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) B(i, j) += rng.uniform(0.0, 1.0);
    for (const SpaceSpec& E :
         {SpaceSpec::lp(2), SpaceSpec::orlicz_lorentz(OrliczFn::power(2), WeightSeq::harmonic(5))})
      CHECK(norm_1_to_E(A, E) <= norm_1_to_E(B, E) + 1e-12);
  }
}

TEST_CASE("transpose_duality_pair: exact cases and interval overlap") {
  auto [a, b] = transpose_duality_pair(mat2(1, 0, 0, 2), SpaceSpec::lp(2), SpaceSpec::lp(2));
  CHECK(a.lower == doctest::Approx(2.0));
  CHECK(b.lower == doctest::Approx(2.0));

  Mat u12 = Mat::Zero(2, 2);
  u12(0, 1) = 1.0;
  auto [c, d] = transpose_duality_pair(u12, SpaceSpec::lp(1), SpaceSpec::lp(kInf));
  CHECK(c.lower == doctest::Approx(1.0));
  CHECK(d.lower == doctest::Approx(1.0));

  auto [e, f] = transpose_duality_pair(Mat(Mat::Zero(2, 2)), SpaceSpec::lp(2), SpaceSpec::lp(2));
  CHECK(e.upper == 0.0);
  CHECK(f.upper == 0.0);

  Rng rng(37);
  std::vector<std::pair<SpaceSpec, SpaceSpec>> pairs = {
      {SpaceSpec::lp(1.5), SpaceSpec::lp(3)},
      {SpaceSpec::lp(2), SpaceSpec::lp(2)},
      {SpaceSpec::lp(1), SpaceSpec::lp(kInf)},
  };
  for (const auto& [E, F] : pairs) {
    for (int t = 0; t < 6; ++t) {
      Mat A = rng.mat_uniform(6, 6, -1.0, 1.0);
      auto [p, q] = transpose_duality_pair(A, E, F);
      // the two certified intervals must overlap after 1e-3 widening
      CHECK(p.lower <= q.upper * (1 + 1e-3) + 1e-9);
      CHECK(q.lower <= p.upper * (1 + 1e-3) + 1e-9);
    }
  }
}
