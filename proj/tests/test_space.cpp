#include "doctest.h"

#include "symseq/rng.hpp"
#include "symseq/space.hpp"

#include "oracles.hpp"

#include <cmath>

using namespace symseq;

namespace {

Vec vec(std::initializer_list<double> vals) {
  Vec v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (double x : vals) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("rearrange: definition, zeros, ties") {
  CHECK(rearrange(vec({3, -1, 2})).isApprox(vec({3, 2, 1})));
  CHECK(rearrange(vec({0, 0, 0})).isApprox(vec({0, 0, 0})));
  CHECK(rearrange(vec({-5, 5})).isApprox(vec({5, 5})));
  CHECK_THROWS_AS(rearrange(Vec()), std::invalid_argument);
  Vec bad(2);
  bad << 1.0, std::nan("");
  CHECK_THROWS_AS(rearrange(bad), std::invalid_argument);
}

TEST_CASE("lp norms: closed forms") {
  SpaceSpec l2 = SpaceSpec::lp(2);
  CHECK(norm(l2, vec({3, 4})) == doctest::Approx(5.0));
  CHECK(norm(SpaceSpec::lp(1), vec({1, -2, 3})) == doctest::Approx(6.0));
  CHECK(norm(SpaceSpec::lp(kInf), vec({1, -2})) == doctest::Approx(2.0));
  CHECK(norm(SpaceSpec::lp(3), vec({1, 1})) == doctest::Approx(std::pow(2.0, 1.0 / 3.0)));
  CHECK_THROWS_AS(SpaceSpec::lp(0.5), std::invalid_argument);
}

TEST_CASE("Orlicz-Lorentz norm: bisection matches closed forms") {
  // G(t) = t^2, w = 1 is the l2 norm.
  SpaceSpec ol2 = SpaceSpec::orlicz_lorentz(OrliczFn::power(2), WeightSeq::ones(8));
  CHECK(norm(ol2, vec({3, 4})) == doctest::Approx(5.0).epsilon(1e-9));
  Rng rng(11);
  SpaceSpec l2 = SpaceSpec::lp(2);
  for (int t = 0; t < 20; ++t) {
    Vec x = rng.vec_uniform(rng.uniform_int(1, 8), -2.0, 2.0);
    CHECK(norm(ol2, x) == doctest::Approx(norm(l2, x)).epsilon(1e-9));
  }

  // G identity reduces the gauge to the weighted sum of the rearrangement.
  SpaceSpec lor = SpaceSpec::orlicz_lorentz(OrliczFn::power(1),
                                            WeightSeq({1.0, 0.5}, "custom"));
  CHECK(norm(lor, vec({1, 1})) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(norm(lor, vec({0, 0})) == 0.0);
}

TEST_CASE("Orlicz-Lorentz: support beyond the weights is rejected") {
  SpaceSpec s = SpaceSpec::orlicz_lorentz(OrliczFn::power(2), WeightSeq::ones(2));
  CHECK_THROWS_AS(norm(s, vec({1, 1, 1})), std::invalid_argument);
  CHECK(norm(s, vec({1, 1, 0})) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("unit vector normalization across space kinds") {
  std::vector<SpaceSpec> spaces = {
      SpaceSpec::lp(1), SpaceSpec::lp(2.5), SpaceSpec::lp(kInf),
      SpaceSpec::orlicz_lorentz(OrliczFn::power(1.5), WeightSeq::harmonic(12)),
      SpaceSpec::orlicz_lorentz(OrliczFn::power(3), WeightSeq::geometric(0.5, 10)),
      SpaceSpec::convexify(SpaceSpec::lp(1), 2),
      SpaceSpec::kothe_dual(SpaceSpec::lp(1.5)),
  };
  Vec e1 = vec({1, 0, 0});
  for (const SpaceSpec& s : spaces) CHECK(norm(s, e1) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("norm axioms on exactly evaluable spaces") {
  std::vector<SpaceSpec> spaces = {
      SpaceSpec::lp(1), SpaceSpec::lp(1.5), SpaceSpec::lp(2), SpaceSpec::lp(3),
      SpaceSpec::lp(kInf),
      SpaceSpec::orlicz_lorentz(OrliczFn::power(2), WeightSeq::harmonic(10)),
      SpaceSpec::orlicz_lorentz(OrliczFn::power(1.5), WeightSeq::ones(10)),
      SpaceSpec::convexify(SpaceSpec::lp(1), 2),
      SpaceSpec::kothe_dual(SpaceSpec::lp(1.5)),
  };
  Rng rng(23);
  for (const SpaceSpec& s : spaces) {
    for (int t = 0; t < 12; ++t) {
      int n = rng.uniform_int(1, 8);
      Vec x = rng.vec_uniform(n, -2.0, 2.0), y = rng.vec_uniform(n, -2.0, 2.0);
      double nx = norm(s, x), ny = norm(s, y);
      // homogeneity
      double alpha = rng.uniform(0.1, 5.0);
      CHECK(norm(s, alpha * x) == doctest::Approx(alpha * nx).epsilon(1e-9));
      // triangle
      CHECK(norm(s, x + y) <= nx + ny + 1e-9 * (nx + ny + 1));
      // rearrangement invariance
      CHECK(norm(s, rearrange(x)) == doctest::Approx(nx).epsilon(1e-9));
      // monotonicity in |x|
      Vec shrunk = x;
      for (int i = 0; i < n; ++i) shrunk[i] *= rng.uniform(0.0, 1.0);
      CHECK(norm(s, shrunk) <= nx + 1e-9 * (nx + 1));
      // definiteness
      CHECK(norm(s, Vec(Vec::Zero(n))) == 0.0);
      if (x.cwiseAbs().maxCoeff() > 0) CHECK(nx > 0.0);
    }
  }
}

TEST_CASE("convexification consistency with lp closed form") {
  Rng rng(5);
  for (double q : {1.0, 1.5, 2.0}) {
    for (double p : {1.0, 2.0, 3.0}) {
      SpaceSpec conv = SpaceSpec::convexify(SpaceSpec::lp(q), p);
      SpaceSpec ref = SpaceSpec::lp(q * p);
      for (int t = 0; t < 10; ++t) {
        Vec x = rng.vec_uniform(rng.uniform_int(1, 7), -2.0, 2.0);
        CHECK(norm(conv, x) == doctest::Approx(norm(ref, x)).epsilon(1e-9));
      }
    }
  }
  // Orlicz-Lorentz convexification rewrites to a composed power.
  SpaceSpec base = SpaceSpec::orlicz_lorentz(OrliczFn::power(1.5), WeightSeq::harmonic(8));
  SpaceSpec conv = SpaceSpec::convexify(base, 2);
  SpaceSpec simp = conv.simplified();
  REQUIRE(simp.kind() == SpaceSpec::Kind::OrliczLorentz);
  CHECK(*simp.orlicz().power_exponent() == doctest::Approx(3.0));
  Vec x = vec({1.0, 0.4, 0.2});
  CHECK(norm(conv, x) == doctest::Approx(norm(simp, x)).epsilon(1e-9));
}

TEST_CASE("ball_project: radial projection") {
  CHECK(ball_project(SpaceSpec::lp(2), vec({3, 4})).isApprox(vec({0.6, 0.8}), 1e-12));
  CHECK(ball_project(SpaceSpec::lp(kInf), vec({0.5, -0.5})).isApprox(vec({0.5, -0.5})));
  CHECK(ball_project(SpaceSpec::lp(1), vec({2, 0})).isApprox(vec({1, 0}), 1e-12));
}

TEST_CASE("kothe_dual_norm: lp closed forms against the conjugate exponent") {
  Rng rng(31);
  for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) {
    SpaceSpec s = SpaceSpec::lp(p);
    double pstar = conjugate_exponent(p);
    for (int t = 0; t < 100; ++t) {
      Vec y = rng.vec_uniform(rng.uniform_int(1, 12), -3.0, 3.0);
      NormBounds nb = kothe_dual_norm(s, y);
      double ref = lp_norm(y, pstar);
      CHECK(nb.lower == doctest::Approx(ref).epsilon(1e-6));
      CHECK(nb.upper == doctest::Approx(ref).epsilon(1e-6));
      if (ref > 0) {
        double attained = y.cwiseProduct(nb.witness).cwiseAbs().sum();
        CHECK(attained == doctest::Approx(nb.lower).epsilon(1e-9));
      }
    }
  }
  NormBounds zero = kothe_dual_norm(SpaceSpec::lp(2), vec({0, 0, 0}));
  CHECK(zero.lower == 0.0);
  CHECK(zero.upper == 0.0);

  // l2 is self-dual, l1 pairs with linf
  CHECK(kothe_dual_norm(SpaceSpec::lp(2), vec({1, 1})).lower ==
        doctest::Approx(std::sqrt(2.0)));
  CHECK(kothe_dual_norm(SpaceSpec::lp(1), vec({2, -3})).lower == doctest::Approx(3.0));
}

TEST_CASE("kothe_dual_norm: ascent path agrees with the closed forms") {
  Rng rng(37);
  DualNormOptions opt;
  opt.use_closed_forms = false;
  opt.starts = 24;
  opt.iters = 600;
  for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) {
    SpaceSpec s = SpaceSpec::lp(p);
    for (int t = 0; t < 12; ++t) {
      Vec y = rng.vec_uniform(rng.uniform_int(2, 8), -2.0, 2.0);
      NormBounds nb = kothe_dual_norm(s, y, opt);
      CHECK(nb.lower == doctest::Approx(lp_norm(y, conjugate_exponent(p))).epsilon(1e-6));
    }
  }
}

TEST_CASE("kothe_dual_norm: Orlicz-Lorentz against grid and closed-form oracles") {
  // Smooth gauge: grid oracle in dimension 2.
  SpaceSpec s = SpaceSpec::orlicz_lorentz(OrliczFn::power(2), WeightSeq::harmonic(4));
  Rng rng(41);
  for (int t = 0; t < 6; ++t) {
    Vec y = rng.vec_uniform(2, 0.2, 2.0);
    NormBounds nb = kothe_dual_norm(s, y);
    double ref = oracles::grid_ball_max_2d(
        s, [&](const Vec& x) { return y.cwiseProduct(x).cwiseAbs().sum(); });
    CHECK(nb.lower == doctest::Approx(ref).epsilon(2e-5));
  }
  // G identity: the partial-sum ratio closed form.
  WeightSeq w = WeightSeq::harmonic(6);
  SpaceSpec lor1 = SpaceSpec::orlicz_lorentz(OrliczFn::power(1), w);
  for (int t = 0; t < 8; ++t) {
    Vec y = rng.vec_uniform(rng.uniform_int(2, 6), -2.0, 2.0);
    NormBounds nb = kothe_dual_norm(lor1, y);
    CHECK(nb.lower == doctest::Approx(oracles::lorentz1_dual(w, y)).epsilon(2e-5));
  }
}

TEST_CASE("bidual identity for lp spaces") {
  Rng rng(43);
  for (double p : {1.5, 2.0, 3.0}) {
    SpaceSpec dual = SpaceSpec::kothe_dual(SpaceSpec::lp(p));
    for (int t = 0; t < 8; ++t) {
      Vec x = rng.vec_uniform(rng.uniform_int(1, 6), -2.0, 2.0);
      CHECK(kothe_dual_norm(dual, x).lower ==
            doctest::Approx(lp_norm(x, p)).epsilon(1e-9));
      DualNormOptions opt;
      opt.use_closed_forms = false;
      opt.starts = 16;
      opt.iters = 500;
      CHECK(kothe_dual_norm(dual, x, opt).lower ==
            doctest::Approx(lp_norm(x, p)).epsilon(1e-4));
    }
  }
}

TEST_CASE("convexity_probe: classical constants") {
  // l2 is 2-convex with constant 1.
  ConvexityReport r2 = convexity_probe(SpaceSpec::lp(2), 2, ConvexityDirection::Convex, 60, 7);
  CHECK(r2.lower_bound_on_constant == doctest::Approx(1.0).epsilon(1e-9));
  // Every symmetric space is 1-convex and inf-concave with constant 1.
  for (const SpaceSpec& s :
       {SpaceSpec::lp(1.5), SpaceSpec::orlicz_lorentz(OrliczFn::power(2), WeightSeq::ones(8))}) {
    ConvexityReport r1 = convexity_probe(s, 1, ConvexityDirection::Convex, 40, 9);
    CHECK(r1.lower_bound_on_constant == doctest::Approx(1.0).epsilon(1e-9));
    ConvexityReport rinf = convexity_probe(s, kInf, ConvexityDirection::Concave, 40, 9);
    CHECK(rinf.lower_bound_on_constant == doctest::Approx(1.0).epsilon(1e-9));
  }
  // l1 is not 2-convex with constant 1: {e1, e2} witnesses sqrt(2).
  ConvexityReport r1 = convexity_probe(SpaceSpec::lp(1), 2, ConvexityDirection::Convex, 60, 7);
  CHECK(r1.lower_bound_on_constant >= std::sqrt(2.0) - 1e-9);
  double replay = convexity_ratio(SpaceSpec::lp(1), 2, ConvexityDirection::Convex, r1.witness);
  CHECK(replay == doctest::Approx(r1.lower_bound_on_constant).epsilon(1e-12));
}

TEST_CASE("orlicz_condition_check: powers and weights") {
  WeightSeq ones8 = WeightSeq::ones(8);
  CHECK(orlicz_condition_check(OrliczFn::power(4), ones8, 2, OrliczConditionMode::Convexity).pass);
  OrliczConditionReport fail =
      orlicz_condition_check(OrliczFn::power(1), ones8, 2, OrliczConditionMode::Convexity);
  CHECK_FALSE(fail.pass);
  CHECK_FALSE(fail.detail.empty());
  CHECK(orlicz_condition_check(OrliczFn::power(2), ones8, 2, OrliczConditionMode::Concavity).pass);
  // Strictly decreasing weights: partial sums are not convex.
  CHECK_FALSE(orlicz_condition_check(OrliczFn::power(2), WeightSeq::harmonic(8), 2,
                                     OrliczConditionMode::Concavity)
                  .pass);
}

TEST_CASE("OrliczFn construction validates the axioms") {
  CHECK_THROWS_AS(OrliczFn([](double t) { return std::sqrt(t); }, "sqrt"),
                  std::invalid_argument);  // concave
  CHECK_THROWS_AS(OrliczFn([](double t) { return t + 1.0; }, "affine"),
                  std::invalid_argument);  // G(0) != 0
  CHECK_THROWS_AS(OrliczFn::power(0.5), std::invalid_argument);
  // Concavifying a quadratic past its range fails loudly.
  CHECK_THROWS_AS(OrliczFn::power(2).composed_with_power(0.25), std::invalid_argument);
  CHECK(*OrliczFn::power(2).composed_with_power(2.0).power_exponent() == doctest::Approx(4.0));
}

TEST_CASE("space spec text forms") {
  CHECK(SpaceSpec::lp(2).to_string() == "lp:2");
  CHECK(SpaceSpec::lp(kInf).to_string() == "lp:inf");
  CHECK(SpaceSpec::kothe_dual(SpaceSpec::lp(1.5)).to_string() == "dual(lp:1.5)");
  CHECK(SpaceSpec::convexify(SpaceSpec::lp(1), 2).to_string() == "convexify(lp:1,p=2)");
  CHECK(SpaceSpec::orlicz_lorentz(OrliczFn::power(2), WeightSeq::harmonic(16)).to_string() ==
        "lorentz:G=pow2,w=harmonic,n=16");
}

TEST_CASE("simplified: exponent algebra") {
  CHECK(SpaceSpec::kothe_dual(SpaceSpec::lp(1.5)).simplified().lp_exponent() ==
        doctest::Approx(3.0));
  CHECK(std::isinf(SpaceSpec::kothe_dual(SpaceSpec::lp(1)).simplified().lp_exponent()));
  CHECK(SpaceSpec::kothe_dual(SpaceSpec::kothe_dual(SpaceSpec::lp(2.5)))
            .simplified()
            .lp_exponent() == doctest::Approx(2.5));
  CHECK(SpaceSpec::convexify(SpaceSpec::lp(1), 2).simplified().lp_exponent() ==
        doctest::Approx(2.0));
  CHECK(SpaceSpec::generalized_dual(SpaceSpec::lp(4), SpaceSpec::lp(2))
            .simplified()
            .lp_exponent() == doctest::Approx(4.0));
}
