#pragma once

// Generalized Koethe duality: the E^F norm sup{ ||x.y||_F : ||y||_E <= 1 },
// its lp closed forms, and the constructive product factorizations
// E . E^x = l1 and E . E^{lp} = lp.

#include "symseq/space.hpp"

#include <cstdint>

namespace symseq {

struct DualNormQuery {
  SpaceSpec E = SpaceSpec::lp(2);
  SpaceSpec F = SpaceSpec::lp(2);
  Vec x;
  int starts = 32;
  int iters = 500;
  std::uint64_t seed = 0;
  bool use_closed_forms = true;
};

/// ||x||_{E^F}. Closed forms: E = linf gives ||x||_F; E = lp, F = lr with
/// r <= p gives the lq norm, 1/q = 1/r - 1/p; p < r gives the sup norm.
/// Otherwise multistart projected-gradient ascent over the nonnegative
/// part of the E-ball (the objective is entrywise monotone in |y|), with
/// lower = best feasible value and upper = lower. Flags a flaky landscape
/// when the multistart spread exceeds 5% of the best value.
NormBounds generalized_dual_norm(const DualNormQuery& q);

/// Exponent q of l_p^{l_r}: 1/q = 1/r - 1/p when r <= p, inf when p < r.
double closed_form_dual_exponent(double p, double r);

/// Witness pair for a pointwise product factorization.
struct FactorizationCert {
  Vec y1;
  Vec y2;
  Vec target;
  double product_error = 0.0;   // max_i |y1_i y2_i - target_i|
  double norm_product = 0.0;    // ||y1|| * ||y2|| in the two factor spaces
  double reference_norm = 0.0;  // ||target|| in the product space
};

/// Splits u in l1 as y1 . y2 with y1 in E, y2 in E^x and
/// ||y1||_E ||y2||_{E^x} <= (1+eps) ||u||_1. Exact power split for
/// lp-reducible E, coordinate descent on a pointwise modulus split
/// otherwise. Throws std::runtime_error when the tolerance is not met.
FactorizationCert lozanovskii_factorize(const SpaceSpec& E, const Vec& u, double eps,
                                        std::uint64_t seed);

/// Splits z in lp as x1 . x2 with x1 in E, x2 in E^{lp} through the
/// concavification Y = E^{1/p} (requires E p-convex; lp-reducible E is
/// checked, otherwise the caller asserts and failures surface loudly).
FactorizationCert lp_factorize(const SpaceSpec& E, double p, const Vec& z, double eps,
                               std::uint64_t seed);

}  // namespace symseq
