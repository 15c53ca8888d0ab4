#pragma once

// Operator norms ||A||_{E,F} of finite matrices: exact column/row formulas
// for the l1 domain / linf codomain, the spectral case, and certified
// lower/upper bounds from multistart ascent otherwise.

#include "symseq/space.hpp"

#include <cstdint>
#include <utility>

namespace symseq {

/// Matrix-vector product with dimension check.
Vec apply(const Mat& A, const Vec& x);

/// ||A||_{1,E} = max over columns of the column E-norm (exact).
double norm_1_to_E(const Mat& A, const SpaceSpec& E);

/// ||A||_{E,inf} = max over rows of the row E^x-norm; exact when the dual
/// norm has a closed form, inherited bounds otherwise.
NormBounds norm_E_to_inf(const Mat& A, const SpaceSpec& E, const DualNormOptions& opt = {});

struct OpNormBudget {
  int starts = 64;
  int iters = 300;
  std::uint64_t seed = 0;
  /// When false, the exact routes (l1 domain, linf codomain, l2->l2 SVD)
  /// are skipped so tests can compare the ascent path against them.
  bool use_exact_routes = true;
};

/// sup { ||Ax||_F : ||x||_E <= 1 }. Lower bound with witness from
/// multistart ascent; upper bound as the minimum of exact-formula
/// relaxations (column route, row route, scaled spectral route).
NormBounds opnorm_estimate(const Mat& A, const SpaceSpec& E, const SpaceSpec& F,
                           const OpNormBudget& budget = {});

/// The pair (||A||_{E,F}, ||A^T||_{F^x,E^x}); the two intervals agree for
/// Fatou norms, which all spaces here have.
std::pair<NormBounds, NormBounds> transpose_duality_pair(const Mat& A, const SpaceSpec& E,
                                                         const SpaceSpec& F,
                                                         const OpNormBudget& budget = {});

}  // namespace symseq
