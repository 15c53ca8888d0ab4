#pragma once

// Shared engine for maximizing a positively homogeneous convex objective
// over the unit ball of a symmetric space. Every local maximum of a linear
// objective over a convex ball is global; for merely convex objectives the
// engine reports the best value over multistarts as a certified lower bound.

#include "symseq/space.hpp"

#include <vector>

namespace symseq {

struct RayObjective {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> grad;  // a supergradient of value
};

struct AscentOptions {
  int iters = 300;
  double step0 = 0.5;
  /// Restrict iterates to x >= 0. Valid only when the objective is
  /// entrywise monotone in |x|; the caller asserts that.
  bool nonneg = false;
};

struct AscentResult {
  double best = 0.0;
  Vec witness;                  // unit E-norm, attains best
  std::vector<double> finals;   // per-start converged values, start order
  double tail_improvement = 0;  // relative gain over the last 20% iterations
};

/// Projected supergradient ascent on x -> f(x)/||x||_E from each start,
/// deterministic reduction in start order.
AscentResult maximize_on_ball(const SpaceSpec& E, const RayObjective& f,
                              const std::vector<Vec>& starts, const AscentOptions& opt = {});

}  // namespace symseq
