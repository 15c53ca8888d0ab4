#pragma once

// Symmetric sequence spaces at finite dimension: lp, Orlicz-Lorentz,
// p-convexifications and Koethe duals. Every space evaluates a norm that
// is monotone in |x|, invariant under rearrangement, and normalized so
// that the first unit vector has norm one.

#include "symseq/types.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace symseq {

/// Orlicz function G: [0,inf) -> [0,inf) with G(0) = 0, nondecreasing and
/// convex. Construction checks the requirements on a sample grid and
/// throws std::invalid_argument on violation.
class OrliczFn {
 public:
  OrliczFn(std::function<double(double)> g, std::string tag);

  /// G(t) = t^k, k >= 1.
  static OrliczFn power(double k);

  double operator()(double t) const { return g_(t); }
  /// dG/dt, analytic for power functions, central difference otherwise.
  double derivative(double t) const;
  const std::string& tag() const { return tag_; }
  std::optional<double> power_exponent() const { return power_; }

  /// t -> G(t^a), a > 0. Exact exponent arithmetic for power functions.
  /// Throws if the composition fails the Orlicz-function grid checks
  /// (e.g. when concavifying past the convexity range).
  OrliczFn composed_with_power(double a) const;

 private:
  std::function<double(double)> g_;
  std::string tag_;
  std::optional<double> power_;
};

/// Finite truncation of a nonincreasing positive weight sequence.
class WeightSeq {
 public:
  explicit WeightSeq(std::vector<double> w, std::string tag = "custom");
  static WeightSeq ones(int n);
  static WeightSeq harmonic(int n);       // w_k = 1/k
  static WeightSeq geometric(double r, int n);  // w_k = r^(k-1), 0 < r <= 1

  int size() const { return static_cast<int>(w_.size()); }
  double operator[](int k) const { return w_[static_cast<size_t>(k)]; }
  const std::vector<double>& values() const { return w_; }
  const std::string& tag() const { return tag_; }

 private:
  std::vector<double> w_;
  std::string tag_;
};

/// Symbolic description of a symmetric sequence space. Immutable value
/// type; copies share nodes. GeneralizedDual is the E^F construction of
/// the kothe module; KotheDual(E) is its F = l1 special case.
class SpaceSpec {
 public:
  enum class Kind { Lp, OrliczLorentz, Convexification, KotheDual, GeneralizedDual };

  static SpaceSpec lp(double p);
  static SpaceSpec orlicz_lorentz(OrliczFn G, WeightSeq w);
  static SpaceSpec convexify(SpaceSpec base, double p);  // p >= 1
  static SpaceSpec kothe_dual(SpaceSpec base);
  static SpaceSpec generalized_dual(SpaceSpec base, SpaceSpec target);  // base^target

  Kind kind() const;
  double lp_exponent() const;          // Kind::Lp
  double convexify_exponent() const;   // Kind::Convexification
  const OrliczFn& orlicz() const;      // Kind::OrliczLorentz
  const WeightSeq& weights() const;    // Kind::OrliczLorentz
  double unit_scale() const;           // Kind::OrliczLorentz
  SpaceSpec base() const;              // Convexification/KotheDual/GeneralizedDual
  SpaceSpec target() const;            // GeneralizedDual

  /// Isometric rewrite to a closed-form-friendly equivalent: lp exponent
  /// algebra for duals and convexifications, power composition for
  /// Orlicz-Lorentz convexifications. Returns *this when nothing applies.
  SpaceSpec simplified() const;

  bool is_lp() const { return kind() == Kind::Lp; }

  /// Canonical text form, e.g. "lp:2", "dual(lp:1.5)",
  /// "convexify(lp:1,p=2)", "lorentz:G=pow2,w=harmonic,n=16".
  std::string to_string() const;

 private:
  struct Node;
  explicit SpaceSpec(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Nonincreasing rearrangement of |x|; stable tie-break by original index.
Vec rearrange(const Vec& x);

/// ||x||_S. Exact closed forms for lp and their algebraic combinations,
/// Luxemburg gauge by bisection for Orlicz-Lorentz, optimization lower
/// bound for irreducible dual kinds.
double norm(const SpaceSpec& S, const Vec& x);

/// A subgradient of x -> norm(S, x) at x (any selection at kinks).
Vec norm_subgradient(const SpaceSpec& S, const Vec& x);

/// Radial projection onto the unit ball: x if ||x|| <= 1, else x/||x||.
Vec ball_project(const SpaceSpec& S, const Vec& x);

/// lp norm closed form (p in [1, inf]).
double lp_norm(const Vec& x, double p);

/// On the lp(p) ball, a maximizer of x -> sum_i x_i y_i (Hoelder equality
/// profile); used as ascent start and as closed-form dual witness.
Vec lp_dual_witness(const Vec& y, double p);

struct DualNormOptions {
  int starts = 32;
  int iters = 500;
  std::uint64_t seed = 0;
  /// When false, skips the lp closed forms and forces the ascent path
  /// (the closed forms then serve as independent oracles in tests).
  bool use_closed_forms = true;
};

/// Koethe dual norm ||y||_{S^x} = sup { sum |x_i y_i| : ||x||_S <= 1 }.
/// Closed form for lp-reducible S, projected supergradient ascent over
/// the nonnegative part of the ball otherwise.
NormBounds kothe_dual_norm(const SpaceSpec& S, const Vec& y, const DualNormOptions& opt = {});

enum class ConvexityDirection { Convex, Concave };

struct ConvexityReport {
  double p = 1;
  ConvexityDirection direction = ConvexityDirection::Convex;
  /// Largest observed ratio between the two sides of the defining
  /// inequality; a lower bound on M^(p)(E) resp. M_(q)(E).
  double lower_bound_on_constant = 1.0;
  std::vector<Vec> witness;
};

/// Samples random finite vector families and evaluates both sides of the
/// p-convexity (q-concavity) inequality. Deterministic given seed.
ConvexityReport convexity_probe(const SpaceSpec& S, double p, ConvexityDirection dir,
                                int trials, std::uint64_t seed);

/// Recomputes the ratio of a convexity witness family (test hook).
double convexity_ratio(const SpaceSpec& S, double p, ConvexityDirection dir,
                       const std::vector<Vec>& family);

enum class OrliczConditionMode { Convexity, Concavity };

struct OrliczConditionReport {
  bool pass = false;
  std::string detail;        // first violation, empty when pass
  std::vector<double> grid;  // diagnostic grid used for the midpoint test
};

/// Grid check of the Orlicz-Lorentz convexity conditions: midpoint
/// convexity/concavity of t -> G(t^{1/p}) and concavity/convexity of the
/// partial sums of w. A fail is a valid answer, not an error.
OrliczConditionReport orlicz_condition_check(const OrliczFn& G, const WeightSeq& w,
                                             double p, OrliczConditionMode mode);

}  // namespace symseq
