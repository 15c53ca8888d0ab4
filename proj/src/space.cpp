#include "symseq/space.hpp"

#include "symseq/kothe.hpp"
#include "symseq/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace symseq {

namespace {

std::string format_exponent(double p) {
  if (std::isinf(p)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", p);
  return buf;
}

void check_exponent(double p, const char* what) {
  if (std::isnan(p) || p < 1.0)
    throw std::invalid_argument(std::string(what) + ": exponent must be in [1, inf], got " + format_exponent(p));
}

}  // namespace

// ---------------------------------------------------------------------------
// OrliczFn

OrliczFn::OrliczFn(std::function<double(double)> g, std::string tag)
    : g_(std::move(g)), tag_(std::move(tag)) {
  if (std::abs(g_(0.0)) > 1e-12) throw std::invalid_argument("OrliczFn: G(0) must be 0");
  // Nondecreasing and midpoint-convex on a log grid; cheap and catches the
  // common mistakes (concave gauges, shifted functions).
  double prev = 0.0;
  for (int k = -24; k <= 24; ++k) {
    double t = std::pow(2.0, k);
    double v = g_(t);
    if (!(v >= 0.0)) throw std::invalid_argument("OrliczFn: G must be nonnegative");
    if (v < prev - 1e-12 * std::max(1.0, prev))
      throw std::invalid_argument("OrliczFn: G must be nondecreasing");
    prev = v;
    double t2 = 2.0 * t;
    double mid = g_(0.5 * (t + t2));
    double chord = 0.5 * (g_(t) + g_(t2));
    double scale = std::max({1.0, std::abs(mid), std::abs(chord)});
    if (mid > chord + 1e-9 * scale)
      throw std::invalid_argument("OrliczFn: G fails midpoint convexity near t=" + std::to_string(t));
  }
}

OrliczFn OrliczFn::power(double k) {
  if (!(k >= 1.0) || std::isinf(k))
    throw std::invalid_argument("OrliczFn::power: exponent must be finite and >= 1");
  OrliczFn f([k](double t) { return std::pow(t, k); }, "pow" + format_exponent(k));
  f.power_ = k;
  return f;
}

double OrliczFn::derivative(double t) const {
  if (power_) {
    double k = *power_;
    if (t <= 0.0) return k == 1.0 ? 1.0 : 0.0;
    return k * std::pow(t, k - 1.0);
  }
  double h = 1e-7 * std::max(1.0, std::abs(t));
  double lo = std::max(0.0, t - h);
  return (g_(t + h) - g_(lo)) / (t + h - lo);
}

OrliczFn OrliczFn::composed_with_power(double a) const {
  if (!(a > 0.0)) throw std::invalid_argument("composed_with_power: exponent must be positive");
  if (power_) return OrliczFn::power(*power_ * a);  // validates k*a >= 1
  auto g = g_;
  return OrliczFn([g, a](double t) { return g(std::pow(t, a)); },
                  tag_ + "^" + format_exponent(a));
}

// ---------------------------------------------------------------------------
// WeightSeq

WeightSeq::WeightSeq(std::vector<double> w, std::string tag)
    : w_(std::move(w)), tag_(std::move(tag)) {
  if (w_.empty()) throw std::invalid_argument("WeightSeq: must be nonempty");
  for (size_t k = 0; k < w_.size(); ++k) {
    if (!(w_[k] > 0.0) || !std::isfinite(w_[k]))
      throw std::invalid_argument("WeightSeq: weights must be finite and positive");
    if (k > 0 && w_[k] > w_[k - 1] + 1e-15)
      throw std::invalid_argument("WeightSeq: weights must be nonincreasing");
  }
}

WeightSeq WeightSeq::ones(int n) {
  return WeightSeq(std::vector<double>(static_cast<size_t>(n), 1.0), "ones");
}

WeightSeq WeightSeq::harmonic(int n) {
  std::vector<double> w(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) w[static_cast<size_t>(k)] = 1.0 / (k + 1.0);
  return WeightSeq(std::move(w), "harmonic");
}

WeightSeq WeightSeq::geometric(double r, int n) {
  if (!(r > 0.0 && r <= 1.0)) throw std::invalid_argument("WeightSeq::geometric: need 0 < r <= 1");
  std::vector<double> w(static_cast<size_t>(n));
  double v = 1.0;
  for (int k = 0; k < n; ++k, v *= r) w[static_cast<size_t>(k)] = v;
  return WeightSeq(std::move(w), "geom(" + format_exponent(r) + ")");
}

// ---------------------------------------------------------------------------
// SpaceSpec

struct SpaceSpec::Node {
  Kind kind;
  double p = 0.0;  // Lp exponent or convexification exponent
  std::optional<OrliczFn> G;
  std::optional<WeightSeq> w;
  double unit_scale = 1.0;  // OrliczLorentz: raw gauge of e1
  std::shared_ptr<const Node> base;
  std::shared_ptr<const Node> target;
};

namespace {

// Luxemburg gauge inf{ lam > 0 : sum G(x*_k / lam) w_k <= 1 } of an already
// rearranged nonnegative vector. The vector is scaled by its sup before
// bisection so the absolute tolerance acts relatively.
double luxemburg_gauge(const OrliczFn& G, const WeightSeq& w, const Vec& xstar) {
  int n = static_cast<int>(xstar.size());
  int support = 0;
  for (int k = 0; k < n; ++k)
    if (xstar[k] > 0.0) support = k + 1;
  if (support == 0) return 0.0;
  if (support > w.size())
    throw std::invalid_argument("OrliczLorentz norm: vector support exceeds weight sequence length");

  double top = xstar[0];
  auto phi = [&](double lam) {
    double s = 0.0;
    for (int k = 0; k < support; ++k) {
      s += G(xstar[k] / (top * lam)) * w[k];
      if (!(s <= 1.0) && !std::isfinite(s)) return s;  // early inf
    }
    return s;
  };

  // Bracket [lo, hi] with phi(lo) > 1 >= phi(hi); phi is nonincreasing.
  double hi = 1.0;
  int steps = 0;
  while (phi(hi) > 1.0) {
    hi *= 2.0;
    if (++steps > 200) throw std::runtime_error("OrliczLorentz norm: gauge bracket not established in 200 steps");
  }
  double lo = hi * 0.5;
  steps = 0;
  while (phi(lo) <= 1.0) {
    hi = lo;
    lo *= 0.5;
    if (++steps > 200) throw std::runtime_error("OrliczLorentz norm: gauge bracket not established in 200 steps");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    (phi(mid) <= 1.0 ? hi : lo) = mid;
  }
  return top * hi;
}

}  // namespace

SpaceSpec SpaceSpec::lp(double p) {
  check_exponent(p, "lp");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Lp;
  n->p = p;
  return SpaceSpec(std::move(n));
}

SpaceSpec SpaceSpec::orlicz_lorentz(OrliczFn G, WeightSeq w) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::OrliczLorentz;
  n->G = std::move(G);
  n->w = std::move(w);
  Vec e1 = Vec::Zero(1);
  e1[0] = 1.0;
  n->unit_scale = luxemburg_gauge(*n->G, *n->w, e1);
  return SpaceSpec(std::move(n));
}

SpaceSpec SpaceSpec::convexify(SpaceSpec base, double p) {
  check_exponent(p, "convexify");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Convexification;
  n->p = p;
  n->base = base.node_;
  return SpaceSpec(std::move(n));
}

SpaceSpec SpaceSpec::kothe_dual(SpaceSpec base) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::KotheDual;
  n->base = base.node_;
  return SpaceSpec(std::move(n));
}

SpaceSpec SpaceSpec::generalized_dual(SpaceSpec base, SpaceSpec target) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::GeneralizedDual;
  n->base = base.node_;
  n->target = target.node_;
  return SpaceSpec(std::move(n));
}

SpaceSpec::Kind SpaceSpec::kind() const { return node_->kind; }

double SpaceSpec::lp_exponent() const {
  if (kind() != Kind::Lp) throw std::logic_error("lp_exponent: not an lp space");
  return node_->p;
}

double SpaceSpec::convexify_exponent() const {
  if (kind() != Kind::Convexification) throw std::logic_error("convexify_exponent: not a convexification");
  return node_->p;
}

const OrliczFn& SpaceSpec::orlicz() const {
  if (kind() != Kind::OrliczLorentz) throw std::logic_error("orlicz: not an Orlicz-Lorentz space");
  return *node_->G;
}

const WeightSeq& SpaceSpec::weights() const {
  if (kind() != Kind::OrliczLorentz) throw std::logic_error("weights: not an Orlicz-Lorentz space");
  return *node_->w;
}

double SpaceSpec::unit_scale() const {
  if (kind() != Kind::OrliczLorentz) throw std::logic_error("unit_scale: not an Orlicz-Lorentz space");
  return node_->unit_scale;
}

SpaceSpec SpaceSpec::base() const {
  if (!node_->base) throw std::logic_error("base: space has no base");
  return SpaceSpec(node_->base);
}

SpaceSpec SpaceSpec::target() const {
  if (!node_->target) throw std::logic_error("target: not a generalized dual");
  return SpaceSpec(node_->target);
}

SpaceSpec SpaceSpec::simplified() const {
  switch (kind()) {
    case Kind::Lp:
    case Kind::OrliczLorentz:
      return *this;
    case Kind::Convexification: {
      SpaceSpec b = base().simplified();
      double p = node_->p;
      if (p == 1.0) return b;
      if (b.kind() == Kind::Lp) {
        double q = b.lp_exponent();
        return SpaceSpec::lp(std::isinf(q) ? kInf : q * p);
      }
      if (b.kind() == Kind::OrliczLorentz)
        return SpaceSpec::orlicz_lorentz(b.orlicz().composed_with_power(p), b.weights());
      if (b.kind() == Kind::Convexification)
        return SpaceSpec::convexify(b.base(), b.convexify_exponent() * p).simplified();
      return SpaceSpec::convexify(b, p);
    }
    case Kind::KotheDual:
      return SpaceSpec::generalized_dual(base(), SpaceSpec::lp(1.0)).simplified();
    case Kind::GeneralizedDual: {
      SpaceSpec b = base().simplified();
      SpaceSpec t = target().simplified();
      if (b.kind() == Kind::Lp && std::isinf(b.lp_exponent())) return t;  // linf^F = F
      if (b.kind() == Kind::Lp && t.kind() == Kind::Lp)
        return SpaceSpec::lp(closed_form_dual_exponent(b.lp_exponent(), t.lp_exponent()));
      return SpaceSpec::generalized_dual(b, t);
    }
  }
  return *this;
}

std::string SpaceSpec::to_string() const {
  switch (kind()) {
    case Kind::Lp:
      return "lp:" + format_exponent(node_->p);
    case Kind::OrliczLorentz:
      return "lorentz:G=" + node_->G->tag() + ",w=" + node_->w->tag() +
             ",n=" + std::to_string(node_->w->size());
    case Kind::Convexification:
      return "convexify(" + base().to_string() + ",p=" + format_exponent(node_->p) + ")";
    case Kind::KotheDual:
      return "dual(" + base().to_string() + ")";
    case Kind::GeneralizedDual:
      return "gendual(" + base().to_string() + ";" + target().to_string() + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Operations

Vec rearrange(const Vec& x) {
  validate_vec(x);
  int n = static_cast<int>(x.size());
  std::vector<int> idx(static_cast<size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return std::abs(x[a]) > std::abs(x[b]); });
  Vec out(n);
  for (int i = 0; i < n; ++i) out[i] = std::abs(x[idx[static_cast<size_t>(i)]]);
  return out;
}

double lp_norm(const Vec& x, double p) {
  check_exponent(p, "lp_norm");
  double top = x.cwiseAbs().maxCoeff();
  if (top == 0.0) return 0.0;
  if (std::isinf(p)) return top;
  if (p == 1.0) return x.cwiseAbs().sum();
  if (p == 2.0) return x.norm();
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]) / top, p);
  return top * std::pow(s, 1.0 / p);
}

Vec lp_dual_witness(const Vec& y, double p) {
  int n = static_cast<int>(y.size());
  Vec x = Vec::Zero(n);
  if (y.cwiseAbs().maxCoeff() == 0.0) {
    x[0] = 1.0;
    return x;
  }
  if (p == 1.0) {
    int j = 0;
    for (int i = 1; i < n; ++i)
      if (std::abs(y[i]) > std::abs(y[j])) j = i;
    x[j] = y[j] >= 0.0 ? 1.0 : -1.0;
    return x;
  }
  if (std::isinf(p)) {
    for (int i = 0; i < n; ++i) x[i] = y[i] >= 0.0 ? 1.0 : -1.0;
    return x;
  }
  double pstar = conjugate_exponent(p);
  for (int i = 0; i < n; ++i) {
    double m = std::pow(std::abs(y[i]), pstar / p);
    x[i] = y[i] >= 0.0 ? m : -m;
  }
  double nx = lp_norm(x, p);
  if (nx > 0.0) x /= nx;
  return x;
}

double norm(const SpaceSpec& S, const Vec& x) {
  validate_vec(x);
  switch (S.kind()) {
    case SpaceSpec::Kind::Lp:
      return lp_norm(x, S.lp_exponent());
    case SpaceSpec::Kind::OrliczLorentz:
      // rearrange + gauge; unit_scale enforces ||e1|| = 1
      return luxemburg_gauge(S.orlicz(), S.weights(), rearrange(x)) / S.unit_scale();
    case SpaceSpec::Kind::Convexification: {
      double p = S.convexify_exponent();
      Vec u = x.cwiseAbs().array().pow(p).matrix();
      return std::pow(norm(S.base(), u), 1.0 / p);
    }
    case SpaceSpec::Kind::KotheDual:
      return kothe_dual_norm(S.base(), x).lower;
    case SpaceSpec::Kind::GeneralizedDual: {
      SpaceSpec s = S.simplified();
      if (s.kind() != SpaceSpec::Kind::GeneralizedDual) return norm(s, x);
      DualNormQuery q;
      q.E = s.base();
      q.F = s.target();
      q.x = x;
      return generalized_dual_norm(q).lower;
    }
  }
  throw std::logic_error("norm: unknown space kind");
}

Vec norm_subgradient(const SpaceSpec& S, const Vec& x) {
  validate_vec(x);
  int n = static_cast<int>(x.size());
  switch (S.kind()) {
    case SpaceSpec::Kind::Lp: {
      double p = S.lp_exponent();
      Vec g = Vec::Zero(n);
      double nx = lp_norm(x, p);
      if (nx == 0.0) return g;
      if (p == 1.0) {
        for (int i = 0; i < n; ++i) g[i] = x[i] > 0.0 ? 1.0 : (x[i] < 0.0 ? -1.0 : 0.0);
        return g;
      }
      if (std::isinf(p)) {
        int j = 0;
        for (int i = 1; i < n; ++i)
          if (std::abs(x[i]) > std::abs(x[j])) j = i;
        g[j] = x[j] >= 0.0 ? 1.0 : -1.0;
        return g;
      }
      for (int i = 0; i < n; ++i) {
        double m = std::pow(std::abs(x[i]) / nx, p - 1.0);
        g[i] = x[i] >= 0.0 ? m : -m;
      }
      return g;
    }
    case SpaceSpec::Kind::OrliczLorentz: {
      // Implicit differentiation of sum G(x*_k/lam) w_k = 1 at lam = gauge.
      const OrliczFn& G = S.orlicz();
      const WeightSeq& w = S.weights();
      Vec g = Vec::Zero(n);
      Vec xs = rearrange(x);
      double lam = luxemburg_gauge(G, w, xs);
      if (lam == 0.0) return g;
      std::vector<int> idx(static_cast<size_t>(n));
      std::iota(idx.begin(), idx.end(), 0);
      std::stable_sort(idx.begin(), idx.end(),
                       [&](int a, int b) { return std::abs(x[a]) > std::abs(x[b]); });
      double denom = 0.0;
      for (int k = 0; k < n && k < w.size(); ++k)
        denom += G.derivative(xs[k] / lam) * xs[k] * w[k];
      if (denom <= 0.0) denom = 1e-300;
      for (int r = 0; r < n && r < w.size(); ++r) {
        int i = idx[static_cast<size_t>(r)];
        double d = G.derivative(std::abs(x[i]) / lam) * w[r] * lam / denom;
        g[i] = x[i] >= 0.0 ? d : -d;
      }
      return g / S.unit_scale();
    }
    case SpaceSpec::Kind::Convexification: {
      double p = S.convexify_exponent();
      Vec u = x.cwiseAbs().array().pow(p).matrix();
      double nb = norm(S.base(), u);
      Vec g = Vec::Zero(n);
      if (nb == 0.0) return g;
      Vec gb = norm_subgradient(S.base(), u);
      double outer = std::pow(nb, 1.0 / p - 1.0);
      for (int i = 0; i < n; ++i) {
        double m = outer * gb[i] * std::pow(std::abs(x[i]), p - 1.0);
        g[i] = x[i] >= 0.0 ? m : -m;
      }
      return g;
    }
    default: {
      SpaceSpec s = S.simplified();
      if (s.kind() != SpaceSpec::Kind::KotheDual && s.kind() != SpaceSpec::Kind::GeneralizedDual)
        return norm_subgradient(s, x);
      // Central finite differences on the optimized norm; noisy but only
      // reached for irreducible dual spaces.
      Vec g(n);
      for (int i = 0; i < n; ++i) {
        double h = 1e-5 * (1.0 + std::abs(x[i]));
        Vec xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        g[i] = (norm(s, xp) - norm(s, xm)) / (2.0 * h);
      }
      return g;
    }
  }
}

Vec ball_project(const SpaceSpec& S, const Vec& x) {
  validate_vec(x);
  double nx = norm(S, x);
  if (nx <= 1.0) return x;
  return x / nx;
}

// ---------------------------------------------------------------------------
// Convexity probe

namespace {

// Pointwise (sum_k |x_k|^p)^{1/p} over a family, max modification at p=inf.
Vec family_power_mean(const std::vector<Vec>& fam, double p) {
  int n = static_cast<int>(fam.front().size());
  Vec out = Vec::Zero(n);
  if (std::isinf(p)) {
    for (const Vec& v : fam) out = out.cwiseMax(v.cwiseAbs());
    return out;
  }
  for (const Vec& v : fam) out += v.cwiseAbs().array().pow(p).matrix();
  return out.array().pow(1.0 / p).matrix();
}

double scalar_power_mean(const std::vector<double>& vals, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : vals) m = std::max(m, v);
    return m;
  }
  double s = 0.0;
  for (double v : vals) s += std::pow(v, p);
  return std::pow(s, 1.0 / p);
}

}  // namespace

double convexity_ratio(const SpaceSpec& S, double p, ConvexityDirection dir,
                       const std::vector<Vec>& family) {
  std::vector<double> norms;
  norms.reserve(family.size());
  for (const Vec& v : family) norms.push_back(norm(S, v));
  double lhs_vec = norm(S, family_power_mean(family, p));
  double rhs = scalar_power_mean(norms, p);
  if (dir == ConvexityDirection::Convex) return rhs > 0.0 ? lhs_vec / rhs : 0.0;
  return lhs_vec > 0.0 ? rhs / lhs_vec : 0.0;
}

ConvexityReport convexity_probe(const SpaceSpec& S, double p, ConvexityDirection dir,
                                int trials, std::uint64_t seed) {
  check_exponent(p, "convexity_probe");
  Rng rng(seed);
  ConvexityReport rep;
  rep.p = p;
  rep.direction = dir;
  rep.lower_bound_on_constant = 0.0;

  auto consider = [&](const std::vector<Vec>& fam) {
    double r = convexity_ratio(S, p, dir, fam);
    if (r > rep.lower_bound_on_constant) {
      rep.lower_bound_on_constant = r;
      rep.witness = fam;
    }
  };

  // Deterministic coordinate families first: they witness the classical
  // constants (e.g. {e1, e2} for 2-convexity of l1).
  for (int k = 1; k <= 4; ++k) {
    std::vector<Vec> fam;
    for (int j = 0; j < k; ++j) {
      Vec e = Vec::Zero(k);
      e[j] = 1.0;
      fam.push_back(e);
    }
    consider(fam);
  }
  for (int t = 0; t < trials; ++t) {
    Rng r = rng.fork(static_cast<std::uint64_t>(t));
    int dim = r.uniform_int(2, 6);
    int k = r.uniform_int(1, 4);
    std::vector<Vec> fam;
    for (int j = 0; j < k; ++j) {
      Vec v = r.vec_uniform(dim, -1.0, 1.0);
      if (r.uniform() < 0.3)
        for (int i = 0; i < dim; ++i) v[i] = r.uniform() < 0.5 ? 0.0 : (v[i] >= 0 ? 1.0 : -1.0);
      if (v.cwiseAbs().maxCoeff() == 0.0) v[0] = 1.0;
      fam.push_back(v);
    }
    consider(fam);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Orlicz condition check

OrliczConditionReport orlicz_condition_check(const OrliczFn& G, const WeightSeq& w,
                                             double p, OrliczConditionMode mode) {
  if (!(p > 1.0) || std::isinf(p))
    throw std::invalid_argument("orlicz_condition_check: p must be in (1, inf)");
  OrliczConditionReport rep;
  rep.pass = true;
  auto H = [&](double t) { return G(std::pow(t, 1.0 / p)); };

  for (int k = -30; k <= 30; ++k) rep.grid.push_back(std::pow(2.0, 0.4 * k));
  for (size_t i = 0; i + 1 < rep.grid.size() && rep.pass; ++i) {
    double a = rep.grid[i], b = rep.grid[i + 1];
    double mid = H(0.5 * (a + b));
    double chord = 0.5 * (H(a) + H(b));
    double tol = 1e-9 * std::max({1e-12, std::abs(mid), std::abs(chord)});
    bool ok = (mode == OrliczConditionMode::Convexity) ? (mid <= chord + tol) : (mid >= chord - tol);
    if (!ok) {
      rep.pass = false;
      std::ostringstream os;
      os << "G(t^{1/p}) midpoint " << (mode == OrliczConditionMode::Convexity ? "convexity" : "concavity")
         << " fails on [" << a << ", " << b << "]: H(mid)=" << mid << " vs chord=" << chord;
      rep.detail = os.str();
    }
  }

  // Partial sums of w: concave when w is nonincreasing (always true here),
  // convex only when w is constant. The weight check matters for the
  // concavity mode.
  for (int k = 0; k + 1 < w.size() && rep.pass; ++k) {
    double diff = w[k + 1] - w[k];  // S_{k+2} + S_k - 2 S_{k+1}
    double tol = 1e-12 * std::max(1.0, std::abs(w[k]));
    bool ok = (mode == OrliczConditionMode::Convexity) ? (diff <= tol) : (diff >= -tol);
    if (!ok) {
      rep.pass = false;
      std::ostringstream os;
      os << "partial sums of w fail " << (mode == OrliczConditionMode::Convexity ? "concavity" : "convexity")
         << " at k=" << (k + 1) << " (w_k=" << w[k] << ", w_{k+1}=" << w[k + 1] << ")";
      rep.detail = os.str();
    }
  }
  return rep;
}

}  // namespace symseq
