#include "symseq/kothe.hpp"

#include "symseq/ascent.hpp"
#include "symseq/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace symseq {

double closed_form_dual_exponent(double p, double r) {
  if (std::isnan(p) || p < 1.0 || std::isnan(r) || r < 1.0)
    throw std::invalid_argument("closed_form_dual_exponent: exponents must be in [1, inf]");
  if (p < r) return kInf;
  double inv = (std::isinf(r) ? 0.0 : 1.0 / r) - (std::isinf(p) ? 0.0 : 1.0 / p);
  if (inv <= 0.0) return kInf;
  return 1.0 / inv;
}

namespace {

std::vector<Vec> dual_ascent_starts(const SpaceSpec& E, const Vec& profile, int total,
                                    std::uint64_t seed) {
  int n = static_cast<int>(profile.size());
  std::vector<Vec> starts;
  for (int j = 0; j < n; ++j) {
    Vec e = Vec::Zero(n);
    e[j] = 1.0;
    starts.push_back(e);
  }
  // Top-k indicators of |profile|: the extreme points of polyhedral
  // symmetric balls (l1, linf, Lorentz with G = id) live on such faces.
  {
    Vec a = profile.cwiseAbs();
    std::vector<int> idx(static_cast<size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) { return a[i] > a[j]; });
    Vec flat = Vec::Zero(n);
    for (int k = 0; k < n; ++k) {
      flat[idx[static_cast<size_t>(k)]] = 1.0;
      if (k > 0) starts.push_back(flat);
    }
  }
  if (profile.cwiseAbs().maxCoeff() > 0.0) starts.push_back(profile.cwiseAbs());
  if (E.simplified().is_lp()) {
    Vec h = lp_dual_witness(profile.cwiseAbs(), E.simplified().lp_exponent());
    starts.push_back(h.cwiseAbs());
  }
  Rng rng(seed);
  while (static_cast<int>(starts.size()) < total)
    starts.push_back(rng.vec_uniform(n, 0.0, 1.0));
  return starts;
}

double multistart_spread(const std::vector<double>& finals, double best) {
  if (best <= 0.0 || finals.empty()) return 0.0;
  double lo = best;
  for (double v : finals)
    if (v > 0.0) lo = std::min(lo, v);
  return (best - lo) / best;
}

}  // namespace

namespace {

NormBounds gen_dual_impl(const DualNormQuery& q, double* tail_out) {
  validate_vec(q.x, "generalized_dual_norm: x");
  if (q.starts < 1 || q.iters < 1)
    throw std::invalid_argument("generalized_dual_norm: budgets must be positive");
  if (tail_out) *tail_out = 0.0;
  NormBounds nb;
  int n = static_cast<int>(q.x.size());
  if (q.x.cwiseAbs().maxCoeff() == 0.0) {
    nb.method = "zero";
    nb.witness = Vec::Zero(n);
    return nb;
  }

  SpaceSpec E = q.E.simplified();
  SpaceSpec F = q.F.simplified();

  if (q.use_closed_forms) {
    if (E.is_lp() && std::isinf(E.lp_exponent())) {
      // linf^F = F: the sup is attained at y = ones.
      double v = norm(q.F, q.x);
      nb.lower = nb.upper = v;
      nb.method = "closed-form linf-base";
      nb.witness = Vec::Ones(n);
      return nb;
    }
    if (E.is_lp() && F.is_lp()) {
      double p = E.lp_exponent(), r = F.lp_exponent();
      double qexp = closed_form_dual_exponent(p, r);
      double v = lp_norm(q.x, qexp);
      nb.lower = nb.upper = v;
      nb.method = "closed-form lp";
      if (p < r || std::isinf(qexp)) {
        int j = 0;
        for (int i = 1; i < n; ++i)
          if (std::abs(q.x[i]) > std::abs(q.x[j])) j = i;
        Vec w = Vec::Zero(n);
        w[j] = q.x[j] >= 0.0 ? 1.0 : -1.0;
        nb.witness = w;
      } else {
        // Hoelder split |y| ~ |x|^{q/p} on the lp ball, signed so that the
        // plain dot product x . y attains the value too.
        Vec w(n);
        for (int i = 0; i < n; ++i) {
          double mag = std::pow(std::abs(q.x[i]), qexp / p);
          w[i] = q.x[i] >= 0.0 ? mag : -mag;
        }
        double nw = lp_norm(w, p);
        if (nw > 0.0) w /= nw;
        nb.witness = w;
      }
      return nb;
    }
  }

  // Ascent over the nonnegative part of the E-ball; |x.y| is entrywise
  // monotone in |y|, so y >= 0 is a valid restriction.
  Vec c = q.x.cwiseAbs();
  RayObjective f;
  f.value = [&](const Vec& y) { return norm(q.F, c.cwiseProduct(y)); };
  f.grad = [&](const Vec& y) {
    Vec z = c.cwiseProduct(y);
    if (z.cwiseAbs().maxCoeff() == 0.0) return Vec(c);
    return Vec(c.cwiseProduct(norm_subgradient(q.F, z)));
  };
  AscentOptions aopt;
  aopt.iters = q.iters;
  aopt.nonneg = true;
  AscentResult res = maximize_on_ball(q.E, f, dual_ascent_starts(q.E, q.x, q.starts, q.seed), aopt);

  nb.lower = res.best;
  nb.upper = res.best;
  nb.witness = res.witness;
  nb.method = "ascent";
  if (tail_out) *tail_out = res.tail_improvement;
  double spread = multistart_spread(res.finals, res.best);
  if (spread > 0.05) {
    nb.converged = false;
    nb.method += "+spread>5%";
  }
  return nb;
}

}  // namespace

NormBounds generalized_dual_norm(const DualNormQuery& q) { return gen_dual_impl(q, nullptr); }

NormBounds kothe_dual_norm(const SpaceSpec& S, const Vec& y, const DualNormOptions& opt) {
  // E^{l1} = E^x routes the Koethe dual through the generalized machinery.
  DualNormQuery q;
  q.E = S;
  q.F = SpaceSpec::lp(1.0);
  q.x = y;
  q.starts = opt.starts;
  q.iters = opt.iters;
  q.seed = opt.seed;
  q.use_closed_forms = opt.use_closed_forms;
  double tail = 0.0;
  NormBounds nb = gen_dual_impl(q, &tail);
  // Reported optimality gap on the iterative path: projected tail
  // improvement of the winning start. Closed forms are exact.
  if (nb.method.rfind("ascent", 0) == 0 && nb.lower > 0.0) {
    double gap = std::min(1.0, 3.0 * tail);
    nb.upper = nb.lower * (1.0 + gap);
    if (gap > 1e-4) nb.converged = false;
  }
  return nb;
}

// ---------------------------------------------------------------------------
// Factorizations

namespace {

Vec sign_vec(const Vec& u) {
  Vec s(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) s[i] = u[i] >= 0.0 ? 1.0 : -1.0;
  return s;
}

Vec pow_vec(const Vec& u, double a) {
  Vec v(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) v[i] = u[i] == 0.0 ? 0.0 : std::pow(u[i], a);
  return v;
}

double dual_norm_upper(const SpaceSpec& E, const Vec& v, int starts, int iters,
                       std::uint64_t seed) {
  DualNormOptions opt;
  opt.starts = starts;
  opt.iters = iters;
  opt.seed = seed;
  return kothe_dual_norm(E, v, opt).upper;
}

FactorizationCert make_cert(const SpaceSpec& E, const Vec& y1, const Vec& u,
                            std::uint64_t seed) {
  FactorizationCert cert;
  cert.y1 = y1;
  cert.y2 = Vec::Zero(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i)
    if (y1[i] != 0.0) cert.y2[i] = u[i] / y1[i];
  cert.target = u;
  cert.product_error = (cert.y1.cwiseProduct(cert.y2) - u).cwiseAbs().maxCoeff();
  SpaceSpec Es = E.simplified();
  double dual = Es.is_lp() ? lp_norm(cert.y2, conjugate_exponent(Es.lp_exponent()))
                           : dual_norm_upper(E, cert.y2, 24, 400, seed);
  cert.norm_product = norm(E, y1) * dual;
  cert.reference_norm = lp_norm(u, 1.0);
  return cert;
}

}  // namespace

FactorizationCert lozanovskii_factorize(const SpaceSpec& E, const Vec& u, double eps,
                                        std::uint64_t seed) {
  validate_vec(u, "lozanovskii_factorize: u");
  if (u.cwiseAbs().maxCoeff() == 0.0)
    throw std::invalid_argument("lozanovskii_factorize: u must be nonzero");
  if (!(eps > 0.0 && eps <= 0.5))
    throw std::invalid_argument("lozanovskii_factorize: eps must be in (0, 0.5]");

  SpaceSpec Es = E.simplified();
  Vec au = u.cwiseAbs();
  Vec sg = sign_vec(u);

  if (Es.is_lp()) {
    // theta = 1/p splits exactly: ||u||_1^{1/p} * ||u||_1^{1/p*} = ||u||_1.
    double p = Es.lp_exponent();
    double theta = std::isinf(p) ? 0.0 : 1.0 / p;
    Vec y1 = sg.cwiseProduct(pow_vec(au, theta));  // pow_vec maps 0 -> 0
    return make_cert(E, y1, u, seed);
  }

  // Pointwise modulus split |y1| = |u|^theta, coordinate descent on theta.
  int n = static_cast<int>(u.size());
  auto product_of_norms = [&](const Vec& theta) {
    Vec y1(n), y2(n);
    for (int i = 0; i < n; ++i) {
      y1[i] = au[i] == 0.0 ? 0.0 : std::pow(au[i], theta[i]);
      y2[i] = au[i] == 0.0 ? 0.0 : std::pow(au[i], 1.0 - theta[i]);
    }
    return norm(E, y1) * dual_norm_upper(E, y2, 12, 200, seed);
  };

  // Scalar seed at the equal-norm heuristic.
  double best_scalar = 0.5, best_val = kInf;
  for (int g = 0; g <= 20; ++g) {
    double th = g / 20.0;
    double v = product_of_norms(Vec::Constant(n, th));
    if (v < best_val) {
      best_val = v;
      best_scalar = th;
    }
  }
  Vec theta = Vec::Constant(n, best_scalar);

  double ref = lp_norm(u, 1.0);
  double target = (1.0 + eps) * ref;
  for (int sweep = 0; sweep < 4 && best_val > target; ++sweep) {
    for (int i = 0; i < n; ++i) {
      if (au[i] == 0.0) continue;
      // Golden-section on theta_i in [0, 1].
      double lo = 0.0, hi = 1.0;
      const double gr = 0.6180339887498949;
      double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
      Vec ta = theta, tb = theta;
      ta[i] = a;
      tb[i] = b;
      double fa = product_of_norms(ta), fb = product_of_norms(tb);
      for (int it = 0; it < 16; ++it) {
        if (fa < fb) {
          hi = b;
          b = a;
          fb = fa;
          a = hi - gr * (hi - lo);
          ta[i] = a;
          fa = product_of_norms(ta);
        } else {
          lo = a;
          a = b;
          fa = fb;
          b = lo + gr * (hi - lo);
          tb[i] = b;
          fb = product_of_norms(tb);
        }
      }
      double cand = 0.5 * (lo + hi);
      Vec tc = theta;
      tc[i] = cand;
      double fc = product_of_norms(tc);
      if (fc < best_val) {
        best_val = fc;
        theta = tc;
      }
    }
  }

  Vec y1(n);
  for (int i = 0; i < n; ++i)
    y1[i] = au[i] == 0.0 ? 0.0 : sg[i] * std::pow(au[i], theta[i]);
  FactorizationCert cert = make_cert(E, y1, u, seed);
  if (cert.norm_product > (1.0 + eps) * cert.reference_norm + 1e-12)
    throw std::runtime_error("lozanovskii_factorize: tolerance not met (norm product " +
                             std::to_string(cert.norm_product) + " vs target " +
                             std::to_string((1.0 + eps) * cert.reference_norm) +
                             "); consider raising eps");
  return cert;
}

FactorizationCert lp_factorize(const SpaceSpec& E, double p, const Vec& z, double eps,
                               std::uint64_t seed) {
  validate_vec(z, "lp_factorize: z");
  if (z.cwiseAbs().maxCoeff() == 0.0)
    throw std::invalid_argument("lp_factorize: z must be nonzero");
  if (!(p >= 1.0) || std::isinf(p))
    throw std::invalid_argument("lp_factorize: p must be finite and >= 1");
  if (!(eps > 0.0 && eps <= 0.5))
    throw std::invalid_argument("lp_factorize: eps must be in (0, 0.5]");

  SpaceSpec Es = E.simplified();
  Vec sg = sign_vec(z);
  Vec az = z.cwiseAbs();
  double ref = lp_norm(z, p);

  FactorizationCert cert;
  cert.target = z;
  cert.reference_norm = ref;

  if (Es.is_lp()) {
    double qe = Es.lp_exponent();
    if (qe < p)
      throw std::invalid_argument("lp_factorize: lp(" + std::to_string(qe) +
                                  ") is not " + std::to_string(p) + "-convex");
    // Through Y = E^{1/p} = l_{q/p}: exact power split of |z|^p.
    double thetap = std::isinf(qe) ? 0.0 : p / qe;  // exponent on |z| for x1
    cert.y1 = sg.cwiseProduct(pow_vec(az, thetap));
    cert.y2 = Vec::Zero(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i)
      if (cert.y1[i] != 0.0) cert.y2[i] = z[i] / cert.y1[i];
    cert.product_error = (cert.y1.cwiseProduct(cert.y2) - z).cwiseAbs().maxCoeff();
    double s = closed_form_dual_exponent(qe, p);  // E^{lp} = l_s
    cert.norm_product = norm(E, cert.y1) * lp_norm(cert.y2, s);
    if (cert.norm_product > (1.0 + eps) * ref + 1e-12)
      throw std::runtime_error("lp_factorize: tolerance not met on the closed-form path");
    return cert;
  }

  if (Es.kind() != SpaceSpec::Kind::OrliczLorentz)
    throw std::invalid_argument("lp_factorize: unsupported space kind (need lp-reducible or Orlicz-Lorentz)");

  // Y = E^{1/p}; the Orlicz composition validates convexity of G(t^{1/p}),
  // i.e. the p-convexity the construction needs.
  SpaceSpec Y = SpaceSpec::orlicz_lorentz(Es.orlicz().composed_with_power(1.0 / p), Es.weights());
  Vec u = pow_vec(az, p);
  double eps_inner = std::min(0.5, std::pow(1.0 + eps, p) - 1.0);
  FactorizationCert inner = lozanovskii_factorize(Y, u, eps_inner, seed);

  cert.y1 = sg.cwiseProduct(pow_vec(inner.y1.cwiseAbs(), 1.0 / p));
  cert.y2 = pow_vec(inner.y2.cwiseAbs(), 1.0 / p);
  cert.product_error = (cert.y1.cwiseProduct(cert.y2) - z).cwiseAbs().maxCoeff();
  // (E^p)^{lp} = (E^x)^p transfers the Y-side norms: ||x1||_E = ||y1||_Y^{1/p}.
  double ny1 = norm(Y, inner.y1.cwiseAbs());
  double ny2 = dual_norm_upper(Y, inner.y2, 24, 400, seed);
  cert.norm_product = std::pow(ny1 * ny2, 1.0 / p);
  if (cert.norm_product > (1.0 + eps) * ref + 1e-12)
    throw std::runtime_error("lp_factorize: tolerance not met (norm product " +
                             std::to_string(cert.norm_product) + " vs target " +
                             std::to_string((1.0 + eps) * ref) + "); consider raising eps");
  return cert;
}

}  // namespace symseq
