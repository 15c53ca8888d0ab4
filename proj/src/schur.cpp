#include "symseq/schur.hpp"

#include "symseq/opnorm.hpp"
#include "symseq/parallel.hpp"
#include "symseq/rng.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace symseq {

Mat schur_product(const Mat& A, const Mat& B) {
  validate_mat(A, "schur_product: A");
  validate_mat(B, "schur_product: B");
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw std::invalid_argument("schur_product: shape mismatch");
  return A.cwiseProduct(B);
}

double multiplier_norm_extreme(const Mat& M) {
  validate_mat(M, "multiplier_norm_extreme: M");
  return M.cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// gamma_2 solver

namespace {

struct Factorization {
  Mat Y;  // m x r, rows y_i
  Mat X;  // n x r, rows x_j
  double value() const {
    double my = 0.0, mx = 0.0;
    for (Eigen::Index i = 0; i < Y.rows(); ++i) my = std::max(my, Y.row(i).norm());
    for (Eigen::Index j = 0; j < X.rows(); ++j) mx = std::max(mx, X.row(j).norm());
    return my * mx;
  }
};

// Minimum-norm rows: given X, each y_i is the least-norm solution of
// X y = M(i,:)^T, which also minimizes max_i ||y_i||.
Mat least_norm_rows(const Mat& M_rows, const Mat& X) {
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(X);
  // Solve X * Y^T = M_rows^T column by column (least-norm per column).
  return cod.solve(M_rows.transpose()).transpose();
}

void balance(Factorization& f) {
  double my = 0.0, mx = 0.0;
  for (Eigen::Index i = 0; i < f.Y.rows(); ++i) my = std::max(my, f.Y.row(i).norm());
  for (Eigen::Index j = 0; j < f.X.rows(); ++j) mx = std::max(mx, f.X.row(j).norm());
  if (my <= 0.0 || mx <= 0.0) return;
  double s = std::sqrt(mx / my);
  f.Y *= s;
  f.X /= s;
}

Factorization alternate_from(const Mat& M, Mat X0, int rounds) {
  Factorization f;
  f.X = std::move(X0);
  f.Y = least_norm_rows(M, f.X);
  double prev = kInf;
  for (int it = 0; it < rounds; ++it) {
    f.X = least_norm_rows(M.transpose(), f.Y);
    f.Y = least_norm_rows(M, f.X);
    balance(f);
    double v = f.value();
    if (std::abs(prev - v) < 1e-10 * std::max(1.0, v)) break;
    prev = v;
  }
  return f;
}

// With Y eliminated (least-norm rows give ||y_i||^2 = m_i^T (X X^T)^{-1} m_i),
// the search reduces to the Gram matrix W = X X^T > 0:
//   gamma2(M)^2 = min_W (max_i m_i^T W^{-1} m_i) (max_j W_jj).
// Parameterizing W = L L^T makes it smooth and unconstrained; the smoothed
// max is annealed and gradients are analytic:
//   d(m^T W^{-1} m)/dL = -2 v u^T with u = L^{-1} m, v = L^{-T} u.
struct WDescent {
  Mat L;                // argmin over the trajectory
  double value = kInf;  // max_i ||L^{-1} m_i|| * max_j ||row_j(L)||
};

WDescent descend_gram(const Mat& M, Mat L, int steps) {
  int m = static_cast<int>(M.rows());
  int n = static_cast<int>(M.cols());
  WDescent out;
  out.L = L;
  Mat Lcur = L;

  auto row_stats = [&](const Mat& Lc, Mat& U, Vec& a, Vec& b) -> bool {
    Eigen::PartialPivLU<Mat> lu(Lc);
    double det = std::abs(lu.determinant());
    if (!(det > 1e-300)) return false;
    U = lu.solve(M.transpose());  // columns u_i = L^{-1} m_i
    if (!U.allFinite()) return false;
    a.resize(m);
    for (int i = 0; i < m; ++i) a[i] = U.col(i).squaredNorm();
    b.resize(n);
    for (int j = 0; j < n; ++j) b[j] = Lc.row(j).squaredNorm();
    return true;
  };

  Mat U;
  Vec a, b;
  if (!row_stats(Lcur, U, a, b)) return out;
  out.value = std::sqrt(a.maxCoeff() * b.maxCoeff());

  double eta = 0.1;
  for (double beta : {16.0, 64.0, 256.0, 1024.0, 4096.0}) {
    for (int t = 0; t < steps; ++t) {
      double amax = a.maxCoeff(), bmax = b.maxCoeff();
      if (amax <= 0.0 || bmax <= 0.0) return out;
      // Softmax weights relative to the max (scale free).
      Vec wa(m), wb(n);
      double sa = 0.0, sb = 0.0;
      for (int i = 0; i < m; ++i) sa += wa[i] = std::exp(beta * (a[i] / amax - 1.0));
      for (int j = 0; j < n; ++j) sb += wb[j] = std::exp(beta * (b[j] / bmax - 1.0));
      wa /= sa;
      wb /= sb;
      // Gradient of ln smax_a + ln smax_b.
      Mat G = Mat::Zero(n, n);
      Eigen::PartialPivLU<Mat> lu(Lcur.transpose());
      Mat V = lu.solve(U);  // columns v_i = L^{-T} u_i
      for (int i = 0; i < m; ++i)
        if (wa[i] > 1e-14) G.noalias() -= (2.0 * wa[i] / amax) * (V.col(i) * U.col(i).transpose());
      for (int j = 0; j < n; ++j)
        if (wb[j] > 1e-14) G.row(j) += (2.0 * wb[j] / bmax) * Lcur.row(j);

      double gn = G.norm();
      if (gn < 1e-14) break;
      double scale = Lcur.norm() / gn;
      bool accepted = false;
      for (int bt = 0; bt < 8; ++bt) {
        Mat Ln = Lcur - (eta * scale) * G;
        Mat Un;
        Vec an, bn;
        if (row_stats(Ln, Un, an, bn)) {
          double vn = std::sqrt(an.maxCoeff() * bn.maxCoeff());
          // Accept on the smoothed objective to allow crossing plateaus.
          double smooth_old = std::log(sa) / beta + std::log(amax) +
                              std::log(sb) / beta + std::log(bmax);
          double san = 0.0, sbn = 0.0;
          double anmax = an.maxCoeff(), bnmax = bn.maxCoeff();
          for (int i = 0; i < m; ++i) san += std::exp(beta * (an[i] / anmax - 1.0));
          for (int j = 0; j < n; ++j) sbn += std::exp(beta * (bn[j] / bnmax - 1.0));
          double smooth_new = std::log(san) / beta + std::log(anmax) +
                              std::log(sbn) / beta + std::log(bnmax);
          if (smooth_new < smooth_old) {
            Lcur = Ln;
            U = Un;
            a = an;
            b = bn;
            if (vn < out.value) {
              out.value = vn;
              out.L = Lcur;
            }
            accepted = true;
            eta = std::min(eta * 1.25, 0.25);
            break;
          }
        }
        eta *= 0.5;
      }
      if (!accepted && eta < 1e-10) break;
    }
  }
  return out;
}

// Definitional lower bound: ascent on A -> sigma_max(M*A)/sigma_max(A).
struct RatioAscent {
  double best = 0.0;
  Mat best_A;
};

RatioAscent ratio_ascent(const Mat& M, const std::vector<Mat>& starts, int iters) {
  RatioAscent out;
  for (const Mat& A0 : starts) {
    Mat A = A0;
    double sA = A.jacobiSvd().singularValues()[0];
    if (sA <= 0.0) continue;
    A /= sA;
    for (int t = 1; t <= iters; ++t) {
      Eigen::JacobiSVD<Mat> svdB(M.cwiseProduct(A), Eigen::ComputeThinU | Eigen::ComputeThinV);
      Eigen::JacobiSVD<Mat> svdA(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
      double s1 = svdB.singularValues()[0];
      double s2 = svdA.singularValues()[0];
      if (s1 / s2 > out.best) {
        out.best = s1 / s2;
        out.best_A = A / s2;
      }
      Mat g1 = M.cwiseProduct(svdB.matrixU().col(0) * svdB.matrixV().col(0).transpose());
      Mat g2 = svdA.matrixU().col(0) * svdA.matrixV().col(0).transpose();
      Mat grad = g1 / s2 - (s1 / (s2 * s2)) * g2;
      double gn = grad.norm();
      if (gn < 1e-14 * std::max(1.0, s1)) break;
      A += (0.3 / std::sqrt(static_cast<double>(t))) * (A.norm() / gn) * grad;
      double sn = A.jacobiSvd().singularValues()[0];
      if (sn <= 0.0) break;
      A /= sn;
    }
  }
  return out;
}

// Dual lower bound: for any weights mu = (mu1, mu2) >= 0 with total mass 1,
//   gamma2(M) >= 2 || diag(sqrt(mu1)) M diag(sqrt(mu2)) ||_nuclear,
// with equality at the optimal weights (Schur complement of the dual SDP
// turns the psd constraint into an operator-norm cap, whose support
// function is the nuclear norm). Ascend on softmax-parameterized weights;
// every iterate is a certified bound.
double nuclear_dual_lower(const Mat& M, const Vec& mu1_init, const Vec& mu2_init, int iters) {
  int m = static_cast<int>(M.rows()), n = static_cast<int>(M.cols());
  Vec xi1 = mu1_init.cwiseMax(1e-12).array().log().matrix();
  Vec xi2 = mu2_init.cwiseMax(1e-12).array().log().matrix();

  auto weights = [&](const Vec& x1, const Vec& x2, Vec& mu1, Vec& mu2) {
    double top = std::max(x1.maxCoeff(), x2.maxCoeff());
    mu1 = (x1.array() - top).exp().matrix();
    mu2 = (x2.array() - top).exp().matrix();
    double total = mu1.sum() + mu2.sum();
    mu1 /= total;
    mu2 /= total;
  };

  auto nuclear_at = [&](const Vec& x1, const Vec& x2) {
    Vec mu1, mu2;
    weights(x1, x2, mu1, mu2);
    Mat B = mu1.cwiseSqrt().asDiagonal() * M * mu2.cwiseSqrt().asDiagonal();
    return B.jacobiSvd().singularValues().sum();
  };

  double best = nuclear_at(xi1, xi2);
  double eta = 0.5;
  for (int t = 0; t < iters; ++t) {
    Vec mu1, mu2;
    weights(xi1, xi2, mu1, mu2);
    Vec s1 = mu1.cwiseSqrt(), s2 = mu2.cwiseSqrt();
    Mat B = s1.asDiagonal() * M * s2.asDiagonal();
    Eigen::JacobiSVD<Mat> svd(B, Eigen::ComputeThinU | Eigen::ComputeThinV);
    double nuc = svd.singularValues().sum();
    best = std::max(best, nuc);

    // d(nuc)/d(mu1_i) = [U V^T (D2 M^T)]_ii / (2 sqrt(mu1_i)), chain-ruled
    // through the softmax.
    Mat UV = svd.matrixU() * svd.matrixV().transpose();
    Vec g1(m), g2(n);
    Mat R1 = UV * (s2.asDiagonal() * M.transpose());  // m x m
    Mat R2 = UV.transpose() * (s1.asDiagonal() * M);  // n x n
    for (int i = 0; i < m; ++i) g1[i] = s1[i] > 0 ? R1(i, i) / (2.0 * s1[i]) : 0.0;
    for (int j = 0; j < n; ++j) g2[j] = s2[j] > 0 ? R2(j, j) / (2.0 * s2[j]) : 0.0;
    // Softmax chain rule: df/dxi_k = mu_k (g_k - sum_l mu_l g_l).
    double mean = mu1.dot(g1) + mu2.dot(g2);
    Vec d1 = (mu1.array() * (g1.array() - mean)).matrix();
    Vec d2 = (mu2.array() * (g2.array() - mean)).matrix();
    double dn = std::sqrt(d1.squaredNorm() + d2.squaredNorm());
    if (dn < 1e-15 * std::max(1.0, nuc)) break;
    bool accepted = false;
    for (int bt = 0; bt < 10; ++bt) {
      Vec n1 = xi1 + (eta / dn) * d1, n2 = xi2 + (eta / dn) * d2;
      double cand = nuclear_at(n1, n2);
      if (cand > nuc) {
        xi1 = n1;
        xi2 = n2;
        best = std::max(best, cand);
        eta = std::min(eta * 1.3, 2.0);
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted && eta < 1e-12) break;
  }
  return 2.0 * best;
}

std::vector<Mat> lower_starts(const Mat& M, int count, std::uint64_t seed) {
  int m = static_cast<int>(M.rows()), n = static_cast<int>(M.cols());
  std::vector<Mat> starts;
  starts.push_back(M);
  Mat H(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) H(i, j) = i == j ? 0.0 : 1.0 / (i - j);
  if (H.cwiseAbs().maxCoeff() > 0.0) starts.push_back(H);
  Rng rng(seed);
  while (static_cast<int>(starts.size()) < count) starts.push_back(rng.mat_sign(m, n));
  return starts;
}

}  // namespace

MultiplierReport gamma2_norm(const Mat& M, const Gamma2Budget& budget) {
  validate_mat(M, "gamma2_norm: M");
  int m = static_cast<int>(M.rows()), n = static_cast<int>(M.cols());
  MultiplierReport rep;
  rep.bounds.method = "gamma2";
  if (M.cwiseAbs().maxCoeff() == 0.0) {
    Gamma2Cert cert;
    cert.ambient_dim = m + n;
    cert.Y.assign(static_cast<size_t>(m), Vec::Zero(m + n));
    cert.X.assign(static_cast<size_t>(n), Vec::Zero(m + n));
    rep.certificate = cert;
    rep.bounds.method = "zero";
    return rep;
  }

  // Canonical orientation: the norm is transpose-invariant, so compute on
  // a deterministic representative of {M, M^T}. Work with the Gram
  // variable on the smaller side; break square ties lexicographically.
  bool transposed = m > n;
  if (m == n) {
    bool decided = false;
    for (int i = 0; i < m && !decided; ++i)
      for (int j = 0; j < n && !decided; ++j)
        if (M(i, j) != M(j, i)) {
          transposed = M(j, i) < M(i, j);
          decided = true;
        }
  }
  Mat B = transposed ? Mat(M.transpose()) : M;
  int bn = static_cast<int>(B.cols());

  Eigen::JacobiSVD<Mat> svd(B, Eigen::ComputeThinU | Eigen::ComputeThinV);
  int r = static_cast<int>(svd.nonzeroSingularValues());
  Mat sqrtS = svd.singularValues().head(r).cwiseSqrt().asDiagonal();
  Mat X0 = svd.matrixV().leftCols(r) * sqrtS;

  Rng rng(budget.seed);
  std::vector<Mat> lstarts;
  {
    // Seed W = X X^T from the alternating least-norm solution and from
    // jittered/identity Gram matrices.
    Factorization alt = alternate_from(B, X0, budget.max_rounds);
    Mat W = alt.X * alt.X.transpose();
    double reg = 1e-8 * std::max(1.0, W.trace() / bn);
    lstarts.push_back(Eigen::LLT<Mat>(W + reg * Mat::Identity(bn, bn)).matrixL());
    lstarts.push_back(std::sqrt(std::max(B.cwiseAbs().maxCoeff(), 1e-12)) *
                      Mat::Identity(bn, bn));
    for (int k = 2; k < std::max(2, budget.restarts); ++k) {
      Rng fork = rng.fork(static_cast<std::uint64_t>(k));
      Mat J = lstarts[0] + 0.2 * lstarts[0].norm() / bn * fork.mat_uniform(bn, bn, -1.0, 1.0);
      lstarts.push_back(J);
    }
  }

  std::vector<WDescent> runs = parallel_map<WDescent>(
      static_cast<int>(lstarts.size()), [&](int i) {
        return descend_gram(B, lstarts[static_cast<size_t>(i)], budget.max_rounds);
      });
  const WDescent* win = &runs.front();
  for (const auto& wd : runs)
    if (wd.value < win->value) win = &wd;

  Factorization best_fact;
  bool rebuilt = false;
  if (std::isfinite(win->value)) {
    Eigen::PartialPivLU<Mat> lu(win->L);
    best_fact.Y = lu.solve(B.transpose()).transpose();  // rows y_i = L^{-1} b_i
    best_fact.X = win->L;
    rebuilt = best_fact.Y.allFinite() &&
              (best_fact.Y * best_fact.X.transpose() - B).cwiseAbs().maxCoeff() <= 1e-8;
  }
  if (!rebuilt) best_fact = alternate_from(B, X0, budget.max_rounds);
  balance(best_fact);
  if (transposed) std::swap(best_fact.Y, best_fact.X);
  const Factorization* best = &best_fact;

  double upper = best->value();

  // Certificate in ambient dimension m + n (zero-padded).
  Gamma2Cert cert;
  cert.ambient_dim = m + n;
  int rr = static_cast<int>(best->Y.cols());
  for (int i = 0; i < m; ++i) {
    Vec y = Vec::Zero(m + n);
    y.head(rr) = best->Y.row(i).transpose();
    cert.Y.push_back(y);
  }
  for (int j = 0; j < n; ++j) {
    Vec x = Vec::Zero(m + n);
    x.head(rr) = best->X.row(j).transpose();
    cert.X.push_back(x);
  }
  cert.value = upper;
  cert.reconstruction_error = (best->Y * best->X.transpose() - M).cwiseAbs().maxCoeff();

  // Soundness of the upper bound: the Gram-block matrix must be psd up to
  // the reconstruction tolerance.
  Mat G(m + n, m + n);
  G.topLeftCorner(m, m) = best->Y * best->Y.transpose();
  G.topRightCorner(m, n) = M;
  G.bottomLeftCorner(n, m) = M.transpose();
  G.bottomRightCorner(n, n) = best->X * best->X.transpose();
  double lam_min = Eigen::SelfAdjointEigenSolver<Mat>(G).eigenvalues().minCoeff();
  bool sound = lam_min >= -1e-8 && cert.reconstruction_error <= 1e-7;

  // Lower bound: entry floor, weighted-nuclear dual certificate (seeded
  // uniformly and at the active rows/columns of the factorization), and a
  // short definitional ratio ascent for the witness matrix.
  double floor_lb = M.cwiseAbs().maxCoeff();
  double lower = floor_lb;
  {
    Vec mu1 = Vec::Ones(m) / (2.0 * m), mu2 = Vec::Ones(n) / (2.0 * n);
    lower = std::max(lower, nuclear_dual_lower(M, mu1, mu2, budget.lower_iters));
    // Complementarity seed: weights concentrated where the factorization
    // row norms are maximal.
    Vec a1(m), a2(n);
    for (int i = 0; i < m; ++i) a1[i] = best->Y.row(i).squaredNorm();
    for (int j = 0; j < n; ++j) a2[j] = best->X.row(j).squaredNorm();
    double atop = std::max(a1.maxCoeff(), 1e-300), btop = std::max(a2.maxCoeff(), 1e-300);
    Vec s1 = (40.0 * (a1.array() / atop - 1.0)).exp().matrix();
    Vec s2 = (40.0 * (a2.array() / btop - 1.0)).exp().matrix();
    double tot = s1.sum() + s2.sum();
    lower = std::max(lower, nuclear_dual_lower(M, s1 / tot, s2 / tot, budget.lower_iters));
  }
  RatioAscent asc = ratio_ascent(M, lower_starts(M, budget.lower_starts, budget.seed ^ 0x5bd1e995u),
                                 budget.lower_iters / 2);
  lower = std::max(lower, asc.best);
  if (asc.best_A.size() > 0) rep.witness_A = asc.best_A;
  lower = std::min(lower, upper);  // rounding guard

  rep.bounds.lower = lower;
  rep.bounds.upper = upper;
  rep.certificate = cert;
  double gap = (upper - lower) / std::max(upper, 1e-300);
  if (gap > 0.01 || !sound) {
    rep.bounds.converged = false;
    rep.bounds.method += sound ? "+gap>1%" : "+unsound-gram";
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Sampled multiplier lower bounds

MultiplierReport multiplier_lower_bound(const Mat& M, const SpaceSpec& E, const SpaceSpec& F,
                                        int trials, std::uint64_t seed) {
  validate_mat(M, "multiplier_lower_bound: M");
  int m = static_cast<int>(M.rows()), n = static_cast<int>(M.cols());
  MultiplierReport rep;
  rep.bounds.method = "sampled-ratio";
  if (M.cwiseAbs().maxCoeff() == 0.0) {
    rep.bounds.method = "zero";
    rep.bounds.upper = 0.0;
    return rep;
  }

  OpNormBudget ob;
  ob.starts = 24;
  ob.iters = 200;
  ob.seed = seed;

  std::vector<Mat> samples;
  if (m * n <= 144) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) {
        Mat U = Mat::Zero(m, n);
        U(i, j) = 1.0;
        samples.push_back(U);
      }
  } else {
    int bi = 0, bj = 0;
    M.cwiseAbs().maxCoeff(&bi, &bj);
    Mat U = Mat::Zero(m, n);
    U(bi, bj) = 1.0;
    samples.push_back(U);
  }
  samples.push_back(Mat::Ones(m, n));
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    Rng fork = rng.fork(static_cast<std::uint64_t>(t));
    if (t % 2 == 0) {
      samples.push_back(fork.mat_sign(m, n));
    } else {
      Vec x = fork.vec_normal(m), y = fork.vec_normal(n);
      samples.push_back(x * y.transpose());
    }
  }

  std::vector<double> ratios = parallel_map<double>(
      static_cast<int>(samples.size()), [&](int i) {
        const Mat& A = samples[static_cast<size_t>(i)];
        double den = opnorm_estimate(A, E, F, ob).upper;
        if (den <= 0.0) return 0.0;
        double num = opnorm_estimate(M.cwiseProduct(A), E, F, ob).lower;
        return num / den;
      });
  size_t best_i = 0;
  for (size_t i = 1; i < ratios.size(); ++i)
    if (ratios[i] > ratios[best_i]) best_i = i;
  rep.bounds.lower = ratios[best_i];
  rep.witness_A = samples[best_i];

  // Exact extreme pairs have a matching upper bound; otherwise unbounded.
  SpaceSpec Es = E.simplified(), Fs = F.simplified();
  bool extreme = (Es.is_lp() && Es.lp_exponent() == 1.0) ||
                 (Fs.is_lp() && std::isinf(Fs.lp_exponent()));
  rep.bounds.upper = extreme ? multiplier_norm_extreme(M) : kInf;
  if (extreme) rep.bounds.lower = std::min(rep.bounds.lower, rep.bounds.upper);
  return rep;
}

EmbeddingAuditRecord embedding_audit(const Mat& M, const SpaceSpec& E, const SpaceSpec& F,
                                     double p, double q, int trials, std::uint64_t seed,
                                     double tolerance) {
  EmbeddingAuditRecord rec;
  rec.tolerance = tolerance;
  rec.lower_pq = multiplier_lower_bound(M, SpaceSpec::lp(p), SpaceSpec::lp(q), trials, seed).bounds.lower;
  rec.lower_EF = multiplier_lower_bound(M, E, F, trials, seed).bounds.lower;
  rec.ratio = rec.lower_pq / std::max(rec.lower_EF, 1e-300);
  rec.flagged = rec.ratio > 1.0 + tolerance;
  return rec;
}

}  // namespace symseq
