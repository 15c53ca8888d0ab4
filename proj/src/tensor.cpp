#include "symseq/tensor.hpp"

#include "symseq/kothe.hpp"
#include "symseq/opnorm.hpp"
#include "symseq/rng.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace symseq {

namespace {

Vec signed_dual_witness(const SpaceSpec& dual_space, const Vec& v, const DualNormOptions& opt,
                        double* value_out) {
  NormBounds nb = kothe_dual_norm(dual_space, v, opt);
  Vec x = nb.witness;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    double m = std::abs(x[i]);
    x[i] = v[i] >= 0.0 ? m : -m;
  }
  if (value_out) *value_out = nb.lower;
  return x;
}

}  // namespace

NormBounds injective_norm(const TensorElem& u, const TensorBudget& budget) {
  validate_mat(u.coeffs, "injective_norm: coeffs");
  const Mat& U = u.coeffs;
  int m = static_cast<int>(U.rows()), n = static_cast<int>(U.cols());
  NormBounds nb;
  if (U.cwiseAbs().maxCoeff() == 0.0) {
    nb.method = "zero";
    nb.witness = Vec::Zero(m + n);
    return nb;
  }

  SpaceSpec Es = u.E.simplified(), Fs = u.F.simplified();
  if (budget.use_exact_paths && Es.is_lp() && Es.lp_exponent() == 2.0 && Fs.is_lp() &&
      Fs.lp_exponent() == 2.0) {
    Eigen::JacobiSVD<Mat> svd(U, Eigen::ComputeThinU | Eigen::ComputeThinV);
    nb.lower = nb.upper = svd.singularValues()[0];
    nb.method = "svd";
    nb.witness = Vec(m + n);
    nb.witness.head(m) = svd.matrixU().col(0);
    nb.witness.tail(n) = svd.matrixV().col(0);
    return nb;
  }

  SpaceSpec Ex = SpaceSpec::kothe_dual(u.E).simplified();
  SpaceSpec Fx = SpaceSpec::kothe_dual(u.F).simplified();
  DualNormOptions dopt;
  dopt.starts = 8;
  dopt.iters = 250;
  dopt.seed = budget.seed;

  std::vector<Vec> ystarts;
  for (int k = 0; k < n; ++k) {
    Vec e = Vec::Zero(n);
    e[k] = 1.0;
    ystarts.push_back(e);
  }
  Eigen::JacobiSVD<Mat> svd(U, Eigen::ComputeThinV);
  ystarts.push_back(svd.matrixV().col(0));
  Rng rng(budget.seed);
  while (static_cast<int>(ystarts.size()) < n + budget.starts)
    ystarts.push_back(rng.vec_normal(n));

  double best = 0.0;
  Vec best_x, best_y;
  for (Vec y0 : ystarts) {
    double ny = norm(Fx, y0.cwiseAbs().maxCoeff() > 0 ? y0 : Vec(Vec::Ones(n)));
    if (ny <= 0.0) continue;
    Vec y = y0 / ny;
    double val = 0.0;
    for (int it = 0; it < budget.iters; ++it) {
      // Exact alternating steps: each is a dual-norm evaluation.
      Vec x = signed_dual_witness(Ex, U * y, dopt, nullptr);
      y = signed_dual_witness(Fx, Vec(U.transpose() * x), dopt, nullptr);
      double v = x.dot(U * y);
      if (v > best) {
        best = v;
        best_x = x;
        best_y = y;
      }
      if (v <= val * (1.0 + 1e-12)) break;
      val = v;
    }
  }
  nb.lower = nb.upper = best;
  nb.method = "alternating";
  nb.witness = Vec(m + n);
  if (best_x.size() == m) {
    nb.witness.head(m) = best_x;
    nb.witness.tail(n) = best_y;
  }
  return nb;
}

NormBounds projective_norm_bounds(const TensorElem& u, const TensorBudget& budget) {
  validate_mat(u.coeffs, "projective_norm_bounds: coeffs");
  const Mat& U = u.coeffs;
  int m = static_cast<int>(U.rows()), n = static_cast<int>(U.cols());
  NormBounds nb;
  if (U.cwiseAbs().maxCoeff() == 0.0) {
    nb.method = "zero";
    return nb;
  }

  // Upper bounds from explicit decompositions.
  Eigen::JacobiSVD<Mat> svd(U, Eigen::ComputeThinU | Eigen::ComputeThinV);
  double up_svd = 0.0;
  for (int k = 0; k < svd.nonzeroSingularValues(); ++k)
    up_svd += svd.singularValues()[k] * norm(u.E, svd.matrixU().col(k)) *
              norm(u.F, svd.matrixV().col(k));
  double up_rows = 0.0;
  for (int i = 0; i < m; ++i) up_rows += norm(u.F, U.row(i).transpose());
  double up_cols = 0.0;
  for (int j = 0; j < n; ++j) up_cols += norm(u.E, U.col(j));
  nb.upper = std::min({up_svd, up_rows, up_cols});

  // Lower bounds: pair against B scaled into the B(E, F^x) unit ball.
  SpaceSpec Fx = SpaceSpec::kothe_dual(u.F);
  OpNormBudget ob;
  ob.starts = 16;
  ob.iters = 150;
  ob.seed = budget.seed;
  std::vector<Mat> cands;
  Mat sgn(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) sgn(i, j) = U(i, j) >= 0.0 ? 1.0 : -1.0;
  cands.push_back(sgn);
  cands.push_back(U);
  cands.push_back(svd.matrixU().leftCols(svd.nonzeroSingularValues()) *
                  svd.matrixV().leftCols(svd.nonzeroSingularValues()).transpose());
  {
    int bi = 0, bj = 0;
    U.cwiseAbs().maxCoeff(&bi, &bj);
    Mat E0 = Mat::Zero(m, n);
    E0(bi, bj) = 1.0;
    cands.push_back(E0);
  }
  Rng rng(budget.seed);
  for (int t = 0; t < budget.samples; ++t)
    cands.push_back(rng.fork(static_cast<std::uint64_t>(t)).mat_sign(m, n));

  double lower = 0.0;
  for (const Mat& B : cands) {
    double s = opnorm_estimate(B, u.E, Fx, ob).upper;
    if (s <= 0.0) continue;
    lower = std::max(lower, std::abs(U.cwiseProduct(B).sum()) / s);
  }
  nb.lower = std::min(lower, nb.upper);
  nb.method = "decomposition/pairing";
  if (nb.upper > 0.0 && nb.gap() > 0.25) nb.method += "+wide";
  return nb;
}

double gamma2_star_upper(const TensorElem& u, const TensorBudget& budget) {
  validate_mat(u.coeffs, "gamma2_star_upper: coeffs");
  const Mat& U = u.coeffs;
  if (U.cwiseAbs().maxCoeff() == 0.0) return 0.0;

  Eigen::JacobiSVD<Mat> svd(U, Eigen::ComputeThinU | Eigen::ComputeThinV);
  int K = std::max<int>(1, svd.nonzeroSingularValues());
  Mat sqrtS = svd.singularValues().head(K).cwiseSqrt().asDiagonal();
  Mat A0 = svd.matrixU().leftCols(K) * sqrtS;  // columns x_k
  Mat B0 = svd.matrixV().leftCols(K) * sqrtS;  // columns xi_k

  auto value = [&](const Mat& A, const Mat& B) {
    // Per-column rescaling x_k -> t x_k, xi_k -> xi_k/t with
    // t = sqrt(||xi_k||/||x_k||) balances the square sums, so the infimum
    // over scalings of sqrt(sum ||x_k||^2) sqrt(sum ||xi_k||^2) equals
    // sum_k ||x_k|| ||xi_k||. Evaluate that balanced value directly.
    double s = 0.0;
    for (int k = 0; k < A.cols(); ++k) s += norm(u.E, A.col(k)) * norm(u.F, B.col(k));
    return s;
  };

  Mat R = Mat::Identity(K, K);
  double best = value(A0, B0);
  double step = 0.2;
  for (int it = 0; it < budget.iters; ++it) {
    // Numerical descent over the reparameterization A0 R, B0 R^{-T}.
    Mat G(K, K);
    double f0 = value(A0 * R, B0 * R.transpose().inverse());
    const double h = 1e-5;
    for (int a = 0; a < K; ++a)
      for (int b = 0; b < K; ++b) {
        Mat Rp = R;
        Rp(a, b) += h;
        if (std::abs(Rp.determinant()) < 1e-12) {
          G(a, b) = 0.0;
          continue;
        }
        G(a, b) = (value(A0 * Rp, B0 * Rp.transpose().inverse()) - f0) / h;
      }
    double gn = G.norm();
    if (gn < 1e-12 * std::max(1.0, f0)) break;
    Mat Rn = R - (step / gn) * G;
    if (std::abs(Rn.determinant()) < 1e-12) {
      step *= 0.5;
      continue;
    }
    double fn = value(A0 * Rn, B0 * Rn.transpose().inverse());
    if (fn < f0) {
      R = Rn;
      best = std::min(best, fn);
      step = std::min(step * 1.3, 1.0);
    } else {
      step *= 0.5;
      if (step < 1e-8) break;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Axiom audit

namespace {

struct NormEval {
  std::function<NormBounds(const Mat&)> bounds;
  bool exact = false;
};

void record(AxiomAuditRecord& rec, const std::string& axiom, bool pass, double worst) {
  for (auto& e : rec.entries)
    if (e.axiom == axiom) {
      e.pass = e.pass && pass;
      e.worst = std::max(e.worst, worst);
      rec.all_pass = rec.all_pass && e.pass;
      return;
    }
  rec.entries.push_back({axiom, pass, worst});
  rec.all_pass = rec.all_pass && pass;
}

}  // namespace

AxiomAuditRecord matrix_norm_axiom_audit(TensorNormId which, const SpaceSpec& E,
                                         const SpaceSpec& F, int trials, std::uint64_t seed) {
  AxiomAuditRecord rec;
  TensorBudget tb;
  tb.seed = seed;
  tb.samples = 8;
  SpaceSpec Es = E.simplified(), Fs = F.simplified();
  bool exact = which == TensorNormId::Injective && Es.is_lp() && Es.lp_exponent() == 2.0 &&
               Fs.is_lp() && Fs.lp_exponent() == 2.0;

  auto eval = [&](const Mat& U) {
    TensorElem t{U, E, F};
    return which == TensorNormId::Injective ? injective_norm(t, tb)
                                            : projective_norm_bounds(t, tb);
  };
  const double tol = 1e-6;

  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    Rng fork = rng.fork(static_cast<std::uint64_t>(t));
    int m = fork.uniform_int(2, 5), n = fork.uniform_int(2, 5);
    Mat U = fork.mat_uniform(m, n, -1.0, 1.0);
    Mat V = fork.mat_uniform(m, n, -1.0, 1.0);
    NormBounds bu = eval(U), bv = eval(V);

    // (i) homogeneity + triangle + definiteness
    double alpha = fork.uniform(0.25, 4.0);
    NormBounds bau = eval(alpha * U);
    if (exact) {
      record(rec, "homogeneity", std::abs(bau.lower - alpha * bu.lower) <= tol * std::max(1.0, alpha * bu.lower),
             std::abs(bau.lower - alpha * bu.lower));
    } else {
      double viol = std::max(bau.lower - alpha * bu.upper, alpha * bu.lower - bau.upper);
      record(rec, "homogeneity", viol <= tol, viol);
    }
    NormBounds bsum = eval(U + V);
    double tri = bsum.lower - (bu.upper + bv.upper);
    record(rec, "triangle", tri <= tol, tri);
    record(rec, "definiteness", bu.lower >= 0.0 && bu.upper > 0.0, -bu.upper);

    // (ii) unit vectors
    Mat unit = Mat::Zero(m, n);
    unit(fork.uniform_int(0, m - 1), fork.uniform_int(0, n - 1)) = 1.0;
    NormBounds bunit = eval(unit);
    double uviol = std::max(bunit.lower - 1.0, 1.0 - bunit.upper);
    record(rec, "unit-norm", exact ? std::abs(bunit.lower - 1.0) <= tol : uviol <= tol,
           exact ? std::abs(bunit.lower - 1.0) : uviol);

    // (iii) corner projection contraction
    int pn = fork.uniform_int(1, m), pm = fork.uniform_int(1, n);
    Mat P = Mat::Zero(m, n);
    P.topLeftCorner(pn, pm) = U.topLeftCorner(pn, pm);
    NormBounds bp = eval(P);
    double cviol = bp.lower - bu.upper;
    record(rec, "corner-contraction", cviol <= tol, cviol);

    // (iv) sign-unconditionality: row/column sign flips e_i -> s_i e_i,
    // e_j -> t_j e_j (the tensor-basis signs s_i t_j).
    Vec srow(m), scol(n);
    for (int i = 0; i < m; ++i) srow[i] = fork.sign();
    for (int j = 0; j < n; ++j) scol[j] = fork.sign();
    Mat flip = srow.asDiagonal() * U * scol.asDiagonal();
    NormBounds bf = eval(flip);
    if (exact) {
      record(rec, "sign-unconditional", std::abs(bf.lower - bu.lower) <= tol,
             std::abs(bf.lower - bu.lower));
    } else {
      double v = std::max(bf.lower - bu.upper, bu.lower - bf.upper);
      record(rec, "sign-unconditional", v <= tol, v);
    }

    // (v) permutation symmetry
    Eigen::PermutationMatrix<Eigen::Dynamic> Pr(m), Pc(n);
    Pr.setIdentity();
    Pc.setIdentity();
    for (int i = m - 1; i > 0; --i) std::swap(Pr.indices()[i], Pr.indices()[fork.uniform_int(0, i)]);
    for (int j = n - 1; j > 0; --j) std::swap(Pc.indices()[j], Pc.indices()[fork.uniform_int(0, j)]);
    Mat perm = Pr * U * Pc;
    NormBounds bperm = eval(perm);
    if (exact) {
      record(rec, "permutation-symmetric", std::abs(bperm.lower - bu.lower) <= tol,
             std::abs(bperm.lower - bu.lower));
    } else {
      double v = std::max(bperm.lower - bu.upper, bu.lower - bperm.upper);
      record(rec, "permutation-symmetric", v <= tol, v);
    }
  }

  // Zero element.
  NormBounds bz = eval(Mat::Zero(2, 2));
  record(rec, "zero", bz.lower == 0.0 && bz.upper == 0.0, bz.upper);
  return rec;
}

}  // namespace symseq
