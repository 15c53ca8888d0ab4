#include "symseq/opnorm.hpp"

#include "symseq/ascent.hpp"
#include "symseq/rng.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace symseq {

Vec apply(const Mat& A, const Vec& x) {
  validate_mat(A, "apply: A");
  validate_vec(x, "apply: x");
  if (A.cols() != x.size())
    throw std::invalid_argument("apply: dimension mismatch (" + std::to_string(A.cols()) +
                                " columns vs vector of length " + std::to_string(x.size()) + ")");
  return A * x;
}

double norm_1_to_E(const Mat& A, const SpaceSpec& E) {
  validate_mat(A, "norm_1_to_E: A");
  double best = 0.0;
  for (Eigen::Index j = 0; j < A.cols(); ++j) best = std::max(best, norm(E, A.col(j)));
  return best;
}

NormBounds norm_E_to_inf(const Mat& A, const SpaceSpec& E, const DualNormOptions& opt) {
  validate_mat(A, "norm_E_to_inf: A");
  NormBounds nb;
  nb.method = "row-dual";
  int n = static_cast<int>(A.cols());
  nb.witness = Vec::Zero(n);
  nb.witness[0] = 1.0;
  bool all_converged = true;
  Eigen::Index best_row = 0;
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    NormBounds row = kothe_dual_norm(E, A.row(i).transpose(), opt);
    if (row.lower > nb.lower) {
      nb.lower = row.lower;
      nb.witness = row.witness;
      best_row = i;
    }
    nb.upper = std::max(nb.upper, row.upper);
    all_converged = all_converged && row.converged;
  }
  nb.converged = all_converged;
  // Sign-align the dual witness with its row (the ball is symmetric), then
  // pin lower to the attained ratio so the witness reproduces it exactly.
  if (nb.witness.size() == A.cols()) {
    for (Eigen::Index j = 0; j < nb.witness.size(); ++j)
      nb.witness[j] = A(best_row, j) >= 0.0 ? std::abs(nb.witness[j]) : -std::abs(nb.witness[j]);
    double wn = norm(E, nb.witness);
    if (wn > 0.0) nb.lower = (A * nb.witness).cwiseAbs().maxCoeff() / wn;
  }
  return nb;
}

namespace {

double sigma_max(const Mat& A) { return A.jacobiSvd().singularValues()[0]; }

// sup { ||x||_2 : ||x||_E <= 1 } (upper bound; exact for lp).
double embed_to_l2(const SpaceSpec& E, int n) {
  SpaceSpec s = E.simplified();
  if (s.is_lp()) {
    double p = s.lp_exponent();
    if (p <= 2.0) return 1.0;
    double ip = std::isinf(p) ? 0.0 : 1.0 / p;
    return std::pow(static_cast<double>(n), 0.5 - ip);
  }
  // ||x||_2^2 <= ||x||_1 ||x||_inf <= ||ones||_{E^x} * 1.
  return std::sqrt(kothe_dual_norm(E, Vec::Ones(n)).upper);
}

// sup { ||y||_F : ||y||_2 <= 1 } (upper bound; exact for lp).
double embed_from_l2(const SpaceSpec& F, int m) {
  SpaceSpec s = F.simplified();
  if (s.is_lp()) {
    double q = s.lp_exponent();
    if (q >= 2.0) return 1.0;
    return std::pow(static_cast<double>(m), 1.0 / q - 0.5);
  }
  return norm(F, Vec::Ones(m));  // |y| <= 1 pointwise on the l2 ball
}

std::vector<Vec> opnorm_starts(const Mat& A, const SpaceSpec& E, int total, std::uint64_t seed) {
  int n = static_cast<int>(A.cols());
  std::vector<Vec> starts;
  for (int j = 0; j < n; ++j) {
    Vec e = Vec::Zero(n);
    e[j] = 1.0;
    starts.push_back(e);
  }
  // Hoelder profiles of the rows: exact maximizers of |row . x| over the
  // E-ball when E is lp; strong starts otherwise.
  SpaceSpec Es = E.simplified();
  for (Eigen::Index i = 0; i < A.rows() && static_cast<int>(starts.size()) < 4 * total; ++i) {
    Vec row = A.row(i).transpose();
    if (row.cwiseAbs().maxCoeff() == 0.0) continue;
    starts.push_back(Es.is_lp() ? lp_dual_witness(row, Es.lp_exponent()) : Vec(row.cwiseAbs()));
  }
  Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeThinV);
  for (int k = 0; k < std::min<int>(2, static_cast<int>(svd.matrixV().cols())); ++k)
    starts.push_back(svd.matrixV().col(k));
  Rng rng(seed);
  while (static_cast<int>(starts.size()) < total) {
    Vec v = rng.vec_normal(n);
    starts.push_back(v);
  }
  return starts;
}

}  // namespace

NormBounds opnorm_estimate(const Mat& A, const SpaceSpec& E, const SpaceSpec& F,
                           const OpNormBudget& budget) {
  validate_mat(A, "opnorm_estimate: A");
  int m = static_cast<int>(A.rows()), n = static_cast<int>(A.cols());
  NormBounds nb;
  if (A.cwiseAbs().maxCoeff() == 0.0) {
    nb.method = "zero";
    nb.witness = Vec::Zero(n);
    nb.witness[0] = 1.0;
    return nb;
  }

  SpaceSpec Es = E.simplified(), Fs = F.simplified();
  if (budget.use_exact_routes) {
    // Rank-one operators split exactly: ||u v^T||_{E,F} = ||u||_F ||v||_{E^x}.
    Eigen::JacobiSVD<Mat> svd1(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd1.singularValues().size() == 1 ||
        svd1.singularValues()[1] <= 1e-14 * svd1.singularValues()[0]) {
      Vec u = svd1.singularValues()[0] * svd1.matrixU().col(0);
      Vec v = svd1.matrixV().col(0);
      NormBounds dual = kothe_dual_norm(E, v);
      double nf = norm(F, u);
      nb.lower = nf * dual.lower;
      nb.upper = nf * dual.upper;
      nb.method = "rank-one: " + dual.method;
      nb.converged = dual.converged;
      nb.witness = dual.witness;
      for (Eigen::Index j = 0; j < nb.witness.size(); ++j)
        nb.witness[j] = v[j] >= 0.0 ? std::abs(nb.witness[j]) : -std::abs(nb.witness[j]);
      double wn = norm(E, nb.witness);
      if (wn > 0.0) nb.lower = norm(F, A * nb.witness) / wn;
      return nb;
    }
    if (Es.is_lp() && Es.lp_exponent() == 1.0) {
      double v = norm_1_to_E(A, F);
      int jbest = 0;
      for (int j = 1; j < n; ++j)
        if (norm(F, A.col(j)) > norm(F, A.col(jbest))) jbest = j;
      nb.lower = nb.upper = v;
      nb.method = "exact column formula";
      nb.witness = Vec::Zero(n);
      nb.witness[jbest] = 1.0;
      return nb;
    }
    if (Fs.is_lp() && std::isinf(Fs.lp_exponent())) {
      NormBounds row = norm_E_to_inf(A, E);
      row.method = "exact row formula: " + row.method;
      return row;
    }
    if (Es.is_lp() && Es.lp_exponent() == 2.0 && Fs.is_lp() && Fs.lp_exponent() == 2.0) {
      Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeThinV);
      nb.lower = nb.upper = svd.singularValues()[0];
      nb.method = "svd";
      nb.witness = svd.matrixV().col(0);
      return nb;
    }
  }

  RayObjective f;
  f.value = [&](const Vec& x) { return norm(F, A * x); };
  f.grad = [&](const Vec& x) {
    Vec y = A * x;
    if (y.cwiseAbs().maxCoeff() == 0.0) return Vec(Vec::Zero(n));
    return Vec(A.transpose() * norm_subgradient(F, y));
  };
  AscentOptions aopt;
  aopt.iters = budget.iters;
  AscentResult res = maximize_on_ball(E, f, opnorm_starts(A, E, budget.starts, budget.seed), aopt);

  // Pin the witness invariant: lower is recomputed from the witness.
  nb.witness = res.witness;
  double wn = norm(E, nb.witness);
  nb.lower = wn > 0.0 ? norm(F, A * nb.witness) / wn : 0.0;

  double u_col = norm_1_to_E(A, F) * kothe_dual_norm(E, Vec::Ones(n)).upper;
  double u_row = norm(F, Vec::Ones(m)) * norm_E_to_inf(A, E).upper;
  double u_svd = embed_to_l2(E, n) * sigma_max(A) * embed_from_l2(F, m);
  double upper = std::min({u_col, u_row, u_svd});
  const char* tag = upper == u_col ? "column" : (upper == u_row ? "row" : "svd");
  nb.upper = std::max(upper, nb.lower);
  nb.method = std::string("ascent; upper=") + tag;
  return nb;
}

std::pair<NormBounds, NormBounds> transpose_duality_pair(const Mat& A, const SpaceSpec& E,
                                                         const SpaceSpec& F,
                                                         const OpNormBudget& budget) {
  NormBounds primal = opnorm_estimate(A, E, F, budget);
  NormBounds dual = opnorm_estimate(A.transpose(), SpaceSpec::kothe_dual(F),
                                    SpaceSpec::kothe_dual(E), budget);
  return {primal, dual};
}

}  // namespace symseq
