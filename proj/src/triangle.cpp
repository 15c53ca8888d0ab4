#include "symseq/triangle.hpp"

#include "symseq/opnorm.hpp"
#include "symseq/parallel.hpp"
#include "symseq/rng.hpp"

#include <cmath>

namespace symseq {

Mat triangle_project(const Mat& A, int n) {
  validate_mat(A, "triangle_project: A");
  if (n < 1 || n > std::min(A.rows(), A.cols()))
    throw std::invalid_argument("triangle_project: n out of range");
  Mat T = Mat::Zero(A.rows(), A.cols());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) T(i, j) = A(i, j);
  return T;
}

Mat triangle_matrix(int n) {
  Mat T = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) T(i, j) = 1.0;
  return T;
}

NormBounds triangle_multiplier_norm(int n, const Gamma2Budget& budget) {
  if (n < 1) throw std::invalid_argument("triangle_multiplier_norm: n must be >= 1");
  return gamma2_norm(triangle_matrix(n), budget).bounds;
}

void refit_growth(GrowthCurve& curve) {
  size_t k = curve.sizes.size();
  curve.residuals.assign(k, 0.0);
  if (k == 0) return;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < k; ++i) {
    double x = std::log(static_cast<double>(curve.sizes[i]));
    double y = curve.values[i];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double nk = static_cast<double>(k);
  double den = nk * sxx - sx * sx;
  if (std::abs(den) < 1e-14) {
    curve.fit_b = 0.0;
    curve.fit_a = sy / nk;
  } else {
    curve.fit_b = (nk * sxy - sx * sy) / den;
    curve.fit_a = (sy - curve.fit_b * sx) / nk;
  }
  double ss_res = 0.0, ss_tot = 0.0, mean = sy / nk;
  for (size_t i = 0; i < k; ++i) {
    double x = std::log(static_cast<double>(curve.sizes[i]));
    double r = curve.values[i] - (curve.fit_a + curve.fit_b * x);
    curve.residuals[i] = r;
    ss_res += r * r;
    ss_tot += (curve.values[i] - mean) * (curve.values[i] - mean);
  }
  curve.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
}

GrowthCurve growth_experiment(const std::vector<int>& sizes, const GrowthOptions& opt) {
  for (size_t i = 0; i + 1 < sizes.size(); ++i)
    if (sizes[i] >= sizes[i + 1])
      throw std::invalid_argument("growth_experiment: sizes must be strictly ascending");
  GrowthCurve curve;
  curve.sizes = sizes;
  int count = static_cast<int>(sizes.size());

  if (opt.mode == GrowthMode::Gamma2_22) {
    std::vector<NormBounds> per = parallel_map<NormBounds>(count, [&](int i) {
      return triangle_multiplier_norm(sizes[static_cast<size_t>(i)], opt.gamma2);
    });
    for (const NormBounds& b : per) {
      curve.values.push_back(b.lower);
      curve.uppers.push_back(b.upper);
      curve.flagged.push_back(!b.converged);
    }
  } else {
    SpaceSpec E = SpaceSpec::lp(opt.p), F = SpaceSpec::lp(opt.q);
    std::vector<double> per = parallel_map<double>(count, [&](int si) {
      int n = sizes[static_cast<size_t>(si)];
      std::vector<Mat> family;
      Mat H(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) H(i, j) = i == j ? 0.0 : 1.0 / (i - j);
      if (n > 1) family.push_back(H);
      Rng rng(opt.seed + static_cast<std::uint64_t>(n));
      for (int t = 0; t < opt.rand_witnesses; ++t)
        family.push_back(rng.fork(static_cast<std::uint64_t>(t)).mat_sign(n, n));
      OpNormBudget ob;
      ob.seed = opt.seed;
      double best = 0.0;
      for (const Mat& A : family) {
        double den = opnorm_estimate(A, E, F, ob).upper;
        if (den <= 0.0) continue;
        double num = opnorm_estimate(triangle_project(A, n), E, F, ob).lower;
        best = std::max(best, num / den);
      }
      // n = 1: T_1(A) = A for the 1x1 corner; ratio 1 with A = u11.
      if (n == 1) best = 1.0;
      return best;
    });
    for (double v : per) {
      curve.values.push_back(v);
      curve.uppers.push_back(v);
      curve.flagged.push_back(false);
    }
  }
  refit_growth(curve);
  return curve;
}

}  // namespace symseq
