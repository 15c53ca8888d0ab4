#pragma once

// Test-only oracles, independent of the library's optimization paths:
// dense grid maximization over low-dimensional balls, a parameterized
// exhaustive search for the 2x2 gamma_2 norm, and closed forms.

#include "symseq/space.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <functional>

namespace symseq::oracles {

/// max of a positively homogeneous f over the unit sphere of S in R^2 by
/// angular grid sweep with local refinement.
inline double grid_ball_max_2d(const SpaceSpec& S, const std::function<double(const Vec&)>& f,
                               int steps = 4096) {
  double lo = 0.0, hi = 2.0 * 3.14159265358979323846;
  double best = 0.0, best_phi = 0.0;
  for (int round = 0; round < 5; ++round) {
    for (int k = 0; k <= steps; ++k) {
      double phi = lo + (hi - lo) * k / steps;
      Vec x(2);
      x << std::cos(phi), std::sin(phi);
      double nx = norm(S, x);
      if (nx <= 0.0) continue;
      double v = f(x / nx);
      if (v > best) {
        best = v;
        best_phi = phi;
      }
    }
    double width = (hi - lo) / steps * 8;
    lo = best_phi - width;
    hi = best_phi + width;
  }
  return best;
}

/// Exhaustive parameterized search for gamma_2 of a 2x2 matrix: fix the
/// row frame y1 = a e1, y2 = b(cos t, sin t); the columns x_j are then
/// determined by <y_i, x_j> = m_ij. Independent of the library solver.
inline double gamma2_2x2_search(const Mat& M) {
  auto value = [&](double a, double b, double t) {
    Mat Y(2, 2);
    Y << a, 0.0, b * std::cos(t), b * std::sin(t);
    Eigen::Matrix2d Yi = Y.inverse();
    Mat X = Yi * M;  // columns x_j
    double mx = std::max(X.col(0).norm(), X.col(1).norm());
    return std::max(a, b) * mx;
  };
  double la = 0.0, ha = 1.5, lb = 0.0, hb = 1.5;  // log10 bounds
  double lt = 0.05, ht = 3.09;
  double best = std::numeric_limits<double>::infinity();
  double ba = 0, bb = 0, bt = 1.5;
  for (int round = 0; round < 6; ++round) {
    int g = 36;
    for (int i = 0; i <= g; ++i)
      for (int j = 0; j <= g; ++j)
        for (int k = 0; k <= g; ++k) {
          double a = std::pow(10.0, la + (ha - la) * i / g - 0.75);
          double b = std::pow(10.0, lb + (hb - lb) * j / g - 0.75);
          double t = lt + (ht - lt) * k / g;
          if (std::abs(std::sin(t)) < 1e-6) continue;
          double v = value(a, b, t);
          if (v < best) {
            best = v;
            ba = la + (ha - la) * i / g;
            bb = lb + (hb - lb) * j / g;
            bt = t;
          }
        }
    double wa = (ha - la) / g * 4, wb = (hb - lb) / g * 4, wt = (ht - lt) / g * 4;
    la = ba - wa;
    ha = ba + wa;
    lb = bb - wb;
    hb = bb + wb;
    lt = std::max(1e-4, bt - wt);
    ht = std::min(3.1415, bt + wt);
  }
  return best;
}

inline double sigma_max(const Mat& A) { return A.jacobiSvd().singularValues()[0]; }

inline double nuclear(const Mat& A) { return A.jacobiSvd().singularValues().sum(); }

/// Dual norm of the normalized Lorentz-type space with G(t) = t: the
/// classical partial-sum ratio formula, scaled by the unit normalization.
inline double lorentz1_dual(const WeightSeq& w, const Vec& y) {
  Vec ys = rearrange(y);
  double best = 0.0, cs = 0.0, ws = 0.0;
  for (int k = 0; k < ys.size() && k < w.size(); ++k) {
    cs += ys[k];
    ws += w[k];
    best = std::max(best, cs / ws);
  }
  return best * w[0];  // gauge(e1) = w1 rescales the unit ball
}

}  // namespace symseq::oracles
