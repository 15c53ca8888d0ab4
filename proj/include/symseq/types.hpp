#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace symseq {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Conjugate exponent p* with 1/p + 1/p* = 1; conjugate of 1 is inf.
inline double conjugate_exponent(double p) {
  if (p == 1.0) return kInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

inline void validate_vec(const Vec& x, const char* what = "vector") {
  if (x.size() < 1) throw std::invalid_argument(std::string(what) + ": must have length >= 1");
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (!std::isfinite(x[i]))
      throw std::invalid_argument(std::string(what) + ": entry " + std::to_string(i) + " is not finite");
}

inline void validate_mat(const Mat& a, const char* what = "matrix") {
  if (a.rows() < 1 || a.cols() < 1) throw std::invalid_argument(std::string(what) + ": must be at least 1x1");
  if (!a.allFinite()) throw std::invalid_argument(std::string(what) + ": entries must be finite");
}

/// Certified interval returned by the optimization-based norm estimators.
/// `lower` is always attained by a feasible point; `witness`, when set,
/// reproduces it. `upper` may coincide with `lower` on exact paths.
struct NormBounds {
  double lower = 0.0;
  double upper = 0.0;
  std::string method;
  Vec witness;
  bool converged = true;

  double gap() const {
    double scale = std::max(std::abs(upper), 1e-300);
    return (upper - lower) / scale;
  }
};

}  // namespace symseq
