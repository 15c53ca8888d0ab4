#pragma once

// The main triangle projection T_n and the log-growth experiments on its
// multiplier norms.

#include "symseq/schur.hpp"

#include <cstdint>
#include <vector>

namespace symseq {

/// Keeps entries with column <= row <= n (1-based), zeroes everything
/// else, rows and columns beyond n included. Requires n <= min(rows, cols).
Mat triangle_project(const Mat& A, int n);

/// The 0/1 lower-triangular n x n matrix (coefficients of T_n).
Mat triangle_matrix(int n);

/// ||T_n||_{(2,2)} via the gamma_2 solver on the lower-triangular ones.
NormBounds triangle_multiplier_norm(int n, const Gamma2Budget& budget = {});

struct GrowthCurve {
  std::vector<int> sizes;
  std::vector<double> values;   // certified lower bounds per size
  std::vector<double> uppers;   // matching upper bounds (may equal values)
  double fit_a = 0.0;           // least-squares fit values ~ a + b ln n
  double fit_b = 0.0;
  double r_squared = 1.0;
  std::vector<double> residuals;
  std::vector<bool> flagged;    // under-resolved points
};

enum class GrowthMode { Gamma2_22, RatioPQ };

struct GrowthOptions {
  GrowthMode mode = GrowthMode::Gamma2_22;
  double p = 2.0;  // RatioPQ space pair
  double q = 2.0;
  int rand_witnesses = 3;  // RatioPQ: seeded sign matrices besides the kernel
  Gamma2Budget gamma2;
  std::uint64_t seed = 0;
};

/// Lower bounds on ||T_n|| across sizes with an a + b ln n fit. Mode
/// Gamma2_22 runs the gamma_2 solver per size; mode RatioPQ evaluates
/// ||T_n(A)|| / ||A|| over a witness family (the 1/(i-j) kernel plus sign
/// matrices) with conservative operator-norm bounds.
GrowthCurve growth_experiment(const std::vector<int>& sizes, const GrowthOptions& opt = {});

/// Recomputes fit and r^2 from sizes/values (test hook).
void refit_growth(GrowthCurve& curve);

}  // namespace symseq
