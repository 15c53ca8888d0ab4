#pragma once

// Schur products and (E,F)-multiplier norms: the exact extreme formulas,
// a gamma_2 factorization solver for the (2,2) norm with certified lower
// bounds, and sampled lower bounds for general space pairs.

#include "symseq/space.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace symseq {

/// Entrywise product; shapes must match.
Mat schur_product(const Mat& A, const Mat& B);

/// sup_{ij} |m_ij|, the exact (1,E)- and (E,inf)-multiplier norm for
/// every symmetric sequence space E.
double multiplier_norm_extreme(const Mat& M);

/// Hilbert-space factorization m_ij = <y_i, x_j> witnessing an upper bound
/// value = sup_i ||y_i|| sup_j ||x_j|| on the (2,2)-multiplier norm.
struct Gamma2Cert {
  std::vector<Vec> Y;  // one vector per row i
  std::vector<Vec> X;  // one vector per column j
  int ambient_dim = 0;
  double value = 0.0;
  double reconstruction_error = 0.0;  // max_ij |<y_i, x_j> - m_ij|
};

struct MultiplierReport {
  NormBounds bounds;
  std::optional<Gamma2Cert> certificate;
  std::optional<Mat> witness_A;  // attains bounds.lower via ||M*A|| / ||A||
};

struct Gamma2Budget {
  int max_rounds = 400;    // alternating rounds per start
  int restarts = 4;        // jittered restarts of the factorization search
  int lower_iters = 160;   // definitional-ascent iterations per start
  int lower_starts = 5;
  std::uint64_t seed = 0;
};

/// ||M||_{(2,2)}: upper bound from alternating least-norm factorization
/// with balancing (ambient dimension rows+cols), lower bound from the
/// definitional ratio ascent plus an SDP dual certificate. Flags (without
/// throwing) when the duality gap exceeds 1%.
MultiplierReport gamma2_norm(const Mat& M, const Gamma2Budget& budget = {});

/// Empirical lower bound on ||M||_{(E,F)} from structured and random test
/// matrices (matrix units, rank-ones, sign matrices), conservatively
/// evaluated as lower(||M*A||) / upper(||A||).
MultiplierReport multiplier_lower_bound(const Mat& M, const SpaceSpec& E, const SpaceSpec& F,
                                        int trials, std::uint64_t seed);

/// One-sided audit of the multiplier-space embedding: compares the
/// empirical (p,q) lower bound against the (E,F) one. `flagged` is set
/// when the ratio exceeds 1 + tolerance, which for E = lp, F = lq would
/// contradict the embedding up to optimization noise.
struct EmbeddingAuditRecord {
  double lower_pq = 0.0;
  double lower_EF = 0.0;
  double ratio = 0.0;      // lower_pq / lower_EF, the reported constant
  double tolerance = 0.05;
  bool flagged = false;
};

EmbeddingAuditRecord embedding_audit(const Mat& M, const SpaceSpec& E, const SpaceSpec& F,
                                     double p, double q, int trials, std::uint64_t seed,
                                     double tolerance = 0.05);

}  // namespace symseq
