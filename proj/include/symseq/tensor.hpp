#pragma once

// Injective, projective and gamma_2^* tensor norms of finite matrices
// viewed as elements of E (x) F, through the operator-norm identifications
// eps_{E,F} = B(E^x, F) and pi_{E,F}^* = B(E, F^x).

#include "symseq/space.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace symseq {

/// u = sum u_ij e_i (x) e_j with coefficient matrix `coeffs`.
struct TensorElem {
  Mat coeffs;
  SpaceSpec E = SpaceSpec::lp(2);
  SpaceSpec F = SpaceSpec::lp(2);
};

struct TensorBudget {
  int starts = 12;
  int iters = 60;       // alternating rounds (injective) / descent steps
  int samples = 24;     // projective lower-bound pairing samples
  std::uint64_t seed = 0;
  /// When false the l2 (x) l2 SVD shortcut is skipped, so the alternating
  /// path can be checked against it.
  bool use_exact_paths = true;
};

/// eps(u) = sup { |x^T U y| : ||x||_{E^x} <= 1, ||y||_{F^x} <= 1 } by
/// alternating exact dual-norm steps; exact SVD path when E = F = l2.
/// The witness stacks the final pair [x; y].
NormBounds injective_norm(const TensorElem& u, const TensorBudget& budget = {});

/// pi(u): upper bound from explicit decompositions (SVD peeling, row and
/// column decompositions), lower bound from duality pairings against
/// operators scaled conservatively into the B(E, F^x) ball.
NormBounds projective_norm_bounds(const TensorElem& u, const TensorBudget& budget = {});

/// Upper bound on gamma_2^*(u) = inf sqrt(sum ||x_k||_E^2) sqrt(sum
/// ||xi_k||_F^2) over decompositions u = sum x_k (x) xi_k, by gradient
/// descent over the invertible reparameterizations of an SVD split.
double gamma2_star_upper(const TensorElem& u, const TensorBudget& budget = {});

enum class TensorNormId { Injective, ProjectiveUpper };

struct AxiomAuditRecord {
  struct Entry {
    std::string axiom;
    bool pass = true;
    double worst = 0.0;  // worst signed violation observed
  };
  std::vector<Entry> entries;
  bool all_pass = true;
};

/// Matrix-norm axiom audit on random elements at small dimension:
/// homogeneity, triangle, unit vectors, corner-projection contraction,
/// sign-unconditionality, permutation symmetry. Exact tolerances on the
/// eps exact path; interval-consistency checks for bound-valued norms.
AxiomAuditRecord matrix_norm_axiom_audit(TensorNormId which, const SpaceSpec& E,
                                         const SpaceSpec& F, int trials, std::uint64_t seed);

}  // namespace symseq
