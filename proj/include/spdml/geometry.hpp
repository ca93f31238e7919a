#pragma once

// Distances, the congruent transform, tangent-space maps and metric, and the
// Riemannian (Karcher) mean on the SPD cone.

#include <span>

#include "spdml/parallel.hpp"
#include "spdml/symmat.hpp"

namespace spdml {

/// ||A - B||_F
double dist_euclid(const SpdMatrix& a, const SpdMatrix& b);

/// ||log A - log B||_F
double dist_logeuclid(const SpdMatrix& a, const SpdMatrix& b);

/// M A M. The LogEuclidean parameterization uses M = G^{-1/2}.
SpdMatrix congruent(const SpdMatrix& m, const SpdMatrix& a);

/// LogEuclidean distance after whitening both arguments by G^{-1/2}.
double dist_logeuclid_g(const SpdMatrix& g, const SpdMatrix& a, const SpdMatrix& b);

/// Affine-invariant distance ||log(A^{-1/2} B A^{-1/2})||_F.
double dist_airm(const SpdMatrix& a, const SpdMatrix& b);

/// Same distance from the generalized eigenvalues of the pencil (B, A),
/// solved through a Cholesky reduction. Independent cross-check of dist_airm.
double dist_airm_pencil(const SpdMatrix& a, const SpdMatrix& b);

/// exp_G(S) = G^{1/2} expm(G^{-1/2} S G^{-1/2}) G^{1/2}
SpdMatrix exp_map(const SpdMatrix& g, const SymMatrix& s);

/// log_G(A) = G^{1/2} logm(G^{-1/2} A G^{-1/2}) G^{1/2}
SymMatrix log_map(const SpdMatrix& g, const SpdMatrix& a);

/// Affine-invariant metric tr(G^{-1} S_A G^{-1} S_B) on the tangent space at G.
double tangent_inner(const SpdMatrix& g, const SymMatrix& sa, const SymMatrix& sb);
double tangent_norm(const SpdMatrix& g, const SymMatrix& s);

struct KarcherOptions {
  double tol = 1e-10;
  int max_iter = 100;
  Execution exec = Execution::Parallel;
};

struct KarcherMean {
  SpdMatrix mean;
  int iterations = 0;
  double residual = 0.0;  // ||(1/n) sum_i log_mean(X_i)||_mean
};

/// Fixed-point iteration X <- exp_X((1/n) sum_i log_X(X_i)), started at the
/// arithmetic mean. Throws MaxIterExceeded carrying the final residual.
KarcherMean karcher_mean(std::span<const SpdMatrix> xs, const KarcherOptions& opts = {});

SpdMatrix riemannian_mean(std::span<const SpdMatrix> xs, double tol = 1e-10, int max_iter = 100);

/// ||(1/n) sum_i log_X(X_i)||_X, the Riemannian gradient norm of the Karcher
/// cost at X (up to a factor 2).
double karcher_residual(const SpdMatrix& x, std::span<const SpdMatrix> xs);

}  // namespace spdml
