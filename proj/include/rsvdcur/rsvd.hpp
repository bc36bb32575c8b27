#pragma once

#include "rsvdcur/types.hpp"

namespace rsvdcur {

// Restricted SVD of a triplet (A, B, G) with A (m x n), B (m x l), G (d x n):
//   A = Z * Da * W^T,   B = Z * Db * U^T,   G = V * Dg * W^T
// with Z, W square nonsingular, U and V with orthonormal columns, and
// quasi-diagonal Da, Db, Dg whose active diagonals are alpha, beta and gamma.
// For every i, alpha_i^2 + beta_i^2 + gamma_i^2 = 1, and the restricted
// values alpha_i / (beta_i * gamma_i) are nonincreasing.
//
// When m < n the triplet is handled through the (A^T, G^T, B^T) symmetry and
// the factors are swapped back into the caller's orientation; `transposed`
// records that this happened. The diagonal vectors then have length m.
struct RsvdFactors {
  Matrix z;      // m x m
  Matrix w;      // n x n
  Matrix u;      // l x m (fewer columns for internal partial builds)
  Matrix v;      // d x n
  Vector alpha;  // length min(m, n)
  Vector beta;
  Vector gamma;
  bool transposed = false;

  Index rows = 0;    // m
  Index cols = 0;    // n
  Index b_cols = 0;  // l
  Index g_rows = 0;  // d

  // Quasi-diagonal middle factors: d_a is m x n, while d_b (m x m) and
  // d_g (n x n) are the blocks that pair with the economy-shaped U and V.
  Matrix d_a() const;
  Matrix d_b() const;
  Matrix d_g() const;

  Matrix reconstruct_a() const { return z * d_a() * w.transpose(); }
  Matrix reconstruct_b() const { return z * d_b() * u.transpose(); }
  Matrix reconstruct_g() const { return v * d_g() * w.transpose(); }
};

// Computes the factors by two stacked-QR pair decompositions: one of (A, G),
// then one of the pair obtained by weighting the first against B. Requires
// l >= m when m >= n (d >= n in the transposed regime) and full-rank A, B, G
// in the appropriate sense.
RsvdFactors rsvd(const Eigen::Ref<const Matrix>& a,
                 const Eigen::Ref<const Matrix>& b,
                 const Eigen::Ref<const Matrix>& g);

struct TruncatedRsvd {
  Matrix z;  // m x k
  Matrix w;  // n x k
  Matrix u;  // l x k
  Matrix v;  // d x k
  Vector alpha, beta, gamma;  // length k
  Index k = 0;
};

// Leading k columns of every factor (the dominant restricted directions).
TruncatedRsvd truncate(const RsvdFactors& factors, Index k);

// alpha_i / (beta_i * gamma_i), nonincreasing. A vanishing denominator
// raises NumericalError (degenerate triple).
Vector restricted_values(const RsvdFactors& factors);

struct RegularizedRsvd {
  RsvdFactors factors;
  double mu = 0.0;
  // factors.u rows at index >= true_b_cols belong to the artificial identity
  // padding of B (use as a row limit during selection); likewise factors.v
  // rows at index >= true_g_rows for G.
  Index true_b_cols = 0;
  Index true_g_rows = 0;
};

// Restricted SVD of (A, [B | mu*|B|*I], [G; mu*|G|*I]), which tolerates
// l < m or d < n by giving the padded B full row rank and the padded G full
// column rank. mu = 0 applies no padding weight, so rank errors surface.
RegularizedRsvd rsvd_regularized(const Eigen::Ref<const Matrix>& a,
                                 const Eigen::Ref<const Matrix>& b,
                                 const Eigen::Ref<const Matrix>& g,
                                 double mu = 1e-8);

namespace detail {

// Partial-build switches for internal callers that only need some factors;
// the public entry points always build everything.
struct RsvdBuild {
  bool want_z = true;
  bool want_v = true;
  bool want_w = true;
  Index u_cols = -1;          // leading U columns to build; -1 = all
  bool relaxed_rank = false;  // skip the second-stage stack rank check, for
                              // regularized triplets that are full rank by
                              // construction but badly scaled
};

RsvdFactors rsvd_impl(const Eigen::Ref<const Matrix>& a,
                      const Eigen::Ref<const Matrix>& b,
                      const Eigen::Ref<const Matrix>& g,
                      const RsvdBuild& build);

RegularizedRsvd rsvd_regularized_impl(const Eigen::Ref<const Matrix>& a,
                                      const Eigen::Ref<const Matrix>& b,
                                      const Eigen::Ref<const Matrix>& g,
                                      double mu, RsvdBuild build);

}  // namespace detail

}  // namespace rsvdcur
