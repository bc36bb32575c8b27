#pragma once

#include "rsvdcur/types.hpp"

namespace rsvdcur {

// Factors of the generalized SVD of a pair (A, G) with A (p x r), G (q x r):
//   A = U * diag(gamma) * X^{-1},   G = V * Sigma * X^{-1}
// where U and V have orthonormal columns, X is nonsingular, and
// gamma_i^2 + sigma_i^2 = 1 for every i. Columns are ordered so sigma is
// nonincreasing; sigma entries past min(q, r) are exactly zero. Sigma as a
// matrix is q x r with sigma on its main diagonal.
struct GsvdFactors {
  Matrix u;      // p x r
  Matrix v;      // q x min(q, r)
  Matrix x;      // r x r
  Vector gamma;  // length r, nondecreasing
  Vector sigma;  // length r, nonincreasing
};

// Computes the pair decomposition by orthonormalizing the stacked matrix
// [A; G] with a thin QR, taking the SVD of the G block of the orthonormal
// factor, and mapping the pieces back. Columns of U whose gamma vanishes are
// filled by deterministic orthonormal completion. Requires p >= r and a
// stacked matrix of full column rank.
GsvdFactors gsvd_stacked(const Eigen::Ref<const Matrix>& a,
                         const Eigen::Ref<const Matrix>& g);

namespace detail {

struct GsvdOptions {
  bool want_x = true;
  bool want_y = false;     // X^{-T}, cheap to form from the QR pieces
  Index u_cols = -1;       // number of leading U columns to build; -1 = all
  bool rank_check = true;  // verify the stacked matrix has full column rank
};

struct StackedGsvd {
  Matrix u;      // p x u_cols
  Matrix v;      // q x min(q, r)
  Matrix x;      // r x r when requested, else empty
  Matrix y;      // X^{-T}, r x r when requested, else empty
  Vector gamma;  // length r
  Vector sigma;  // length r
};

StackedGsvd gsvd_stacked_engine(const Eigen::Ref<const Matrix>& a,
                                const Eigen::Ref<const Matrix>& g,
                                const GsvdOptions& options);

}  // namespace detail

}  // namespace rsvdcur
