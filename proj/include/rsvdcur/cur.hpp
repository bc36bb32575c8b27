#pragma once

#include "rsvdcur/rsvd.hpp"
#include "rsvdcur/selection.hpp"
#include "rsvdcur/types.hpp"

namespace rsvdcur {

// Coupling factor M minimizing |A - C M R| over M, computed as two full-rank
// least-squares solves (never through explicit pseudoinverses).
Matrix middle_matrix(const Eigen::Ref<const Matrix>& a,
                     const Eigen::Ref<const Matrix>& c,
                     const Eigen::Ref<const Matrix>& r);

struct CurResult {
  Index k = 0;
  Selector selector = Selector::kDeim;
  IndexList col_indices;  // p: columns of A kept in C
  IndexList row_indices;  // s: rows of A kept in R
  Matrix middle;          // k x k coupling factor
};

// CUR decomposition A ~ C M R with C = A(:, p), R = A(s, :), where p and s
// are selected from the leading k right/left singular vectors. Requires the
// numerical rank of A to be at least k.
CurResult cur(const Eigen::Ref<const Matrix>& a, Index k,
              Selector selector = Selector::kDeim);

struct RsvdCurResult {
  Index k = 0;
  Selector selector = Selector::kDeim;
  IndexList col_indices;  // p: columns of A (and of G)
  IndexList row_indices;  // s: rows of A (and of B)
  IndexList p_b;          // columns of B
  IndexList s_g;          // rows of G
  Matrix m_a, m_b, m_g;   // coupling factors for A, B and G
};

// Coupled CUR of the triplet: indices come from the leading k columns of the
// restricted-SVD factors (p from W, s from Z, p_b from U, s_g from V), so the
// three decompositions share row/column index sets.
RsvdCurResult rsvd_cur(const Eigen::Ref<const Matrix>& a,
                       const Eigen::Ref<const Matrix>& b,
                       const Eigen::Ref<const Matrix>& g, Index k,
                       Selector selector = Selector::kDeim);

struct GcurResult {
  Index k = 0;
  Selector selector = Selector::kDeim;
  IndexList col_indices;  // p
  IndexList row_indices;  // s
  IndexList s_g;
  Matrix m_a, m_g;
};

// Generalized CUR of a pair (A, G): the triplet decomposition with B = I,
// keeping only the A- and G-side outputs.
GcurResult gcur(const Eigen::Ref<const Matrix>& a,
                const Eigen::Ref<const Matrix>& g, Index k,
                Selector selector = Selector::kDeim);

enum class IdSide { kColumns, kRows };

struct RsvdIdResult {
  IdSide side = IdSide::kColumns;
  Index k = 0;
  Selector selector = Selector::kDeim;
  IndexList col_indices;  // p (columns side)
  IndexList p_b;
  IndexList row_indices;  // s (rows side)
  IndexList s_g;
  // Interpolation coefficients: columns side X ~ X(:, idx) * coeff_x,
  // rows side X ~ coeff_x * X(idx, :).
  Matrix coeff_a, coeff_b, coeff_g;
};

// One-sided interpolative decompositions of the triplet sharing the
// restricted-SVD index sets.
RsvdIdResult rsvd_id(const Eigen::Ref<const Matrix>& a,
                     const Eigen::Ref<const Matrix>& b,
                     const Eigen::Ref<const Matrix>& g, Index k, IdSide side,
                     Selector selector = Selector::kDeim);

struct ErrorBoundReport {
  double eta_p = 0.0;   // |inverse of Q_Wk(p, :)|
  double eta_s = 0.0;   // |inverse of Q_Zk(s, :)|
  double eta_pb = 0.0;  // |inverse of U_k(p_b, :)|
  double eta_sg = 0.0;  // |inverse of V_k(s_g, :)|
  // Spectral norms of the trailing column block and trailing square block of
  // the triangular factors of Z and W, partitioned at k.
  double norm_that_z = 0.0, norm_tz22 = 0.0;
  double norm_that_w = 0.0, norm_tw22 = 0.0;
  double alpha_k1 = 0.0, gamma_k1 = 0.0;  // (k+1)-th diagonal values
  double bound_a = 0.0, bound_b = 0.0, bound_g = 0.0;
  double err_a = 0.0, err_b = 0.0, err_g = 0.0;  // true spectral errors
};

// A-priori spectral error bounds for a coupled CUR, from QR factors of Z and
// W partitioned at k, together with the realized errors. Requires k below
// min(m, n) so the (k+1)-th diagonal values exist.
ErrorBoundReport error_bound_report(const Eigen::Ref<const Matrix>& a,
                                    const Eigen::Ref<const Matrix>& b,
                                    const Eigen::Ref<const Matrix>& g,
                                    const RsvdCurResult& result,
                                    const RsvdFactors& factors);

}  // namespace rsvdcur
