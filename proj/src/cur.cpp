#include "rsvdcur/cur.hpp"

#include <algorithm>
#include <cmath>

#include "rsvdcur/decompositions.hpp"

namespace rsvdcur {

namespace {

Matrix rows_of(const Eigen::Ref<const Matrix>& a, const IndexList& idx) {
  Matrix out(static_cast<Index>(idx.size()), a.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    out.row(static_cast<Index>(i)) = a.row(idx[i]);
  }
  return out;
}

Matrix cols_of(const Eigen::Ref<const Matrix>& a, const IndexList& idx) {
  Matrix out(a.rows(), static_cast<Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    out.col(static_cast<Index>(i)) = a.col(idx[i]);
  }
  return out;
}

// Smallest singular value of a square sample of an orthonormal basis; its
// reciprocal is the selection quality factor.
double inverse_norm(const Eigen::Ref<const Matrix>& basis,
                    const IndexList& idx) {
  const Matrix sampled = rows_of(basis, idx);
  Eigen::JacobiSVD<Matrix> fac(sampled);
  const double smallest = fac.singularValues().minCoeff();
  if (smallest <= kRankTolerance) {
    throw NumericalError("error_bound_report: selected rows are numerically "
                         "singular");
  }
  return 1.0 / smallest;
}

}  // namespace

Matrix middle_matrix(const Eigen::Ref<const Matrix>& a,
                     const Eigen::Ref<const Matrix>& c,
                     const Eigen::Ref<const Matrix>& r) {
  if (c.rows() != a.rows()) {
    throw DimensionError("middle_matrix: c must share rows with a");
  }
  if (r.cols() != a.cols()) {
    throw DimensionError("middle_matrix: r must share columns with a");
  }
  return least_squares_right(r, least_squares(c, a));
}

CurResult cur(const Eigen::Ref<const Matrix>& a, Index k, Selector selector) {
  require_nonempty(a, "cur");
  if (k < 1 || k > std::min(a.rows(), a.cols())) {
    throw DimensionError("cur: k out of range");
  }
  const SvdFactors fac = svd(a, SvdMode::kThin);
  if (fac.s(k - 1) <= kRankTolerance * fac.s(0)) {
    throw RankError("cur: a has numerical rank below k");
  }
  CurResult out;
  out.k = k;
  out.selector = selector;
  out.col_indices = select_indices(fac.v.leftCols(k), selector);
  out.row_indices = select_indices(fac.u.leftCols(k), selector);
  out.middle = middle_matrix(a, cols_of(a, out.col_indices),
                             rows_of(a, out.row_indices));
  return out;
}

RsvdCurResult rsvd_cur(const Eigen::Ref<const Matrix>& a,
                       const Eigen::Ref<const Matrix>& b,
                       const Eigen::Ref<const Matrix>& g, Index k,
                       Selector selector) {
  const RsvdFactors factors = rsvd(a, b, g);
  const TruncatedRsvd trunc = truncate(factors, k);
  RsvdCurResult out;
  out.k = k;
  out.selector = selector;
  out.col_indices = select_indices(trunc.w, selector);
  out.row_indices = select_indices(trunc.z, selector);
  out.p_b = select_indices(trunc.u, selector);
  out.s_g = select_indices(trunc.v, selector);
  out.m_a = middle_matrix(a, cols_of(a, out.col_indices),
                          rows_of(a, out.row_indices));
  out.m_b = middle_matrix(b, cols_of(b, out.p_b), rows_of(b, out.row_indices));
  out.m_g = middle_matrix(g, cols_of(g, out.col_indices),
                          rows_of(g, out.s_g));
  return out;
}

GcurResult gcur(const Eigen::Ref<const Matrix>& a,
                const Eigen::Ref<const Matrix>& g, Index k,
                Selector selector) {
  require_nonempty(a, "gcur");
  const RsvdCurResult full =
      rsvd_cur(a, Matrix::Identity(a.rows(), a.rows()), g, k, selector);
  GcurResult out;
  out.k = full.k;
  out.selector = full.selector;
  out.col_indices = full.col_indices;
  out.row_indices = full.row_indices;
  out.s_g = full.s_g;
  out.m_a = full.m_a;
  out.m_g = full.m_g;
  return out;
}

RsvdIdResult rsvd_id(const Eigen::Ref<const Matrix>& a,
                     const Eigen::Ref<const Matrix>& b,
                     const Eigen::Ref<const Matrix>& g, Index k, IdSide side,
                     Selector selector) {
  const RsvdFactors factors = rsvd(a, b, g);
  const TruncatedRsvd trunc = truncate(factors, k);
  RsvdIdResult out;
  out.side = side;
  out.k = k;
  out.selector = selector;
  if (side == IdSide::kColumns) {
    out.col_indices = select_indices(trunc.w, selector);
    out.p_b = select_indices(trunc.u, selector);
    out.coeff_a = least_squares(cols_of(a, out.col_indices), a);
    out.coeff_b = least_squares(cols_of(b, out.p_b), b);
    out.coeff_g = least_squares(cols_of(g, out.col_indices), g);
  } else {
    out.row_indices = select_indices(trunc.z, selector);
    out.s_g = select_indices(trunc.v, selector);
    out.coeff_a = least_squares_right(rows_of(a, out.row_indices), a);
    out.coeff_b = least_squares_right(rows_of(b, out.row_indices), b);
    out.coeff_g = least_squares_right(rows_of(g, out.s_g), g);
  }
  return out;
}

ErrorBoundReport error_bound_report(const Eigen::Ref<const Matrix>& a,
                                    const Eigen::Ref<const Matrix>& b,
                                    const Eigen::Ref<const Matrix>& g,
                                    const RsvdCurResult& result,
                                    const RsvdFactors& factors) {
  const Index m = a.rows();
  const Index n = a.cols();
  const Index k = result.k;
  if (k < 1 || k >= std::min(m, n)) {
    throw DimensionError("error_bound_report: k must lie strictly below "
                         "min(rows, cols)");
  }
  if (factors.z.cols() != m || factors.w.cols() != n) {
    throw DimensionError("error_bound_report: factors must be fully built");
  }

  const QrFactors qz = qr(factors.z, QrMode::kThin);
  const QrFactors qw = qr(factors.w, QrMode::kThin);
  const Matrix tz_tail = qz.r.rightCols(m - k);
  const Matrix tz22 = qz.r.bottomRightCorner(m - k, m - k);
  const Matrix tw_tail = qw.r.rightCols(n - k);
  const Matrix tw22 = qw.r.bottomRightCorner(n - k, n - k);
  const double norm_tz_tail = spectral_norm(tz_tail);
  const double norm_tz22 = spectral_norm(tz22);
  const double norm_tw_tail = spectral_norm(tw_tail);
  const double norm_tw22 = spectral_norm(tw22);

  ErrorBoundReport report;
  report.eta_p = inverse_norm(qw.q.leftCols(k), result.col_indices);
  report.eta_s = inverse_norm(qz.q.leftCols(k), result.row_indices);
  report.eta_pb = inverse_norm(factors.u.leftCols(k), result.p_b);
  report.eta_sg = inverse_norm(factors.v.leftCols(k), result.s_g);
  report.norm_that_z = norm_tz_tail;
  report.norm_tz22 = norm_tz22;
  report.norm_that_w = norm_tw_tail;
  report.norm_tw22 = norm_tw22;
  report.alpha_k1 = factors.alpha(k);
  report.gamma_k1 = factors.gamma(k);

  report.bound_a = report.alpha_k1 * (report.eta_p * norm_tz_tail * norm_tw22 +
                                      report.eta_s * norm_tz22 * norm_tw_tail);
  report.bound_b = report.eta_pb * norm_tz22 + report.eta_s * norm_tz_tail;
  report.bound_g = report.gamma_k1 *
                   (report.eta_p * norm_tw_tail + report.eta_sg * norm_tw22);

  report.err_a = spectral_norm(
      a - cols_of(a, result.col_indices) * result.m_a *
              rows_of(a, result.row_indices));
  report.err_b = spectral_norm(
      b - cols_of(b, result.p_b) * result.m_b * rows_of(b, result.row_indices));
  report.err_g = spectral_norm(
      g - cols_of(g, result.col_indices) * result.m_g *
              rows_of(g, result.s_g));
  return report;
}

}  // namespace rsvdcur
