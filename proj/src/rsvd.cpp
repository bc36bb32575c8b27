#include "rsvdcur/rsvd.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "rsvdcur/decompositions.hpp"
#include "rsvdcur/gsvd.hpp"

namespace rsvdcur {

namespace {

Matrix quasi_diagonal(Index rows, Index cols, const Vector& head,
                      double fill) {
  Matrix d = Matrix::Zero(rows, cols);
  const Index diag = std::min(rows, cols);
  for (Index i = 0; i < diag; ++i) {
    d(i, i) = (i < head.size()) ? head(i) : fill;
  }
  return d;
}

}  // namespace

Matrix RsvdFactors::d_a() const {
  return quasi_diagonal(rows, cols, alpha, 0.0);
}

Matrix RsvdFactors::d_b() const {
  // B = Z * D_B * U^T with economy U (l x m), so only the leading m x m
  // block of the conceptual m x l quasi-diagonal factor is ever needed.
  return quasi_diagonal(rows, rows, beta, 1.0);
}

Matrix RsvdFactors::d_g() const {
  // Same economy convention: V is d x n, leaving an n x n middle factor.
  return quasi_diagonal(cols, cols, gamma, 1.0);
}

namespace detail {

RsvdFactors rsvd_impl(const Eigen::Ref<const Matrix>& a,
                      const Eigen::Ref<const Matrix>& b,
                      const Eigen::Ref<const Matrix>& g,
                      const RsvdBuild& build) {
  require_nonempty(a, "rsvd: a");
  require_nonempty(b, "rsvd: b");
  require_nonempty(g, "rsvd: g");
  require_finite(a, "rsvd: a");
  require_finite(b, "rsvd: b");
  require_finite(g, "rsvd: g");
  const Index m = a.rows();
  const Index n = a.cols();
  if (b.rows() != m) {
    throw DimensionError("rsvd: b must have as many rows as a");
  }
  if (g.cols() != n) {
    throw DimensionError("rsvd: g must have as many columns as a");
  }

  if (m < n) {
    // Handle the wide case through the transpose symmetry of the triplet.
    RsvdBuild sub;
    sub.want_z = build.want_w;
    sub.want_w = build.want_z;
    sub.want_v = true;
    sub.u_cols = -1;
    sub.relaxed_rank = build.relaxed_rank;
    RsvdFactors t = rsvd_impl(a.transpose(), g.transpose(), b.transpose(), sub);
    RsvdFactors out;
    out.z = std::move(t.w);
    out.w = std::move(t.z);
    out.u = std::move(t.v);
    out.v = std::move(t.u);
    out.alpha = std::move(t.alpha);
    out.beta = std::move(t.gamma);
    out.gamma = std::move(t.beta);
    out.transposed = true;
    out.rows = m;
    out.cols = n;
    out.b_cols = b.cols();
    out.g_rows = g.rows();
    if (build.u_cols >= 0 && build.u_cols < out.u.cols()) {
      out.u = out.u.leftCols(build.u_cols).eval();
    }
    return out;
  }

  const Index l = b.cols();
  const Index d = g.rows();
  if (l < m) {
    throw DimensionError("rsvd: b must have at least as many columns as rows "
                         "of a");
  }
  if (d < n) {
    throw DimensionError("rsvd: g must have at least as many rows as columns "
                         "of a");
  }

  // A deficiency would make gamma1 entries vanish below, but the angle
  // formulation computes those through sqrt(1 - sigma^2) near sigma = 1 and
  // cannot resolve them past sqrt(machine eps). The singular values of A
  // itself have no such floor, so check the rank there.
  {
    Eigen::BDCSVD<Matrix> avals(a);
    const Vector& s = avals.singularValues();
    const double floor =
        kRankTolerance * std::sqrt(static_cast<double>(n)) * s(0);
    if (s(0) <= 0.0 || s(n - 1) <= floor) {
      throw RankError("rsvd: a must have full column rank");
    }
  }

  // Stage one: pair (A, G). Gives A = U1 * diag(gamma1) * Y1^T and
  // G = V1 * Sigma1 * Y1^T with Y1 = X1^{-T}.
  GsvdOptions opt1;
  opt1.want_x = false;
  opt1.want_y = true;
  StackedGsvd s1;
  try {
    s1 = gsvd_stacked_engine(a, g, opt1);
  } catch (const RankError&) {
    throw RankError("rsvd: stacked pair [a; g] is rank deficient");
  }
  if (s1.sigma(n - 1) <= kRankTolerance) {
    throw RankError("rsvd: g must have full column rank");
  }
  if (s1.gamma(0) <= kRankTolerance) {
    throw RankError("rsvd: a must have full column rank");
  }

  // Stage two: pair (B^T, D * U1^T) with D = Sigma1^{-1} * diag(gamma1).
  // This is the B-weighting stage written in the coordinates of A's row
  // space, which avoids completing U1 to a full m x m basis: the Y factor of
  // this pair is exactly Z, and its U factor is the U of the triplet.
  const Vector dvec = s1.gamma.cwiseQuotient(s1.sigma);
  Matrix t_g(n, m);
  t_g.noalias() = dvec.asDiagonal() * s1.u.transpose();

  GsvdOptions opt2;
  opt2.want_x = false;
  opt2.want_y = build.want_z;
  opt2.u_cols = build.u_cols;
  opt2.rank_check = !build.relaxed_rank;
  StackedGsvd s2;
  try {
    s2 = gsvd_stacked_engine(b.transpose(), t_g, opt2);
  } catch (const RankError&) {
    throw RankError("rsvd: b must have full row rank");
  }

  RsvdFactors out;
  out.rows = m;
  out.cols = n;
  out.b_cols = l;
  out.g_rows = d;
  out.transposed = false;

  const Vector sigma2 = s2.sigma.head(n);
  out.beta = s2.gamma.head(n);
  out.gamma = Vector(n);
  out.alpha = Vector(n);
  for (Index i = 0; i < n; ++i) {
    const double h = std::hypot(sigma2(i), 1.0);
    out.gamma(i) = sigma2(i) / h;
    out.alpha(i) = sigma2(i) * out.gamma(i);
  }

  out.u = std::move(s2.u);
  if (build.want_z) {
    out.z = std::move(s2.y);
  }
  if (build.want_v) {
    out.v = s1.v * s2.v;
  }
  if (build.want_w) {
    Matrix scaled = s1.y * s1.sigma.asDiagonal();
    out.w = scaled * s2.v;
    for (Index i = 0; i < n; ++i) {
      if (out.gamma(i) <= 0.0) {
        throw NumericalError("rsvd: degenerate direction with vanishing "
                             "G-side weight");
      }
      out.w.col(i) /= out.gamma(i);
    }
  }
  return out;
}

}  // namespace detail

RsvdFactors rsvd(const Eigen::Ref<const Matrix>& a,
                 const Eigen::Ref<const Matrix>& b,
                 const Eigen::Ref<const Matrix>& g) {
  return detail::rsvd_impl(a, b, g, detail::RsvdBuild{});
}

TruncatedRsvd truncate(const RsvdFactors& factors, Index k) {
  if (k < 1 || k > factors.alpha.size()) {
    throw DimensionError("truncate: k out of range");
  }
  if (factors.u.cols() < k || factors.z.cols() < k || factors.w.cols() < k ||
      factors.v.cols() < k) {
    throw DimensionError("truncate: factors were built without enough "
                         "columns");
  }
  TruncatedRsvd out;
  out.z = factors.z.leftCols(k);
  out.w = factors.w.leftCols(k);
  out.u = factors.u.leftCols(k);
  out.v = factors.v.leftCols(k);
  out.alpha = factors.alpha.head(k);
  out.beta = factors.beta.head(k);
  out.gamma = factors.gamma.head(k);
  out.k = k;
  return out;
}

Vector restricted_values(const RsvdFactors& factors) {
  Vector values(factors.alpha.size());
  for (Index i = 0; i < values.size(); ++i) {
    const double denom = factors.beta(i) * factors.gamma(i);
    if (denom <= 0.0) {
      throw NumericalError("restricted_values: degenerate triple at index " +
                           std::to_string(i));
    }
    values(i) = factors.alpha(i) / denom;
  }
  return values;
}

namespace detail {

RegularizedRsvd rsvd_regularized_impl(const Eigen::Ref<const Matrix>& a,
                                      const Eigen::Ref<const Matrix>& b,
                                      const Eigen::Ref<const Matrix>& g,
                                      double mu, RsvdBuild build) {
  require_nonempty(a, "rsvd_regularized: a");
  require_nonempty(b, "rsvd_regularized: b");
  require_nonempty(g, "rsvd_regularized: g");
  if (mu < 0.0) {
    throw DimensionError("rsvd_regularized: mu must be >= 0");
  }
  const Index m = a.rows();
  const Index n = a.cols();
  const double scale_b = spectral_norm(b);
  const double scale_g = spectral_norm(g);
  if (scale_b <= 0.0) throw RankError("rsvd_regularized: b is zero");
  if (scale_g <= 0.0) throw RankError("rsvd_regularized: g is zero");

  Matrix b_pad(m, b.cols() + m);
  b_pad.leftCols(b.cols()) = b;
  b_pad.rightCols(m) = (mu * scale_b) * Matrix::Identity(m, m);
  Matrix g_pad(g.rows() + n, n);
  g_pad.topRows(g.rows()) = g;
  g_pad.bottomRows(n) = (mu * scale_g) * Matrix::Identity(n, n);

  // The padded triplet is full rank by construction whenever mu > 0, but the
  // second-stage stack can be scaled badly enough to trip the generic rank
  // test, so that test is skipped; with mu = 0 genuine deficiencies must
  // still surface.
  build.relaxed_rank = mu > 0.0;
  RegularizedRsvd out;
  out.factors = rsvd_impl(a, b_pad, g_pad, build);
  out.mu = mu;
  out.true_b_cols = b.cols();
  out.true_g_rows = g.rows();
  return out;
}

}  // namespace detail

RegularizedRsvd rsvd_regularized(const Eigen::Ref<const Matrix>& a,
                                 const Eigen::Ref<const Matrix>& b,
                                 const Eigen::Ref<const Matrix>& g,
                                 double mu) {
  return detail::rsvd_regularized_impl(a, b, g, mu, detail::RsvdBuild{});
}

}  // namespace rsvdcur
