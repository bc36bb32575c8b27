#include "rsvdcur/gsvd.hpp"

#include <algorithm>
#include <cmath>

#include "rsvdcur/decompositions.hpp"

namespace rsvdcur {
namespace detail {

StackedGsvd gsvd_stacked_engine(const Eigen::Ref<const Matrix>& a,
                                const Eigen::Ref<const Matrix>& g,
                                const GsvdOptions& options) {
  require_nonempty(a, "gsvd_stacked: a");
  require_nonempty(g, "gsvd_stacked: g");
  require_finite(a, "gsvd_stacked: a");
  require_finite(g, "gsvd_stacked: g");
  if (a.cols() != g.cols()) {
    throw DimensionError("gsvd_stacked: column counts must match");
  }
  const Index p = a.rows();
  const Index q = g.rows();
  const Index r = a.cols();
  if (p < r) {
    throw DimensionError("gsvd_stacked: a must have at least as many rows "
                         "as columns");
  }
  const Index rank_gq = std::min(q, r);
  const Index u_cols = (options.u_cols < 0) ? r : options.u_cols;
  if (u_cols > r) {
    throw DimensionError("gsvd_stacked: requested more U columns than exist");
  }

  Matrix stack(p + q, r);
  stack.topRows(p) = a;
  stack.bottomRows(q) = g;
  Eigen::HouseholderQR<Matrix> fac(stack);
  const Matrix& packed = fac.matrixQR();
  if (options.rank_check) {
    double largest = 0.0;
    for (Index i = 0; i < r; ++i) {
      largest = std::max(largest, std::abs(packed(i, i)));
    }
    for (Index i = 0; i < r; ++i) {
      if (std::abs(packed(i, i)) <= kRankTolerance * largest) {
        throw RankError("gsvd_stacked: stacked pair is rank deficient");
      }
    }
  }

  // G block of the orthonormalized stack, via whichever of "apply Q^T to the
  // bottom canonical vectors" or "form the thin Q" touches fewer columns.
  Matrix q_g(q, r);
  if (q <= r) {
    Matrix bottom = Matrix::Zero(p + q, q);
    bottom.bottomRows(q).setIdentity();
    Matrix qt_bottom = fac.householderQ().transpose() * bottom;
    q_g = qt_bottom.topRows(r).transpose();
  } else {
    Matrix thin_q = fac.householderQ() * Matrix::Identity(p + q, r);
    q_g = thin_q.bottomRows(q);
  }

  // The full set of right singular vectors is only needed when X or X^{-T}
  // is requested or U columns beyond the rank of the G block are wanted.
  const bool need_full_right =
      options.want_x || options.want_y || u_cols > rank_gq;
  const SvdFactors gsvd =
      svd(q_g, need_full_right ? SvdMode::kFullRight : SvdMode::kThin);

  StackedGsvd out;
  out.sigma = Vector::Zero(r);
  out.sigma.head(gsvd.s.size()) = gsvd.s;
  out.gamma = Vector(r);
  for (Index i = 0; i < r; ++i) {
    const double s = std::min(out.sigma(i), 1.0);
    out.gamma(i) = std::sqrt((1.0 - s) * (1.0 + s));
  }
  out.v = gsvd.u;

  // gamma is nondecreasing, so the degenerate columns (if any) form a prefix.
  const double gamma_tol = kRankTolerance * std::sqrt(static_cast<double>(r));
  Index degenerate = 0;
  while (degenerate < u_cols && out.gamma(degenerate) <= gamma_tol) {
    ++degenerate;
  }
  out.u = Matrix(p, u_cols);
  if (u_cols > degenerate) {
    const Index good = u_cols - degenerate;
    Matrix padded = Matrix::Zero(p + q, good);
    padded.topRows(r) = gsvd.v.middleCols(degenerate, good);
    Matrix applied = fac.householderQ() * padded;
    out.u.rightCols(good) = applied.topRows(p);
    for (Index j = 0; j < good; ++j) {
      out.u.col(degenerate + j) /= out.gamma(degenerate + j);
    }
    // Dividing by a small gamma amplifies roundoff enough to spoil the
    // mutual orthogonality of the U columns. One Householder pass over the
    // block restores it to working precision; running it from the largest
    // gamma down pins the reliable directions first and pushes all the
    // adjustment into the already-noisy small-gamma columns.
    Matrix block(p, good);
    for (Index j = 0; j < good; ++j) {
      block.col(j) = out.u.col(u_cols - 1 - j);
    }
    Eigen::HouseholderQR<Matrix> polish(block);
    Matrix ortho = polish.householderQ() * Matrix::Identity(p, good);
    for (Index j = 0; j < good; ++j) {
      if (polish.matrixQR()(j, j) < 0.0) ortho.col(j) = -ortho.col(j);
      out.u.col(u_cols - 1 - j) = ortho.col(j);
    }
  }
  if (degenerate > 0) {
    const Matrix extended =
        orthonormal_completion(out.u.rightCols(u_cols - degenerate), u_cols);
    out.u.leftCols(degenerate) = extended.rightCols(degenerate);
  }

  if (options.want_x) {
    out.x = packed.topRows(r).triangularView<Eigen::Upper>().solve(gsvd.v);
  }
  if (options.want_y) {
    // X = R^{-1} Zhat with orthogonal Zhat, so X^{-T} = R^T Zhat.
    out.y = packed.topRows(r).triangularView<Eigen::Upper>().transpose() *
            gsvd.v;
  }
  return out;
}

}  // namespace detail

GsvdFactors gsvd_stacked(const Eigen::Ref<const Matrix>& a,
                         const Eigen::Ref<const Matrix>& g) {
  detail::GsvdOptions options;
  options.want_x = true;
  detail::StackedGsvd engine = detail::gsvd_stacked_engine(a, g, options);
  GsvdFactors out;
  out.u = std::move(engine.u);
  out.v = std::move(engine.v);
  out.x = std::move(engine.x);
  out.gamma = std::move(engine.gamma);
  out.sigma = std::move(engine.sigma);
  return out;
}

}  // namespace rsvdcur
