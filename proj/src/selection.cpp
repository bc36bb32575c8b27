#include "rsvdcur/selection.hpp"

#include <cmath>

#include "rsvdcur/decompositions.hpp"

namespace rsvdcur {

namespace {

// Lowest index of the largest absolute entry among the first `limit` rows.
Index argmax_abs(const Vector& v, Index limit) {
  Index best = 0;
  double best_val = -1.0;
  for (Index i = 0; i < limit; ++i) {
    const double val = std::abs(v(i));
    if (val > best_val) {
      best_val = val;
      best = i;
    }
  }
  return best;
}

}  // namespace

IndexList deim(const Eigen::Ref<const Matrix>& basis, Index row_limit) {
  require_nonempty(basis, "deim");
  require_finite(basis, "deim");
  const Index m = basis.rows();
  const Index k = basis.cols();
  if (k > m) {
    throw DimensionError("deim: basis has more columns than rows");
  }
  const Index limit = (row_limit < 0) ? m : std::min(row_limit, m);
  if (limit < k) {
    throw DimensionError("deim: row limit leaves fewer candidates than "
                         "columns");
  }

  IndexList selected;
  selected.reserve(static_cast<std::size_t>(k));
  Vector residual = basis.col(0);
  if (residual.head(limit).isZero(0.0)) {
    throw SelectionError("deim: zero residual at step 0", 0);
  }
  selected.push_back(argmax_abs(residual, limit));

  for (Index j = 1; j < k; ++j) {
    Matrix sampled(j, j);
    Vector rhs(j);
    for (Index i = 0; i < j; ++i) {
      const Index row = selected[static_cast<std::size_t>(i)];
      sampled.row(i) = basis.row(row).head(j);
      rhs(i) = basis(row, j);
    }
    Eigen::ColPivHouseholderQR<Matrix> fac(sampled);
    const Matrix& packed = fac.matrixQR();
    const double largest = std::abs(packed(0, 0));
    for (Index i = 0; i < j; ++i) {
      if (std::abs(packed(i, i)) <= kRankTolerance * largest) {
        throw SelectionError(
            "deim: singular interpolation system at step " + std::to_string(j),
            j);
      }
    }
    const Vector coeff = fac.solve(rhs);
    residual = basis.col(j) - basis.leftCols(j) * coeff;
    if (residual.head(limit).isZero(0.0)) {
      throw SelectionError("deim: zero residual at step " + std::to_string(j),
                           j);
    }
    const Index pick = argmax_abs(residual, limit);
    for (Index prev : selected) {
      if (prev == pick) {
        throw SelectionError(
            "deim: repeated index at step " + std::to_string(j), j);
      }
    }
    selected.push_back(pick);
  }
  return selected;
}

IndexList qdeim(const Eigen::Ref<const Matrix>& basis) {
  require_nonempty(basis, "qdeim");
  require_finite(basis, "qdeim");
  const Index m = basis.rows();
  const Index k = basis.cols();
  if (k > m) {
    throw DimensionError("qdeim: basis has more columns than rows");
  }
  const QrFactors fac =
      qr(basis.transpose(), QrMode::kThin, Pivoting::kColumn);
  const double largest = std::abs(fac.r(0, 0));
  for (Index i = 0; i < k; ++i) {
    if (std::abs(fac.r(i, i)) <= kRankTolerance * largest) {
      throw SelectionError(
          "qdeim: rank breakdown at step " + std::to_string(i), i);
    }
  }
  return IndexList(fac.pivots.begin(), fac.pivots.begin() + k);
}

IndexList select_indices(const Eigen::Ref<const Matrix>& basis,
                         Selector selector) {
  return (selector == Selector::kDeim) ? deim(basis) : qdeim(basis);
}

}  // namespace rsvdcur
