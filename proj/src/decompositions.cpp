#include "rsvdcur/decompositions.hpp"

#include <algorithm>
#include <cmath>

namespace rsvdcur {

namespace {

IndexList pivot_list(const Eigen::PermutationMatrix<Eigen::Dynamic>& perm) {
  // perm satisfies A * perm = Q * R; column j of A * perm is column
  // perm.indices()(j)... the convention is validated by the unit tests, so
  // recover the placement explicitly: (A * perm).col(j) = A.col(p[j]) where
  // p = perm applied to the identity sequence.
  const auto& ind = perm.indices();
  IndexList pivots(static_cast<std::size_t>(ind.size()));
  for (Index j = 0; j < ind.size(); ++j) {
    pivots[static_cast<std::size_t>(j)] = static_cast<Index>(ind(j));
  }
  return pivots;
}

}  // namespace

QrFactors qr(const Eigen::Ref<const Matrix>& a, QrMode mode,
             Pivoting pivoting) {
  require_nonempty(a, "qr");
  require_finite(a, "qr");
  const Index m = a.rows();
  const Index n = a.cols();
  const Index rank_cols = std::min(m, n);
  if (mode == QrMode::kFull && m < n) {
    throw DimensionError("qr: full mode requires rows >= cols");
  }
  const Index q_cols = (mode == QrMode::kThin) ? rank_cols : m;

  QrFactors out;
  if (pivoting == Pivoting::kNone) {
    Eigen::HouseholderQR<Matrix> fac(a);
    out.q = fac.householderQ() * Matrix::Identity(m, q_cols);
    out.r = fac.matrixQR()
                .topRows(rank_cols)
                .triangularView<Eigen::Upper>();
  } else {
    Eigen::ColPivHouseholderQR<Matrix> fac(a);
    out.q = fac.householderQ() * Matrix::Identity(m, q_cols);
    out.r = fac.matrixQR()
                .topRows(rank_cols)
                .triangularView<Eigen::Upper>();
    out.pivots = pivot_list(fac.colsPermutation());
  }
  return out;
}

SvdFactors svd(const Eigen::Ref<const Matrix>& a, SvdMode mode) {
  require_nonempty(a, "svd");
  require_finite(a, "svd");
  const unsigned options =
      (mode == SvdMode::kThin) ? (Eigen::ComputeThinU | Eigen::ComputeThinV)
                               : (Eigen::ComputeThinU | Eigen::ComputeFullV);
  SvdFactors out;
  if (std::min(a.rows(), a.cols()) < 16) {
    Eigen::JacobiSVD<Matrix> fac(a, options);
    if (fac.info() != Eigen::Success) {
      throw NumericalError("svd: iteration failed to converge");
    }
    out.u = fac.matrixU();
    out.s = fac.singularValues();
    out.v = fac.matrixV();
  } else {
    Eigen::BDCSVD<Matrix> fac(a, options);
    if (fac.info() != Eigen::Success) {
      throw NumericalError("svd: iteration failed to converge");
    }
    out.u = fac.matrixU();
    out.s = fac.singularValues();
    out.v = fac.matrixV();
  }
  return out;
}

Matrix cholesky(const Eigen::Ref<const Matrix>& s) {
  require_nonempty(s, "cholesky");
  require_finite(s, "cholesky");
  if (s.rows() != s.cols()) {
    throw DimensionError("cholesky: matrix must be square");
  }
  const Index n = s.rows();
  Matrix l = Matrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    double d = s(j, j);
    if (j > 0) d -= l.row(j).head(j).squaredNorm();
    if (!(d > 0.0)) {
      throw NotPositiveDefiniteError(
          "cholesky: non-positive pivot at index " + std::to_string(j), j);
    }
    l(j, j) = std::sqrt(d);
    if (j + 1 < n) {
      auto below = l.col(j).tail(n - j - 1);
      below = s.col(j).tail(n - j - 1);
      if (j > 0) {
        below.noalias() -=
            l.bottomLeftCorner(n - j - 1, j) * l.row(j).head(j).transpose();
      }
      below /= l(j, j);
    }
  }
  return l;
}

Matrix least_squares(const Eigen::Ref<const Matrix>& a,
                     const Eigen::Ref<const Matrix>& b) {
  require_nonempty(a, "least_squares");
  require_nonempty(b, "least_squares");
  if (a.rows() != b.rows()) {
    throw DimensionError("least_squares: row counts must match");
  }
  if (a.rows() < a.cols()) {
    throw RankError("least_squares: matrix has fewer rows than columns");
  }
  Eigen::ColPivHouseholderQR<Matrix> fac(a);
  const Matrix& packed = fac.matrixQR();
  const double largest = std::abs(packed(0, 0));
  for (Index i = 0; i < a.cols(); ++i) {
    if (std::abs(packed(i, i)) <= kRankTolerance * largest) {
      throw RankError("least_squares: matrix is rank deficient");
    }
  }
  return fac.solve(b);
}

Matrix least_squares_right(const Eigen::Ref<const Matrix>& a,
                           const Eigen::Ref<const Matrix>& b) {
  require_nonempty(a, "least_squares_right");
  require_nonempty(b, "least_squares_right");
  if (a.cols() != b.cols()) {
    throw DimensionError("least_squares_right: column counts must match");
  }
  return least_squares(a.transpose(), b.transpose()).transpose();
}

double spectral_norm(const Eigen::Ref<const Matrix>& a) {
  require_nonempty(a, "spectral_norm");
  require_finite(a, "spectral_norm");
  if (a.isZero(0.0)) return 0.0;
  if (std::min(a.rows(), a.cols()) < 16) {
    Eigen::JacobiSVD<Matrix> fac(a);
    return fac.singularValues()(0);
  }
  Eigen::BDCSVD<Matrix> fac(a);
  return fac.singularValues()(0);
}

Matrix solve_triangular(const Eigen::Ref<const Matrix>& t,
                        const Eigen::Ref<const Matrix>& b, Triangle triangle,
                        SolveSide side) {
  require_nonempty(t, "solve_triangular");
  require_nonempty(b, "solve_triangular");
  if (t.rows() != t.cols()) {
    throw DimensionError("solve_triangular: matrix must be square");
  }
  const Index expected = (side == SolveSide::kLeft) ? b.rows() : b.cols();
  if (t.rows() != expected) {
    throw DimensionError("solve_triangular: shapes do not conform");
  }
  const Vector diag = t.diagonal().cwiseAbs();
  const double largest = diag.maxCoeff();
  Index worst = 0;
  const double smallest = diag.minCoeff(&worst);
  if (smallest <= kRankTolerance * largest) {
    throw SingularTriangularError(
        "solve_triangular: negligible diagonal entry at index " +
            std::to_string(worst),
        worst);
  }
  Matrix x = b;
  if (triangle == Triangle::kLower) {
    if (side == SolveSide::kLeft) {
      t.triangularView<Eigen::Lower>().solveInPlace(x);
    } else {
      t.triangularView<Eigen::Lower>().solveInPlace<Eigen::OnTheRight>(x);
    }
  } else {
    if (side == SolveSide::kLeft) {
      t.triangularView<Eigen::Upper>().solveInPlace(x);
    } else {
      t.triangularView<Eigen::Upper>().solveInPlace<Eigen::OnTheRight>(x);
    }
  }
  return x;
}

Matrix orthonormal_completion(const Eigen::Ref<const Matrix>& q, Index want) {
  const Index m = q.rows();
  const Index have = q.cols();
  if (m == 0 || want > m) {
    throw DimensionError("orthonormal_completion: target exceeds dimension");
  }
  if (want <= have) return q;
  Matrix out(m, want);
  out.leftCols(have) = q;
  Index filled = have;
  for (Index cand = 0; cand < m && filled < want; ++cand) {
    Vector v = Vector::Unit(m, cand);
    auto basis = out.leftCols(filled);
    if (filled > 0) {
      v.noalias() -= basis * (basis.transpose() * v);
      v.noalias() -= basis * (basis.transpose() * v);
    }
    const double norm = v.norm();
    if (norm > 1e-2) {
      out.col(filled) = v / norm;
      ++filled;
    }
  }
  if (filled < want) {
    throw NumericalError(
        "orthonormal_completion: ran out of independent candidates");
  }
  return out;
}

}  // namespace rsvdcur
