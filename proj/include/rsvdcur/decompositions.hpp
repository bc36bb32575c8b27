#pragma once

#include "rsvdcur/types.hpp"

namespace rsvdcur {

enum class QrMode { kThin, kFull };
enum class Pivoting { kNone, kColumn };

struct QrFactors {
  Matrix q;          // orthonormal columns
  Matrix r;          // upper triangular (trapezoidal for wide inputs)
  IndexList pivots;  // empty without pivoting; pivots[j] is the original
                     // column placed at position j, so A(:, pivots) = Q * R
};

// Householder QR. Thin mode returns Q with min(rows, cols) columns, full mode
// an orthogonal rows x rows Q and requires rows >= cols. Column pivoting
// greedily picks the remaining column of largest norm at each step (lowest
// index on ties), which makes |diag(R)| nonincreasing.
QrFactors qr(const Eigen::Ref<const Matrix>& a, QrMode mode = QrMode::kThin,
             Pivoting pivoting = Pivoting::kNone);

enum class SvdMode { kThin, kFullRight };

struct SvdFactors {
  Matrix u;  // left singular vectors, min(rows, cols) columns
  Vector s;  // singular values, nonincreasing
  Matrix v;  // right singular vectors; square when mode is kFullRight
};

SvdFactors svd(const Eigen::Ref<const Matrix>& a, SvdMode mode = SvdMode::kThin);

// Lower-triangular Cholesky factor of a symmetric positive definite matrix.
// Only the lower triangle of s is read. A non-positive pivot raises
// NotPositiveDefiniteError carrying the failing diagonal index.
Matrix cholesky(const Eigen::Ref<const Matrix>& s);

// Minimizer of |A X - B| in the Frobenius norm for full-column-rank A,
// computed with a column-pivoted QR (never via the normal equations).
Matrix least_squares(const Eigen::Ref<const Matrix>& a,
                     const Eigen::Ref<const Matrix>& b);

// Minimizer of |X A - B| for full-row-rank A.
Matrix least_squares_right(const Eigen::Ref<const Matrix>& a,
                           const Eigen::Ref<const Matrix>& b);

// Largest singular value; 0 for an all-zero matrix.
double spectral_norm(const Eigen::Ref<const Matrix>& a);

enum class Triangle { kLower, kUpper };
enum class SolveSide { kLeft, kRight };

// Solves T X = B (left) or X T = B (right) with triangular T. A diagonal
// entry negligible relative to the largest one raises SingularTriangularError
// with its index.
Matrix solve_triangular(const Eigen::Ref<const Matrix>& t,
                        const Eigen::Ref<const Matrix>& b, Triangle triangle,
                        SolveSide side = SolveSide::kLeft);

// Extends a matrix with orthonormal columns to `want` columns by projecting
// canonical basis vectors, taken in index order, against the columns built so
// far (two passes for stability) and keeping those with a non-negligible
// remainder. Deterministic and seed-free.
Matrix orthonormal_completion(const Eigen::Ref<const Matrix>& q, Index want);

}  // namespace rsvdcur
