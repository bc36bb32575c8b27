#include "rsvdcur/random.hpp"

#include <cmath>
#include <numbers>

#include "rsvdcur/decompositions.hpp"

namespace rsvdcur {

double RandomStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Matrix gaussian_matrix(Index rows, Index cols, std::uint64_t seed) {
  if (rows <= 0 || cols <= 0) {
    throw DimensionError("gaussian_matrix: dimensions must be positive");
  }
  RandomStream rs(seed);
  Matrix a(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      a(i, j) = rs.normal();
    }
  }
  return a;
}

namespace {

Vector sparse_nonneg_vector(Index n, double density, RandomStream& rs) {
  Vector v = Vector::Zero(n);
  for (Index i = 0; i < n; ++i) {
    if (rs.uniform() < density) {
      v(i) = rs.uniform();
    }
  }
  return v;
}

// Orthonormal frame with Haar-distributed column span: thin QR of a Gaussian
// matrix, with each Q column flipped so the matching R diagonal is positive.
Matrix haar_frame(Index rows, Index cols, RandomStream& rs) {
  Matrix z(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      z(i, j) = rs.normal();
    }
  }
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  const Matrix& packed = qr.matrixQR();
  for (Index j = 0; j < cols; ++j) {
    if (packed(j, j) < 0) q.col(j) = -q.col(j);
  }
  return q;
}

}  // namespace

Matrix sparse_nonneg_lowrank(Index rows, Index cols, Index rank,
                             double density, std::uint64_t seed) {
  if (rows <= 0 || cols <= 0) {
    throw DimensionError("sparse_nonneg_lowrank: dimensions must be positive");
  }
  if (rank <= 0 || rank > std::min(rows, cols)) {
    throw DimensionError("sparse_nonneg_lowrank: rank out of range");
  }
  if (density <= 0.0 || density > 1.0) {
    throw DimensionError("sparse_nonneg_lowrank: density must be in (0, 1]");
  }
  RandomStream rs(seed);
  Matrix a = Matrix::Zero(rows, cols);
  for (Index j = 1; j <= rank; ++j) {
    const double weight = (j <= 10) ? 2.0 / j : 1.0 / j;
    const Vector x = sparse_nonneg_vector(rows, density, rs);
    const Vector y = sparse_nonneg_vector(cols, density, rs);
    a.noalias() += weight * x * y.transpose();
  }
  return a;
}

Matrix haar_orthogonal(Index n, std::uint64_t seed) {
  if (n <= 0) throw DimensionError("haar_orthogonal: size must be positive");
  RandomStream rs(seed);
  return haar_frame(n, n, rs);
}

Matrix randsvd_matrix(Index rows, Index cols, double condition,
                      std::uint64_t seed) {
  if (rows <= 0 || cols <= 0) {
    throw DimensionError("randsvd_matrix: dimensions must be positive");
  }
  if (condition < 1.0) {
    throw DimensionError("randsvd_matrix: condition must be >= 1");
  }
  const Index rank = std::min(rows, cols);
  Vector values(rank);
  for (Index i = 0; i < rank; ++i) {
    values(i) = (rank == 1)
                    ? 1.0
                    : std::pow(condition, -static_cast<double>(i) /
                                              static_cast<double>(rank - 1));
  }
  RandomStream rs(seed);
  const Matrix u = haar_frame(rows, rank, rs);
  const Matrix v = haar_frame(cols, rank, rs);
  return u * values.asDiagonal() * v.transpose();
}

namespace {

void check_covariance_params(Index n, double nu, double xi, const char* name) {
  if (n <= 0) {
    throw DimensionError(std::string(name) + ": size must be positive");
  }
  if (!(nu > 0.0)) {
    throw DimensionError(std::string(name) + ": nu must be > 0");
  }
  if (!(xi > -1.0 && xi < 1.0)) {
    throw DimensionError(std::string(name) + ": xi must lie in (-1, 1)");
  }
}

}  // namespace

Matrix cs_covariance(Index n, double nu, double xi) {
  check_covariance_params(n, nu, xi, "cs_covariance");
  const double scale = nu * nu;
  Matrix s = Matrix::Constant(n, n, scale * xi);
  s.diagonal().setConstant(scale);
  return s;
}

Matrix ar1_covariance(Index n, double nu, double xi) {
  check_covariance_params(n, nu, xi, "ar1_covariance");
  const double scale = nu * nu;
  Matrix s(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      s(i, j) = scale * std::pow(xi, static_cast<double>(std::abs(i - j)));
    }
  }
  return s;
}

Matrix covariance_matrix(const CovarianceSpec& spec) {
  switch (spec.kind) {
    case CovarianceSpec::Kind::kCompoundSymmetry:
      return cs_covariance(spec.size, spec.nu, spec.xi);
    case CovarianceSpec::Kind::kAr1:
      return ar1_covariance(spec.size, spec.nu, spec.xi);
  }
  throw DimensionError("covariance_matrix: unknown kind");
}

Matrix perturb(const Eigen::Ref<const Matrix>& a,
               const Eigen::Ref<const Matrix>& b,
               const Eigen::Ref<const Matrix>& g, double eps,
               std::uint64_t seed) {
  require_nonempty(a, "perturb: a");
  require_nonempty(b, "perturb: b");
  require_nonempty(g, "perturb: g");
  if (b.rows() != a.rows() || g.cols() != a.cols()) {
    throw DimensionError("perturb: factor shapes do not match a");
  }
  if (eps < 0.0) throw DimensionError("perturb: eps must be >= 0");
  if (eps == 0.0) return a;
  const double norm_a = spectral_norm(a);
  if (norm_a <= 0.0) {
    throw NumericalError("perturb: zero matrix has no scale to perturb");
  }
  const Matrix f = gaussian_matrix(b.cols(), g.rows(), seed);
  Matrix noise = b * f * g;
  const double norm_noise = spectral_norm(noise);
  if (norm_noise <= 0.0) {
    throw NumericalError("perturb: noise term vanished");
  }
  return a + (eps * norm_a / norm_noise) * noise;
}

Matrix inexact_cholesky(const Eigen::Ref<const Matrix>& l,
                        std::uint64_t seed) {
  require_nonempty(l, "inexact_cholesky: l");
  if (l.rows() != l.cols()) {
    throw DimensionError("inexact_cholesky: factor must be square");
  }
  RandomStream rs(seed);
  Matrix out = l;
  for (Index i = 0; i < out.rows(); ++i) {
    for (Index j = 0; j < i; ++j) {
      out(i, j) *= rs.uniform(0.9, 1.1);
    }
  }
  return out;
}

}  // namespace rsvdcur
