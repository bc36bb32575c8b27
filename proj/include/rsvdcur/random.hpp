#pragma once

#include <cstdint>
#include <random>

#include "rsvdcur/types.hpp"

namespace rsvdcur {

// Deterministic random stream, generator version 1.
//
// The engine is std::mt19937_64, whose output sequence is pinned by the
// standard, so identical seeds give identical matrices on every platform.
// Uniform doubles come from the top 53 bits of each draw; normals use the
// Box-Muller transform (std::normal_distribution is implementation-defined
// and is deliberately avoided). Derived streams are obtained with
// stream_seed(), which applies a SplitMix64-style mix so that per-trial
// streams are independent of trial execution order.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Seed for substream `stream` of a base seed; used to give each trial and
  // each purpose within a trial its own independent stream.
  static std::uint64_t stream_seed(std::uint64_t base, std::uint64_t stream) {
    return mix(base ^ (0xD1B54A32D192ED03ULL * (stream + 1)));
  }

  // Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller; draws are consumed in pairs.
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Matrix with independent standard normal entries, filled in row-major order.
Matrix gaussian_matrix(Index rows, Index cols, std::uint64_t seed);

// Sum of r nonnegative sparse rank-one terms: weights 2/j for the first ten
// terms and 1/j afterwards, factor vectors with Bernoulli(density) support and
// uniform [0, 1) values. Entries are >= 0 and the rank is at most r.
Matrix sparse_nonneg_lowrank(Index rows, Index cols, Index rank,
                             double density, std::uint64_t seed);

// Orthogonal matrix drawn from the Haar distribution (QR of a Gaussian matrix
// with the R diagonal sign fix).
Matrix haar_orthogonal(Index n, std::uint64_t seed);

// Random matrix with Haar singular vectors and geometrically spaced singular
// values from 1 down to 1/condition.
Matrix randsvd_matrix(Index rows, Index cols, double condition,
                      std::uint64_t seed);

struct CovarianceSpec {
  enum class Kind { kCompoundSymmetry, kAr1 };
  Kind kind = Kind::kCompoundSymmetry;
  Index size = 0;
  double nu = 1.0;  // marginal scale, must be > 0
  double xi = 0.0;  // correlation parameter, must lie in (-1, 1)
};

// Compound-symmetry covariance: nu^2 on the diagonal scale with constant
// correlation xi off the diagonal, i.e. S_ij = nu^2 * (i == j ? 1 : xi).
Matrix cs_covariance(Index n, double nu, double xi);

// First-order autoregressive covariance: S_ij = nu^2 * xi^|i-j|.
Matrix ar1_covariance(Index n, double nu, double xi);

Matrix covariance_matrix(const CovarianceSpec& spec);

// A + eps * (|A| / |B F G|) * B F G with F standard normal and |.| the
// spectral norm, so the relative spectral perturbation is exactly eps.
Matrix perturb(const Eigen::Ref<const Matrix>& a,
               const Eigen::Ref<const Matrix>& b,
               const Eigen::Ref<const Matrix>& g, double eps,
               std::uint64_t seed);

// Multiplies every strictly-lower entry of a Cholesky factor by an
// independent uniform [0.9, 1.1] draw, sweeping rows in order; the diagonal
// is left untouched.
Matrix inexact_cholesky(const Eigen::Ref<const Matrix>& l, std::uint64_t seed);

}  // namespace rsvdcur
