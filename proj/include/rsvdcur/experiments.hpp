#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rsvdcur/random.hpp"
#include "rsvdcur/selection.hpp"
#include "rsvdcur/types.hpp"

namespace rsvdcur {

// Recovery of a sparse nonnegative low-rank matrix from an observation with
// correlated additive noise. For each seed one triplet (A_E, B, G) is built
// from the configured covariances and every method's relative recovery error
// |A - A_approx| / |A| (spectral norms, against the clean A) is recorded on
// the k grid; rows hold the averages over seeds.
struct NoiseRecoveryConfig {
  Index m = 1000;
  Index n = 100;
  Index rank = 30;
  double eps = 0.1;  // relative spectral size of the noise
  std::vector<Index> k_grid = {15};
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  CovarianceSpec row_cov = {CovarianceSpec::Kind::kCompoundSymmetry, 0, 2.0,
                            0.25};  // noise covariance across rows (B side)
  CovarianceSpec col_cov = {CovarianceSpec::Kind::kAr1, 0, 1.0,
                            0.99};  // noise covariance across columns (G side)
  double density = 0.025;
  Selector selector = Selector::kDeim;
  bool inexact_factors = false;  // perturb the Cholesky factors handed to the
                                 // triplet decomposition
  std::string output_path;       // used by the command-line driver
};

struct NoiseRecoveryRow {
  Index k = 0;
  double svd_err = 0.0;
  double cur_err = 0.0;
  double rsvd_err = 0.0;
  double rsvdcur_err = 0.0;
};

std::vector<NoiseRecoveryRow> noise_recovery_experiment(
    const NoiseRecoveryConfig& config);

// Column subset selection for the general Gauss-Markov model
//   b = A x + B y,  f = G x,
// comparing the residual of the full stacked least-squares problem against
// reduced problems keeping k columns of A (and of G) and k columns of B
// chosen through the regularized triplet decomposition. Rows report average
// residual norms over trials; k = 0 denotes the full system.
struct MatrixGen {
  enum class Kind { kRandn, kRandsvd };
  Kind kind = Kind::kRandn;
  double condition = 1.0;  // condition number for kRandsvd
};

struct GaussMarkovConfig {
  Index m = 1000;
  Index n = 100;
  Index l = 50;
  Index d = 10;
  MatrixGen gen_a, gen_b, gen_g;
  Index trials = 100;
  std::vector<Index> k_grid = {10, 20, 30};
  std::uint64_t base_seed = 1;
  double mu = 1e-8;
  std::string output_path;
};

struct GaussMarkovRow {
  Index k = 0;  // 0 = full system
  double avg_residual = 0.0;
};

std::vector<GaussMarkovRow> gauss_markov_experiment(
    const GaussMarkovConfig& config);

// Joint feature selection across two views of the same samples (rows).
// Columns of both views are standardized, the triplet
// (view1^T * view2, view1^T, view2) is decomposed, and the row/column index
// sets give the selected features of each view. Views are swapped internally
// when view1 has fewer features, so the output mapping is stable.
struct MultiviewSelection {
  IndexList view1;
  IndexList view2;
};

MultiviewSelection multiview_select(const Eigen::Ref<const Matrix>& view1,
                                    const Eigen::Ref<const Matrix>& view2,
                                    Index k,
                                    Selector selector = Selector::kDeim);

// Columns shifted to zero mean and scaled to unit sample standard deviation;
// constant columns become zero.
Matrix standardize_columns(const Eigen::Ref<const Matrix>& a);

// Majority-vote nearest-neighbour labels for each test row (Euclidean
// distance; distance ties keep the lower training index, vote ties the
// smaller label).
std::vector<int> knn_classify(const Eigen::Ref<const Matrix>& train,
                              const std::vector<int>& labels,
                              const Eigen::Ref<const Matrix>& test,
                              Index neighbors);

}  // namespace rsvdcur
