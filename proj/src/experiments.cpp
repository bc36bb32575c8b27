#include "rsvdcur/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "rsvdcur/cur.hpp"
#include "rsvdcur/decompositions.hpp"
#include "rsvdcur/rsvd.hpp"

namespace rsvdcur {

namespace {

// Fixed purpose tags for the per-trial substreams, so adding a consumer never
// shifts the draws of another.
enum StreamTag : std::uint64_t {
  kTagA = 1,
  kTagNoise = 2,
  kTagInexactB = 3,
  kTagInexactG = 4,
  kTagB = 5,
  kTagG = 6,
  kTagRhsB = 7,
  kTagRhsF = 8,
};

Matrix rows_of(const Matrix& a, const IndexList& idx) {
  Matrix out(static_cast<Index>(idx.size()), a.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    out.row(static_cast<Index>(i)) = a.row(idx[i]);
  }
  return out;
}

Matrix cols_of(const Matrix& a, const IndexList& idx) {
  Matrix out(a.rows(), static_cast<Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    out.col(static_cast<Index>(i)) = a.col(idx[i]);
  }
  return out;
}

void validate_k_grid(const std::vector<Index>& grid, Index bound,
                     const char* name) {
  if (grid.empty()) {
    throw DimensionError(std::string(name) + ": k grid must be non-empty");
  }
  for (Index k : grid) {
    if (k < 1 || k > bound) {
      throw DimensionError(std::string(name) + ": k value out of range");
    }
  }
}

Matrix generate(const MatrixGen& gen, Index rows, Index cols,
                std::uint64_t seed) {
  switch (gen.kind) {
    case MatrixGen::Kind::kRandn:
      return gaussian_matrix(rows, cols, seed);
    case MatrixGen::Kind::kRandsvd:
      return randsvd_matrix(rows, cols, gen.condition, seed);
  }
  throw DimensionError("gauss_markov: unknown generator kind");
}

}  // namespace

std::vector<NoiseRecoveryRow> noise_recovery_experiment(
    const NoiseRecoveryConfig& config) {
  const Index m = config.m;
  const Index n = config.n;
  if (m < 1 || n < 1) {
    throw DimensionError("noise_recovery: dimensions must be positive");
  }
  if (config.rank < 1 || config.rank > std::min(m, n)) {
    throw DimensionError("noise_recovery: rank out of range");
  }
  if (!(config.eps > 0.0)) {
    throw DimensionError("noise_recovery: eps must be > 0");
  }
  if (config.seeds.empty()) {
    throw DimensionError("noise_recovery: seed list must be non-empty");
  }
  validate_k_grid(config.k_grid, std::min(m, n), "noise_recovery");

  CovarianceSpec row_cov = config.row_cov;
  row_cov.size = m;
  CovarianceSpec col_cov = config.col_cov;
  col_cov.size = n;
  const Matrix chol_b = cholesky(covariance_matrix(row_cov));
  const Matrix chol_g = cholesky(covariance_matrix(col_cov));

  std::vector<NoiseRecoveryRow> rows(config.k_grid.size());
  for (std::size_t i = 0; i < config.k_grid.size(); ++i) {
    rows[i].k = config.k_grid[i];
  }

  for (const std::uint64_t seed : config.seeds) {
    const Matrix a = sparse_nonneg_lowrank(
        m, n, config.rank, config.density,
        RandomStream::stream_seed(seed, kTagA));
    const Matrix a_noisy =
        perturb(a, chol_b, chol_g, config.eps,
                RandomStream::stream_seed(seed, kTagNoise));
    const Matrix b_used =
        config.inexact_factors
            ? inexact_cholesky(chol_b,
                               RandomStream::stream_seed(seed, kTagInexactB))
            : chol_b;
    const Matrix g_used =
        config.inexact_factors
            ? inexact_cholesky(chol_g,
                               RandomStream::stream_seed(seed, kTagInexactG))
            : chol_g;

    const double norm_a = spectral_norm(a);
    const SvdFactors plain = svd(a_noisy, SvdMode::kThin);
    const RsvdFactors factors = rsvd(a_noisy, b_used, g_used);

    for (std::size_t i = 0; i < config.k_grid.size(); ++i) {
      const Index k = config.k_grid[i];

      const Matrix svd_approx = plain.u.leftCols(k) *
                                plain.s.head(k).asDiagonal() *
                                plain.v.leftCols(k).transpose();
      rows[i].svd_err += spectral_norm(a - svd_approx) / norm_a;

      const IndexList cur_p =
          select_indices(plain.v.leftCols(k), config.selector);
      const IndexList cur_s =
          select_indices(plain.u.leftCols(k), config.selector);
      const Matrix cur_c = cols_of(a_noisy, cur_p);
      const Matrix cur_r = rows_of(a_noisy, cur_s);
      const Matrix cur_m = middle_matrix(a_noisy, cur_c, cur_r);
      rows[i].cur_err += spectral_norm(a - cur_c * cur_m * cur_r) / norm_a;

      const TruncatedRsvd trunc = truncate(factors, k);
      const Matrix rsvd_approx =
          trunc.z * trunc.alpha.asDiagonal() * trunc.w.transpose();
      rows[i].rsvd_err += spectral_norm(a - rsvd_approx) / norm_a;

      const IndexList rc_p = select_indices(trunc.w, config.selector);
      const IndexList rc_s = select_indices(trunc.z, config.selector);
      const Matrix rc_c = cols_of(a_noisy, rc_p);
      const Matrix rc_r = rows_of(a_noisy, rc_s);
      const Matrix rc_m = middle_matrix(a_noisy, rc_c, rc_r);
      rows[i].rsvdcur_err += spectral_norm(a - rc_c * rc_m * rc_r) / norm_a;
    }
  }

  const double inv = 1.0 / static_cast<double>(config.seeds.size());
  for (NoiseRecoveryRow& row : rows) {
    row.svd_err *= inv;
    row.cur_err *= inv;
    row.rsvd_err *= inv;
    row.rsvdcur_err *= inv;
  }
  return rows;
}

std::vector<GaussMarkovRow> gauss_markov_experiment(
    const GaussMarkovConfig& config) {
  const Index m = config.m;
  const Index n = config.n;
  const Index l = config.l;
  const Index d = config.d;
  if (m < 1 || n < 1 || l < 1 || d < 1) {
    throw DimensionError("gauss_markov: dimensions must be positive");
  }
  if (config.trials < 1) {
    throw DimensionError("gauss_markov: need at least one trial");
  }
  validate_k_grid(config.k_grid, std::min({n, l, m}), "gauss_markov");
  const Index k_max =
      *std::max_element(config.k_grid.begin(), config.k_grid.end());

  std::vector<GaussMarkovRow> rows(config.k_grid.size() + 1);
  for (std::size_t i = 0; i < config.k_grid.size(); ++i) {
    rows[i].k = config.k_grid[i];
  }
  rows.back().k = 0;  // full system

  detail::RsvdBuild build;
  build.want_z = false;
  build.want_v = false;
  build.u_cols = k_max;

  for (Index trial = 0; trial < config.trials; ++trial) {
    const std::uint64_t ts = RandomStream::stream_seed(
        config.base_seed, static_cast<std::uint64_t>(trial));
    const Matrix a =
        generate(config.gen_a, m, n, RandomStream::stream_seed(ts, kTagA));
    const Matrix b_mat =
        generate(config.gen_b, m, l, RandomStream::stream_seed(ts, kTagB));
    const Matrix g_mat =
        generate(config.gen_g, d, n, RandomStream::stream_seed(ts, kTagG));
    const Matrix rhs_top =
        gaussian_matrix(m, 1, RandomStream::stream_seed(ts, kTagRhsB));
    const Matrix rhs_bottom =
        gaussian_matrix(d, 1, RandomStream::stream_seed(ts, kTagRhsF));

    Matrix rhs(m + d, 1);
    rhs.topRows(m) = rhs_top;
    rhs.bottomRows(d) = rhs_bottom;

    Matrix stacked = Matrix::Zero(m + d, n + l);
    stacked.topLeftCorner(m, n) = a;
    stacked.topRightCorner(m, l) = b_mat;
    stacked.bottomLeftCorner(d, n) = g_mat;
    const Matrix full_sol = least_squares(stacked, rhs);
    rows.back().avg_residual += (stacked * full_sol - rhs).norm();

    const RegularizedRsvd reg =
        detail::rsvd_regularized_impl(a, b_mat, g_mat, config.mu, build);
    const IndexList p_all = deim(reg.factors.w.leftCols(k_max));
    const IndexList pb_all =
        deim(reg.factors.u.leftCols(k_max), reg.true_b_cols);

    for (std::size_t i = 0; i < config.k_grid.size(); ++i) {
      const Index k = config.k_grid[i];
      const IndexList p(p_all.begin(), p_all.begin() + k);
      const IndexList p_b(pb_all.begin(), pb_all.begin() + k);
      Matrix reduced = Matrix::Zero(m + d, 2 * k);
      reduced.block(0, 0, m, k) = cols_of(a, p);
      reduced.block(0, k, m, k) = cols_of(b_mat, p_b);
      reduced.block(m, 0, d, k) = cols_of(g_mat, p);
      const Matrix sol = least_squares(reduced, rhs);
      rows[i].avg_residual += (reduced * sol - rhs).norm();
    }
  }

  const double inv = 1.0 / static_cast<double>(config.trials);
  for (GaussMarkovRow& row : rows) {
    row.avg_residual *= inv;
  }
  return rows;
}

Matrix standardize_columns(const Eigen::Ref<const Matrix>& a) {
  require_nonempty(a, "standardize_columns");
  require_finite(a, "standardize_columns");
  if (a.rows() < 2) {
    throw DimensionError("standardize_columns: need at least two rows");
  }
  Matrix out(a.rows(), a.cols());
  const double denom = static_cast<double>(a.rows() - 1);
  for (Index j = 0; j < a.cols(); ++j) {
    const double mean = a.col(j).mean();
    Vector centered = a.col(j).array() - mean;
    const double sd = std::sqrt(centered.squaredNorm() / denom);
    out.col(j) = (sd > 0.0) ? Vector(centered / sd) : Vector::Zero(a.rows());
  }
  return out;
}

MultiviewSelection multiview_select(const Eigen::Ref<const Matrix>& view1,
                                    const Eigen::Ref<const Matrix>& view2,
                                    Index k, Selector selector) {
  require_nonempty(view1, "multiview_select: view1");
  require_nonempty(view2, "multiview_select: view2");
  if (view1.rows() != view2.rows()) {
    throw DimensionError("multiview_select: views must share their sample "
                         "rows");
  }
  if (k < 1 || k > std::min(view1.cols(), view2.cols())) {
    throw DimensionError("multiview_select: k out of range");
  }
  const Matrix z1 = standardize_columns(view1);
  const Matrix z2 = standardize_columns(view2);
  const bool swapped = z1.cols() < z2.cols();
  const Matrix& big = swapped ? z2 : z1;
  const Matrix& small = swapped ? z1 : z2;

  const Matrix cross = big.transpose() * small;
  const RsvdFactors factors = rsvd(cross, big.transpose(), small);
  const TruncatedRsvd trunc = truncate(factors, k);
  const IndexList big_features = select_indices(trunc.z, selector);
  const IndexList small_features = select_indices(trunc.w, selector);

  MultiviewSelection out;
  out.view1 = swapped ? small_features : big_features;
  out.view2 = swapped ? big_features : small_features;
  return out;
}

std::vector<int> knn_classify(const Eigen::Ref<const Matrix>& train,
                              const std::vector<int>& labels,
                              const Eigen::Ref<const Matrix>& test,
                              Index neighbors) {
  require_nonempty(train, "knn_classify: train");
  require_nonempty(test, "knn_classify: test");
  if (static_cast<Index>(labels.size()) != train.rows()) {
    throw DimensionError("knn_classify: one label per training row required");
  }
  if (train.cols() != test.cols()) {
    throw DimensionError("knn_classify: feature counts must match");
  }
  if (neighbors < 1 || neighbors > train.rows()) {
    throw DimensionError("knn_classify: neighbor count out of range");
  }

  std::vector<int> out(static_cast<std::size_t>(test.rows()));
  std::vector<std::pair<double, Index>> dist(
      static_cast<std::size_t>(train.rows()));
  for (Index t = 0; t < test.rows(); ++t) {
    for (Index i = 0; i < train.rows(); ++i) {
      dist[static_cast<std::size_t>(i)] = {
          (train.row(i) - test.row(t)).squaredNorm(), i};
    }
    std::partial_sort(dist.begin(), dist.begin() + neighbors, dist.end());
    std::map<int, Index> votes;
    for (Index i = 0; i < neighbors; ++i) {
      ++votes[labels[static_cast<std::size_t>(dist[static_cast<std::size_t>(i)]
                                                  .second)]];
    }
    int best_label = votes.begin()->first;
    Index best_count = votes.begin()->second;
    for (const auto& [label, count] : votes) {
      if (count > best_count) {  // map order makes ties keep the smaller label
        best_label = label;
        best_count = count;
      }
    }
    out[static_cast<std::size_t>(t)] = best_label;
  }
  return out;
}

}  // namespace rsvdcur
