#pragma once

#include <string>
#include <vector>

#include "rsvdcur/cur.hpp"
#include "rsvdcur/experiments.hpp"
#include "rsvdcur/types.hpp"

namespace rsvdcur {

// Matrix Market exchange format, dense "array" and sparse "coordinate"
// variants, field "real", symmetry "general" only. Indices are 1-based in
// the file. Writing uses the array variant with 17 significant digits, so a
// write/read round trip reproduces every double bit for bit.
Matrix read_matrix_market(const std::string& path);
void write_matrix_market(const std::string& path,
                         const Eigen::Ref<const Matrix>& a);

// Rectangular comma-separated numeric table; optionally skips one header row.
Matrix read_csv_matrix(const std::string& path, bool skip_header = false);

// Recovery-error curves, CSV with header k,svd_err,cur_err,rsvd_err,rsvdcur_err.
void write_results(const std::string& path,
                   const std::vector<NoiseRecoveryRow>& rows);
std::vector<NoiseRecoveryRow> read_noise_recovery_csv(const std::string& path);

// Subset-selection residuals, CSV with header k,avg_residual (k = 0 is the
// full system).
void write_results(const std::string& path,
                   const std::vector<GaussMarkovRow>& rows);
std::vector<GaussMarkovRow> read_gauss_markov_csv(const std::string& path);

// JSON payload for the decomposition commands. Index lists are 0-based;
// middle matrices are stored row-major with their shapes. Lists and matrices
// that do not apply to a decomposition stay empty and are omitted.
struct DecompositionReport {
  Index k = 0;
  std::string selector = "deim";
  IndexList col_indices, row_indices, p_b, s_g;
  Matrix m, m_a, m_b, m_g;  // `m` for plain CUR, the others for triplets
  std::vector<std::pair<std::string, double>> errors;
  bool has_bounds = false;
  ErrorBoundReport bounds;
};

void write_results(const std::string& path, const DecompositionReport& report);
DecompositionReport read_decomposition_json(const std::string& path);

// {"view1": [...], "view2": [...]} with 0-based feature indices.
void write_results(const std::string& path, const MultiviewSelection& sel);
MultiviewSelection read_multiview_json(const std::string& path);

}  // namespace rsvdcur
