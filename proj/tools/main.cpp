// Command-line front end: decompositions of matrices and matrix triplets,
// plus the two synthetic experiment drivers. Exit codes: 0 success,
// 2 argument error, 3 input parse error, 4 numerical failure.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rsvdcur/cur.hpp"
#include "rsvdcur/decompositions.hpp"
#include "rsvdcur/experiments.hpp"
#include "rsvdcur/io.hpp"
#include "rsvdcur/rsvd.hpp"
#include "rsvdcur/selection.hpp"

namespace {

using namespace rsvdcur;

Selector to_selector(const std::string& name) {
  return name == "qdeim" ? Selector::kQdeim : Selector::kDeim;
}

Matrix take_cols(const Matrix& a, const IndexList& idx) {
  Matrix out(a.rows(), static_cast<Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) {
    out.col(static_cast<Index>(j)) = a.col(idx[j]);
  }
  return out;
}

Matrix take_rows(const Matrix& a, const IndexList& idx) {
  Matrix out(static_cast<Index>(idx.size()), a.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    out.row(static_cast<Index>(i)) = a.row(idx[i]);
  }
  return out;
}

double rel_error(const Matrix& full, const Matrix& approx) {
  return spectral_norm(full - approx) / spectral_norm(full);
}

MatrixGen parse_generator(const std::string& flag, const std::string& text) {
  MatrixGen gen;
  if (text == "randn") return gen;
  const std::string prefix = "randsvd:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string tail = text.substr(prefix.size());
    char* end = nullptr;
    const double cond = std::strtod(tail.c_str(), &end);
    if (end == tail.c_str() || *end != '\0' || !(cond >= 1.0)) {
      throw CLI::ValidationError(flag +
                                 ": randsvd condition number must be >= 1");
    }
    gen.kind = MatrixGen::Kind::kRandsvd;
    gen.condition = cond;
    return gen;
  }
  throw CLI::ValidationError(flag + ": expected randn or randsvd:K");
}

struct CurArgs {
  std::string a_path, out_path;
  std::string selector = "deim";
  Index k = 1;
};

void run_cur(const CurArgs& args) {
  const Matrix a = read_matrix_market(args.a_path);
  const CurResult res = cur(a, args.k, to_selector(args.selector));
  DecompositionReport rep;
  rep.k = res.k;
  rep.selector = args.selector;
  rep.col_indices = res.col_indices;
  rep.row_indices = res.row_indices;
  rep.m = res.middle;
  const Matrix approx =
      take_cols(a, res.col_indices) * res.middle * take_rows(a, res.row_indices);
  rep.errors.emplace_back("rel_err_a", rel_error(a, approx));
  write_results(args.out_path, rep);
}

struct GcurArgs {
  std::string a_path, g_path, out_path;
  std::string selector = "deim";
  Index k = 1;
};

void run_gcur(const GcurArgs& args) {
  const Matrix a = read_matrix_market(args.a_path);
  const Matrix g = read_matrix_market(args.g_path);
  const GcurResult res = gcur(a, g, args.k, to_selector(args.selector));
  DecompositionReport rep;
  rep.k = res.k;
  rep.selector = args.selector;
  rep.col_indices = res.col_indices;
  rep.row_indices = res.row_indices;
  rep.s_g = res.s_g;
  rep.m_a = res.m_a;
  rep.m_g = res.m_g;
  const Matrix approx_a =
      take_cols(a, res.col_indices) * res.m_a * take_rows(a, res.row_indices);
  const Matrix approx_g =
      take_cols(g, res.col_indices) * res.m_g * take_rows(g, res.s_g);
  rep.errors.emplace_back("rel_err_a", rel_error(a, approx_a));
  rep.errors.emplace_back("rel_err_g", rel_error(g, approx_g));
  write_results(args.out_path, rep);
}

struct RsvdCurArgs {
  std::string a_path, b_path, g_path, out_path;
  std::string selector = "deim";
  Index k = 1;
  bool bounds = false;
};

void run_rsvd_cur(const RsvdCurArgs& args) {
  const Matrix a = read_matrix_market(args.a_path);
  const Matrix b = read_matrix_market(args.b_path);
  const Matrix g = read_matrix_market(args.g_path);
  const RsvdCurResult res = rsvd_cur(a, b, g, args.k, to_selector(args.selector));
  DecompositionReport rep;
  rep.k = res.k;
  rep.selector = args.selector;
  rep.col_indices = res.col_indices;
  rep.row_indices = res.row_indices;
  rep.p_b = res.p_b;
  rep.s_g = res.s_g;
  rep.m_a = res.m_a;
  rep.m_b = res.m_b;
  rep.m_g = res.m_g;
  const Matrix approx_a =
      take_cols(a, res.col_indices) * res.m_a * take_rows(a, res.row_indices);
  const Matrix approx_b =
      take_cols(b, res.p_b) * res.m_b * take_rows(b, res.row_indices);
  const Matrix approx_g =
      take_cols(g, res.col_indices) * res.m_g * take_rows(g, res.s_g);
  rep.errors.emplace_back("rel_err_a", rel_error(a, approx_a));
  rep.errors.emplace_back("rel_err_b", rel_error(b, approx_b));
  rep.errors.emplace_back("rel_err_g", rel_error(g, approx_g));
  if (args.bounds) {
    const RsvdFactors factors = rsvd(a, b, g);
    rep.bounds = error_bound_report(a, b, g, res, factors);
    rep.has_bounds = true;
  }
  write_results(args.out_path, rep);
}

struct RsvdArgs {
  std::string a_path, b_path, g_path, prefix;
  Index k = 1;
};

void run_rsvd(const RsvdArgs& args) {
  const Matrix a = read_matrix_market(args.a_path);
  const Matrix b = read_matrix_market(args.b_path);
  const Matrix g = read_matrix_market(args.g_path);
  const RsvdFactors factors = rsvd(a, b, g);
  const TruncatedRsvd t = truncate(factors, args.k);
  write_matrix_market(args.prefix + "_z.mtx", t.z);
  write_matrix_market(args.prefix + "_w.mtx", t.w);
  write_matrix_market(args.prefix + "_u.mtx", t.u);
  write_matrix_market(args.prefix + "_v.mtx", t.v);
  write_matrix_market(args.prefix + "_alpha.mtx", t.alpha);
  write_matrix_market(args.prefix + "_beta.mtx", t.beta);
  write_matrix_market(args.prefix + "_gamma.mtx", t.gamma);
}

struct NoiseArgs {
  Index m = 1000, n = 100, rank = 30;
  double eps = 0.1;
  Index seeds = 5;
  Index kmax = 15;
  double cs_xi = 0.25, cs_nu = 2.0, ar1_xi = 0.99;
  bool inexact = false;
  std::string out_path;
};

void run_noise_recovery(const NoiseArgs& args) {
  NoiseRecoveryConfig cfg;
  cfg.m = args.m;
  cfg.n = args.n;
  cfg.rank = args.rank;
  cfg.eps = args.eps;
  cfg.k_grid.clear();
  for (Index k = 1; k <= args.kmax; ++k) cfg.k_grid.push_back(k);
  cfg.seeds.clear();
  for (Index s = 1; s <= args.seeds; ++s) {
    cfg.seeds.push_back(static_cast<std::uint64_t>(s));
  }
  cfg.row_cov = {CovarianceSpec::Kind::kCompoundSymmetry, args.m, args.cs_nu,
                 args.cs_xi};
  cfg.col_cov = {CovarianceSpec::Kind::kAr1, args.n, 1.0, args.ar1_xi};
  cfg.inexact_factors = args.inexact;
  cfg.output_path = args.out_path;
  write_results(args.out_path, noise_recovery_experiment(cfg));
}

struct GaussMarkovArgs {
  Index m = 1000, n = 100, l = 50, d = 10, trials = 100;
  std::vector<Index> ks = {10, 20, 30};
  std::string gen_a = "randn", gen_b = "randn", gen_g = "randn";
  std::string out_path;
};

void run_gauss_markov(const GaussMarkovArgs& args) {
  GaussMarkovConfig cfg;
  cfg.m = args.m;
  cfg.n = args.n;
  cfg.l = args.l;
  cfg.d = args.d;
  cfg.trials = args.trials;
  cfg.k_grid = args.ks;
  cfg.gen_a = parse_generator("--gen-a", args.gen_a);
  cfg.gen_b = parse_generator("--gen-b", args.gen_b);
  cfg.gen_g = parse_generator("--gen-g", args.gen_g);
  cfg.output_path = args.out_path;
  write_results(args.out_path, gauss_markov_experiment(cfg));
}

struct MultiviewArgs {
  std::string view1_path, view2_path, out_path;
  Index k = 1;
  bool header = false;
};

void run_multiview(const MultiviewArgs& args) {
  const Matrix view1 = read_csv_matrix(args.view1_path, args.header);
  const Matrix view2 = read_csv_matrix(args.view2_path, args.header);
  write_results(args.out_path, multiview_select(view1, view2, args.k));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "CUR-type decompositions of matrices and matrix triplets, with "
      "synthetic experiment drivers"};
  app.require_subcommand(1);
  const std::vector<std::string> selector_names = {"deim", "qdeim"};

  CurArgs cur_args;
  auto* cur_cmd = app.add_subcommand("cur", "CUR decomposition of one matrix");
  cur_cmd->add_option("--a", cur_args.a_path, "input matrix (Matrix Market)")
      ->required();
  cur_cmd->add_option("-k,--k", cur_args.k, "target rank")->required();
  cur_cmd->add_option("--selector", cur_args.selector, "index selector")
      ->check(CLI::IsMember(selector_names));
  cur_cmd->add_option("--out", cur_args.out_path, "output JSON path")
      ->required();

  GcurArgs gcur_args;
  auto* gcur_cmd =
      app.add_subcommand("gcur", "generalized CUR of a matrix pair (A, G)");
  gcur_cmd->add_option("--a", gcur_args.a_path, "matrix A (Matrix Market)")
      ->required();
  gcur_cmd->add_option("--g", gcur_args.g_path, "matrix G (Matrix Market)")
      ->required();
  gcur_cmd->add_option("-k,--k", gcur_args.k, "target rank")->required();
  gcur_cmd->add_option("--selector", gcur_args.selector, "index selector")
      ->check(CLI::IsMember(selector_names));
  gcur_cmd->add_option("--out", gcur_args.out_path, "output JSON path")
      ->required();

  RsvdCurArgs rc_args;
  auto* rc_cmd = app.add_subcommand(
      "rsvd-cur", "coupled CUR of a matrix triplet (A, B, G)");
  rc_cmd->add_option("--a", rc_args.a_path, "matrix A (Matrix Market)")
      ->required();
  rc_cmd->add_option("--b", rc_args.b_path, "matrix B (Matrix Market)")
      ->required();
  rc_cmd->add_option("--g", rc_args.g_path, "matrix G (Matrix Market)")
      ->required();
  rc_cmd->add_option("-k,--k", rc_args.k, "target rank")->required();
  rc_cmd->add_option("--selector", rc_args.selector, "index selector")
      ->check(CLI::IsMember(selector_names));
  rc_cmd->add_flag("--bounds", rc_args.bounds,
                   "append a-priori error bounds to the report");
  rc_cmd->add_option("--out", rc_args.out_path, "output JSON path")
      ->required();

  RsvdArgs rsvd_args;
  auto* rsvd_cmd = app.add_subcommand(
      "rsvd", "restricted SVD of a matrix triplet, factors written as .mtx");
  rsvd_cmd->add_option("--a", rsvd_args.a_path, "matrix A (Matrix Market)")
      ->required();
  rsvd_cmd->add_option("--b", rsvd_args.b_path, "matrix B (Matrix Market)")
      ->required();
  rsvd_cmd->add_option("--g", rsvd_args.g_path, "matrix G (Matrix Market)")
      ->required();
  rsvd_cmd->add_option("-k,--k", rsvd_args.k, "factor columns to keep")
      ->required();
  rsvd_cmd
      ->add_option("--out", rsvd_args.prefix,
                   "output prefix; writes <prefix>_{z,w,u,v,alpha,beta,gamma}.mtx")
      ->required();

  auto* exp_cmd = app.add_subcommand("experiment", "synthetic studies");
  exp_cmd->require_subcommand(1);

  NoiseArgs noise_args;
  auto* noise_cmd = exp_cmd->add_subcommand(
      "noise-recovery",
      "recover a sparse low-rank matrix from correlated noise; emits error "
      "curves per target rank");
  noise_cmd->add_option("--m", noise_args.m, "rows of A");
  noise_cmd->add_option("--n", noise_args.n, "columns of A");
  noise_cmd->add_option("--rank", noise_args.rank, "rank of the clean matrix");
  noise_cmd->add_option("--eps", noise_args.eps, "relative noise level");
  noise_cmd->add_option("--seeds", noise_args.seeds,
                        "number of trials (seeds 1..N)");
  noise_cmd->add_option("--kmax", noise_args.kmax,
                        "largest target rank; curves cover k = 1..kmax");
  noise_cmd->add_option("--cs-xi", noise_args.cs_xi,
                        "row-covariance correlation");
  noise_cmd->add_option("--cs-nu", noise_args.cs_nu, "row-covariance scale");
  noise_cmd->add_option("--ar1-xi", noise_args.ar1_xi,
                        "column-covariance correlation");
  noise_cmd->add_flag("--inexact", noise_args.inexact,
                      "perturb the covariance factors used for recovery");
  noise_cmd->add_option("--out", noise_args.out_path, "output CSV path")
      ->required();

  GaussMarkovArgs gm_args;
  auto* gm_cmd = exp_cmd->add_subcommand(
      "gauss-markov",
      "column subset selection for the general Gauss-Markov model; emits "
      "average residuals per kept-column count");
  gm_cmd->add_option("--m", gm_args.m, "rows of A and B");
  gm_cmd->add_option("--n", gm_args.n, "columns of A and G");
  gm_cmd->add_option("--l", gm_args.l, "columns of B");
  gm_cmd->add_option("--d", gm_args.d, "rows of G");
  gm_cmd->add_option("--trials", gm_args.trials, "number of trials");
  gm_cmd->add_option("--ks", gm_args.ks, "kept-column counts, comma separated")
      ->delimiter(',');
  gm_cmd->add_option("--gen-a", gm_args.gen_a, "generator: randn or randsvd:K");
  gm_cmd->add_option("--gen-b", gm_args.gen_b, "generator: randn or randsvd:K");
  gm_cmd->add_option("--gen-g", gm_args.gen_g, "generator: randn or randsvd:K");
  gm_cmd->add_option("--out", gm_args.out_path, "output CSV path")->required();

  MultiviewArgs mv_args;
  auto* mv_cmd = app.add_subcommand(
      "select-multiview",
      "joint feature selection across two views of the same samples");
  mv_cmd->add_option("--view1", mv_args.view1_path,
                     "first view, CSV with one sample per row")
      ->required();
  mv_cmd->add_option("--view2", mv_args.view2_path,
                     "second view, CSV with one sample per row")
      ->required();
  mv_cmd->add_option("-k,--k", mv_args.k, "features to select per view")
      ->required();
  mv_cmd->add_flag("--header", mv_args.header,
                   "skip one header row in each CSV");
  mv_cmd->add_option("--out", mv_args.out_path, "output JSON path")
      ->required();

  cur_cmd->callback([&] { run_cur(cur_args); });
  gcur_cmd->callback([&] { run_gcur(gcur_args); });
  rc_cmd->callback([&] { run_rsvd_cur(rc_args); });
  rsvd_cmd->callback([&] { run_rsvd(rsvd_args); });
  noise_cmd->callback([&] { run_noise_recovery(noise_args); });
  gm_cmd->callback([&] { run_gauss_markov(gm_args); });
  mv_cmd->callback([&] { run_multiview(mv_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what();
    if (e.line() > 0) std::cerr << " (line " << e.line() << ")";
    std::cerr << '\n';
    return 3;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 3;
  } catch (const DimensionError& e) {
    std::cerr << "argument error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
