// End-to-end acceptance checks. Each case prints one summary line
// ("criterion N: PASS" or "criterion N: FAIL") so a log scan shows the state
// of the whole contract at a glance; the doctest assertions behind them fail
// the binary in the usual way.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "rsvdcur/cur.hpp"
#include "rsvdcur/decompositions.hpp"
#include "rsvdcur/experiments.hpp"
#include "rsvdcur/gsvd.hpp"
#include "rsvdcur/io.hpp"
#include "rsvdcur/random.hpp"
#include "rsvdcur/rsvd.hpp"
#include "rsvdcur/selection.hpp"

using namespace rsvdcur;

namespace {

struct Criterion {
  int number;
  bool ok = true;
  explicit Criterion(int n) : number(n) {}
  ~Criterion() {
    std::printf("criterion %d: %s\n", number, ok ? "PASS" : "FAIL");
    std::fflush(stdout);
  }
};

#define ACCEPT(crit, ...)                                    \
  do {                                                       \
    const bool accept_ok_ = static_cast<bool>(__VA_ARGS__); \
    if (!accept_ok_) (crit).ok = false;                      \
    CHECK(accept_ok_);                                       \
  } while (0)

// Runs `body` and downgrades any stray exception to a recorded failure, so
// the summary line still prints FAIL instead of the case aborting silently.
void guarded(Criterion& crit, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    crit.ok = false;
    FAIL_CHECK("unexpected exception: " << e.what());
  }
}

double orth_defect(const Matrix& q) {
  return (q.transpose() * q - Matrix::Identity(q.cols(), q.cols())).norm();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

Index naive_argmax(const Vector& v) {
  Index best = 0;
  for (Index i = 1; i < v.size(); ++i) {
    if (std::abs(v(i)) > std::abs(v(best))) best = i;
  }
  return best;
}

// Textbook greedy interpolation selection, independent of the library path.
IndexList naive_deim(const Matrix& u) {
  IndexList s;
  s.push_back(naive_argmax(u.col(0)));
  for (Index j = 1; j < u.cols(); ++j) {
    Matrix sampled(j, j);
    Vector rhs(j);
    for (Index i = 0; i < j; ++i) {
      sampled.row(i) = u.row(s[static_cast<std::size_t>(i)]).head(j);
      rhs(i) = u(s[static_cast<std::size_t>(i)], j);
    }
    const Vector c = Eigen::FullPivLU<Matrix>(sampled).solve(rhs);
    const Vector residual = u.col(j) - u.leftCols(j) * c;
    s.push_back(naive_argmax(residual));
  }
  return s;
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name)
      : path("/tmp/rsvdcur_accept_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("criterion 1: triplet decomposition is exact on full-rank inputs") {
  Criterion crit(1);
  guarded(crit, [&] {
    const Index dims[2][4] = {{60, 40, 80, 80}, {60, 40, 60, 40}};
    std::uint64_t seed = 100;
    for (const auto& dim : dims) {
      const Index m = dim[0], n = dim[1], l = dim[2], d = dim[3];
      for (int rep = 0; rep < 3; ++rep) {
        const Matrix a = gaussian_matrix(m, n, seed++);
        const Matrix b = gaussian_matrix(m, l, seed++);
        const Matrix g = gaussian_matrix(d, n, seed++);

        const auto t0 = std::chrono::steady_clock::now();
        const RsvdFactors f = rsvd(a, b, g);
        ACCEPT(crit, seconds_since(t0) < 1.0);

        ACCEPT(crit, (a - f.z * f.d_a() * f.w.transpose()).norm() <=
                         1e-8 * a.norm());
        ACCEPT(crit, (b - f.z * f.d_b() * f.u.transpose()).norm() <=
                         1e-8 * b.norm());
        ACCEPT(crit, (g - f.v * f.d_g() * f.w.transpose()).norm() <=
                         1e-8 * g.norm());

        for (Index i = 0; i < f.alpha.size(); ++i) {
          const double unit = f.alpha(i) * f.alpha(i) + f.beta(i) * f.beta(i) +
                              f.gamma(i) * f.gamma(i);
          ACCEPT(crit, std::abs(unit - 1.0) <= 1e-12);
        }
        ACCEPT(crit, orth_defect(f.u) <= 1e-10);
        ACCEPT(crit, orth_defect(f.v) <= 1e-10);
      }
    }
  });
}

TEST_CASE("criterion 2: pair decomposition contract across shape classes") {
  Criterion crit(2);
  guarded(crit, [&] {
    struct Shape {
      Index p, q, r;
    };
    const Shape shapes[] = {{60, 60, 40}, {60, 10, 40}, {80, 40, 60}};
    std::uint64_t seed = 500;
    for (const Shape s : shapes) {
      for (int rep = 0; rep < 20; ++rep) {
        const Matrix a = gaussian_matrix(s.p, s.r, seed++);
        const Matrix g = gaussian_matrix(s.q, s.r, seed++);
        const GsvdFactors f = gsvd_stacked(a, g);

        // Reconstruct through X^{-1} with a solve, never an inverse.
        const Matrix a_rec =
            least_squares_right(f.x, f.u * f.gamma.asDiagonal());
        ACCEPT(crit, (a - a_rec).norm() <= 1e-8 * a.norm());

        const Index active = std::min(s.q, s.r);
        Matrix sigma_block = Matrix::Zero(active, s.r);
        for (Index i = 0; i < active; ++i) sigma_block(i, i) = f.sigma(i);
        const Matrix g_rec = least_squares_right(f.x, f.v * sigma_block);
        ACCEPT(crit, (g - g_rec).norm() <= 1e-8 * g.norm());

        for (Index i = 0; i < f.gamma.size(); ++i) {
          const double unit =
              f.gamma(i) * f.gamma(i) + f.sigma(i) * f.sigma(i);
          ACCEPT(crit, std::abs(unit - 1.0) <= 1e-12);
        }
        ACCEPT(crit, orth_defect(f.u) <= 1e-10);
        ACCEPT(crit, orth_defect(f.v) <= 1e-10);
      }

      // Quotient property needs a square G; reuse each class's (p, r) shape.
      for (int rep = 0; rep < 20; ++rep) {
        const Matrix a = gaussian_matrix(s.p, s.r, seed++);
        const Matrix g = gaussian_matrix(s.r, s.r, seed++);
        const GsvdFactors f = gsvd_stacked(a, g);
        const Vector reference = svd(least_squares_right(g, a)).s;

        std::vector<double> quotient;
        for (Index i = 0; i < f.sigma.size(); ++i) {
          ACCEPT(crit, f.sigma(i) > 0.0);
          quotient.push_back(f.gamma(i) / f.sigma(i));
        }
        std::sort(quotient.begin(), quotient.end(), std::greater<>());
        for (Index i = 0; i < reference.size(); ++i) {
          ACCEPT(crit, quotient[static_cast<std::size_t>(i)] ==
                           doctest::Approx(reference(i)).epsilon(1e-8));
        }
      }
    }
  });
}

TEST_CASE("criterion 3: coupled selection collapses to plain selection") {
  Criterion crit(3);
  guarded(crit, [&] {
    // Identity weights: the triplet result must equal plain CUR exactly.
    for (std::uint64_t t = 0; t < 20; ++t) {
      const Matrix qu = haar_orthogonal(50, 900 + 2 * t).leftCols(30);
      const Matrix qv = haar_orthogonal(30, 901 + 2 * t);
      const Vector values = Vector::LinSpaced(30, 30.0, 1.0);
      const Matrix a = qu * values.asDiagonal() * qv.transpose();

      const CurResult plain = cur(a, 5);
      const RsvdCurResult coupled =
          rsvd_cur(a, Matrix::Identity(50, 50), Matrix::Identity(30, 30), 5);
      ACCEPT(crit, coupled.col_indices == plain.col_indices);
      ACCEPT(crit, coupled.row_indices == plain.row_indices);
      ACCEPT(crit, coupled.p_b == plain.row_indices);
      ACCEPT(crit, coupled.s_g == plain.col_indices);
    }

    // Square nonsingular weights: indices of the whitened matrix's CUR.
    for (std::uint64_t t = 0; t < 20; ++t) {
      const Matrix a = gaussian_matrix(30, 20, 1000 + 3 * t);
      const Matrix b = gaussian_matrix(30, 30, 1001 + 3 * t);
      const Matrix g = gaussian_matrix(20, 20, 1002 + 3 * t);

      const Matrix whitened = least_squares_right(g, least_squares(b, a));
      const CurResult plain = cur(whitened, 5);
      const RsvdCurResult coupled = rsvd_cur(a, b, g, 5);
      ACCEPT(crit, coupled.p_b == plain.row_indices);
      ACCEPT(crit, coupled.s_g == plain.col_indices);
    }
  });
}

TEST_CASE("criterion 4: a-priori bounds dominate the realized errors") {
  Criterion crit(4);
  guarded(crit, [&] {
    std::uint64_t seed = 2000;
    for (int t = 0; t < 50; ++t) {
      const Matrix a = gaussian_matrix(60, 40, seed++);
      const Matrix b = gaussian_matrix(60, 80, seed++);
      const Matrix g = gaussian_matrix(80, 40, seed++);
      const RsvdFactors f = rsvd(a, b, g);
      for (Index k : {2, 5, 10}) {
        const RsvdCurResult res = rsvd_cur(a, b, g, k);
        const ErrorBoundReport rep = error_bound_report(a, b, g, res, f);
        ACCEPT(crit, rep.eta_p >= 1.0);
        ACCEPT(crit, rep.eta_s >= 1.0);
        ACCEPT(crit, rep.eta_pb >= 1.0);
        ACCEPT(crit, rep.eta_sg >= 1.0);
        ACCEPT(crit, rep.bound_a >= rep.err_a);
        ACCEPT(crit, rep.bound_b >= rep.err_b);
        ACCEPT(crit, rep.bound_g >= rep.err_g);
      }
    }
  });
}

TEST_CASE("criterion 5: correlated-noise recovery beats plain subset picks") {
  Criterion crit(5);
  guarded(crit, [&] {
    const NoiseRecoveryConfig config;  // defaults are the reference setup
    const auto t0 = std::chrono::steady_clock::now();
    const auto rows = noise_recovery_experiment(config);
    const double elapsed = seconds_since(t0);

    REQUIRE(rows.size() == 1);
    ACCEPT(crit, rows[0].k == 15);
    ACCEPT(crit, rows[0].rsvdcur_err <= 0.8 * rows[0].cur_err);
    ACCEPT(crit, rows[0].svd_err >= 0.9 * config.eps);
    ACCEPT(crit, elapsed <= 120.0);
  });
}

TEST_CASE("criterion 6: recovery survives perturbed covariance factors") {
  Criterion crit(6);
  guarded(crit, [&] {
    NoiseRecoveryConfig config;
    config.inexact_factors = true;
    const auto rows = noise_recovery_experiment(config);
    REQUIRE(rows.size() == 1);
    ACCEPT(crit, rows[0].rsvdcur_err <= 0.9 * rows[0].cur_err);
  });
}

TEST_CASE("criterion 7: subset-selection residuals match the reference") {
  Criterion crit(7);
  guarded(crit, [&] {
    const GaussMarkovConfig config;  // m=1000 n=100 l=50 d=10, 100 trials
    const auto t0 = std::chrono::steady_clock::now();
    const auto rows = gauss_markov_experiment(config);
    const double elapsed = seconds_since(t0);

    REQUIRE(rows.size() == 4);
    const double targets[] = {31.5, 31.1, 30.8, 29.3};
    const Index ks[] = {10, 20, 30, 0};
    for (int i = 0; i < 4; ++i) {
      ACCEPT(crit, rows[i].k == ks[i]);
      ACCEPT(crit, std::abs(rows[i].avg_residual - targets[i]) <= 0.5);
    }
    // Nonincreasing as k grows; the full system (last row) is the floor.
    for (int i = 0; i + 1 < 4; ++i) {
      ACCEPT(crit, rows[i].avg_residual >= rows[i + 1].avg_residual);
    }
    ACCEPT(crit, elapsed <= 120.0);
  });
}

TEST_CASE("criterion 8: selection equals the oracle and honors invariances") {
  Criterion crit(8);
  guarded(crit, [&] {
    for (std::uint64_t t = 0; t < 100; ++t) {
      const Matrix basis = gaussian_matrix(50, 8, 3000 + t);
      ACCEPT(crit, deim(basis) == naive_deim(basis));
    }

    Vector scale(6);
    scale << 3.0, -0.25, 10.0, 0.5, -2.0, 7.0;
    for (std::uint64_t t = 0; t < 50; ++t) {
      const Matrix basis = gaussian_matrix(40, 6, 3200 + t);
      ACCEPT(crit, deim(basis * scale.asDiagonal()) == deim(basis));
    }

    for (std::uint64_t t = 0; t < 50; ++t) {
      const Matrix basis = qr(gaussian_matrix(40, 6, 3300 + t)).q;
      const Matrix rot = haar_orthogonal(6, 3400 + t);
      ACCEPT(crit, qdeim(basis * rot) == qdeim(basis));
    }
  });
}

TEST_CASE("criterion 9: exchange and table formats are lossless") {
  Criterion crit(9);
  guarded(crit, [&] {
    TempFile mtx("crit9.mtx");
    for (std::uint64_t t = 0; t < 20; ++t) {
      const Index rows = 1 + static_cast<Index>((t * 29 + 3) % 40);
      const Index cols = 1 + static_cast<Index>((t * 13 + 5) % 40);
      const double scale = std::pow(10.0, static_cast<double>(t % 7) - 3.0);
      const Matrix a = gaussian_matrix(rows, cols, 4000 + t) * scale;
      write_matrix_market(mtx.path, a);
      const Matrix back = read_matrix_market(mtx.path);
      ACCEPT(crit, back.rows() == a.rows() && back.cols() == a.cols() &&
                       (back.array() == a.array()).all());
    }

    TempFile csv("crit9.csv");
    std::vector<NoiseRecoveryRow> curve(2);
    curve[0] = {10, 0.1, 1.0 / 3.0, 0.25, 5e-324};
    curve[1] = {15, 0.084, 0.051, 1e-17, 1.7976931348623157e308};
    write_results(csv.path, curve);
    const auto curve_back = read_noise_recovery_csv(csv.path);
    REQUIRE(curve_back.size() == curve.size());
    for (std::size_t i = 0; i < curve.size(); ++i) {
      ACCEPT(crit, curve_back[i].k == curve[i].k &&
                       curve_back[i].svd_err == curve[i].svd_err &&
                       curve_back[i].cur_err == curve[i].cur_err &&
                       curve_back[i].rsvd_err == curve[i].rsvd_err &&
                       curve_back[i].rsvdcur_err == curve[i].rsvdcur_err);
    }

    std::vector<GaussMarkovRow> table(2);
    table[0] = {10, 31.499999999999996};
    table[1] = {0, 29.3};
    write_results(csv.path, table);
    const auto table_back = read_gauss_markov_csv(csv.path);
    REQUIRE(table_back.size() == table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
      ACCEPT(crit, table_back[i].k == table[i].k &&
                       table_back[i].avg_residual == table[i].avg_residual);
    }

    TempFile json("crit9.json");
    DecompositionReport report;
    report.k = 3;
    report.selector = "deim";
    report.col_indices = {4, 0, 2};
    report.row_indices = {1, 5, 3};
    report.p_b = {7, 6, 0};
    report.s_g = {2, 1, 8};
    report.m_a = gaussian_matrix(3, 3, 4100);
    report.errors = {{"rel_err_a", 0.25}};
    write_results(json.path, report);
    const DecompositionReport rep_back = read_decomposition_json(json.path);
    ACCEPT(crit, rep_back.k == report.k &&
                     rep_back.col_indices == report.col_indices &&
                     rep_back.row_indices == report.row_indices &&
                     rep_back.p_b == report.p_b &&
                     rep_back.s_g == report.s_g &&
                     (rep_back.m_a.array() == report.m_a.array()).all());
    REQUIRE(rep_back.errors.size() == 1);
    ACCEPT(crit, rep_back.errors[0].first == "rel_err_a" &&
                     rep_back.errors[0].second == 0.25);

    MultiviewSelection sel;
    sel.view1 = {9, 1};
    sel.view2 = {0, 4, 6};
    write_results(json.path, sel);
    const MultiviewSelection sel_back = read_multiview_json(json.path);
    ACCEPT(crit, sel_back.view1 == sel.view1 && sel_back.view2 == sel.view2);
  });
}

// Full-size rerun of the reference recovery table. Ignored by default: it
// needs a 10000x10000 dense covariance factor and runs for a long time.
// Enable with: test_acceptance -tc="full scale*" -ns.
TEST_CASE("full scale recovery table" * doctest::skip()) {
  NoiseRecoveryConfig config;
  config.m = 10000;
  config.n = 1000;
  config.rank = 100;
  config.seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  config.k_grid = {15};
  const auto rows = noise_recovery_experiment(config);
  REQUIRE(rows.size() == 1);
  std::printf("full scale k=15: cur %.4f (target 0.084), rsvd-cur %.4f "
              "(target 0.051)\n",
              rows[0].cur_err, rows[0].rsvdcur_err);
  CHECK(rows[0].cur_err >= 0.7 * 0.084);
  CHECK(rows[0].cur_err <= 1.3 * 0.084);
  CHECK(rows[0].rsvdcur_err >= 0.7 * 0.051);
  CHECK(rows[0].rsvdcur_err <= 1.3 * 0.051);
}
