#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "rsvdcur/cur.hpp"
#include "rsvdcur/decompositions.hpp"
#include "rsvdcur/random.hpp"

using namespace rsvdcur;

namespace {

Matrix take_cols(const Matrix& a, const IndexList& idx) {
  Matrix out(a.rows(), static_cast<Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    out.col(static_cast<Index>(i)) = a.col(idx[i]);
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

// |C^T (A - C M R) R^T| vanishes at the least-squares optimum.
void check_optimal(const Matrix& a, const IndexList& cols,
                   const IndexList& rows, const Matrix& middle) {
  const Matrix c = take_cols(a, cols);
  const Matrix r = take_rows(a, rows);
  const Matrix residual = a - c * middle * r;
  CHECK((c.transpose() * residual * r.transpose()).norm() <=
        1e-8 * a.norm() * c.norm() * r.norm());
}

Matrix diag31() {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 3;
  a(1, 1) = 1;
  return a;
}

}  // namespace

TEST_CASE("coupling factor solves the two-sided least-squares problem") {
  const Matrix a = diag31();
  Matrix c(2, 1);
  c << 3, 0;
  Matrix r(1, 2);
  r << 3, 0;
  const Matrix m = middle_matrix(a, c, r);
  REQUIRE(m.rows() == 1);
  REQUIRE(m.cols() == 1);
  CHECK(m(0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  const Matrix eye = Matrix::Identity(3, 3);
  CHECK((middle_matrix(eye, eye, eye) - eye).norm() <= 1e-14);

  const Matrix big = gaussian_matrix(20, 15, 11);
  const IndexList cols = {0, 4, 7, 9};
  const IndexList rows = {1, 2, 8};
  const Matrix mid =
      middle_matrix(big, take_cols(big, cols), take_rows(big, rows));
  REQUIRE(mid.rows() == 4);
  REQUIRE(mid.cols() == 3);
  check_optimal(big, cols, rows, mid);

  CHECK_THROWS_AS(middle_matrix(big, gaussian_matrix(19, 4, 12),
                                take_rows(big, rows)),
                  DimensionError);
  CHECK_THROWS_AS(middle_matrix(big, take_cols(big, cols),
                                gaussian_matrix(3, 14, 13)),
                  DimensionError);
  Matrix c_def(20, 2);
  c_def.col(0) = big.col(0);
  c_def.col(1) = big.col(0);
  CHECK_THROWS_AS(middle_matrix(big, c_def, take_rows(big, rows)), RankError);
}

TEST_CASE("cross decomposition of a diagonal matrix keeps the big entry") {
  const CurResult res = cur(diag31(), 1);
  CHECK(res.k == 1);
  CHECK(res.col_indices == IndexList{0});
  CHECK(res.row_indices == IndexList{0});
  REQUIRE(res.middle.size() == 1);
  CHECK(res.middle(0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  const Matrix approx = take_cols(diag31(), res.col_indices) * res.middle *
                        take_rows(diag31(), res.row_indices);
  CHECK(spectral_norm(diag31() - approx) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cross decomposition recovers exact low rank and stays optimal") {
  const Matrix a = gaussian_matrix(40, 6, 21) * gaussian_matrix(6, 25, 22);

  SUBCASE("exact recovery at the true rank") {
    for (Selector sel : {Selector::kDeim, Selector::kQdeim}) {
      const CurResult res = cur(a, 6, sel);
      CHECK(res.selector == sel);
      CHECK(valid_index_list(res.col_indices, 25));
      CHECK(valid_index_list(res.row_indices, 40));
      const Matrix approx = take_cols(a, res.col_indices) * res.middle *
                            take_rows(a, res.row_indices);
      CHECK((a - approx).norm() <= 1e-8 * a.norm());
    }
  }

  SUBCASE("coupling stays optimal below the rank") {
    const Matrix full = gaussian_matrix(30, 18, 23);
    for (Index k : {2, 5, 9}) {
      const CurResult res = cur(full, k);
      REQUIRE(res.middle.rows() == k);
      REQUIRE(res.middle.cols() == k);
      check_optimal(full, res.col_indices, res.row_indices, res.middle);
    }
  }

  SUBCASE("rank and range violations") {
    CHECK_THROWS_AS(cur(a, 0), DimensionError);
    CHECK_THROWS_AS(cur(a, 26), DimensionError);
    CHECK_THROWS_AS(cur(a, 7), RankError);  // numerical rank is 6
  }
}

TEST_CASE("coupled cross decomposition of a diagonal triplet") {
  const Matrix eye = Matrix::Identity(2, 2);
  const RsvdCurResult res = rsvd_cur(diag31(), eye, eye, 1);
  CHECK(res.col_indices == IndexList{0});
  CHECK(res.row_indices == IndexList{0});
  CHECK(res.p_b == IndexList{0});
  CHECK(res.s_g == IndexList{0});
  CHECK(res.m_a(0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("identity weights reduce the coupled selection to the plain one") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Matrix a = gaussian_matrix(50, 30, 3000 + seed);
    const Matrix bi = Matrix::Identity(50, 50);
    const Matrix gi = Matrix::Identity(30, 30);
    const CurResult plain = cur(a, 5);
    const RsvdCurResult coupled = rsvd_cur(a, bi, gi, 5);
    CHECK(coupled.col_indices == plain.col_indices);
    CHECK(coupled.row_indices == plain.row_indices);
    CHECK(coupled.p_b == plain.row_indices);
    CHECK(coupled.s_g == plain.col_indices);
  }
}

TEST_CASE("nonsingular weights move the selection onto the whitened matrix") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Matrix a = gaussian_matrix(20, 12, 4000 + seed);
    const Matrix b = gaussian_matrix(20, 20, 4100 + seed);
    const Matrix g = gaussian_matrix(12, 12, 4200 + seed);
    // B^{-1} A G^{-1} through solves.
    const Matrix whitened = least_squares_right(g, least_squares(b, a));
    const CurResult plain = cur(whitened, 4);
    const RsvdCurResult coupled = rsvd_cur(a, b, g, 4);
    CHECK(coupled.p_b == plain.row_indices);
    CHECK(coupled.s_g == plain.col_indices);
  }
}

TEST_CASE("coupled factors are the least-squares couplings of each matrix") {
  const Matrix a = gaussian_matrix(30, 20, 51);
  const Matrix b = gaussian_matrix(30, 40, 52);
  const Matrix g = gaussian_matrix(25, 20, 53);
  const RsvdCurResult res = rsvd_cur(a, b, g, 6);
  CHECK(valid_index_list(res.col_indices, 20));
  CHECK(valid_index_list(res.row_indices, 30));
  CHECK(valid_index_list(res.p_b, 40));
  CHECK(valid_index_list(res.s_g, 25));

  check_optimal(a, res.col_indices, res.row_indices, res.m_a);
  const Matrix cb = take_cols(b, res.p_b);
  const Matrix rb = take_rows(b, res.row_indices);
  CHECK((cb.transpose() * (b - cb * res.m_b * rb) * rb.transpose()).norm() <=
        1e-8 * b.norm() * cb.norm() * rb.norm());
  const Matrix cg = take_cols(g, res.col_indices);
  const Matrix rg = take_rows(g, res.s_g);
  CHECK((cg.transpose() * (g - cg * res.m_g * rg) * rg.transpose()).norm() <=
        1e-8 * g.norm() * cg.norm() * rg.norm());

  const Matrix m_a2 = middle_matrix(a, take_cols(a, res.col_indices),
                                    take_rows(a, res.row_indices));
  CHECK((m_a2 - res.m_a).norm() <= 1e-14 * (1.0 + res.m_a.norm()));
}

TEST_CASE("pair decomposition is the triplet with identity B") {
  const Matrix a = gaussian_matrix(25, 15, 61);
  const Matrix g = gaussian_matrix(18, 15, 62);
  const GcurResult pair = gcur(a, g, 4);
  const RsvdCurResult full =
      rsvd_cur(a, Matrix::Identity(25, 25), g, 4);
  CHECK(pair.col_indices == full.col_indices);
  CHECK(pair.row_indices == full.row_indices);
  CHECK(pair.s_g == full.s_g);
  CHECK((pair.m_a - full.m_a).norm() == 0.0);
  CHECK((pair.m_g - full.m_g).norm() == 0.0);

  // Identity G in turn reduces the pair selection to the plain one.
  const GcurResult trivial = gcur(a, Matrix::Identity(15, 15), 4);
  const CurResult plain = cur(a, 4);
  CHECK(trivial.col_indices == plain.col_indices);
  CHECK(trivial.row_indices == plain.row_indices);
}

TEST_CASE("one-sided interpolation shares indices and never does worse") {
  const Matrix a = gaussian_matrix(30, 20, 71);
  const Matrix b = gaussian_matrix(30, 40, 72);
  const Matrix g = gaussian_matrix(25, 20, 73);
  const Index k = 6;
  const RsvdCurResult two_sided = rsvd_cur(a, b, g, k);

  SUBCASE("column side") {
    const RsvdIdResult id = rsvd_id(a, b, g, k, IdSide::kColumns);
    CHECK(id.col_indices == two_sided.col_indices);
    CHECK(id.p_b == two_sided.p_b);
    CHECK(id.row_indices.empty());
    const double id_err =
        (a - take_cols(a, id.col_indices) * id.coeff_a).norm();
    const double cur_err =
        (a - take_cols(a, two_sided.col_indices) * two_sided.m_a *
                 take_rows(a, two_sided.row_indices))
            .norm();
    CHECK(id_err <= cur_err + 1e-10);
    const double id_err_b = (b - take_cols(b, id.p_b) * id.coeff_b).norm();
    const double cur_err_b =
        (b - take_cols(b, two_sided.p_b) * two_sided.m_b *
                 take_rows(b, two_sided.row_indices))
            .norm();
    CHECK(id_err_b <= cur_err_b + 1e-10);
    const double id_err_g =
        (g - take_cols(g, id.col_indices) * id.coeff_g).norm();
    const double cur_err_g =
        (g - take_cols(g, two_sided.col_indices) * two_sided.m_g *
                 take_rows(g, two_sided.s_g))
            .norm();
    CHECK(id_err_g <= cur_err_g + 1e-10);
  }

  SUBCASE("row side") {
    const RsvdIdResult id = rsvd_id(a, b, g, k, IdSide::kRows);
    CHECK(id.row_indices == two_sided.row_indices);
    CHECK(id.s_g == two_sided.s_g);
    CHECK(id.col_indices.empty());
    const double id_err =
        (a - id.coeff_a * take_rows(a, id.row_indices)).norm();
    const double cur_err =
        (a - take_cols(a, two_sided.col_indices) * two_sided.m_a *
                 take_rows(a, two_sided.row_indices))
            .norm();
    CHECK(id_err <= cur_err + 1e-10);
  }

  SUBCASE("full order interpolation is exact") {
    const RsvdIdResult id = rsvd_id(a, b, g, 20, IdSide::kColumns);
    const double err =
        (a - take_cols(a, id.col_indices) * id.coeff_a).norm();
    CHECK(err <= 1e-8 * a.norm());
  }
}

TEST_CASE("a-priori bounds dominate the realized errors") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Matrix a = gaussian_matrix(30, 20, 8000 + seed);
    const Matrix b = gaussian_matrix(30, 40, 8100 + seed);
    const Matrix g = gaussian_matrix(25, 20, 8200 + seed);
    const RsvdFactors factors = rsvd(a, b, g);
    for (Index k : {2, 5, 10}) {
      const RsvdCurResult res = rsvd_cur(a, b, g, k);
      const ErrorBoundReport rep = error_bound_report(a, b, g, res, factors);
      CHECK(rep.eta_p >= 1.0);
      CHECK(rep.eta_s >= 1.0);
      CHECK(rep.eta_pb >= 1.0);
      CHECK(rep.eta_sg >= 1.0);
      CHECK(rep.alpha_k1 == factors.alpha(k));
      CHECK(rep.gamma_k1 == factors.gamma(k));
      CHECK(rep.bound_a >= rep.err_a);
      CHECK(rep.bound_b >= rep.err_b);
      CHECK(rep.bound_g >= rep.err_g);

      const double err_a2 = spectral_norm(
          a - take_cols(a, res.col_indices) * res.m_a *
                  take_rows(a, res.row_indices));
      CHECK(rep.err_a == doctest::Approx(err_a2).epsilon(1e-12));
    }
  }
}

TEST_CASE("bound report rejects out-of-range truncation orders") {
  const Matrix a = gaussian_matrix(12, 8, 91);
  const Matrix b = gaussian_matrix(12, 14, 92);
  const Matrix g = gaussian_matrix(10, 8, 93);
  const RsvdFactors factors = rsvd(a, b, g);
  const RsvdCurResult res = rsvd_cur(a, b, g, 8);
  CHECK_THROWS_AS(error_bound_report(a, b, g, res, factors), DimensionError);
}
