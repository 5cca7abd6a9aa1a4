#include "bll/intmat.hpp"

#include "doctest.h"

#include <random>

using namespace bll;

namespace {

IMat from_rows(const std::vector<std::vector<long long>>& rows) {
  IMat m(static_cast<int>(rows.size()),
         rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
  return m;
}

IMat random_mat(std::mt19937& rng, int rows, int cols, int span) {
  IMat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      m.at(i, j) = static_cast<long long>(rng() % (2 * span + 1)) - span;
  return m;
}

bool is_hnf(const IMat& h) {
  // pivot of a column is its topmost nonzero entry; pivot rows strictly
  // increase left to right, pivots are positive, entries left of a pivot in
  // its row are reduced into [0, pivot), zero columns are trailing
  int last_pivot_row = -1;
  bool seen_zero = false;
  for (int j = 0; j < h.cols; ++j) {
    int pr = -1;
    for (int i = 0; i < h.rows; ++i) {
      if (h.at(i, j) != 0) {
        pr = i;
        break;
      }
    }
    if (pr < 0) {
      seen_zero = true;
      continue;
    }
    if (seen_zero) return false;
    if (pr <= last_pivot_row) return false;
    if (h.at(pr, j) <= 0) return false;
    for (int jj = 0; jj < j; ++jj) {
      if (h.at(pr, jj) < 0 || h.at(pr, jj) >= h.at(pr, j)) return false;
    }
    last_pivot_row = pr;
  }
  return true;
}

IMat strip_zero_cols(const IMat& h) {
  int nz = h.cols;
  while (nz > 0) {
    bool zero = true;
    for (int i = 0; i < h.rows; ++i)
      if (h.at(i, nz - 1) != 0) zero = false;
    if (!zero) break;
    --nz;
  }
  IMat out(h.rows, nz);
  for (int i = 0; i < h.rows; ++i)
    for (int j = 0; j < nz; ++j) out.at(i, j) = h.at(i, j);
  return out;
}

}  // namespace

TEST_CASE("bareiss determinant on known matrices") {
  CHECK(det_bareiss(imat_identity(4)) == 1);
  CHECK(det_bareiss(from_rows({{2, 1}, {1, 2}})) == 3);
  CHECK(det_bareiss(from_rows({{0, 1}, {1, 0}})) == -1);
  CHECK(det_bareiss(from_rows({{1, 2}, {2, 4}})) == 0);
  CHECK(det_bareiss(from_rows({{0, 2, 3}, {4, 0, 1}, {2, 2, 2}})) == 12);
  CHECK(det_bareiss(IMat(0, 0)) == 1);
}

TEST_CASE("column hermite form: shape, factorization, unimodularity") {
  std::mt19937 rng(991);
  for (int trial = 0; trial < 60; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 5);
    const int cols = 1 + static_cast<int>(rng() % 5);
    IMat a = random_mat(rng, rows, cols, 7);
    HnfResult res = hnf_columns(a);
    CHECK(is_hnf(res.h));
    CHECK(imat_mul(a, res.u) == res.h);
    Int du = det_bareiss(res.u);
    CHECK((du == 1 || du == -1));
  }
}

TEST_CASE("hermite form is canonical across column order") {
  IMat a = from_rows({{2, 6, 4}, {1, 3, 7}});
  IMat b = from_rows({{4, 2, 6}, {7, 1, 3}});  // same columns, permuted
  CHECK(hnf_columns(a).h == hnf_columns(b).h);
}

TEST_CASE("kernel basis spans exactly the integer kernel") {
  IMat a = from_rows({{1, 2, 3}, {2, 4, 6}});  // rank 1
  IMat k = kernel_basis(a);
  CHECK(k.cols == 2);
  for (int j = 0; j < k.cols; ++j)
    for (int i = 0; i < a.rows; ++i) {
      Int s = 0;
      for (int t = 0; t < a.cols; ++t) s += a.at(i, t) * k.at(t, j);
      CHECK(s == 0);
    }
  // saturation: (1,1,-1) lies in the kernel and must be an integer
  // combination of the basis columns; test via hermite form membership
  IMat aug(3, k.cols + 1);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < k.cols; ++j) aug.at(i, j) = k.at(i, j);
  aug.at(0, k.cols) = 1;
  aug.at(1, k.cols) = 1;
  aug.at(2, k.cols) = -1;
  CHECK(strip_zero_cols(hnf_columns(aug).h) ==
        strip_zero_cols(hnf_columns(k).h));
}

TEST_CASE("kernel of injective and zero maps") {
  CHECK(kernel_basis(imat_identity(3)).cols == 0);
  IMat z(2, 3);
  CHECK(kernel_basis(z).cols == 3);
}

TEST_CASE("smith form: diagonal, divisibility chain, transforms") {
  std::mt19937 rng(417);
  for (int trial = 0; trial < 60; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 4);
    const int cols = 1 + static_cast<int>(rng() % 4);
    IMat a = random_mat(rng, rows, cols, 9);
    SnfResult res = snf(a);
    CHECK(imat_mul(imat_mul(res.u, a), res.v) == res.d);
    Int du = det_bareiss(res.u), dv = det_bareiss(res.v);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    for (int i = 0; i < res.d.rows; ++i)
      for (int j = 0; j < res.d.cols; ++j)
        if (i != j) CHECK(res.d.at(i, j) == 0);
    const int n = std::min(res.d.rows, res.d.cols);
    for (int i = 0; i + 1 < n; ++i) {
      CHECK(res.d.at(i, i) >= 0);
      if (res.d.at(i, i) != 0)
        CHECK(res.d.at(i + 1, i + 1) % res.d.at(i, i) == 0);
      else
        CHECK(res.d.at(i + 1, i + 1) == 0);
    }
  }
}

TEST_CASE("smith form known values") {
  SnfResult r1 = snf(from_rows({{2, 1}, {1, 2}}));
  CHECK(r1.d.at(0, 0) == 1);
  CHECK(r1.d.at(1, 1) == 3);
  SnfResult r2 = snf(from_rows({{2, 0}, {0, 4}}));
  CHECK(r2.d.at(0, 0) == 2);
  CHECK(r2.d.at(1, 1) == 4);
  SnfResult r3 = snf(from_rows({{6, 0}, {0, 10}}));
  CHECK(r3.d.at(0, 0) == 2);
  CHECK(r3.d.at(1, 1) == 30);
}

TEST_CASE("rational inverse and its failure on singular input") {
  IMat m = from_rows({{2, 1}, {1, 1}});
  QMat inv = qmat_inverse(m);
  QMat prod = qmat_mul(qmat_from(m), inv);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(prod.at(i, j) == Rat(i == j ? 1 : 0));
  IMat s = from_rows({{1, 2}, {2, 4}});
  CHECK_THROWS_AS(qmat_inverse(s), invalid_input);
}

TEST_CASE("signature of symmetric forms") {
  Signature id3 = signature_of(imat_identity(3));
  CHECK(id3.pos == 3);
  CHECK(id3.neg == 0);
  CHECK(id3.zero == 0);

  IMat hyp = from_rows({{0, 1}, {1, 0}});
  Signature h = signature_of(hyp);
  CHECK(h.pos == 1);
  CHECK(h.neg == 1);

  IMat deg = from_rows({{1, 1}, {1, 1}});
  Signature d = signature_of(deg);
  CHECK(d.pos == 1);
  CHECK(d.zero == 1);

  IMat a2 = from_rows({{-2, 1}, {1, -2}});
  Signature s = signature_of(a2);
  CHECK(s.neg == 2);
}

TEST_CASE("rational literal parsing") {
  CHECK(parse_rat("3") == Rat(3));
  CHECK(parse_rat("-1/2") == Rat(-1, 2));
  CHECK(parse_rat("4/6") == Rat(2, 3));
  CHECK_THROWS_AS(parse_rat("1/0"), invalid_input);
  CHECK_THROWS_AS(parse_rat("x"), invalid_input);
  CHECK_THROWS_AS(parse_rat(""), invalid_input);
  QVec v = parse_rat_csv("3,1,0,-1/2");
  REQUIRE(v.size() == 4);
  CHECK(v[3] == Rat(-1, 2));
  CHECK_THROWS_AS(parse_rat_csv("1,,2"), invalid_input);
}
