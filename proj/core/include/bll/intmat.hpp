#pragma once
// Exact integer and rational matrices with the normal forms the lattice
// layer is built on: Bareiss determinants, column-style HNF, integer
// kernels (saturated by construction), Smith normal form with transforms,
// rational inverses, and symmetric-form signatures by congruence
// diagonalization. Dimensions here are small (rank <= 27); clarity wins
// over asymptotics.

#include "bll/types.hpp"

namespace bll {

struct IMat {
  int rows = 0, cols = 0;
  std::vector<Int> a;  // row-major

  IMat() = default;
  IMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c) {}

  Int& at(int r, int c) { return a[size_t(r) * cols + c]; }
  const Int& at(int r, int c) const { return a[size_t(r) * cols + c]; }
  bool operator==(const IMat& o) const = default;
};

struct QMat {
  int rows = 0, cols = 0;
  std::vector<Rat> a;

  QMat() = default;
  QMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c) {}

  Rat& at(int r, int c) { return a[size_t(r) * cols + c]; }
  const Rat& at(int r, int c) const { return a[size_t(r) * cols + c]; }
};

IMat imat_identity(int n);
IMat imat_mul(const IMat& A, const IMat& B);
IMat imat_transpose(const IMat& A);
IVec imat_apply(const IMat& A, const IVec& x);      // A * x
QVec imat_apply(const IMat& A, const QVec& x);
QMat qmat_from(const IMat& A);
QMat qmat_mul(const QMat& A, const QMat& B);
QVec qmat_apply(const QMat& A, const QVec& x);

bool is_symmetric(const IMat& A);

// exact determinant by fraction-free elimination
Int det_bareiss(const IMat& A);

// Column-style Hermite normal form: H = A * U with U unimodular.
// Pivots are positive, entries left of a pivot in its row are reduced into
// [0, pivot), zero columns are trailing.
struct HnfResult {
  IMat h;
  IMat u;
};
HnfResult hnf_columns(const IMat& A);

// columns form a basis of { x : A x = 0 }; an integer kernel is saturated
IMat kernel_basis(const IMat& A);

// Smith normal form: U * A * V = D diagonal, d1 | d2 | ..., all >= 0
struct SnfResult {
  IMat d, u, v;
};
SnfResult snf(const IMat& A);

// rational inverse; throws invalid_input on a singular matrix
QMat qmat_inverse(const IMat& A);

// Signature of a symmetric rational form by congruence diagonalization.
// zero counts the radical dimension.
struct Signature {
  int pos = 0, neg = 0, zero = 0;
};
Signature signature_of(const QMat& sym);
Signature signature_of(const IMat& sym);

}  // namespace bll
