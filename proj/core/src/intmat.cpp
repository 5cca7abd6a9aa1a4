#include "bll/intmat.hpp"

#include <utility>

namespace bll {

IMat imat_identity(int n) {
  IMat I(n, n);
  for (int i = 0; i < n; ++i) I.at(i, i) = 1;
  return I;
}

IMat imat_mul(const IMat& A, const IMat& B) {
  if (A.cols != B.rows) throw internal_error("imat_mul shape mismatch");
  IMat C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      const Int& aik = A.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < B.cols; ++j) C.at(i, j) += aik * B.at(k, j);
    }
  return C;
}

IMat imat_transpose(const IMat& A) {
  IMat T(A.cols, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
  return T;
}

IVec imat_apply(const IMat& A, const IVec& x) {
  if (int(x.size()) != A.cols) throw internal_error("imat_apply shape mismatch");
  IVec y(A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) y[i] += A.at(i, j) * x[j];
  return y;
}

QVec imat_apply(const IMat& A, const QVec& x) {
  if (int(x.size()) != A.cols) throw internal_error("imat_apply shape mismatch");
  QVec y(A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) y[i] += Rat(A.at(i, j)) * x[j];
  return y;
}

QMat qmat_from(const IMat& A) {
  QMat Q(A.rows, A.cols);
  for (size_t i = 0; i < A.a.size(); ++i) Q.a[i] = Rat(A.a[i]);
  return Q;
}

QMat qmat_mul(const QMat& A, const QMat& B) {
  if (A.cols != B.rows) throw internal_error("qmat_mul shape mismatch");
  QMat C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      const Rat& aik = A.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < B.cols; ++j) C.at(i, j) += aik * B.at(k, j);
    }
  return C;
}

QVec qmat_apply(const QMat& A, const QVec& x) {
  if (int(x.size()) != A.cols) throw internal_error("qmat_apply shape mismatch");
  QVec y(A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) y[i] += A.at(i, j) * x[j];
  return y;
}

bool is_symmetric(const IMat& A) {
  if (A.rows != A.cols) return false;
  for (int i = 0; i < A.rows; ++i)
    for (int j = i + 1; j < A.cols; ++j)
      if (A.at(i, j) != A.at(j, i)) return false;
  return true;
}

Int det_bareiss(const IMat& A) {
  if (A.rows != A.cols) throw internal_error("det of non-square matrix");
  const int n = A.rows;
  if (n == 0) return 1;  // empty form has determinant 1 by convention
  IMat M = A;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (M.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (M.at(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(M.at(k, j), M.at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int t = M.at(k, k) * M.at(i, j) - M.at(i, k) * M.at(k, j);
        M.at(i, j) = t / prev;  // exact by Bareiss
      }
    prev = M.at(k, k);
  }
  return sign > 0 ? M.at(n - 1, n - 1) : -M.at(n - 1, n - 1);
}

namespace {

void col_axpy(IMat& M, int dst, int src, const Int& q) {
  // column dst -= q * column src
  for (int i = 0; i < M.rows; ++i) M.at(i, dst) -= q * M.at(i, src);
}
void col_swap(IMat& M, int a, int b) {
  for (int i = 0; i < M.rows; ++i) std::swap(M.at(i, a), M.at(i, b));
}
void col_neg(IMat& M, int c) {
  for (int i = 0; i < M.rows; ++i) M.at(i, c) = -M.at(i, c);
}
void row_axpy(IMat& M, int dst, int src, const Int& q) {
  for (int j = 0; j < M.cols; ++j) M.at(dst, j) -= q * M.at(src, j);
}
void row_swap(IMat& M, int a, int b) {
  for (int j = 0; j < M.cols; ++j) std::swap(M.at(a, j), M.at(b, j));
}
void row_neg(IMat& M, int r) {
  for (int j = 0; j < M.cols; ++j) M.at(r, j) = -M.at(r, j);
}

}  // namespace

HnfResult hnf_columns(const IMat& A) {
  IMat H = A;
  IMat U = imat_identity(A.cols);
  int nc = 0;  // next pivot column
  for (int i = 0; i < H.rows && nc < H.cols; ++i) {
    int c0 = -1;
    for (int c = nc; c < H.cols; ++c)
      if (H.at(i, c) != 0) {
        c0 = c;
        break;
      }
    if (c0 < 0) continue;
    if (c0 != nc) {
      col_swap(H, c0, nc);
      col_swap(U, c0, nc);
    }
    // kill the rest of row i to the right by gcd steps
    for (int c = nc + 1; c < H.cols; ++c) {
      while (H.at(i, c) != 0) {
        Int q = floor_div(H.at(i, nc), H.at(i, c));
        col_axpy(H, nc, c, q);
        col_axpy(U, nc, c, q);
        col_swap(H, nc, c);
        col_swap(U, nc, c);
      }
    }
    if (H.at(i, nc) < 0) {
      col_neg(H, nc);
      col_neg(U, nc);
    }
    // reduce earlier columns in this pivot row into [0, pivot)
    for (int c = 0; c < nc; ++c) {
      Int q = floor_div(H.at(i, c), H.at(i, nc));
      if (q != 0) {
        col_axpy(H, c, nc, q);
        col_axpy(U, c, nc, q);
      }
    }
    ++nc;
  }
  return {std::move(H), std::move(U)};
}

IMat kernel_basis(const IMat& A) {
  HnfResult h = hnf_columns(A);
  // zero columns of H correspond to kernel generators in U
  int first_zero = h.h.cols;
  for (int c = h.h.cols - 1; c >= 0; --c) {
    bool zero = true;
    for (int i = 0; i < h.h.rows; ++i)
      if (h.h.at(i, c) != 0) {
        zero = false;
        break;
      }
    if (zero)
      first_zero = c;
    else
      break;
  }
  IMat K(A.cols, h.h.cols - first_zero);
  for (int c = first_zero; c < h.h.cols; ++c)
    for (int i = 0; i < A.cols; ++i) K.at(i, c - first_zero) = h.u.at(i, c);
  return K;
}

SnfResult snf(const IMat& A) {
  IMat D = A;
  IMat U = imat_identity(A.rows);
  IMat V = imat_identity(A.cols);
  const int n = std::min(A.rows, A.cols);

  auto abs_of = [](const Int& x) { return x < 0 ? Int(-x) : x; };

  for (int t = 0; t < n; ++t) {
    // find a nonzero entry in the remaining block, smallest |value|
    int pr = -1, pc = -1;
    Int best = 0;
    for (int i = t; i < D.rows; ++i)
      for (int j = t; j < D.cols; ++j) {
        if (D.at(i, j) == 0) continue;
        Int v = abs_of(D.at(i, j));
        if (pr < 0 || v < best) {
          pr = i;
          pc = j;
          best = v;
        }
      }
    if (pr < 0) break;  // all zero from here on
    if (pr != t) {
      row_swap(D, pr, t);
      row_swap(U, pr, t);
    }
    if (pc != t) {
      col_swap(D, pc, t);
      col_swap(V, pc, t);
    }
    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < D.rows; ++i) {
        if (D.at(i, t) == 0) continue;
        Int q = floor_div(D.at(i, t), D.at(t, t));
        row_axpy(D, i, t, q);
        row_axpy(U, i, t, q);
        if (D.at(i, t) != 0) {  // remainder smaller than pivot: swap up
          row_swap(D, i, t);
          row_swap(U, i, t);
          clean = false;
        }
      }
      for (int j = t + 1; j < D.cols; ++j) {
        if (D.at(t, j) == 0) continue;
        Int q = floor_div(D.at(t, j), D.at(t, t));
        col_axpy(D, j, t, q);
        col_axpy(V, j, t, q);
        if (D.at(t, j) != 0) {
          col_swap(D, j, t);
          col_swap(V, j, t);
          clean = false;
        }
      }
    }
    if (D.at(t, t) < 0) {
      row_neg(D, t);
      row_neg(U, t);
    }
  }
  // enforce the divisibility chain d1 | d2 | ...
  for (bool changed = true; changed;) {
    changed = false;
    for (int t = 0; t + 1 < n; ++t) {
      const Int& a = D.at(t, t);
      const Int& b = D.at(t + 1, t + 1);
      if (a == 0 && b != 0) {  // push zeros to the tail
        row_swap(D, t, t + 1);
        row_swap(U, t, t + 1);
        col_swap(D, t, t + 1);
        col_swap(V, t, t + 1);
        changed = true;
        continue;
      }
      if (a == 0 || b % a == 0) continue;
      // mix the two diagonal entries and re-reduce the 2x2 block
      col_axpy(D, t, t + 1, Int(-1));  // col t += col t+1
      col_axpy(V, t, t + 1, Int(-1));
      // now D has (a, 0; b, b) pattern in rows/cols t, t+1: clear by gcd steps
      while (D.at(t + 1, t) != 0 || D.at(t, t + 1) != 0) {
        if (D.at(t + 1, t) != 0) {
          Int q = floor_div(D.at(t + 1, t), D.at(t, t));
          row_axpy(D, t + 1, t, q);
          row_axpy(U, t + 1, t, q);
          if (D.at(t + 1, t) != 0) {
            row_swap(D, t + 1, t);
            row_swap(U, t + 1, t);
          }
        }
        if (D.at(t, t + 1) != 0) {
          Int q = floor_div(D.at(t, t + 1), D.at(t, t));
          col_axpy(D, t + 1, t, q);
          col_axpy(V, t + 1, t, q);
          if (D.at(t, t + 1) != 0) {
            col_swap(D, t + 1, t);
            col_swap(V, t + 1, t);
          }
        }
      }
      if (D.at(t, t) < 0) {
        row_neg(D, t);
        row_neg(U, t);
      }
      if (D.at(t + 1, t + 1) < 0) {
        row_neg(D, t + 1);
        row_neg(U, t + 1);
      }
      changed = true;
    }
  }
  return {std::move(D), std::move(U), std::move(V)};
}

QMat qmat_inverse(const IMat& A) {
  if (A.rows != A.cols) throw invalid_input("inverse of non-square matrix");
  const int n = A.rows;
  QMat M = qmat_from(A);
  QMat R(n, n);
  for (int i = 0; i < n; ++i) R.at(i, i) = 1;
  for (int k = 0; k < n; ++k) {
    int p = -1;
    for (int i = k; i < n; ++i)
      if (M.at(i, k) != 0) {
        p = i;
        break;
      }
    if (p < 0) throw invalid_input("singular matrix has no inverse");
    if (p != k)
      for (int j = 0; j < n; ++j) {
        std::swap(M.at(p, j), M.at(k, j));
        std::swap(R.at(p, j), R.at(k, j));
      }
    Rat piv = M.at(k, k);
    for (int j = 0; j < n; ++j) {
      M.at(k, j) /= piv;
      R.at(k, j) /= piv;
    }
    for (int i = 0; i < n; ++i) {
      if (i == k || M.at(i, k) == 0) continue;
      Rat f = M.at(i, k);
      for (int j = 0; j < n; ++j) {
        M.at(i, j) -= f * M.at(k, j);
        R.at(i, j) -= f * R.at(k, j);
      }
    }
  }
  return R;
}

Signature signature_of(const QMat& sym) {
  if (sym.rows != sym.cols) throw internal_error("signature of non-square form");
  const int n = sym.rows;
  QMat M = sym;
  Signature s;
  for (int k = 0; k < n; ++k) {
    if (M.at(k, k) == 0) {
      // try to bring a nonzero diagonal entry up
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (M.at(i, i) != 0) {
          p = i;
          break;
        }
      if (p >= 0) {
        for (int j = 0; j < n; ++j) std::swap(M.at(p, j), M.at(k, j));
        for (int i = 0; i < n; ++i) std::swap(M.at(i, p), M.at(i, k));
      } else {
        // all remaining diagonal zero: use an off-diagonal entry if any
        int a = -1, b = -1;
        for (int i = k; i < n && a < 0; ++i)
          for (int j = i + 1; j < n; ++j)
            if (M.at(i, j) != 0) {
              a = i;
              b = j;
              break;
            }
        if (a < 0) {
          s.zero += n - k;
          return s;
        }
        if (a != k) {
          for (int j = 0; j < n; ++j) std::swap(M.at(a, j), M.at(k, j));
          for (int i = 0; i < n; ++i) std::swap(M.at(i, a), M.at(i, k));
        }
        // diag is zero, M[k][b] != 0: add row/col b to k -> diagonal 2*M[k][b]
        for (int j = 0; j < n; ++j) M.at(k, j) += M.at(b, j);
        for (int i = 0; i < n; ++i) M.at(i, k) += M.at(i, b);
      }
    }
    const Rat piv = M.at(k, k);
    if (piv > 0)
      ++s.pos;
    else
      ++s.neg;
    for (int i = k + 1; i < n; ++i) {
      if (M.at(i, k) == 0) continue;
      Rat f = M.at(i, k) / piv;
      for (int j = 0; j < n; ++j) M.at(i, j) -= f * M.at(k, j);
      for (int j = 0; j < n; ++j) M.at(j, i) -= f * M.at(j, k);
    }
  }
  return s;
}

Signature signature_of(const IMat& sym) { return signature_of(qmat_from(sym)); }

Rat parse_rat(const std::string& s) {
  if (s.empty()) throw invalid_input("empty rational literal");
  const auto slash = s.find('/');
  Int p, q = 1;
  try {
    if (slash == std::string::npos) {
      p = Int(s);
    } else {
      p = Int(s.substr(0, slash));
      q = Int(s.substr(slash + 1));
    }
  } catch (const std::exception&) {
    throw invalid_input("bad rational literal '" + s + "'");
  }
  if (q == 0) throw invalid_input("zero denominator in '" + s + "'");
  return Rat(p, q);
}

QVec parse_rat_csv(const std::string& s) {
  QVec out;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    out.push_back(parse_rat(s.substr(pos, comma - pos)));
    pos = comma + 1;
    if (comma == s.size()) break;
  }
  return out;
}

}  // namespace bll
