#ifndef CROSSMOD_INTMAT_HPP
#define CROSSMOD_INTMAT_HPP

#include <gmpxx.h>

#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crossmod/base.hpp"

namespace crossmod {

using Int = mpz_class;

/// Dense matrix over Z with arbitrary-precision entries.
class IntMatrix {
 public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(std::size_t(rows) * cols) {
    if (rows < 0 || cols < 0) throw InputError("matrix: negative dimension");
  }

  IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
    e_.reserve(std::size_t(rows_) * cols_);
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != cols_) throw InputError("matrix: ragged rows");
      for (long v : r) e_.emplace_back(v);
    }
  }

  static IntMatrix identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Int& operator()(int i, int j) { return e_[std::size_t(i) * cols_ + j]; }
  const Int& operator()(int i, int j) const { return e_[std::size_t(i) * cols_ + j]; }

  bool is_zero() const {
    for (const Int& v : e_)
      if (v != 0) return false;
    return true;
  }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  IntMatrix operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw InputError("matrix: product shape mismatch");
    IntMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Int& a = (*this)(i, k);
        if (a == 0) continue;
        for (int j = 0; j < o.cols_; ++j) {
          const Int& b = o(k, j);
          if (b != 0) mpz_addmul(r(i, j).get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        }
      }
    return r;
  }

  IntMatrix operator-(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix: sum shape mismatch");
    IntMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
    return r;
  }

  std::vector<Int> apply(const std::vector<Int>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw InputError("matrix: vector length mismatch");
    std::vector<Int> r(rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if ((*this)(i, j) != 0)
          mpz_addmul(r[i].get_mpz_t(), (*this)(i, j).get_mpz_t(), v[j].get_mpz_t());
    return r;
  }

  std::vector<Int> column(int j) const {
    std::vector<Int> c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  void set_column(int j, const std::vector<Int>& c) {
    for (int i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
  }

  /// Matrix whose columns are the given vectors.
  static IntMatrix from_columns(int rows, const std::vector<std::vector<Int>>& cols) {
    IntMatrix m(rows, static_cast<int>(cols.size()));
    for (int j = 0; j < m.cols(); ++j) {
      if (static_cast<int>(cols[j].size()) != rows) throw InputError("matrix: column length mismatch");
      m.set_column(j, cols[j]);
    }
    return m;
  }

  /// [A | B] side by side.
  static IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows()) throw InputError("matrix: hstack row mismatch");
    IntMatrix m(a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
      for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
      for (int j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
    }
    return m;
  }

  void swap_rows(int a, int b) {
    if (a == b) return;
    for (int j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(int a, int b) {
    if (a == b) return;
    for (int i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  void negate_row(int a) {
    for (int j = 0; j < cols_; ++j) mpz_neg((*this)(a, j).get_mpz_t(), (*this)(a, j).get_mpz_t());
  }
  // row[dst] += c * row[src]
  void row_addmul(int dst, int src, const Int& c) {
    if (c == 0) return;
    for (int j = 0; j < cols_; ++j) {
      const Int& s = (*this)(src, j);
      if (s != 0) mpz_addmul((*this)(dst, j).get_mpz_t(), c.get_mpz_t(), s.get_mpz_t());
    }
  }
  // col[dst] += c * col[src]
  void col_addmul(int dst, int src, const Int& c) {
    if (c == 0) return;
    for (int i = 0; i < rows_; ++i) {
      const Int& s = (*this)(i, src);
      if (s != 0) mpz_addmul((*this)(i, dst).get_mpz_t(), c.get_mpz_t(), s.get_mpz_t());
    }
  }

  std::string str() const {
    std::string out;
    for (int i = 0; i < rows_; ++i) {
      out += i ? "\n[" : "[";
      for (int j = 0; j < cols_; ++j) {
        if (j) out += ' ';
        out += (*this)(i, j).get_str();
      }
      out += ']';
    }
    return out;
  }

 private:
  int rows_, cols_;
  std::vector<Int> e_;
};

/// Isomorphism type of a finitely generated abelian group.
struct AbelianGroupStructure {
  int free_rank = 0;
  std::vector<Int> torsion;  // invariant factors > 1, each dividing the next

  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  Int order() const {  // 0 means infinite
    if (free_rank > 0) return 0;
    Int n = 1;
    for (const Int& t : torsion) n *= t;
    return n;
  }
  bool operator==(const AbelianGroupStructure& o) const = default;

  std::string str() const {
    if (trivial()) return "0";
    std::string out;
    for (int i = 0; i < free_rank; ++i) out += out.empty() ? "Z" : " + Z";
    for (const Int& t : torsion) {
      if (!out.empty()) out += " + ";
      out += "Z/" + t.get_str();
    }
    return out;
  }
};

/// U*A*V = D with U, V unimodular and D diagonal, d1 | d2 | ... >= 0.
struct SmithDecomposition {
  IntMatrix U, D, V;

  int rank() const {
    int r = 0, n = std::min(D.rows(), D.cols());
    while (r < n && D(r, r) != 0) ++r;
    return r;
  }
};

namespace detail {

// Quotient nearest to a/b for b > 0 (ties toward floor); keeps remainders
// in [-b/2, b/2] so SNF entries stay small.
inline Int nearest_quotient(const Int& a, const Int& b) {
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (2 * r > b) q += 1;
  return q;
}

}  // namespace detail

inline SmithDecomposition smith_normal_form(const IntMatrix& A) {
  const int m = A.rows(), n = A.cols();
  SmithDecomposition s{IntMatrix::identity(m), A, IntMatrix::identity(n)};
  IntMatrix& D = s.D;
  IntMatrix& U = s.U;
  IntMatrix& V = s.V;

  const int steps = std::min(m, n);
  for (int t = 0; t < steps; ++t) {
    // Pivot: smallest non-zero |entry| in D[t.., t..], ties to lowest (row, col).
    int pi = -1, pj = -1;
    for (int i = t; i < m; ++i)
      for (int j = t; j < n; ++j) {
        const Int& v = D(i, j);
        if (v == 0) continue;
        if (pi < 0 || mpz_cmpabs(v.get_mpz_t(), D(pi, pj).get_mpz_t()) < 0) {
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;
    D.swap_rows(t, pi);
    U.swap_rows(t, pi);
    D.swap_cols(t, pj);
    V.swap_cols(t, pj);
    if (D(t, t) < 0) {
      D.negate_row(t);
      U.negate_row(t);
    }

    for (;;) {
      bool restart = false;
      for (int i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        Int q = detail::nearest_quotient(D(i, t), D(t, t));
        if (q != 0) {
          Int c = -q;
          D.row_addmul(i, t, c);
          U.row_addmul(i, t, c);
        }
        if (D(i, t) != 0) {  // smaller remainder becomes the pivot
          D.swap_rows(t, i);
          U.swap_rows(t, i);
          if (D(t, t) < 0) {
            D.negate_row(t);
            U.negate_row(t);
          }
          restart = true;
          break;
        }
      }
      if (restart) continue;
      for (int j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        Int q = detail::nearest_quotient(D(t, j), D(t, t));
        if (q != 0) {
          Int c = -q;
          D.col_addmul(j, t, c);
          V.col_addmul(j, t, c);
        }
        if (D(t, j) != 0) {
          D.swap_cols(t, j);
          V.swap_cols(t, j);
          restart = true;
          break;
        }
      }
      if (restart) continue;
      // Cross is clear; enforce d_t | D(i,j) on the rest of the block.
      bool fixed = false;
      for (int i = t + 1; i < m && !fixed; ++i)
        for (int j = t + 1; j < n && !fixed; ++j) {
          if (mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) continue;
          D.row_addmul(t, i, 1);
          U.row_addmul(t, i, 1);
          fixed = true;
        }
      if (!fixed) break;
    }
  }
  return s;
}

/// Basis of the full integer kernel lattice {v : A v = 0}.
inline std::vector<std::vector<Int>> kernel_basis(const IntMatrix& A) {
  SmithDecomposition s = smith_normal_form(A);
  int r = s.rank();
  std::vector<std::vector<Int>> basis;
  basis.reserve(A.cols() - r);
  for (int j = r; j < A.cols(); ++j) basis.push_back(s.V.column(j));
  return basis;
}

/// Invariant factors of Z^rows / im(A).
inline AbelianGroupStructure cokernel_structure(const IntMatrix& A) {
  SmithDecomposition s = smith_normal_form(A);
  AbelianGroupStructure g;
  int r = s.rank();
  g.free_rank = A.rows() - r;
  for (int i = 0; i < r; ++i)
    if (s.D(i, i) > 1) g.torsion.push_back(s.D(i, i));
  return g;
}

/// Some integer solution of A x = b, if one exists.
inline std::optional<std::vector<Int>> solve_integer(const IntMatrix& A,
                                                     const std::vector<Int>& b) {
  if (static_cast<int>(b.size()) != A.rows()) throw InputError("solve: dimension mismatch");
  SmithDecomposition s = smith_normal_form(A);
  std::vector<Int> c = s.U.apply(b);
  std::vector<Int> y(A.cols());
  const int r = s.rank();
  for (int i = 0; i < A.rows(); ++i) {
    if (i < r) {
      Int q, rem;
      mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), c[i].get_mpz_t(), s.D(i, i).get_mpz_t());
      if (rem != 0) return std::nullopt;
      y[i] = q;
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return s.V.apply(y);
}

/// Precomputed SNF for solving A x = b repeatedly against a fixed A.
class IntSolver {
 public:
  explicit IntSolver(IntMatrix A) : A_(std::move(A)), s_(smith_normal_form(A_)) {}

  const IntMatrix& matrix() const { return A_; }

  std::optional<std::vector<Int>> solve(const std::vector<Int>& b) const {
    if (static_cast<int>(b.size()) != A_.rows()) throw InputError("solve: dimension mismatch");
    std::vector<Int> c = s_.U.apply(b);
    std::vector<Int> y(A_.cols());
    const int r = s_.rank();
    for (int i = 0; i < A_.rows(); ++i) {
      if (i < r) {
        Int q, rem;
        mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), c[i].get_mpz_t(), s_.D(i, i).get_mpz_t());
        if (rem != 0) return std::nullopt;
        y[i] = q;
      } else if (c[i] != 0) {
        return std::nullopt;
      }
    }
    return s_.V.apply(y);
  }

 private:
  IntMatrix A_;
  SmithDecomposition s_;
};

/// Inverse of a unimodular matrix.
inline IntMatrix unimodular_inverse(const IntMatrix& U) {
  if (U.rows() != U.cols()) throw InputError("inverse: not square");
  SmithDecomposition s = smith_normal_form(U);
  for (int i = 0; i < U.rows(); ++i)
    if (s.D(i, i) != 1) throw InputError("inverse: matrix is not unimodular");
  // U1*U*V1 = I  =>  U^-1 = V1*U1.
  return s.V * s.U;
}

}  // namespace crossmod

#endif
