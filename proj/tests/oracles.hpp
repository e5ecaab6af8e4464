// Independent reference implementations used only to cross-check the library.
// Everything here is deliberately naive.
#ifndef CROSSMOD_TESTS_ORACLES_HPP
#define CROSSMOD_TESTS_ORACLES_HPP

#include <optional>
#include <random>
#include <vector>

#include "crossmod/intmat.hpp"
#include "crossmod/word.hpp"

namespace oracles {

using crossmod::Int;
using crossmod::IntMatrix;
using crossmod::Letter;

// Free reduction by repeated full scans until no adjacent pair cancels.
inline std::vector<Letter> scan_reduce(std::vector<Letter> w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i].gen == w[i + 1].gen && w[i].sign == -w[i + 1].sign) {
        w.erase(w.begin() + i, w.begin() + i + 2);
        changed = true;
        break;
      }
    }
  }
  return w;
}

// Textbook Smith diagonal via gcd row/column elimination, first pivot found.
// Returns the diagonal (no transforms).
inline std::vector<Int> snf_diagonal(IntMatrix a) {
  const int m = a.rows(), n = a.cols();
  std::vector<Int> diag;
  for (int t = 0; t < std::min(m, n); ++t) {
    int pi = -1, pj = -1;
    for (int i = t; i < m && pi < 0; ++i)
      for (int j = t; j < n; ++j)
        if (a(i, j) != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi < 0) break;
    a.swap_rows(t, pi);
    a.swap_cols(t, pj);
    for (;;) {
      bool clean = true;
      for (int i = t + 1; i < m; ++i)
        while (a(i, t) != 0) {
          Int q = a(i, t) / a(t, t);
          a.row_addmul(i, t, -q);
          if (a(i, t) != 0) {
            a.swap_rows(t, i);
            clean = false;
          }
        }
      for (int j = t + 1; j < n; ++j)
        while (a(t, j) != 0) {
          Int q = a(t, j) / a(t, t);
          a.col_addmul(j, t, -q);
          if (a(t, j) != 0) {
            a.swap_cols(t, j);
            clean = false;
          }
        }
      bool col_ok = true;
      for (int i = t + 1; i < m; ++i) col_ok = col_ok && a(i, t) == 0;
      if (!(clean && col_ok)) continue;
      bool fixed = false;
      for (int i = t + 1; i < m && !fixed; ++i)
        for (int j = t + 1; j < n && !fixed; ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            a.row_addmul(t, i, 1);
            fixed = true;
          }
      if (!fixed) break;
    }
    if (a(t, t) < 0) a.negate_row(t);
    diag.push_back(a(t, t));
  }
  while (static_cast<int>(diag.size()) < std::min(m, n)) diag.push_back(0);
  return diag;
}

// Fraction-free (Bareiss) determinant.
inline Int determinant(IntMatrix a) {
  const int n = a.rows();
  if (n != a.cols()) throw crossmod::InputError("determinant: not square");
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (a(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int v = a(k, k) * a(i, j) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

inline IntMatrix random_matrix(std::mt19937_64& rng, int max_dim, long lo, long hi) {
  std::uniform_int_distribution<int> dim(1, max_dim);
  std::uniform_int_distribution<long> val(lo, hi);
  IntMatrix m(dim(rng), dim(rng));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = val(rng);
  return m;
}

}  // namespace oracles

#endif
