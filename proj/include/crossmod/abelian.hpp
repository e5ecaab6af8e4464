#ifndef CROSSMOD_ABELIAN_HPP
#define CROSSMOD_ABELIAN_HPP

#include <utility>
#include <vector>

#include "crossmod/finite_group.hpp"
#include "crossmod/intmat.hpp"

namespace crossmod {

/// Invariant-factor decomposition of a finite abelian group given by its
/// multiplication table: generators realizing A = Z/d_1 x ... x Z/d_k and a
/// discrete-log map from elements to coordinates.
struct AbelianDecomposition {
  std::vector<Int> factors;             // invariant factors > 1
  std::vector<int> generators;          // element per factor
  std::vector<std::vector<Int>> dlog;   // element index -> coordinates

  int rank() const { return static_cast<int>(factors.size()); }
};

inline AbelianDecomposition decompose_abelian(const FiniteGroup& a) {
  if (!a.is_abelian()) throw InputError("abelian decomposition: group is not abelian");
  const int n = a.order();
  // Relation lattice of the presentation with every element as a generator:
  // e_i + e_j - e_{ij} for all pairs, plus e_identity.
  IntMatrix rel(n, n * n + 1);
  int col = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      rel(i, col) += 1;
      rel(j, col) += 1;
      rel(a.mul(i, j), col) -= 1;
      ++col;
    }
  rel(0, col) = 1;

  SmithDecomposition s = smith_normal_form(rel);
  IntMatrix uinv = unimodular_inverse(s.U);

  AbelianDecomposition d;
  std::vector<int> slots;
  for (int i = 0; i < n; ++i) {
    Int f = i < std::min(rel.rows(), rel.cols()) ? s.D(i, i) : Int(0);
    if (f == 1) continue;
    if (f == 0) throw DomainError("abelian decomposition: internal: free factor in finite group");
    slots.push_back(i);
    d.factors.push_back(f);
  }
  for (std::size_t k = 0; k < slots.size(); ++k) {
    // generator = product of elements with exponents from column slots[k] of U^-1
    int gen = 0;
    for (int i = 0; i < n; ++i) {
      Int e;
      mpz_fdiv_r_ui(e.get_mpz_t(), uinv(i, slots[k]).get_mpz_t(), a.order_of(i));
      gen = a.mul(gen, a.pow(i, e.get_si()));
    }
    d.generators.push_back(gen);
  }
  d.dlog.assign(n, {});
  for (int elt = 0; elt < n; ++elt) {
    std::vector<Int> coords;
    for (std::size_t k = 0; k < slots.size(); ++k) {
      Int v = s.U(slots[k], elt);  // U * e_elt
      mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), d.factors[k].get_mpz_t());
      coords.push_back(v);
    }
    d.dlog[elt] = std::move(coords);
  }
  // the decomposition must reproduce every element from its coordinates
  for (int elt = 0; elt < n; ++elt) {
    int rebuilt = 0;
    for (std::size_t k = 0; k < d.generators.size(); ++k)
      rebuilt = a.mul(rebuilt, a.pow(d.generators[k], d.dlog[elt][k].get_si()));
    if (rebuilt != elt) throw DomainError("abelian decomposition: internal: dlog mismatch");
  }
  return d;
}

}  // namespace crossmod

#endif
