#ifndef CROSSMOD_AUT_HPP
#define CROSSMOD_AUT_HPP

#include <algorithm>
#include <utility>
#include <vector>

#include "crossmod/finite_group.hpp"

namespace crossmod {

constexpr int kDefaultAutBound = 24;

/// Aut(N), Inn(N) and Out(N) with fixed data: automorphisms are stored as
/// permutations of N sorted lexicographically (so the identity automorphism
/// has index 0), Out-coset representatives are the lowest automorphism index
/// in each coset, and the identity coset representative is the identity.
struct AutData {
  GroupPtr base;                        // N
  GroupPtr aut;                         // Aut(N); composition (a*b)(x) = a(b(x))
  std::vector<std::vector<int>> perms;  // aut index -> permutation of N
  std::vector<int> inner;               // N -> aut index of conjugation by n
  std::vector<int> inn_elements;        // sorted aut indices forming Inn(N)
  GroupPtr out;                         // Out(N) = Aut(N)/Inn(N)
  std::vector<int> out_proj;            // aut index -> out index
  std::vector<int> out_reps;            // out index -> canonical aut index

  int compose(int a, int b) const { return aut->mul(a, b); }
  int apply(int a, int n) const { return perms[a][n]; }
};

namespace detail {

inline void search_automorphisms(const FiniteGroup& g, const std::vector<int>& gens,
                                 std::vector<int>& images, std::size_t i,
                                 std::vector<std::vector<int>>& found) {
  if (i == gens.size()) {
    auto map = homomorphism_from_generators(g, gens, g, images);
    if (!map) return;
    std::vector<bool> hit(g.order(), false);
    for (int v : *map) {
      if (hit[v]) return;
      hit[v] = true;
    }
    found.push_back(*map);
    return;
  }
  int want = g.order_of(gens[i]);
  for (int c = 0; c < g.order(); ++c) {
    if (g.order_of(c) != want) continue;
    images[i] = c;
    search_automorphisms(g, gens, images, i + 1, found);
  }
}

}  // namespace detail

inline AutData automorphisms(GroupPtr n, int order_bound = kDefaultAutBound) {
  const FiniteGroup& g = *n;
  if (g.order() > order_bound)
    throw DomainError("automorphisms: group order " + std::to_string(g.order()) +
                      " exceeds bound " + std::to_string(order_bound));
  std::vector<int> gens = generating_sequence(g);
  std::vector<std::vector<int>> perms;
  std::vector<int> images(gens.size());
  detail::search_automorphisms(g, gens, images, 0, perms);
  std::sort(perms.begin(), perms.end());  // identity permutation sorts first

  auto index_of = [&](const std::vector<int>& p) {
    auto it = std::lower_bound(perms.begin(), perms.end(), p);
    if (it == perms.end() || *it != p) throw DomainError("automorphisms: internal: not closed");
    return static_cast<int>(it - perms.begin());
  };

  const int na = static_cast<int>(perms.size());
  std::vector<int> table(std::size_t(na) * na);
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < na; ++b) {
      std::vector<int> comp(g.order());
      for (int x = 0; x < g.order(); ++x) comp[x] = perms[a][perms[b][x]];
      table[std::size_t(a) * na + b] = index_of(comp);
    }
  std::vector<int> inner_of(g.order());
  for (int x = 0; x < g.order(); ++x) {
    std::vector<int> conj(g.order());
    for (int y = 0; y < g.order(); ++y) conj[y] = g.conj(x, y);
    inner_of[x] = index_of(conj);
  }

  AutData data;
  data.base = std::move(n);
  data.perms = std::move(perms);
  data.aut = make_group(FiniteGroup(na, std::move(table)));
  data.inner = std::move(inner_of);
  std::vector<int> inn = data.inner;
  std::sort(inn.begin(), inn.end());
  inn.erase(std::unique(inn.begin(), inn.end()), inn.end());
  data.inn_elements = std::move(inn);

  QuotientView q = quotient_group(*data.aut, data.inn_elements);
  data.out = make_group(std::move(q.group));
  data.out_proj = std::move(q.proj);
  data.out_reps.assign(data.out->order(), -1);
  for (int a = 0; a < na; ++a) {
    int o = data.out_proj[a];
    if (data.out_reps[o] < 0) data.out_reps[o] = a;  // lowest index in each coset
  }
  return data;
}

}  // namespace crossmod

#endif
