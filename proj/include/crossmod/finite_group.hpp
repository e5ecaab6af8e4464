#ifndef CROSSMOD_FINITE_GROUP_HPP
#define CROSSMOD_FINITE_GROUP_HPP

#include <algorithm>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "crossmod/base.hpp"

namespace crossmod {

/// Finite group given by its multiplication table.  Element 0 is the
/// identity.  Construction verifies the group laws: Latin square, identity,
/// inverses, and associativity (exhaustive up to order 200, random triples
/// beyond that).
class FiniteGroup {
 public:
  FiniteGroup(int order, std::vector<int> table)
      : n_(order), table_(std::move(table)) {
    if (n_ <= 0) throw InputError("group: order must be positive");
    if (table_.size() != std::size_t(n_) * n_) throw InputError("group: table size mismatch");
    validate();
  }

  int order() const { return n_; }
  int mul(int a, int b) const { return table_[std::size_t(a) * n_ + b]; }
  int inv(int a) const { return inv_[a]; }
  static constexpr int identity() { return 0; }

  int conj(int g, int a) const { return mul(mul(g, a), inv(g)); }

  int pow(int a, long k) const {
    int r = 0;
    if (k < 0) {
      a = inv(a);
      k = -k;
    }
    for (; k > 0; --k) r = mul(r, a);
    return r;
  }

  int order_of(int a) const {
    int r = a, k = 1;
    while (r != 0) {
      r = mul(r, a);
      ++k;
    }
    return k;
  }

  bool is_abelian() const {
    for (int a = 0; a < n_; ++a)
      for (int b = a + 1; b < n_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  std::vector<int> center() const {
    std::vector<int> z;
    for (int a = 0; a < n_; ++a) {
      bool central = true;
      for (int b = 0; b < n_ && central; ++b) central = mul(a, b) == mul(b, a);
      if (central) z.push_back(a);
    }
    return z;
  }

  const std::vector<int>& table() const { return table_; }

  static FiniteGroup trivial() { return cyclic(1); }

  static FiniteGroup cyclic(int n) {
    if (n <= 0) throw InputError("group: cyclic order must be positive");
    std::vector<int> t(std::size_t(n) * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) t[std::size_t(a) * n + b] = (a + b) % n;
    return FiniteGroup(n, std::move(t));
  }

  static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    int n = a.order() * b.order();
    std::vector<int> t(std::size_t(n) * n);
    auto idx = [&](int x, int y) { return x * b.order() + y; };
    for (int x1 = 0; x1 < a.order(); ++x1)
      for (int y1 = 0; y1 < b.order(); ++y1)
        for (int x2 = 0; x2 < a.order(); ++x2)
          for (int y2 = 0; y2 < b.order(); ++y2)
            t[std::size_t(idx(x1, y1)) * n + idx(x2, y2)] =
                idx(a.mul(x1, x2), b.mul(y1, y2));
    return FiniteGroup(n, std::move(t));
  }

 private:
  void validate() {
    for (int v : table_)
      if (v < 0 || v >= n_) throw InputError("group: table entry out of range");
    for (int a = 0; a < n_; ++a) {
      if (mul(0, a) != a || mul(a, 0) != a)
        throw InputError("group: element 0 is not an identity");
      std::vector<bool> row(n_, false), col(n_, false);
      for (int b = 0; b < n_; ++b) {
        if (row[mul(a, b)]) throw InputError("group: table row is not a permutation");
        row[mul(a, b)] = true;
        if (col[mul(b, a)]) throw InputError("group: table column is not a permutation");
        col[mul(b, a)] = true;
      }
    }
    inv_.assign(n_, -1);
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        if (mul(a, b) == 0) {
          if (mul(b, a) != 0) throw InputError("group: one-sided inverse");
          inv_[a] = b;
        }
    for (int a = 0; a < n_; ++a)
      if (inv_[a] < 0) throw InputError("group: missing inverse");

    if (n_ <= 200) {
      for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
          for (int c = 0; c < n_; ++c)
            if (mul(mul(a, b), c) != mul(a, mul(b, c)))
              throw InputError("group: associativity fails");
    } else {
      std::mt19937_64 rng(0x5eed);
      std::uniform_int_distribution<int> d(0, n_ - 1);
      for (int t = 0; t < 100000; ++t) {
        int a = d(rng), b = d(rng), c = d(rng);
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          throw InputError("group: associativity fails");
      }
    }
  }

  int n_;
  std::vector<int> table_;
  std::vector<int> inv_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline GroupPtr make_group(FiniteGroup g) {
  return std::make_shared<const FiniteGroup>(std::move(g));
}

/// Smallest subgroup containing the given elements, sorted ascending.
inline std::vector<int> subgroup_closure(const FiniteGroup& g, const std::vector<int>& gens) {
  std::vector<bool> seen(g.order(), false);
  seen[0] = true;
  std::vector<int> stack{0}, members{0};
  for (int x : gens)
    if (!seen[x]) {
      seen[x] = true;
      stack.push_back(x);
      members.push_back(x);
    }
  while (!stack.empty()) {
    int a = stack.back();
    stack.pop_back();
    for (std::size_t i = 0; i < members.size(); ++i) {
      int b = members[i];
      for (int p : {g.mul(a, b), g.mul(b, a)}) {
        if (!seen[p]) {
          seen[p] = true;
          stack.push_back(p);
          members.push_back(p);
        }
      }
    }
    int ia = g.inv(a);
    if (!seen[ia]) {
      seen[ia] = true;
      stack.push_back(ia);
      members.push_back(ia);
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

inline bool is_subgroup(const FiniteGroup& g, const std::vector<int>& elems) {
  std::vector<bool> in(g.order(), false);
  for (int e : elems) in[e] = true;
  if (!in[0]) return false;
  for (int a : elems)
    for (int b : elems)
      if (!in[g.mul(a, b)]) return false;
  return true;
}

inline bool is_normal(const FiniteGroup& g, const std::vector<int>& elems) {
  std::vector<bool> in(g.order(), false);
  for (int e : elems) in[e] = true;
  for (int x = 0; x < g.order(); ++x)
    for (int a : elems)
      if (!in[g.conj(x, a)]) return false;
  return true;
}

/// A subgroup re-indexed as a group of its own, with the embedding into the
/// parent.  Element 0 of the subgroup is the parent identity.
struct SubgroupView {
  FiniteGroup group;
  std::vector<int> embed;           // subgroup index -> parent index
  std::vector<int> index_of;        // parent index -> subgroup index or -1
};

inline SubgroupView make_subgroup(const FiniteGroup& g, std::vector<int> elems) {
  std::sort(elems.begin(), elems.end());
  if (!is_subgroup(g, elems)) throw InputError("subgroup: set is not a subgroup");
  std::vector<int> index_of(g.order(), -1);
  for (std::size_t i = 0; i < elems.size(); ++i) index_of[elems[i]] = static_cast<int>(i);
  int k = static_cast<int>(elems.size());
  std::vector<int> t(std::size_t(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) t[std::size_t(i) * k + j] = index_of[g.mul(elems[i], elems[j])];
  return SubgroupView{FiniteGroup(k, std::move(t)), std::move(elems), std::move(index_of)};
}

/// Quotient by a normal subgroup; cosets are numbered by their smallest
/// member, in increasing order, so the identity coset is element 0.
struct QuotientView {
  FiniteGroup group;
  std::vector<int> proj;  // parent index -> coset index
};

inline QuotientView quotient_group(const FiniteGroup& g, const std::vector<int>& normal) {
  if (!is_subgroup(g, normal) || !is_normal(g, normal))
    throw InputError("quotient: not a normal subgroup");
  std::vector<int> rep(g.order(), -1);
  std::vector<int> reps;
  for (int a = 0; a < g.order(); ++a) {
    if (rep[a] >= 0) continue;
    int m = a;
    std::vector<int> coset;
    for (int h : normal) {
      int e = g.mul(a, h);
      coset.push_back(e);
      m = std::min(m, e);
    }
    for (int e : coset) rep[e] = m;
    reps.push_back(m);
  }
  std::sort(reps.begin(), reps.end());
  std::vector<int> index_of_rep(g.order(), -1);
  for (std::size_t i = 0; i < reps.size(); ++i) index_of_rep[reps[i]] = static_cast<int>(i);
  int q = static_cast<int>(reps.size());
  std::vector<int> t(std::size_t(q) * q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      t[std::size_t(i) * q + j] = index_of_rep[rep[g.mul(reps[i], reps[j])]];
  std::vector<int> proj(g.order());
  for (int a = 0; a < g.order(); ++a) proj[a] = index_of_rep[rep[a]];
  return QuotientView{FiniteGroup(q, std::move(t)), std::move(proj)};
}

inline bool is_homomorphism(const FiniteGroup& a, const FiniteGroup& b,
                            const std::vector<int>& map) {
  if (map.size() != std::size_t(a.order())) return false;
  for (int x = 0; x < a.order(); ++x)
    for (int y = 0; y < a.order(); ++y)
      if (map[a.mul(x, y)] != b.mul(map[x], map[y])) return false;
  return true;
}

/// Greedy minimal-ish generating sequence: repeatedly adjoin the smallest
/// element outside the subgroup generated so far.
inline std::vector<int> generating_sequence(const FiniteGroup& g) {
  std::vector<int> gens;
  std::vector<int> have{0};
  while (static_cast<int>(have.size()) < g.order()) {
    int next = -1;
    std::vector<bool> in(g.order(), false);
    for (int e : have) in[e] = true;
    for (int a = 0; a < g.order(); ++a)
      if (!in[a]) {
        next = a;
        break;
      }
    gens.push_back(next);
    have = subgroup_closure(g, gens);
  }
  return gens;
}

/// Extends generator images to a full homomorphism if one exists (then
/// verified on all pairs); nullopt on any inconsistency.
inline std::optional<std::vector<int>> homomorphism_from_generators(
    const FiniteGroup& a, const std::vector<int>& gens, const FiniteGroup& b,
    const std::vector<int>& images) {
  std::vector<int> map(a.order(), -1);
  map[0] = 0;
  std::vector<int> known{0};
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (map[gens[i]] >= 0) {
      if (map[gens[i]] != images[i]) return std::nullopt;
      continue;
    }
    map[gens[i]] = images[i];
    known.push_back(gens[i]);
  }
  for (std::size_t head = 0; head < known.size(); ++head) {
    int x = known[head];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      int y = a.mul(x, gens[i]);
      int im = b.mul(map[x], images[i]);
      if (map[y] < 0) {
        map[y] = im;
        known.push_back(y);
      } else if (map[y] != im) {
        return std::nullopt;
      }
    }
  }
  if (known.size() != std::size_t(a.order())) return std::nullopt;  // gens do not generate
  if (!is_homomorphism(a, b, map)) return std::nullopt;
  return map;
}

inline std::vector<int> count_orders(const FiniteGroup& g) {
  std::vector<int> counts(g.order() + 1, 0);
  for (int a = 0; a < g.order(); ++a) ++counts[g.order_of(a)];
  return counts;
}

/// Isomorphism search by backtracking over generator images.
inline std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& a,
                                                        const FiniteGroup& b) {
  if (a.order() != b.order()) return std::nullopt;
  if (count_orders(a) != count_orders(b)) return std::nullopt;
  std::vector<int> gens = generating_sequence(a);
  std::vector<int> images(gens.size(), 0);
  std::vector<int> candidates(b.order());
  std::iota(candidates.begin(), candidates.end(), 0);

  std::optional<std::vector<int>> found;
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == gens.size()) {
      auto map = homomorphism_from_generators(a, gens, b, images);
      if (!map) return false;
      std::vector<bool> hit(b.order(), false);
      for (int v : *map) {
        if (hit[v]) return false;
        hit[v] = true;
      }
      found = *map;
      return true;
    }
    int want = a.order_of(gens[i]);
    for (int c : candidates) {
      if (b.order_of(c) != want) continue;
      images[i] = c;
      if (self(self, i + 1)) return true;
    }
    return false;
  };
  rec(rec, 0);
  return found;
}

/// N x| H for an action of H on N by automorphisms (one permutation of N per
/// element of H).  Pair (n, h) has index n*|H| + h.
inline FiniteGroup semidirect_product(const FiniteGroup& n, const FiniteGroup& h,
                                      const std::vector<std::vector<int>>& act) {
  const int nn = n.order(), nh = h.order();
  const int total = nn * nh;
  std::vector<int> t(std::size_t(total) * total);
  for (int n1 = 0; n1 < nn; ++n1)
    for (int h1 = 0; h1 < nh; ++h1)
      for (int n2 = 0; n2 < nn; ++n2)
        for (int h2 = 0; h2 < nh; ++h2) {
          int prod_n = n.mul(n1, act[h1][n2]);
          int prod_h = h.mul(h1, h2);
          t[std::size_t(n1 * nh + h1) * total + (n2 * nh + h2)] = prod_n * nh + prod_h;
        }
  return FiniteGroup(total, std::move(t));
}

}  // namespace crossmod

#endif
