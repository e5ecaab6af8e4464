#ifndef CROSSMOD_CROSSED_MODULE_HPP
#define CROSSMOD_CROSSED_MODULE_HPP

#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "crossmod/abelian.hpp"
#include "crossmod/aut.hpp"
#include "crossmod/cohomology.hpp"

namespace crossmod {

/// A finite crossed module: boundary C -> G with a left G-action on C by
/// automorphisms satisfying equivariance and the Peiffer identity.
struct FiniteCrossedModule {
  GroupPtr c;
  GroupPtr g;
  std::vector<int> boundary;            // C -> G
  std::vector<std::vector<int>> action;  // G x C -> C

  int act(int gg, int cc) const { return action[gg][cc]; }
};

struct CrossedModuleReport {
  bool valid = true;
  std::vector<std::string> failures;

  void fail(std::string what) {
    valid = false;
    if (failures.size() < 50) failures.push_back(std::move(what));
  }
};

/// Exhaustive axiom check; failures are reported as data, not errors.
inline CrossedModuleReport check_crossed_module(const FiniteCrossedModule& m) {
  CrossedModuleReport r;
  const FiniteGroup& c = *m.c;
  const FiniteGroup& g = *m.g;
  if (m.boundary.size() != std::size_t(c.order()) ||
      m.action.size() != std::size_t(g.order())) {
    r.fail("shape: boundary or action tables have wrong size");
    return r;
  }
  for (const auto& row : m.action)
    if (row.size() != std::size_t(c.order())) {
      r.fail("shape: action row has wrong size");
      return r;
    }

  for (int x = 0; x < c.order(); ++x)
    for (int y = 0; y < c.order(); ++y)
      if (m.boundary[c.mul(x, y)] != g.mul(m.boundary[x], m.boundary[y])) {
        r.fail("boundary is not a homomorphism at (" + std::to_string(x) + "," +
               std::to_string(y) + ")");
      }

  for (int gg = 0; gg < g.order(); ++gg) {
    std::vector<bool> hit(c.order(), false);
    for (int x = 0; x < c.order(); ++x) {
      int y = m.act(gg, x);
      if (y < 0 || y >= c.order() || hit[y]) {
        r.fail("action of g" + std::to_string(gg) + " is not a bijection");
        return r;
      }
      hit[y] = true;
    }
    for (int x = 0; x < c.order(); ++x)
      for (int y = 0; y < c.order(); ++y)
        if (m.act(gg, c.mul(x, y)) != c.mul(m.act(gg, x), m.act(gg, y)))
          r.fail("action of g" + std::to_string(gg) + " is not an automorphism at (" +
                 std::to_string(x) + "," + std::to_string(y) + ")");
  }

  for (int x = 0; x < c.order(); ++x)
    if (m.act(FiniteGroup::identity(), x) != x) r.fail("identity acts non-trivially");
  for (int g1 = 0; g1 < g.order(); ++g1)
    for (int g2 = 0; g2 < g.order(); ++g2)
      for (int x = 0; x < c.order(); ++x)
        if (m.act(g.mul(g1, g2), x) != m.act(g1, m.act(g2, x)))
          r.fail("action is not a G-action at (g" + std::to_string(g1) + ",g" +
                 std::to_string(g2) + ",c" + std::to_string(x) + ")");

  // equivariance: boundary(g.c) = g boundary(c) g^-1
  for (int gg = 0; gg < g.order(); ++gg)
    for (int x = 0; x < c.order(); ++x)
      if (m.boundary[m.act(gg, x)] != g.conj(gg, m.boundary[x]))
        r.fail("equivariance fails at (g" + std::to_string(gg) + ",c" + std::to_string(x) +
               ")");

  // Peiffer identity: x y x^-1 = (boundary x) . y
  for (int x = 0; x < c.order(); ++x)
    for (int y = 0; y < c.order(); ++y)
      if (c.conj(x, y) != m.act(m.boundary[x], y))
        r.fail("Peiffer identity fails at (c" + std::to_string(x) + ",c" + std::to_string(y) +
               ")");
  return r;
}

inline void require_crossed_module(const FiniteCrossedModule& m) {
  CrossedModuleReport r = check_crossed_module(m);
  if (!r.valid)
    throw InputError("crossed module axioms fail: " +
                     (r.failures.empty() ? std::string("unknown") : r.failures.front()));
}

/// (G, Aut(G), inner) with the natural Aut(G)-action.
inline FiniteCrossedModule inner_crossed_module(GroupPtr g, int aut_bound = kDefaultAutBound) {
  AutData a = automorphisms(g, aut_bound);
  FiniteCrossedModule m{g, a.aut, a.inner, a.perms};
  return m;
}

/// (M, Q, 0) for an abelian M with a Q-action given as permutations (defaults
/// to the trivial action).
inline FiniteCrossedModule trivial_boundary_crossed_module(
    GroupPtr m, GroupPtr q, std::vector<std::vector<int>> action = {}) {
  if (!m->is_abelian()) throw InputError("trivial crossed module: C must be abelian");
  if (action.empty()) {
    std::vector<int> id(m->order());
    for (int i = 0; i < m->order(); ++i) id[i] = i;
    action.assign(q->order(), id);
  }
  FiniteCrossedModule cm{std::move(m), std::move(q), {}, std::move(action)};
  cm.boundary.assign(cm.c->order(), FiniteGroup::identity());
  require_crossed_module(cm);
  return cm;
}

/// Normal inclusion N <= G with conjugation action.
inline FiniteCrossedModule inclusion_crossed_module(GroupPtr g, const std::vector<int>& normal) {
  SubgroupView sub = make_subgroup(*g, normal);
  if (!is_normal(*g, sub.embed)) throw InputError("inclusion crossed module: subgroup not normal");
  FiniteCrossedModule m{make_group(sub.group), g, sub.embed, {}};
  m.action.assign(g->order(), std::vector<int>(sub.group.order()));
  for (int gg = 0; gg < g->order(); ++gg)
    for (int x = 0; x < sub.group.order(); ++x)
      m.action[gg][x] = sub.index_of[g->conj(gg, sub.embed[x])];
  return m;
}

/// The power map  .^n : C_{n^2} -> C_{n^2}.  The generator v acts by
/// c -> c^(n+1); this is the action under which u -> v^n, r -> v, x -> v is
/// a congruence from the k-invariant extension of <x | x^n> onto this one,
/// making its class a generator of H^3(C_n, C_n).  (The action is trivial on
/// both the image and the kernel of the boundary.)
inline FiniteCrossedModule power_crossed_module(int n) {
  if (n < 2) throw InputError("power crossed module: n must be >= 2");
  const int nn = n * n;
  GroupPtr c = make_group(FiniteGroup::cyclic(nn));
  std::vector<int> boundary(nn);
  for (int i = 0; i < nn; ++i) boundary[i] = (i * n) % nn;
  FiniteCrossedModule m{c, c, std::move(boundary), {}};
  m.action.resize(nn);
  long unit = 1;  // (n+1)^w mod n^2
  for (int w = 0; w < nn; ++w) {
    m.action[w].resize(nn);
    for (int i = 0; i < nn; ++i) m.action[w][i] = static_cast<int>((unit * i) % nn);
    unit = (unit * (n + 1)) % nn;
  }
  return m;
}

/// The crossed 2-fold extension Z >-> C -> G ->> Q carried by a crossed
/// module, with the induced Q-module structure on Z = ker(boundary).
struct CrossedTwoFoldExtension {
  FiniteCrossedModule cm;
  GroupPtr q;                    // G / boundary(C)
  std::vector<int> proj;         // G -> Q
  SubgroupView z;                // ker(boundary) as a subgroup of C
  AbelianDecomposition zdec;     // structure of Z
  QModule zmod;                  // Z as a Q-module
};

namespace detail {

inline std::vector<Int> zmodule_coords(const CrossedTwoFoldExtension& e, int c_elt) {
  int zi = e.z.index_of[c_elt];
  if (zi < 0) throw DomainError("crossed module: element outside ker(boundary)");
  return e.zdec.dlog[zi];
}

}  // namespace detail

inline CrossedTwoFoldExtension two_fold_extension(const FiniteCrossedModule& m) {
  require_crossed_module(m);
  const FiniteGroup& c = *m.c;
  const FiniteGroup& g = *m.g;

  std::vector<int> image;
  for (int x = 0; x < c.order(); ++x) image.push_back(m.boundary[x]);
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  if (!is_normal(g, image))
    throw DomainError("crossed module: boundary image is not normal");
  QuotientView quot = quotient_group(g, image);

  std::vector<int> zelts;
  for (int x = 0; x < c.order(); ++x)
    if (m.boundary[x] == FiniteGroup::identity()) zelts.push_back(x);
  SubgroupView z = make_subgroup(c, zelts);
  for (int x : z.embed)
    for (int y = 0; y < c.order(); ++y)
      if (c.mul(x, y) != c.mul(y, x))
        throw DomainError("crossed module: kernel of boundary is not central");

  AbelianDecomposition zdec = decompose_abelian(z.group);

  // induced Q-action on Z: well defined across coset representatives
  GroupPtr q = make_group(std::move(quot.group));
  std::vector<std::vector<int>> zact(q->order());
  std::vector<int> rep(q->order(), -1);
  for (int gg = 0; gg < g.order(); ++gg)
    if (rep[quot.proj[gg]] < 0) rep[quot.proj[gg]] = gg;
  for (int qq = 0; qq < q->order(); ++qq) {
    zact[qq].resize(z.group.order());
    for (int zi = 0; zi < z.group.order(); ++zi)
      zact[qq][zi] = z.index_of[m.act(rep[qq], z.embed[zi])];
  }
  for (int gg = 0; gg < g.order(); ++gg)
    for (int zi = 0; zi < z.group.order(); ++zi)
      if (z.index_of[m.act(gg, z.embed[zi])] != zact[quot.proj[gg]][zi])
        throw DomainError("crossed module: induced action on Z is not well defined");

  QModule zmod{q, zdec.factors, {}};
  for (int qq = 0; qq < q->order(); ++qq) {
    IntMatrix a(zdec.rank(), zdec.rank());
    for (int k = 0; k < zdec.rank(); ++k) {
      int img = zact[qq][zdec.generators[k]];
      const auto& coords = zdec.dlog[img];
      for (int i = 0; i < zdec.rank(); ++i) a(i, k) = coords[i];
    }
    zmod.action.push_back(std::move(a));
  }
  zmod.validate();

  return CrossedTwoFoldExtension{m, q, std::move(quot.proj), std::move(z), std::move(zdec),
                                 std::move(zmod)};
}

/// Characteristic 3-cocycle of a crossed module from a set section of
/// G ->> Q: z(q1,q2,q3) = s(q1).c(q2,q3) * c(q1,q2q3) * c(q1q2,q3)^-1 *
/// c(q1,q2)^-1 where boundary(c(q1,q2)) = s(q1) s(q2) s(q1q2)^-1.
/// The section must be normalized (section[0] == identity).
inline Cochain characteristic_cocycle(const CrossedTwoFoldExtension& e,
                                      const std::vector<int>& section,
                                      unsigned seed = 0) {
  const FiniteGroup& c = *e.cm.c;
  const FiniteGroup& g = *e.cm.g;
  const FiniteGroup& q = *e.q;
  if (static_cast<int>(section.size()) != q.order())
    throw InputError("characteristic class: section size mismatch");
  if (section[0] != FiniteGroup::identity())
    throw InputError("characteristic class: section must be normalized");
  for (int i = 0; i < q.order(); ++i)
    if (e.proj[section[i]] != i)
      throw InputError("characteristic class: section does not split the projection");

  std::mt19937_64 rng(seed);
  // boundary fibers for choosing c(q1, q2)
  std::vector<std::vector<int>> fiber(g.order());
  for (int x = 0; x < c.order(); ++x) fiber[e.cm.boundary[x]].push_back(x);

  auto pick = [&](const std::vector<int>& options) {
    if (options.empty())
      throw DomainError("characteristic class: section defect outside boundary image");
    if (seed == 0) return options.front();
    std::uniform_int_distribution<std::size_t> d(0, options.size() - 1);
    return options[d(rng)];
  };

  std::vector<std::vector<int>> fs(q.order(), std::vector<int>(q.order()));
  for (int q1 = 0; q1 < q.order(); ++q1)
    for (int q2 = 0; q2 < q.order(); ++q2) {
      if (q1 == 0 || q2 == 0) {
        fs[q1][q2] = FiniteGroup::identity();  // normalized
        continue;
      }
      int defect = g.mul(g.mul(section[q1], section[q2]), g.inv(section[q.mul(q1, q2)]));
      fs[q1][q2] = pick(fiber[defect]);
    }

  Cochain z = Cochain::zero(e.q, e.zmod, 3);
  for (int q1 = 1; q1 < q.order(); ++q1)
    for (int q2 = 1; q2 < q.order(); ++q2)
      for (int q3 = 1; q3 < q.order(); ++q3) {
        int v = e.cm.act(section[q1], fs[q2][q3]);
        v = c.mul(v, fs[q1][q.mul(q2, q3)]);
        v = c.mul(v, c.inv(fs[q.mul(q1, q2)][q3]));
        v = c.mul(v, c.inv(fs[q1][q2]));
        z.set_value({q1, q2, q3}, detail::zmodule_coords(e, v));
      }
  return z;
}

/// Canonical normalized section: the smallest G-element in each fiber.
inline std::vector<int> canonical_section(const CrossedTwoFoldExtension& e, unsigned seed = 0) {
  std::vector<std::vector<int>> fibers(e.q->order());
  for (int gg = 0; gg < e.cm.g->order(); ++gg) fibers[e.proj[gg]].push_back(gg);
  std::vector<int> s(e.q->order());
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  for (int qq = 1; qq < e.q->order(); ++qq) {
    if (seed == 0) {
      s[qq] = fibers[qq].front();
    } else {
      std::uniform_int_distribution<std::size_t> d(0, fibers[qq].size() - 1);
      s[qq] = fibers[qq][d(rng)];
    }
  }
  s[0] = FiniteGroup::identity();
  return s;
}

/// The characteristic class of a crossed module in H^3(Q, Z).
struct CharacteristicClass {
  CrossedTwoFoldExtension extension;
  std::shared_ptr<const CohomologyGroup> h3;
  Cochain cocycle;
  std::vector<Int> coordinates;
  Int order = 1;
  bool zero = true;
};

inline CharacteristicClass characteristic_class(const FiniteCrossedModule& m,
                                                unsigned seed = 0) {
  CrossedTwoFoldExtension e = two_fold_extension(m);
  Cochain z = characteristic_cocycle(e, canonical_section(e, seed), seed);
  auto h3 = std::make_shared<CohomologyGroup>(e.q, e.zmod, 3,
                                              bar_resolution(e.q, 4, 8, 8));
  if (!h3->is_cocycle(z))
    throw DomainError("characteristic class: internal: cocycle condition fails");
  CharacteristicClass out{std::move(e), h3, std::move(z), {}, 1, true};
  out.coordinates = h3->class_of_cocycle(out.cocycle);
  out.order = h3->order_of(out.coordinates);
  out.zero = h3->is_zero_class(out.coordinates);
  return out;
}

/// Pullback of the extension along a subgroup Q' <= Q: the middle group
/// becomes the preimage of Q' in G, everything else is induced.  The
/// subgroup is given by its elements in Q.
inline CrossedTwoFoldExtension restrict_extension(const CrossedTwoFoldExtension& e,
                                                  const std::vector<int>& q_subgroup) {
  if (!is_subgroup(*e.q, q_subgroup))
    throw InputError("restrict: the given set is not a subgroup of Q");
  std::vector<bool> keep(e.q->order(), false);
  for (int s : q_subgroup) keep[s] = true;
  std::vector<int> gelts;
  for (int gg = 0; gg < e.cm.g->order(); ++gg)
    if (keep[e.proj[gg]]) gelts.push_back(gg);
  SubgroupView gsub = make_subgroup(*e.cm.g, gelts);

  FiniteCrossedModule restricted{e.cm.c, make_group(gsub.group), e.cm.boundary, {}};
  for (int x : restricted.boundary)
    if (gsub.index_of[x] < 0)
      throw DomainError("restrict: internal: boundary image escapes the preimage subgroup");
  for (int& x : restricted.boundary) x = gsub.index_of[x];
  restricted.action.reserve(gsub.group.order());
  for (int i = 0; i < gsub.group.order(); ++i)
    restricted.action.push_back(e.cm.action[gsub.embed[i]]);
  return two_fold_extension(restricted);
}

}  // namespace crossmod

#endif
