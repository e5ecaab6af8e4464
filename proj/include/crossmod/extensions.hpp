#ifndef CROSSMOD_EXTENSIONS_HPP
#define CROSSMOD_EXTENSIONS_HPP

#include <algorithm>
#include <future>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "crossmod/crossed_module.hpp"

namespace crossmod {

/// Abstract kernel (N, Q, phi): a homomorphism Q -> Out(N) stored through
/// the canonical automorphism representative of each outer class.
struct AbstractKernel {
  GroupPtr n;
  GroupPtr q;
  AutData aut;               // of N
  std::vector<int> phi_out;  // Q -> Out(N), a homomorphism
  std::vector<int> phi;      // Q -> Aut(N): canonical representatives

  void validate() const {
    if (phi_out.size() != std::size_t(q->order()) || phi.size() != phi_out.size())
      throw InputError("kernel: phi size mismatch");
    if (phi_out[0] != 0) throw InputError("kernel: phi must send identity to identity");
    for (int a = 0; a < q->order(); ++a) {
      if (phi[a] != aut.out_reps[phi_out[a]])
        throw InputError("kernel: phi is not the canonical representative");
      for (int b = 0; b < q->order(); ++b)
        if (phi_out[q->mul(a, b)] != aut.out->mul(phi_out[a], phi_out[b]))
          throw InputError("kernel: phi is not a homomorphism into Out(N)");
    }
  }
};

inline AbstractKernel make_kernel(GroupPtr n, GroupPtr q, std::vector<int> phi_out,
                                  int aut_bound = kDefaultAutBound) {
  AutData aut = automorphisms(n, aut_bound);
  AbstractKernel k{std::move(n), std::move(q), std::move(aut), std::move(phi_out), {}};
  k.phi.resize(k.phi_out.size());
  for (std::size_t i = 0; i < k.phi.size(); ++i) k.phi[i] = k.aut.out_reps.at(k.phi_out[i]);
  k.validate();
  return k;
}

/// All abstract kernels (N, Q, -): one per homomorphism Q -> Out(N),
/// enumerated by backtracking over generator images in a fixed order.
inline std::vector<AbstractKernel> enumerate_kernels(const GroupPtr& n, const GroupPtr& q,
                                                     int aut_bound = kDefaultAutBound) {
  AutData aut = automorphisms(n, aut_bound);
  std::vector<int> gens = generating_sequence(*q);
  std::vector<AbstractKernel> kernels;
  std::vector<int> images(gens.size());
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == gens.size()) {
      auto hom = homomorphism_from_generators(*q, gens, *aut.out, images);
      if (!hom) return;
      AbstractKernel k{n, q, aut, *hom, {}};
      k.phi.resize(hom->size());
      for (std::size_t j = 0; j < k.phi.size(); ++j) k.phi[j] = aut.out_reps[(*hom)[j]];
      k.validate();
      kernels.push_back(std::move(k));
      return;
    }
    for (int c = 0; c < aut.out->order(); ++c) {
      images[i] = c;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return kernels;
}

/// The induced abstract kernel (Z(N), Q, phi restricted to the center).
inline AbstractKernel center_kernel(const AbstractKernel& k,
                                    int aut_bound = kDefaultAutBound) {
  SubgroupView z = make_subgroup(*k.n, k.n->center());
  GroupPtr zg = make_group(z.group);
  AutData zaut = automorphisms(zg, aut_bound);
  std::vector<int> phi_out(k.q->order());
  for (int qq = 0; qq < k.q->order(); ++qq) {
    std::vector<int> perm(z.group.order());
    for (int zi = 0; zi < z.group.order(); ++zi)
      perm[zi] = z.index_of[k.aut.perms[k.phi[qq]][z.embed[zi]]];
    auto it = std::lower_bound(zaut.perms.begin(), zaut.perms.end(), perm);
    if (it == zaut.perms.end() || *it != perm)
      throw DomainError("center kernel: internal: restricted action not an automorphism");
    phi_out[qq] = zaut.out_proj[static_cast<int>(it - zaut.perms.begin())];
  }
  AbstractKernel ck{zg, k.q, std::move(zaut), std::move(phi_out), {}};
  ck.phi.resize(ck.phi_out.size());
  for (std::size_t i = 0; i < ck.phi.size(); ++i) ck.phi[i] = ck.aut.out_reps[ck.phi_out[i]];
  ck.validate();
  return ck;
}

/// Pullback G1 x_Q G2 with its projections; pairs sorted lexicographically
/// so the identity pair is element 0.
struct Pullback {
  GroupPtr group;
  std::vector<std::pair<int, int>> elements;
  std::vector<int> proj1, proj2;

  int index_of(int a, int b) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), std::make_pair(a, b));
    if (it == elements.end() || *it != std::make_pair(a, b))
      throw InputError("pullback: pair outside the pullback");
    return static_cast<int>(it - elements.begin());
  }
};

inline Pullback pullback(const FiniteGroup& g1, const std::vector<int>& f1,
                         const FiniteGroup& g2, const std::vector<int>& f2) {
  Pullback p;
  for (int a = 0; a < g1.order(); ++a)
    for (int b = 0; b < g2.order(); ++b)
      if (f1[a] == f2[b]) p.elements.push_back({a, b});
  const int n = static_cast<int>(p.elements.size());
  std::vector<int> table(std::size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto [a1, b1] = p.elements[i];
      auto [a2, b2] = p.elements[j];
      table[std::size_t(i) * n + j] = p.index_of(g1.mul(a1, a2), g2.mul(b1, b2));
    }
  p.group = make_group(FiniteGroup(n, std::move(table)));
  for (auto [a, b] : p.elements) {
    p.proj1.push_back(a);
    p.proj2.push_back(b);
  }
  return p;
}

/// A group extension N >-> E ->> Q given by element maps.
struct Extension {
  GroupPtr e;
  GroupPtr n;
  GroupPtr q;
  std::vector<int> inj;   // N -> E
  std::vector<int> surj;  // E -> Q

  void validate() const {
    if (e->order() != n->order() * q->order())
      throw InputError("extension: |E| != |N| |Q|");
    if (!is_homomorphism(*n, *e, inj)) throw InputError("extension: inj is not a homomorphism");
    if (!is_homomorphism(*e, *q, surj)) throw InputError("extension: surj is not a homomorphism");
    std::set<int> image(inj.begin(), inj.end());
    if (image.size() != std::size_t(n->order()))
      throw InputError("extension: inj is not injective");
    std::set<int> hit(surj.begin(), surj.end());
    if (hit.size() != std::size_t(q->order()))
      throw InputError("extension: surj is not surjective");
    for (int x = 0; x < e->order(); ++x) {
      bool in_kernel = surj[x] == FiniteGroup::identity();
      if (in_kernel != (image.count(x) > 0))
        throw InputError("extension: ker(surj) != im(inj)");
    }
  }

  /// Index of the N-element mapping to a kernel element of E.
  int inj_inverse(int e_elt) const {
    for (int m = 0; m < n->order(); ++m)
      if (inj[m] == e_elt) return m;
    throw InputError("extension: element outside im(inj)");
  }
};

/// Outer action Q -> Out(N) induced by conjugation in E.
inline std::vector<int> induced_kernel_map(const Extension& ext, const AutData& aut) {
  std::vector<int> lift(ext.q->order(), -1);
  for (int x = 0; x < ext.e->order(); ++x)
    if (lift[ext.surj[x]] < 0) lift[ext.surj[x]] = x;
  std::vector<int> out_images(ext.q->order());
  for (int qq = 0; qq < ext.q->order(); ++qq) {
    std::vector<int> perm(ext.n->order());
    for (int m = 0; m < ext.n->order(); ++m)
      perm[m] = ext.inj_inverse(ext.e->conj(lift[qq], ext.inj[m]));
    auto it = std::lower_bound(aut.perms.begin(), aut.perms.end(), perm);
    if (it == aut.perms.end() || *it != perm)
      throw DomainError("extension: conjugation is not an automorphism of N");
    out_images[qq] = aut.out_proj[static_cast<int>(it - aut.perms.begin())];
  }
  return out_images;
}

/// The crossed module (N, G^phi, d^phi) of an abstract kernel together with
/// the extension view over the *given* Q (section q -> (rep phi(q), q)).
struct KernelCrossedModule {
  Pullback gphi;  // Aut(N) x_Out Q
  CrossedTwoFoldExtension view;
  std::vector<int> section;  // Q -> G^phi
};

inline KernelCrossedModule kernel_crossed_module(const AbstractKernel& k) {
  k.validate();
  std::vector<int> qmap(k.q->order());
  for (int i = 0; i < k.q->order(); ++i) qmap[i] = k.phi_out[i];
  Pullback p = pullback(*k.aut.aut, k.aut.out_proj, *k.q, qmap);

  FiniteCrossedModule cm{k.n, p.group, {}, {}};
  cm.boundary.resize(k.n->order());
  for (int m = 0; m < k.n->order(); ++m)
    cm.boundary[m] = p.index_of(k.aut.inner[m], FiniteGroup::identity());
  cm.action.reserve(p.group->order());
  for (int i = 0; i < p.group->order(); ++i) cm.action.push_back(k.aut.perms[p.proj1[i]]);
  require_crossed_module(cm);

  CrossedTwoFoldExtension view{cm, k.q, p.proj2, make_subgroup(*k.n, k.n->center()), {}, {}};
  view.zdec = decompose_abelian(view.z.group);
  view.zmod.group = k.q;
  view.zmod.factors = view.zdec.factors;
  for (int qq = 0; qq < k.q->order(); ++qq) {
    IntMatrix a(view.zdec.rank(), view.zdec.rank());
    for (int col = 0; col < view.zdec.rank(); ++col) {
      int gen = view.z.embed[view.zdec.generators[col]];
      int img = view.z.index_of[k.aut.perms[k.phi[qq]][gen]];
      for (int row = 0; row < view.zdec.rank(); ++row)
        a(row, col) = view.zdec.dlog[img][row];
    }
    view.zmod.action.push_back(std::move(a));
  }
  view.zmod.validate();

  std::vector<int> section(k.q->order());
  for (int qq = 0; qq < k.q->order(); ++qq) section[qq] = p.index_of(k.phi[qq], qq);
  return KernelCrossedModule{std::move(p), std::move(view), std::move(section)};
}

/// The Eilenberg-MacLane obstruction of an abstract kernel: the
/// characteristic class of (N, G^phi, d^phi) in H^3(Q, Z(N)).
struct Obstruction {
  KernelCrossedModule kcm;
  std::shared_ptr<const CohomologyGroup> h3;
  Cochain cocycle;
  std::vector<Int> coordinates;
  Int order = 1;
  bool zero = true;
  std::optional<Cochain> witness;  // degree 2, present iff zero
};

inline Obstruction obstruction(const AbstractKernel& k) {
  Obstruction o{kernel_crossed_module(k), nullptr, {}, {}, 1, true, std::nullopt};
  o.cocycle = characteristic_cocycle(o.kcm.view, o.kcm.section);
  o.h3 = std::make_shared<const CohomologyGroup>(k.q, o.kcm.view.zmod, 3,
                                                 bar_resolution(k.q, 4, 8, 8));
  if (!o.h3->is_cocycle(o.cocycle))
    throw DomainError("obstruction: internal: cocycle condition fails");
  o.coordinates = o.h3->class_of_cocycle(o.cocycle);
  o.order = o.h3->order_of(o.coordinates);
  o.zero = o.h3->is_zero_class(o.coordinates);
  if (o.zero) o.witness = o.h3->coboundary_witness(o.cocycle);
  return o;
}

inline bool is_extendible(const AbstractKernel& k) { return obstruction(k).zero; }

namespace detail {

// Value of a Z(N)-cochain at a pair, as an element of N.
inline int center_cochain_value(const CrossedTwoFoldExtension& view, const Cochain& b,
                                int q1, int q2) {
  std::vector<Int> coords = b.value({q1, q2});
  int z = FiniteGroup::identity();
  for (int i = 0; i < view.zdec.rank(); ++i)
    z = view.z.group.mul(z, view.z.group.pow(view.zdec.generators[i], coords[i].get_si()));
  return view.z.embed[z];
}

}  // namespace detail

/// Realizes an extendible kernel as the group Q x N with multiplication
/// (q1,n1)(q2,n2) = (q1 q2, n1 * phi(q1)(n2) * f(q1,q2)) for the corrected
/// factor set f = n_0 * witness^-1; element (q,n) has index q|N| + n.
inline Extension construct_extension(const AbstractKernel& k, const Obstruction& o,
                                     const Cochain& witness) {
  const FiniteGroup& qg = *k.q;
  const FiniteGroup& ng = *k.n;
  const CrossedTwoFoldExtension& view = o.kcm.view;

  // canonical factor set n0 from the obstruction's section: boundary fiber
  // of the section defect, smallest N-element (matches the cocycle choices)
  std::vector<std::vector<int>> f(qg.order(), std::vector<int>(qg.order(), 0));
  for (int q1 = 1; q1 < qg.order(); ++q1)
    for (int q2 = 1; q2 < qg.order(); ++q2) {
      int a = k.aut.compose(k.aut.compose(k.phi[q1], k.phi[q2]),
                            k.aut.aut->inv(k.phi[qg.mul(q1, q2)]));
      int base = -1;
      for (int m = 0; m < ng.order(); ++m)
        if (k.aut.inner[m] == a) {
          base = m;
          break;
        }
      if (base < 0) throw DomainError("construct: internal: defect is not inner");
      int corr = detail::center_cochain_value(view, witness, q1, q2);
      f[q1][q2] = ng.mul(base, ng.inv(corr));
    }

  const int total = qg.order() * ng.order();
  std::vector<int> table(std::size_t(total) * total);
  auto idx = [&](int qq, int nn) { return qq * ng.order() + nn; };
  for (int q1 = 0; q1 < qg.order(); ++q1)
    for (int n1 = 0; n1 < ng.order(); ++n1)
      for (int q2 = 0; q2 < qg.order(); ++q2)
        for (int n2 = 0; n2 < ng.order(); ++n2) {
          int prod_n = ng.mul(ng.mul(n1, k.aut.perms[k.phi[q1]][n2]), f[q1][q2]);
          table[std::size_t(idx(q1, n1)) * total + idx(q2, n2)] =
              idx(qg.mul(q1, q2), prod_n);
        }
  Extension ext;
  ext.e = make_group(FiniteGroup(total, std::move(table)));
  ext.n = k.n;
  ext.q = k.q;
  ext.inj.resize(ng.order());
  for (int m = 0; m < ng.order(); ++m) ext.inj[m] = idx(0, m);
  ext.surj.resize(total);
  for (int x = 0; x < total; ++x) ext.surj[x] = x / ng.order();
  ext.validate();
  if (induced_kernel_map(ext, k.aut) != k.phi_out)
    throw DomainError("construct: internal: induced kernel differs from phi");
  return ext;
}

inline Extension construct_extension(const AbstractKernel& k) {
  Obstruction o = obstruction(k);
  if (!o.zero || !o.witness)
    throw DomainError("construct: kernel is not extendible (non-zero obstruction class)");
  return construct_extension(k, o, *o.witness);
}

/// Congruence test: an isomorphism E1 -> E2 commuting with inj and surj.
inline bool congruent(const Extension& e1, const Extension& e2) {
  if (e1.n->table() != e2.n->table() || e1.q->table() != e2.q->table())
    throw InputError("congruent: extensions are not over the same N and Q");
  if (e1.e->order() != e2.e->order()) return false;

  // generators: images of N-generators are forced; lifts of Q-generators
  // range over the matching fiber
  std::vector<int> ngens = generating_sequence(*e1.n);
  std::vector<int> qgens = generating_sequence(*e1.q);
  std::vector<int> gens;
  std::vector<int> lift1(e1.q->order(), -1);
  for (int x = 0; x < e1.e->order(); ++x)
    if (lift1[e1.surj[x]] < 0) lift1[e1.surj[x]] = x;
  for (int m : ngens) gens.push_back(e1.inj[m]);
  for (int qq : qgens) gens.push_back(lift1[qq]);

  std::vector<std::vector<int>> candidates;
  for (int m : ngens) candidates.push_back({e2.inj[m]});
  for (int qq : qgens) {
    std::vector<int> fiber;
    for (int x = 0; x < e2.e->order(); ++x)
      if (e2.surj[x] == qq) fiber.push_back(x);
    candidates.push_back(fiber);
  }

  std::vector<int> images(gens.size());
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == gens.size()) {
      auto map = homomorphism_from_generators(*e1.e, gens, *e2.e, images);
      if (!map) return false;
      std::vector<bool> hit(e2.e->order(), false);
      for (int v : *map) {
        if (hit[v]) return false;
        hit[v] = true;
      }
      for (int m = 0; m < e1.n->order(); ++m)
        if ((*map)[e1.inj[m]] != e2.inj[m]) return false;
      for (int x = 0; x < e1.e->order(); ++x)
        if (e2.surj[(*map)[x]] != e1.surj[x]) return false;
      return true;
    }
    for (int c : candidates[i]) {
      images[i] = c;
      if (self(self, i + 1)) return true;
    }
    return false;
  };
  return rec(rec, 0);
}

/// Baer-style action: given E1 realizing (N, Q, phi) and a center extension
/// Z(N) >-> E ->> Q realizing the induced module structure, builds
/// E2 = (N x| (E1 x_Q E)) / {(y1 y2, j1(y1)^-1, j(y2)^-1)}.
inline Extension baer_act(const Extension& e1, const Extension& center_ext) {
  if (e1.q->table() != center_ext.q->table())
    throw InputError("baer: extensions are not over the same Q");
  SubgroupView z = make_subgroup(*e1.n, e1.n->center());
  if (center_ext.n->table() != z.group.table())
    throw InputError("baer: second extension is not by the center of N");

  // module agreement: conjugation in E must act on Z like conjugation in E1
  {
    std::vector<int> lifts(e1.q->order(), -1), lifts1(e1.q->order(), -1);
    for (int x = 0; x < center_ext.e->order(); ++x)
      if (lifts[center_ext.surj[x]] < 0) lifts[center_ext.surj[x]] = x;
    for (int x = 0; x < e1.e->order(); ++x)
      if (lifts1[e1.surj[x]] < 0) lifts1[e1.surj[x]] = x;
    for (int qq = 0; qq < e1.q->order(); ++qq)
      for (int zi = 0; zi < z.group.order(); ++zi) {
        int via_center = center_ext.inj_inverse(
            center_ext.e->conj(lifts[qq], center_ext.inj[zi]));
        int via_e1 = z.index_of[e1.inj_inverse(e1.e->conj(lifts1[qq], e1.inj[z.embed[zi]]))];
        if (via_center != via_e1)
          throw InputError("baer: center extension has a different module structure");
      }
  }

  Pullback p = pullback(*e1.e, e1.surj, *center_ext.e, center_ext.surj);
  // action of the pullback on N through conjugation in E1
  std::vector<std::vector<int>> act(p.group->order(), std::vector<int>(e1.n->order()));
  for (int i = 0; i < p.group->order(); ++i)
    for (int m = 0; m < e1.n->order(); ++m)
      act[i][m] = e1.inj_inverse(e1.e->conj(p.proj1[i], e1.inj[m]));
  FiniteGroup s = semidirect_product(*e1.n, *p.group, act);

  // the normal subgroup {(y1 y2, j1(y1)^-1, j(y2)^-1)}
  std::vector<int> kelts;
  for (int y1 = 0; y1 < e1.n->order(); ++y1)
    for (int y2 = 0; y2 < z.group.order(); ++y2) {
      int nn = e1.n->mul(y1, z.embed[y2]);
      int pp = p.index_of(e1.e->inv(e1.inj[y1]), center_ext.e->inv(center_ext.inj[y2]));
      kelts.push_back(nn * p.group->order() + pp);
    }
  std::sort(kelts.begin(), kelts.end());
  if (!is_subgroup(s, kelts) || !is_normal(s, kelts))
    throw DomainError("baer: internal: twisted graph is not a normal subgroup");
  QuotientView quo = quotient_group(s, kelts);

  Extension e2;
  e2.e = make_group(std::move(quo.group));
  e2.n = e1.n;
  e2.q = e1.q;
  e2.inj.resize(e1.n->order());
  int p_identity = p.index_of(FiniteGroup::identity(), FiniteGroup::identity());
  for (int m = 0; m < e1.n->order(); ++m)
    e2.inj[m] = quo.proj[m * p.group->order() + p_identity];
  e2.surj.assign(e2.e->order(), -1);
  for (int nn = 0; nn < e1.n->order(); ++nn)
    for (int i = 0; i < p.group->order(); ++i) {
      int target = quo.proj[nn * p.group->order() + i];
      int qq = e1.surj[p.proj1[i]];
      if (e2.surj[target] >= 0 && e2.surj[target] != qq)
        throw DomainError("baer: internal: projection not constant on cosets");
      e2.surj[target] = qq;
    }
  e2.validate();
  return e2;
}

struct EnumerationBudget {
  int max_n = 8;
  int max_q = 4;
  int threads = 1;
};

namespace detail {

struct FactorSystem {
  std::vector<int> lifts;                // per Q element, aut index (identity at 0)
  std::vector<std::vector<int>> values;  // f: Q x Q -> N, normalized
};

// Builds the extension determined by compatible (lifts, factor set) data.
inline Extension extension_from_system(const AbstractKernel& k, const FactorSystem& sys) {
  const FiniteGroup& qg = *k.q;
  const FiniteGroup& ng = *k.n;
  const int total = qg.order() * ng.order();
  std::vector<int> table(std::size_t(total) * total);
  auto idx = [&](int qq, int nn) { return qq * ng.order() + nn; };
  for (int q1 = 0; q1 < qg.order(); ++q1)
    for (int n1 = 0; n1 < ng.order(); ++n1)
      for (int q2 = 0; q2 < qg.order(); ++q2)
        for (int n2 = 0; n2 < ng.order(); ++n2) {
          int prod_n =
              ng.mul(ng.mul(n1, k.aut.perms[sys.lifts[q1]][n2]), sys.values[q1][q2]);
          table[std::size_t(idx(q1, n1)) * total + idx(q2, n2)] =
              idx(qg.mul(q1, q2), prod_n);
        }
  Extension ext;
  ext.e = make_group(FiniteGroup(total, std::move(table)));
  ext.n = k.n;
  ext.q = k.q;
  ext.inj.resize(ng.order());
  for (int m = 0; m < ng.order(); ++m) ext.inj[m] = idx(0, m);
  ext.surj.resize(total);
  for (int x = 0; x < total; ++x) ext.surj[x] = x / ng.order();
  ext.validate();
  return ext;
}

inline std::vector<int> encode_system(const FactorSystem& sys) {
  std::vector<int> code = sys.lifts;
  for (const auto& row : sys.values) code.insert(code.end(), row.begin(), row.end());
  return code;
}

// h-transform: the congruence theta(n, q) = (n h(q)^-1, q) carries
// (lifts, f) to lifts'(q) = c_{h(q)} lifts(q) and
// f'(q1,q2) = h(q1) lifts(q1)(h(q2)) f(q1,q2) h(q1 q2)^-1.
inline FactorSystem transform_system(const AbstractKernel& k, const FactorSystem& sys,
                                     const std::vector<int>& h) {
  const FiniteGroup& qg = *k.q;
  const FiniteGroup& ng = *k.n;
  FactorSystem out = sys;
  for (int qq = 1; qq < qg.order(); ++qq)
    out.lifts[qq] = k.aut.compose(k.aut.inner[h[qq]], sys.lifts[qq]);
  for (int q1 = 1; q1 < qg.order(); ++q1)
    for (int q2 = 1; q2 < qg.order(); ++q2) {
      int v = ng.mul(h[q1], k.aut.perms[sys.lifts[q1]][h[q2]]);
      v = ng.mul(v, sys.values[q1][q2]);
      v = ng.mul(v, ng.inv(h[qg.mul(q1, q2)]));
      out.values[q1][q2] = v;
    }
  return out;
}

}  // namespace detail

/// Exhaustive factor-system search: enumerates every pair (lifted
/// automorphism assignment, normalized factor set) satisfying the
/// compatibility and cocycle conditions, groups the results into congruence
/// classes via the h-transform orbits, and returns one realization per
/// class.  Independent of the obstruction machinery.
inline std::vector<Extension> enumerate_extensions(const AbstractKernel& k,
                                                   const EnumerationBudget& budget = {}) {
  k.validate();
  const FiniteGroup& qg = *k.q;
  const FiniteGroup& ng = *k.n;
  if (ng.order() > budget.max_n || qg.order() > budget.max_q)
    throw DomainError("enumerate: kernel exceeds the search budget (|N| <= " +
                      std::to_string(budget.max_n) + ", |Q| <= " +
                      std::to_string(budget.max_q) + ")");

  const int nq = qg.order();
  // fibers of N over Inn(N)
  std::map<int, std::vector<int>> inner_fiber;
  for (int m = 0; m < ng.order(); ++m) inner_fiber[k.aut.inner[m]].push_back(m);

  std::vector<std::vector<int>> lift_options(nq);
  lift_options[0] = {0};
  for (int qq = 1; qq < nq; ++qq) {
    for (int i : k.aut.inn_elements) lift_options[qq].push_back(k.aut.compose(i, k.phi[qq]));
    std::sort(lift_options[qq].begin(), lift_options[qq].end());
  }

  // pair list: (q1, q2) with q1, q2 != e, fixed order for backtracking
  std::vector<std::pair<int, int>> pairs;
  for (int q1 = 1; q1 < nq; ++q1)
    for (int q2 = 1; q2 < nq; ++q2) pairs.push_back({q1, q2});
  std::vector<std::vector<int>> pair_pos(nq, std::vector<int>(nq, -1));
  for (std::size_t i = 0; i < pairs.size(); ++i)
    pair_pos[pairs[i].first][pairs[i].second] = static_cast<int>(i);
  // triples become checkable once all three pair positions are assigned
  struct Triple {
    int q1, q2, q3;
  };
  std::vector<std::vector<Triple>> ready_at(pairs.size() + 1);
  for (int q1 = 1; q1 < nq; ++q1)
    for (int q2 = 1; q2 < nq; ++q2)
      for (int q3 = 1; q3 < nq; ++q3) {
        int last = pair_pos[q1][q2];
        int q12 = qg.mul(q1, q2), q23 = qg.mul(q2, q3);
        if (q12 != 0) last = std::max(last, pair_pos[q12][q3]);
        last = std::max(last, pair_pos[q2][q3]);
        if (q23 != 0) last = std::max(last, pair_pos[q1][q23]);
        ready_at[last + 1].push_back({q1, q2, q3});
      }

  std::vector<detail::FactorSystem> solutions;
  detail::FactorSystem sys;
  sys.lifts.assign(nq, 0);
  sys.values.assign(nq, std::vector<int>(nq, 0));

  auto f_of = [&](int q1, int q2) {
    return (q1 == 0 || q2 == 0) ? FiniteGroup::identity() : sys.values[q1][q2];
  };
  auto cocycle_ok = [&](const Triple& t) {
    // f(q1,q2) f(q1q2,q3) = lifts(q1)(f(q2,q3)) f(q1,q2q3)
    int lhs = ng.mul(f_of(t.q1, t.q2), f_of(qg.mul(t.q1, t.q2), t.q3));
    int rhs = ng.mul(k.aut.perms[sys.lifts[t.q1]][f_of(t.q2, t.q3)],
                     f_of(t.q1, qg.mul(t.q2, t.q3)));
    return lhs == rhs;
  };

  std::vector<std::vector<int>> pair_fiber(pairs.size());
  auto search_f = [&](auto&& self, std::size_t i) -> void {
    for (const Triple& t : ready_at[i])
      if (!cocycle_ok(t)) return;
    if (i == pairs.size()) {
      solutions.push_back(sys);
      return;
    }
    auto [q1, q2] = pairs[i];
    for (int v : pair_fiber[i]) {
      sys.values[q1][q2] = v;
      self(self, i + 1);
    }
    sys.values[q1][q2] = 0;
  };

  auto search_lifts = [&](auto&& self, int qq) -> void {
    if (qq == nq) {
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto [q1, q2] = pairs[i];
        int defect = k.aut.compose(k.aut.compose(sys.lifts[q1], sys.lifts[q2]),
                                   k.aut.aut->inv(sys.lifts[qg.mul(q1, q2)]));
        auto it = inner_fiber.find(defect);
        if (it == inner_fiber.end()) return;  // no factor set can repair this lift
        pair_fiber[i] = it->second;
      }
      search_f(search_f, 0);
      return;
    }
    for (int a : lift_options[qq]) {
      sys.lifts[qq] = a;
      self(self, qq + 1);
    }
  };
  search_lifts(search_lifts, 1);

  // group into congruence classes by h-orbit canonical forms
  std::map<std::vector<int>, detail::FactorSystem> classes;
  std::vector<int> h(nq, 0);
  for (const auto& sol : solutions) {
    std::vector<int> best = detail::encode_system(sol);
    detail::FactorSystem best_sys = sol;
    auto sweep = [&](auto&& self, int qq) -> void {
      if (qq == nq) {
        detail::FactorSystem t = detail::transform_system(k, sol, h);
        std::vector<int> code = detail::encode_system(t);
        if (code < best) {
          best = code;
          best_sys = t;
        }
        return;
      }
      for (int m = 0; m < ng.order(); ++m) {
        h[qq] = m;
        self(self, qq + 1);
      }
      h[qq] = 0;
    };
    if (nq > 1) sweep(sweep, 1);
    classes.emplace(std::move(best), best_sys);
  }

  std::vector<Extension> result;
  result.reserve(classes.size());
  for (const auto& [code, s] : classes) result.push_back(detail::extension_from_system(k, s));
  for (const Extension& ext : result)
    if (induced_kernel_map(ext, k.aut) != k.phi_out)
      throw DomainError("enumerate: internal: solution realizes a different kernel");
  return result;
}

}  // namespace crossmod

#endif
