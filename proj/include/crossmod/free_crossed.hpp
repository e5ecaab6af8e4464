#ifndef CROSSMOD_FREE_CROSSED_HPP
#define CROSSMOD_FREE_CROSSED_HPP

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "crossmod/cohomology.hpp"
#include "crossmod/group_ring.hpp"

namespace crossmod {

/// Shared data for elements of the free crossed module on a presentation:
/// the presentation, the enumerated finite quotient Q and the evaluation map.
struct FreeCrossedContext {
  Presentation pres;
  GroupPtr q;
  WordMap map;

  int relators() const { return static_cast<int>(pres.relators.size()); }
};

using FreeCrossedContextPtr = std::shared_ptr<const FreeCrossedContext>;

inline FreeCrossedContextPtr make_free_crossed_context(Presentation p,
                                                       int max_cosets = kDefaultMaxCosets) {
  Enumerated e = todd_coxeter(p, max_cosets);
  return std::make_shared<const FreeCrossedContext>(
      FreeCrossedContext{std::move(p), e.group, std::move(e.map)});
}

/// One conjugated-relator factor ^(conj) relator^sign.
struct CrossedFactor {
  Word conj;
  int relator;
  int sign;  // +1 or -1
};

/// Element of the free crossed module C_R, stored as a formal product of
/// conjugated relators with two cached invariants: the boundary word in F and
/// the image in the abelianization ZQ[R].  Equality in C_R is decided by the
/// cached pair (the natural map from the kernel of the boundary into ZQ[R] is
/// injective, so the pair separates elements).
class FreeCrossedElement {
 public:
  explicit FreeCrossedElement(FreeCrossedContextPtr ctx) : ctx_(std::move(ctx)) {
    boundary_ = Word::identity(ctx_->pres.alphabet);
    abelian_.assign(ctx_->relators(), GroupRingElement(ctx_->q));
  }

  static FreeCrossedElement generator(FreeCrossedContextPtr ctx, Word conj, int relator,
                                      int sign = 1) {
    FreeCrossedElement e(std::move(ctx));
    e.append(std::move(conj), relator, sign);
    return e;
  }

  const FreeCrossedContextPtr& context() const { return ctx_; }
  const std::vector<CrossedFactor>& factors() const { return factors_; }
  const Word& boundary() const { return boundary_; }
  const std::vector<GroupRingElement>& abelianization() const { return abelian_; }

  bool is_identity_element() const { return boundary_.empty(); }

  /// Flat integer coordinates in ZQ[R]; index = relator * |Q| + element.
  std::vector<Int> abelian_coordinates() const {
    const int n = ctx_->q->order();
    std::vector<Int> v(std::size_t(ctx_->relators()) * n);
    for (int r = 0; r < ctx_->relators(); ++r)
      for (const auto& [g, c] : abelian_[r].coeffs()) v[std::size_t(r) * n + g] = c;
    return v;
  }

  friend FreeCrossedElement fc_multiply(const FreeCrossedElement& a,
                                        const FreeCrossedElement& b) {
    a.require_same_context(b);
    FreeCrossedElement r = a;
    r.factors_.insert(r.factors_.end(), b.factors_.begin(), b.factors_.end());
    r.boundary_ = multiply(a.boundary_, b.boundary_);
    for (int i = 0; i < r.ctx_->relators(); ++i) r.abelian_[i] += b.abelian_[i];
    return r;
  }

  friend FreeCrossedElement fc_invert(const FreeCrossedElement& a) {
    FreeCrossedElement r(a.ctx_);
    r.factors_.reserve(a.factors_.size());
    for (auto it = a.factors_.rbegin(); it != a.factors_.rend(); ++it)
      r.factors_.push_back(CrossedFactor{it->conj, it->relator, -it->sign});
    r.boundary_ = a.boundary_.inverse();
    for (int i = 0; i < r.ctx_->relators(); ++i) r.abelian_[i] -= a.abelian_[i];
    return r;
  }

  friend FreeCrossedElement fc_act(const Word& g, const FreeCrossedElement& a) {
    FreeCrossedElement r(a.ctx_);
    r.factors_.reserve(a.factors_.size());
    for (const CrossedFactor& f : a.factors_)
      r.factors_.push_back(CrossedFactor{multiply(g, f.conj), f.relator, f.sign});
    r.boundary_ = conjugate(g, a.boundary_);
    int img = a.ctx_->map.eval(g);
    for (int i = 0; i < r.ctx_->relators(); ++i) r.abelian_[i] = a.abelian_[i].translated(img);
    return r;
  }

  friend FreeCrossedElement fc_pow(const FreeCrossedElement& a, int k) {
    FreeCrossedElement r(a.ctx_);
    FreeCrossedElement base = k < 0 ? fc_invert(a) : a;
    for (int i = 0, n = k < 0 ? -k : k; i < n; ++i) r = fc_multiply(r, base);
    return r;
  }

  friend bool fc_equal(const FreeCrossedElement& a, const FreeCrossedElement& b) {
    a.require_same_context(b);
    return a.boundary_ == b.boundary_ && a.abelian_ == b.abelian_;
  }

  /// Recompute both caches from the factor list (consistency check).
  void check_caches() const {
    Word w = Word::identity(ctx_->pres.alphabet);
    std::vector<GroupRingElement> ab(ctx_->relators(), GroupRingElement(ctx_->q));
    for (const CrossedFactor& f : factors_) {
      Word rel = f.sign > 0 ? ctx_->pres.relators[f.relator]
                            : ctx_->pres.relators[f.relator].inverse();
      w = multiply(w, conjugate(f.conj, rel));
      ab[f.relator].add_term(ctx_->map.eval(f.conj), f.sign);
    }
    if (w != boundary_ || ab != abelian_)
      throw DomainError("free crossed element: cached invariants out of sync");
  }

 private:
  void require_same_context(const FreeCrossedElement& o) const {
    if (ctx_ != o.ctx_) throw InputError("free crossed element: presentation mismatch");
  }

  void append(Word conj, int relator, int sign) {
    if (relator < 0 || relator >= ctx_->relators())
      throw InputError("free crossed element: relator index out of range");
    if (sign != 1 && sign != -1) throw InputError("free crossed element: sign must be +-1");
    Word rel = sign > 0 ? ctx_->pres.relators[relator]
                        : ctx_->pres.relators[relator].inverse();
    boundary_ = multiply(boundary_, conjugate(conj, rel));
    abelian_[relator].add_term(ctx_->map.eval(conj), sign);
    factors_.push_back(CrossedFactor{std::move(conj), relator, sign});
  }

  FreeCrossedContextPtr ctx_;
  std::vector<CrossedFactor> factors_;
  Word boundary_;
  std::vector<GroupRingElement> abelian_;
};

/// Builds an element from triples (conjugator, relator, sign).
inline FreeCrossedElement fc_product(const FreeCrossedContextPtr& ctx,
                                     const std::vector<CrossedFactor>& factors) {
  FreeCrossedElement e(ctx);
  for (const CrossedFactor& f : factors)
    e = fc_multiply(e, FreeCrossedElement::generator(ctx, f.conj, f.relator, f.sign));
  return e;
}

/// The Peiffer element a b a^-1 (^(da) b)^-1; trivial in C_R by construction.
inline FreeCrossedElement peiffer_element(const FreeCrossedElement& a,
                                          const FreeCrossedElement& b) {
  FreeCrossedElement lhs = fc_multiply(fc_multiply(a, b), fc_invert(a));
  FreeCrossedElement rhs = fc_act(a.boundary(), b);
  return fc_multiply(lhs, fc_invert(rhs));
}

inline bool verify_identity(const FreeCrossedElement& e) { return e.is_identity_element(); }

/// The identity module pi = ker(ZQ[R] -> ZQ[X]) of a presentation: a basis
/// of the integer kernel of the Z-expanded Fox matrix, its structure (always
/// torsion free), and the Q-action in basis coordinates.
class IdentityModule {
 public:
  explicit IdentityModule(FreeCrossedContextPtr ctx) : ctx_(std::move(ctx)) {
    FoxBoundaries fox = fox_boundaries(ctx_->pres, ctx_->map);
    d2_ = zq_matrix_to_int(fox.d2);
    auto basis = kernel_basis(d2_);
    basis_ = IntMatrix::from_columns(d2_.cols(), basis);
    solver_.emplace(basis_);
    structure_.free_rank = static_cast<int>(basis.size());

    const int n = ctx_->q->order();
    const int nr = ctx_->relators();
    module_.group = ctx_->q;
    module_.factors.assign(rank(), Int(0));
    for (int g = 0; g < n; ++g) {
      // left translation of ZQ[R] permutes flat coordinates
      IntMatrix pg(nr * n, nr * n);
      for (int r = 0; r < nr; ++r)
        for (int h = 0; h < n; ++h) pg(r * n + ctx_->q->mul(g, h), r * n + h) = 1;
      IntMatrix act(rank(), rank());
      for (int j = 0; j < rank(); ++j) {
        auto coords = solver_->solve(pg.apply(basis_.column(j)));
        if (!coords)
          throw DomainError("identity module: internal: kernel is not Q-invariant");
        act.set_column(j, *coords);
      }
      module_.action.push_back(std::move(act));
    }
    module_.validate();
  }

  const FreeCrossedContextPtr& context() const { return ctx_; }
  int rank() const { return structure_.free_rank; }
  const AbelianGroupStructure& structure() const { return structure_; }
  const IntMatrix& kernel_matrix() const { return basis_; }
  const IntMatrix& d2() const { return d2_; }
  const QModule& module() const { return module_; }

  /// Coordinates of an identity in the kernel basis; zero iff the element is
  /// trivial in C_R.
  std::vector<Int> identity_class(const FreeCrossedElement& e) const {
    if (e.context() != ctx_)
      throw InputError("identity module: element from a different presentation");
    if (!e.is_identity_element())
      throw DomainError("identity module: element is not an identity among relations");
    auto coords = solver_->solve(e.abelian_coordinates());
    if (!coords)
      throw DomainError("identity module: internal: identity outside ker d2");
    return *coords;
  }

 private:
  FreeCrossedContextPtr ctx_;
  IntMatrix d2_;
  IntMatrix basis_;
  std::optional<IntSolver> solver_;
  AbelianGroupStructure structure_;
  QModule module_;
};

inline IdentityModule identity_module(const FreeCrossedContextPtr& ctx) {
  return IdentityModule(ctx);
}

/// Rewrites words of the relator normal closure N_R as explicit elements of
/// the free crossed module.  Works over the Cayley graph of Q: a spanning
/// tree fixes Schreier generators for the free group pi_1(graph) = N_R, and
/// the 2-cells (one relator loop per vertex) are solved greedily for the
/// Schreier generators they cover ("collapsing scheme").
class RelatorExpresser {
 public:
  explicit RelatorExpresser(FreeCrossedContextPtr ctx) : ctx_(std::move(ctx)) {
    build_tree();
    derive_edges();
  }

  const FreeCrossedContextPtr& context() const { return ctx_; }

  /// Tree representative word of a group element (a normalized section of
  /// F ->> Q with rho(e) empty).
  const Word& representative(int q) const { return rep_.at(q); }

  /// Expression of w in C_R; requires eval(w) = e.
  FreeCrossedElement express(const Word& w) const {
    if (ctx_->map.eval(w) != FiniteGroup::identity())
      throw DomainError("relator expression: word is not in the normal closure");
    FreeCrossedElement out(ctx_);
    for (const auto& [edge, sign] : schreier_trace(w)) {
      if (tree_edge_[edge]) continue;
      const auto& expr = edge_expr_.at(edge);
      if (!expr)
        throw DomainError("relator expression: collapsing scheme did not reach an edge");
      out = fc_multiply(out, sign > 0 ? *expr : fc_invert(*expr));
    }
    if (out.boundary() != w)
      throw DomainError("relator expression: internal: boundary mismatch");
    return out;
  }

 private:
  // Edge id for generator x at source vertex v (edge v -> x.v).
  int edge_id(int x, int v) const { return x * ctx_->q->order() + v; }

  void build_tree() {
    const FiniteGroup& q = *ctx_->q;
    const int nx = ctx_->pres.alphabet->size();
    rep_.assign(q.order(), Word::identity(ctx_->pres.alphabet));
    tree_edge_.assign(std::size_t(nx) * q.order(), false);
    std::vector<bool> seen(q.order(), false);
    seen[0] = true;
    std::vector<int> queue{0};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      int v = queue[head];
      for (int x = 0; x < nx; ++x) {
        int img = ctx_->map.image(x);
        int fwd = q.mul(img, v);
        if (!seen[fwd]) {
          seen[fwd] = true;
          tree_edge_[edge_id(x, v)] = true;
          rep_[fwd] = multiply(Word::generator(ctx_->pres.alphabet, x, 1), rep_[v]);
          queue.push_back(fwd);
        }
        int bwd = q.mul(q.inv(img), v);
        if (!seen[bwd]) {
          seen[bwd] = true;
          tree_edge_[edge_id(x, bwd)] = true;  // edge bwd -> v
          rep_[bwd] = multiply(Word::generator(ctx_->pres.alphabet, x, -1), rep_[v]);
          queue.push_back(bwd);
        }
      }
    }
  }

  // Crossing list of the path of w from the identity vertex: suffixes of w
  // are traced so that the i-th letter crosses one generator edge; emitted in
  // letter order, matching the factorization w = prod_i rho(v_i)^-1 l_i
  // rho(v_{i+1}) into Schreier loops.
  std::vector<std::pair<int, int>> schreier_trace(const Word& w) const {
    const FiniteGroup& q = *ctx_->q;
    const auto& letters = w.letters();
    const int len = static_cast<int>(letters.size());
    std::vector<int> after(len + 1);  // after[i] = eval of suffix starting at i
    after[len] = FiniteGroup::identity();
    for (int i = len - 1; i >= 0; --i) {
      int img = ctx_->map.image(letters[i].gen);
      after[i] = q.mul(letters[i].sign > 0 ? img : q.inv(img), after[i + 1]);
    }
    std::vector<std::pair<int, int>> crossings;
    for (int i = 0; i < len; ++i) {
      if (letters[i].sign > 0)
        crossings.push_back({edge_id(letters[i].gen, after[i + 1]), 1});
      else
        crossings.push_back({edge_id(letters[i].gen, after[i]), -1});
    }
    return crossings;
  }

  void derive_edges() {
    const FiniteGroup& q = *ctx_->q;
    const int nx = ctx_->pres.alphabet->size();
    edge_expr_.assign(std::size_t(nx) * q.order(), std::nullopt);

    // cell (v, r): based boundary word rho(v) r rho(v)^-1, a single
    // conjugated-relator generator of C_R
    bool progress = true;
    while (progress) {
      progress = false;
      for (int v = 0; v < q.order(); ++v) {
        for (int r = 0; r < ctx_->relators(); ++r) {
          Word based = conjugate(rep_[v], ctx_->pres.relators[r]);
          auto crossings = schreier_trace(based);
          int open = -1, open_sign = 0, open_count = 0;
          for (const auto& [edge, sign] : crossings) {
            if (tree_edge_[edge] || edge_expr_[edge]) continue;
            ++open_count;
            open = edge;
            open_sign = sign;
          }
          if (open_count != 1) continue;
          // based-cell = P * sigma_open^sign * S with P, S already derived
          FreeCrossedElement prefix(ctx_), suffix(ctx_);
          bool before = true;
          for (const auto& [edge, sign] : crossings) {
            if (edge == open && sign == open_sign && before) {
              // split at the unique open crossing
              before = false;
              continue;
            }
            if (tree_edge_[edge]) continue;
            const auto& expr = edge_expr_[edge];
            FreeCrossedElement piece = sign > 0 ? *expr : fc_invert(*expr);
            if (before)
              prefix = fc_multiply(prefix, piece);
            else
              suffix = fc_multiply(suffix, piece);
          }
          FreeCrossedElement cell =
              FreeCrossedElement::generator(ctx_, rep_[v], r, 1);
          FreeCrossedElement solved = fc_multiply(
              fc_multiply(fc_invert(prefix), cell), fc_invert(suffix));
          if (open_sign < 0) solved = fc_invert(solved);
          edge_expr_[open] = std::move(solved);
          progress = true;
        }
      }
    }
  }

  FreeCrossedContextPtr ctx_;
  std::vector<Word> rep_;
  std::vector<bool> tree_edge_;
  std::vector<std::optional<FreeCrossedElement>> edge_expr_;
};

/// The k-invariant 3-cocycle of the presentation's crossed 2-fold extension
/// pi >-> C_R -> F ->> Q, with values in pi (coordinates of the identity
/// module's kernel basis).  The section is the spanning-tree section; the
/// 2-cochain c rewrites its defects through the collapsing scheme.
inline Cochain presentation_k_invariant(const IdentityModule& pim,
                                        const RelatorExpresser& rex) {
  const FreeCrossedContextPtr& ctx = pim.context();
  if (rex.context() != ctx) throw InputError("k-invariant: context mismatch");
  const FiniteGroup& q = *ctx->q;

  std::vector<std::vector<FreeCrossedElement>> c(
      q.order(), std::vector<FreeCrossedElement>(q.order(), FreeCrossedElement(ctx)));
  for (int a = 1; a < q.order(); ++a)
    for (int b = 1; b < q.order(); ++b) {
      Word defect = multiply(multiply(rex.representative(a), rex.representative(b)),
                             rex.representative(q.mul(a, b)).inverse());
      c[a][b] = rex.express(defect);
    }

  Cochain z = Cochain::zero(ctx->q, pim.module(), 3);
  for (int a = 1; a < q.order(); ++a)
    for (int b = 1; b < q.order(); ++b)
      for (int d = 1; d < q.order(); ++d) {
        FreeCrossedElement v = fc_act(rex.representative(a), c[b][d]);
        v = fc_multiply(v, c[a][q.mul(b, d)]);
        v = fc_multiply(v, fc_invert(c[q.mul(a, b)][d]));
        v = fc_multiply(v, fc_invert(c[a][b]));
        if (!verify_identity(v))
          throw DomainError("k-invariant: internal: cocycle value is not an identity");
        z.set_value({a, b, d}, pim.identity_class(v));
      }
  return z;
}

}  // namespace crossmod

#endif
