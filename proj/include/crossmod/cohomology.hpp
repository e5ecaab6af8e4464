#ifndef CROSSMOD_COHOMOLOGY_HPP
#define CROSSMOD_COHOMOLOGY_HPP

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "crossmod/group_ring.hpp"

namespace crossmod {

enum class Resolution { kAuto, kBar, kPeriodic };

/// Normalized inhomogeneous n-cochain with values in a Q-module, stored as
/// module coordinates per bar-resolution basis tuple (tuple index major).
/// Tuples containing the identity are not stored; the cochain vanishes there.
struct Cochain {
  GroupPtr group;
  QModule module;
  int degree = 0;
  std::vector<Int> values;

  long tuples() const { return bar::tuple_count(group->order(), degree); }

  std::vector<Int> value(const std::vector<int>& tuple) const {
    for (int t : tuple)
      if (t == 0) return std::vector<Int>(module.rank());
    long idx = bar::tuple_to_index(group->order(), tuple);
    std::vector<Int> v(module.rank());
    for (int i = 0; i < module.rank(); ++i) v[i] = values[idx * module.rank() + i];
    return v;
  }

  void set_value(const std::vector<int>& tuple, const std::vector<Int>& v) {
    long idx = bar::tuple_to_index(group->order(), tuple);
    for (int i = 0; i < module.rank(); ++i) values[idx * module.rank() + i] = v[i];
  }

  Cochain& operator+=(const Cochain& o) {
    if (o.values.size() != values.size() || o.degree != degree)
      throw InputError("cochain: shape mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
    return *this;
  }

  Cochain scaled(const Int& k) const {
    Cochain c = *this;
    for (Int& v : c.values) v *= k;
    return c;
  }

  static Cochain zero(GroupPtr q, QModule m, int degree) {
    Cochain c{q, std::move(m), degree, {}};
    c.values.assign(std::size_t(c.tuples()) * c.module.rank(), Int(0));
    return c;
  }
};

/// Integer matrix of the coboundary C^i -> C^{i+1} obtained by applying
/// Hom_Q(-, M) to the boundary d_{i+1} of a free resolution segment.
inline IntMatrix cochain_map(const FreeResolutionSegment& seg, const QModule& m, int i) {
  const ZqMatrix& d = seg.boundary(i + 1);  // B_{i+1} -> B_i
  const int k = m.rank();
  IntMatrix out(d.cols() * k, d.rows() * k);
  for (int s = 0; s < d.cols(); ++s)
    for (int r = 0; r < d.rows(); ++r) {
      const GroupRingElement& a = d(r, s);
      for (const auto& [h, c] : a.coeffs()) {
        const IntMatrix& ah = m.action[h];
        for (int i2 = 0; i2 < k; ++i2)
          for (int j2 = 0; j2 < k; ++j2)
            if (ah(i2, j2) != 0) out(s * k + i2, r * k + j2) += c * ah(i2, j2);
      }
    }
  return out;
}

namespace detail {

// Columns of the diagonal relation matrix of a cochain space: f_c * e_c for
// every coordinate whose invariant factor f_c is non-zero.
inline std::vector<std::vector<Int>> relation_columns(const QModule& m, long basis_rank) {
  std::vector<std::vector<Int>> cols;
  const int k = m.rank();
  for (long b = 0; b < basis_rank; ++b)
    for (int i = 0; i < k; ++i)
      if (m.factors[i] != 0) {
        std::vector<Int> e(std::size_t(basis_rank) * k);
        e[b * k + i] = m.factors[i];
        cols.push_back(std::move(e));
      }
  return cols;
}

inline bool in_relation_lattice(const QModule& m, const std::vector<Int>& v) {
  const int k = m.rank();
  for (std::size_t c = 0; c < v.size(); ++c) {
    const Int& f = m.factors[c % k];
    if (f == 0 ? v[c] != 0 : !mpz_divisible_p(v[c].get_mpz_t(), f.get_mpz_t())) return false;
  }
  return true;
}

// Basis of the lattice generated by the given columns.
inline IntMatrix column_lattice_basis(const IntMatrix& gen) {
  SmithDecomposition s = smith_normal_form(gen);
  int r = s.rank();
  IntMatrix uinv = unimodular_inverse(s.U);
  IntMatrix basis(gen.rows(), r);
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < gen.rows(); ++i) basis(i, j) = uinv(i, j) * s.D(j, j);
  return basis;
}

}  // namespace detail

/// The computed group H^n(Q, M) together with the data needed to convert
/// between representative cocycles and invariant-factor coordinates.
///
/// Internally everything acts on flat coordinate vectors of the chosen
/// resolution's cochain spaces; the Cochain overloads require the bar
/// resolution, whose cochains are the tuple-indexed maps above.
class CohomologyGroup {
 public:
  CohomologyGroup(GroupPtr q, QModule m, int degree, FreeResolutionSegment seg)
      : group_(std::move(q)), module_(std::move(m)), degree_(degree), seg_(std::move(seg)) {
    module_.validate();
    bar_layout_ = true;
    for (int i = 0; i <= degree_ + 1 && i <= seg_.length(); ++i)
      bar_layout_ = bar_layout_ && seg_.ranks[i] == bar::tuple_count(group_->order(), i);
    build();
  }

  const AbelianGroupStructure& structure() const { return structure_; }
  const GroupPtr& group() const { return group_; }
  const QModule& module() const { return module_; }
  int degree() const { return degree_; }
  int coordinate_count() const { return static_cast<int>(slots_.size()); }

  /// Invariant factor of each coordinate slot (0 for a free slot).
  const std::vector<Int>& slot_factors() const { return slot_factors_; }

  bool is_values_cocycle(const std::vector<Int>& v) const {
    require_length(v, degree_);
    return detail::in_relation_lattice(module_, dn_.apply(v));
  }

  std::vector<Int> class_of_values(const std::vector<Int>& v) const {
    if (!is_values_cocycle(v)) throw DomainError("cohomology: input is not a cocycle");
    if (slots_.empty()) return {};
    auto c = cocycle_solver_->solve(v);
    if (!c) throw DomainError("cohomology: internal: cocycle outside computed lattice");
    std::vector<Int> full = uc_.apply(*c);
    std::vector<Int> coords;
    coords.reserve(slots_.size());
    for (std::size_t i = 0; i < slots_.size(); ++i) {
      Int x = full[slots_[i]];
      if (slot_factors_[i] != 0)
        mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), slot_factors_[i].get_mpz_t());
      coords.push_back(x);
    }
    return coords;
  }

  std::vector<Int> values_of_class(const std::vector<Int>& coords) const {
    if (coords.size() != slots_.size()) throw InputError("cohomology: coordinate count mismatch");
    std::vector<Int> v(std::size_t(seg_.ranks[degree_]) * module_.rank(), Int(0));
    if (slots_.empty()) return v;
    std::vector<Int> full(uc_.rows());
    for (std::size_t i = 0; i < slots_.size(); ++i) full[slots_[i]] = coords[i];
    return cocycle_basis_.apply(uc_inv_.apply(full));
  }

  /// Witness w (degree n-1 values) with delta(w) = v modulo the module
  /// relations, when the class of v vanishes.
  std::optional<std::vector<Int>> witness_values(const std::vector<Int>& v) const {
    if (!is_values_cocycle(v)) throw DomainError("cohomology: input is not a cocycle");
    auto sol = witness_solver_->solve(v);
    if (!sol) return std::nullopt;
    std::vector<Int> w(std::size_t(seg_.ranks[degree_ - 1]) * module_.rank());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = (*sol)[i];
    return w;
  }

  bool is_zero_class(const std::vector<Int>& coords) const {
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (slot_factors_[i] == 0 ? coords[i] != 0
                                : !mpz_divisible_p(coords[i].get_mpz_t(),
                                                   slot_factors_[i].get_mpz_t()))
        return false;
    }
    return true;
  }

  /// Order of a class; 0 encodes infinite order.
  Int order_of(const std::vector<Int>& coords) const {
    Int ord = 1;
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (slot_factors_[i] == 0) {
        if (coords[i] != 0) return 0;
        continue;
      }
      Int g;
      mpz_gcd(g.get_mpz_t(), coords[i].get_mpz_t(), slot_factors_[i].get_mpz_t());
      Int one = slot_factors_[i] / g;
      mpz_lcm(ord.get_mpz_t(), ord.get_mpz_t(), one.get_mpz_t());
    }
    return ord;
  }

  // Bar-layout entry points.
  bool is_cocycle(const Cochain& z) const { return is_values_cocycle(bar_values(z)); }
  std::vector<Int> class_of_cocycle(const Cochain& z) const {
    return class_of_values(bar_values(z));
  }
  Cochain cocycle_of_class(const std::vector<Int>& coords) const {
    require_bar();
    Cochain z = Cochain::zero(group_, module_, degree_);
    z.values = values_of_class(coords);
    return z;
  }
  Cochain representative(int slot) const {
    std::vector<Int> coords(slots_.size());
    coords.at(slot) = 1;
    return cocycle_of_class(coords);
  }
  std::optional<Cochain> coboundary_witness(const Cochain& z) const {
    auto w = witness_values(bar_values(z));
    if (!w) return std::nullopt;
    Cochain b = Cochain::zero(group_, module_, degree_ - 1);
    b.values = std::move(*w);
    return b;
  }

 private:
  void require_bar() const {
    if (!bar_layout_)
      throw InputError("cohomology: cochain interface requires the bar resolution");
  }
  std::vector<Int> bar_values(const Cochain& z) const {
    require_bar();
    if (z.degree != degree_) throw InputError("cohomology: cochain degree mismatch");
    require_length(z.values, degree_);
    return z.values;
  }
  void require_length(const std::vector<Int>& v, int deg) const {
    if (static_cast<long>(v.size()) !=
        static_cast<long>(seg_.ranks[deg]) * module_.rank())
      throw InputError("cohomology: value vector length mismatch");
  }

  void build() {
    const int k = module_.rank();
    const long an = seg_.ranks[degree_];
    dn_ = cochain_map(seg_, module_, degree_);
    dprev_ = cochain_map(seg_, module_, degree_ - 1);
    IntMatrix relation_cols = IntMatrix::from_columns(
        static_cast<int>(an * k), detail::relation_columns(module_, an));
    witness_solver_.emplace(IntMatrix::hstack(dprev_, relation_cols));

    if (an * k == 0) {
      cocycle_basis_ = IntMatrix(0, 0);
      cocycle_solver_.emplace(cocycle_basis_);
      uc_ = IntMatrix(0, 0);
      uc_inv_ = IntMatrix(0, 0);
      return;
    }

    // Lattice of cocycle representatives K = {x : delta(x) = 0 in C^{n+1}}.
    bool uniform = true;
    for (int i = 1; i < k; ++i) uniform = uniform && module_.factors[i] == module_.factors[0];
    if (uniform && module_.factors[0] == 0) {
      cocycle_basis_ = IntMatrix::from_columns(static_cast<int>(an * k), kernel_basis(dn_));
    } else if (uniform) {
      const Int& m = module_.factors[0];
      SmithDecomposition s = smith_normal_form(dn_);
      int r = s.rank();
      IntMatrix w(dn_.cols(), dn_.cols());
      for (int i = 0; i < dn_.cols(); ++i) {
        if (i < r) {
          Int g;
          mpz_gcd(g.get_mpz_t(), s.D(i, i).get_mpz_t(), m.get_mpz_t());
          w(i, i) = m / g;
        } else {
          w(i, i) = 1;
        }
      }
      cocycle_basis_ = s.V * w;
    } else {
      IntMatrix rn1 = relation_columns_matrix(degree_ + 1);
      IntMatrix stacked = IntMatrix::hstack(dn_, rn1);
      auto kb = kernel_basis(stacked);
      IntMatrix proj(static_cast<int>(an * k), static_cast<int>(kb.size()));
      for (int j = 0; j < proj.cols(); ++j)
        for (int i = 0; i < proj.rows(); ++i) proj(i, j) = kb[j][i];
      cocycle_basis_ = detail::column_lattice_basis(proj);
    }
    cocycle_solver_.emplace(cocycle_basis_);

    // Relations inside K: coboundaries plus the module relations.
    IntMatrix gens = IntMatrix::hstack(dprev_, relation_cols);
    IntMatrix rel(cocycle_basis_.cols(), gens.cols());
    for (int j = 0; j < gens.cols(); ++j) {
      auto c = cocycle_solver_->solve(gens.column(j));
      if (!c) throw DomainError("cohomology: internal: relation outside cocycle lattice");
      rel.set_column(j, *c);
    }
    SmithDecomposition s = smith_normal_form(rel);
    uc_ = s.U;
    uc_inv_ = unimodular_inverse(uc_);
    const int kappa = cocycle_basis_.cols();
    std::vector<Int> diag(kappa, Int(0));
    for (int i = 0; i < std::min(kappa, rel.cols()); ++i) diag[i] = s.D(i, i);
    for (int i = 0; i < kappa; ++i) {
      if (diag[i] == 1) continue;
      slots_.push_back(i);
      slot_factors_.push_back(diag[i]);
      if (diag[i] == 0)
        ++structure_.free_rank;
      else
        structure_.torsion.push_back(diag[i]);
    }
  }

  IntMatrix relation_columns_matrix(int degree) const {
    long rank = seg_.ranks[degree];
    return IntMatrix::from_columns(static_cast<int>(rank * module_.rank()),
                                   detail::relation_columns(module_, rank));
  }

  GroupPtr group_;
  QModule module_;
  int degree_;
  FreeResolutionSegment seg_;
  bool bar_layout_ = false;
  AbelianGroupStructure structure_;
  IntMatrix dn_, dprev_;
  IntMatrix cocycle_basis_;
  std::optional<IntSolver> cocycle_solver_;
  std::optional<IntSolver> witness_solver_;
  IntMatrix uc_, uc_inv_;
  std::vector<int> slots_;
  std::vector<Int> slot_factors_;
};

inline FreeResolutionSegment resolution_for(const GroupPtr& q, int length, Resolution method) {
  switch (method) {
    case Resolution::kBar:
      return bar_resolution(q, length);
    case Resolution::kPeriodic:
      return periodic_resolution(q, length);
    case Resolution::kAuto:
    default:
      if (q->order() >= 2 && cyclic_generator(*q) >= 0)
        return periodic_resolution(q, length);
      return bar_resolution(q, length);
  }
}

/// H^n(Q, M) for 1 <= n <= 4 over the chosen resolution.  The bar route
/// carries the size guards (|Q| <= 8 up to degree 3, |Q| <= 6 at degree 4);
/// the periodic route works for any cyclic Q.
inline CohomologyGroup cohomology_group(const GroupPtr& q, const QModule& m, int n,
                                        Resolution method = Resolution::kAuto) {
  if (n < 1 || n > 4) throw DomainError("cohomology: degree must be 1..4");
  if (method == Resolution::kAuto)
    method = (q->order() >= 2 && cyclic_generator(*q) >= 0) ? Resolution::kPeriodic
                                                            : Resolution::kBar;
  FreeResolutionSegment seg =
      method == Resolution::kPeriodic
          ? periodic_resolution(q, n + 1)
          // the degree n+1 stretch only feeds the cocycle condition, so the
          // degree-3 order bound is the binding one when computing H^3
          : bar_resolution(q, n + 1, 8, n == 3 ? 8 : 6);
  return CohomologyGroup(q, m, n, std::move(seg));
}

/// Restriction of scalars along a subgroup embedding.
inline QModule restrict_module(const QModule& m, const SubgroupView& sub) {
  QModule r{make_group(sub.group), m.factors, {}};
  for (int i = 0; i < sub.group.order(); ++i) r.action.push_back(m.action[sub.embed[i]]);
  return r;
}

/// Restriction of a bar cochain to a subgroup.
inline Cochain restrict_cochain(const Cochain& z, const SubgroupView& sub) {
  Cochain r = Cochain::zero(make_group(sub.group), restrict_module(z.module, sub), z.degree);
  const int so = sub.group.order();
  for (long idx = 0; idx < r.tuples(); ++idx) {
    std::vector<int> t = bar::index_to_tuple(so, z.degree, idx);
    std::vector<int> parent(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) parent[i] = sub.embed[t[i]];
    r.set_value(t, z.value(parent));
  }
  return r;
}

}  // namespace crossmod

#endif
