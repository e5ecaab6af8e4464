#ifndef CROSSMOD_GROUP_RING_HPP
#define CROSSMOD_GROUP_RING_HPP

#include <map>
#include <utility>
#include <vector>

#include "crossmod/intmat.hpp"
#include "crossmod/presentation.hpp"

namespace crossmod {

/// Element of the integral group ring ZQ; zero coefficients are never stored.
class GroupRingElement {
 public:
  GroupRingElement() = default;
  explicit GroupRingElement(GroupPtr g) : group_(std::move(g)) {}

  static GroupRingElement zero(GroupPtr g) { return GroupRingElement(std::move(g)); }
  static GroupRingElement of_element(GroupPtr g, int elt, Int coeff = 1) {
    GroupRingElement e(std::move(g));
    e.add_term(elt, coeff);
    return e;
  }
  static GroupRingElement one(GroupPtr g) { return of_element(std::move(g), 0); }

  const GroupPtr& group() const { return group_; }
  const std::map<int, Int>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  Int coeff(int elt) const {
    auto it = coeffs_.find(elt);
    return it == coeffs_.end() ? Int(0) : it->second;
  }

  void add_term(int elt, const Int& c) {
    if (c == 0) return;
    auto [it, inserted] = coeffs_.emplace(elt, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) coeffs_.erase(it);
    }
  }

  GroupRingElement& operator+=(const GroupRingElement& o) {
    for (const auto& [e, c] : o.coeffs_) add_term(e, c);
    return *this;
  }
  GroupRingElement& operator-=(const GroupRingElement& o) {
    for (const auto& [e, c] : o.coeffs_) add_term(e, -c);
    return *this;
  }
  friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) {
    return a += b;
  }
  friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) {
    return a -= b;
  }
  friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
    GroupRingElement r(a.group_ ? a.group_ : b.group_);
    for (const auto& [e1, c1] : a.coeffs_)
      for (const auto& [e2, c2] : b.coeffs_) r.add_term(r.group_->mul(e1, e2), c1 * c2);
    return r;
  }
  GroupRingElement operator*(const Int& k) const {
    GroupRingElement r(group_);
    for (const auto& [e, c] : coeffs_) r.add_term(e, c * k);
    return r;
  }
  GroupRingElement operator-() const { return *this * Int(-1); }

  /// Left translate by a group element.
  GroupRingElement translated(int g) const {
    GroupRingElement r(group_);
    for (const auto& [e, c] : coeffs_) r.add_term(group_->mul(g, e), c);
    return r;
  }

  Int augmentation() const {
    Int s = 0;
    for (const auto& [e, c] : coeffs_) s += c;
    return s;
  }

  bool operator==(const GroupRingElement& o) const { return coeffs_ == o.coeffs_; }

 private:
  GroupPtr group_;
  std::map<int, Int> coeffs_;
};

/// Norm element 1 + g + g^2 + ... over the cyclic subgroup generated by g.
inline GroupRingElement norm_element(const GroupPtr& q, int g) {
  GroupRingElement n(q);
  int e = 0;
  do {
    n.add_term(e, 1);
    e = q->mul(g, e);
  } while (e != 0);
  return n;
}

/// Matrix over ZQ representing a map of free left ZQ-modules; column j holds
/// the coordinates of the image of the j-th basis vector.
class ZqMatrix {
 public:
  ZqMatrix() : rows_(0), cols_(0) {}
  ZqMatrix(GroupPtr g, int rows, int cols)
      : group_(std::move(g)), rows_(rows), cols_(cols),
        e_(std::size_t(rows) * cols, GroupRingElement(group_)) {}

  const GroupPtr& group() const { return group_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  GroupRingElement& operator()(int i, int j) { return e_[std::size_t(i) * cols_ + j]; }
  const GroupRingElement& operator()(int i, int j) const {
    return e_[std::size_t(i) * cols_ + j];
  }

  /// Matrix of the composite left-module map (this applied after o).  For a
  /// left module with column coordinates the coefficients compose reversed:
  /// (A o B)(i,j) = sum_k B(k,j) * A(i,k).
  ZqMatrix operator*(const ZqMatrix& o) const {
    if (cols_ != o.rows_) throw InputError("zq-matrix: product shape mismatch");
    ZqMatrix r(group_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        if ((*this)(i, k).is_zero()) continue;
        for (int j = 0; j < o.cols_; ++j)
          if (!o(k, j).is_zero()) r(i, j) += o(k, j) * (*this)(i, k);
      }
    return r;
  }

  bool is_zero() const {
    for (const auto& x : e_)
      if (!x.is_zero()) return false;
    return true;
  }

 private:
  GroupPtr group_;
  int rows_, cols_;
  std::vector<GroupRingElement> e_;
};

/// Fox derivatives of a word in the free group, one ZF element per
/// generator, from the product rule d(uv) = du + u dv, d(x^-1) = -x^-1 dx.
/// ZF elements are keyed by reduced words.
using FreeRingElement = std::map<Word, Int>;

inline void free_ring_add(FreeRingElement& a, const Word& w, const Int& c) {
  if (c == 0) return;
  auto [it, inserted] = a.emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) a.erase(it);
  }
}

inline std::vector<FreeRingElement> fox_derivatives_free(const Word& w) {
  std::vector<FreeRingElement> d(w.alphabet() ? w.alphabet()->size() : 0);
  Word prefix = Word::identity(w.alphabet());
  for (const Letter& l : w.letters()) {
    if (l.sign > 0) {
      free_ring_add(d[l.gen], prefix, 1);
      prefix = multiply(prefix, Word::generator(w.alphabet(), l.gen, 1));
    } else {
      prefix = multiply(prefix, Word::generator(w.alphabet(), l.gen, -1));
      free_ring_add(d[l.gen], prefix, -1);
    }
  }
  return d;
}

/// Reconstruction sum_x r_x (x - 1) in ZF; equals r - 1 for every word r.
inline FreeRingElement fox_reconstruction(const Word& w) {
  FreeRingElement acc;
  auto d = fox_derivatives_free(w);
  for (int x = 0; x < static_cast<int>(d.size()); ++x) {
    Word gen = Word::generator(w.alphabet(), x, 1);
    for (const auto& [u, c] : d[x]) {
      free_ring_add(acc, multiply(u, gen), c);
      free_ring_add(acc, u, -c);
    }
  }
  return acc;
}

inline GroupRingElement project_to_zq(const FreeRingElement& f, const WordMap& wm) {
  GroupRingElement r(wm.group());
  for (const auto& [w, c] : f) r.add_term(wm.eval(w), c);
  return r;
}

struct FoxBoundaries {
  ZqMatrix d2;  // |X| x |R|, entry (x, r) = [dr/dx]
  ZqMatrix d1;  // 1 x |X|, entry ([x] - 1)
};

/// The Fox boundary pair of the partial resolution ZQ[R] -> ZQ[X] -> ZQ.
inline FoxBoundaries fox_boundaries(const Presentation& p, const WordMap& wm) {
  const GroupPtr& q = wm.group();
  const int nx = p.alphabet->size(), nr = static_cast<int>(p.relators.size());
  FoxBoundaries b{ZqMatrix(q, nx, nr), ZqMatrix(q, 1, nx)};
  for (int r = 0; r < nr; ++r) {
    auto d = fox_derivatives_free(p.relators[r]);
    for (int x = 0; x < nx; ++x) b.d2(x, r) = project_to_zq(d[x], wm);
  }
  for (int x = 0; x < nx; ++x) {
    b.d1(0, x) = GroupRingElement::of_element(q, wm.image(x));
    b.d1(0, x).add_term(0, -1);
  }
  if (!(b.d1 * b.d2).is_zero())
    throw DomainError("fox: internal: d1*d2 is not zero");
  return b;
}

/// Z-expansion of a ZQ-matrix.  A left-module map sends v = sum v_j e_j to
/// sum_i (sum_j v_j a_ij) e_i, so in flat coordinates (index j*|Q| + g) each
/// entry expands to the matrix of multiplication by it acting on the
/// coefficient side; the expansion is functorial for operator* above.
inline IntMatrix zq_matrix_to_int(const ZqMatrix& a) {
  const int n = a.group()->order();
  IntMatrix m(a.rows() * n, a.cols() * n);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (const auto& [h, c] : a(i, j).coeffs())
        for (int g = 0; g < n; ++g) m(i * n + a.group()->mul(g, h), j * n + g) += c;
  return m;
}

/// Finitely generated module over ZQ: an abelian group with invariant
/// factors (0 marks a free summand) and one integer action matrix per group
/// element, understood modulo the factors row-wise.
struct QModule {
  GroupPtr group;
  std::vector<Int> factors;        // per coordinate: 0 (free) or m > 1
  std::vector<IntMatrix> action;   // one k x k matrix per group element

  int rank() const { return static_cast<int>(factors.size()); }

  bool congruent(const std::vector<Int>& a, const std::vector<Int>& b) const {
    for (int i = 0; i < rank(); ++i) {
      Int d = a[i] - b[i];
      if (factors[i] == 0 ? d != 0 : !mpz_divisible_p(d.get_mpz_t(), factors[i].get_mpz_t()))
        return false;
    }
    return true;
  }

  std::vector<Int> reduce(std::vector<Int> v) const {
    for (int i = 0; i < rank(); ++i)
      if (factors[i] > 0) mpz_fdiv_r(v[i].get_mpz_t(), v[i].get_mpz_t(), factors[i].get_mpz_t());
    return v;
  }

  std::vector<Int> act(int g, const std::vector<Int>& v) const {
    return reduce(action[g].apply(v));
  }

  void validate() const {
    const int n = group->order(), k = rank();
    for (const Int& f : factors)
      if (f < 0 || f == 1) throw InputError("module: invariant factor must be 0 or > 1");
    if (static_cast<int>(action.size()) != n) throw InputError("module: one action matrix per element");
    for (const IntMatrix& m : action)
      if (m.rows() != k || m.cols() != k) throw InputError("module: action matrix shape");
    if (!(action[0] == IntMatrix::identity(k)) && k > 0) {
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
          Int want = i == j ? 1 : 0;
          Int d = action[0](i, j) - want;
          if (factors[i] == 0 ? d != 0 : !mpz_divisible_p(d.get_mpz_t(), factors[i].get_mpz_t()))
            throw InputError("module: identity must act as identity");
        }
    }
    for (int g = 0; g < n; ++g)
      for (int h = 0; h < n; ++h) {
        IntMatrix prod = action[g] * action[h];
        const IntMatrix& want = action[group->mul(g, h)];
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) {
            Int d = prod(i, j) - want(i, j);
            if (factors[i] == 0 ? d != 0
                                : !mpz_divisible_p(d.get_mpz_t(), factors[i].get_mpz_t()))
              throw InputError("module: action is not a homomorphism");
          }
      }
  }
};

/// M with trivial action; factors as in QModule (0 = Z, m = Z/m).
inline QModule trivial_module(GroupPtr q, std::vector<Int> factors) {
  QModule m{std::move(q), std::move(factors), {}};
  m.action.assign(m.group->order(), IntMatrix::identity(m.rank()));
  m.validate();
  return m;
}

/// Initial stretch of a free resolution of Z by free left ZQ-modules.
/// boundaries[i] is the ZQ-matrix of d_{i+1}: B_{i+1} -> B_i.
struct FreeResolutionSegment {
  GroupPtr group;
  std::vector<int> ranks;           // ranks of B_0 .. B_n
  std::vector<ZqMatrix> boundaries; // d_1 .. d_n

  int length() const { return static_cast<int>(ranks.size()) - 1; }

  const ZqMatrix& boundary(int i) const {  // d_i for 1 <= i <= length
    return boundaries.at(i - 1);
  }

  void validate() const {
    for (std::size_t i = 0; i + 1 < boundaries.size(); ++i)
      if (!(boundaries[i] * boundaries[i + 1]).is_zero())
        throw DomainError("resolution: boundary composite is not zero");
    if (!boundaries.empty()) {
      // augmentation of every d_1 column vanishes
      for (int j = 0; j < boundaries[0].cols(); ++j) {
        Int s = 0;
        for (int i = 0; i < boundaries[0].rows(); ++i) s += boundaries[0](i, j).augmentation();
        if (s != 0) throw DomainError("resolution: augmentation of d1 is not zero");
      }
    }
  }
};

namespace bar {

/// Number of degree-i basis tuples of the normalized bar resolution.
inline long tuple_count(int group_order, int degree) {
  long c = 1;
  for (int i = 0; i < degree; ++i) c *= group_order - 1;
  return c;
}

/// Tuples of non-identity elements <-> mixed-radix index (entry values
/// 1..|Q|-1, first entry most significant).
inline std::vector<int> index_to_tuple(int group_order, int degree, long index) {
  std::vector<int> t(degree);
  for (int i = degree - 1; i >= 0; --i) {
    t[i] = static_cast<int>(index % (group_order - 1)) + 1;
    index /= group_order - 1;
  }
  return t;
}

inline long tuple_to_index(int group_order, const std::vector<int>& t) {
  long index = 0;
  for (int v : t) index = index * (group_order - 1) + (v - 1);
  return index;
}

}  // namespace bar

/// Normalized bar resolution of Z over ZQ up to degree n: B_i is free on
/// i-tuples of non-identity elements, with the simplicial boundary; tuples
/// containing the identity are treated as zero.
inline FreeResolutionSegment bar_resolution(GroupPtr q, int n, int order_bound_n3 = 8,
                                            int order_bound_n4 = 6) {
  if (n < 0 || n > 5) throw DomainError("bar resolution: degree must be 0..5");
  if (q->order() == 1) {
    // every tuple is degenerate; all higher terms vanish
    FreeResolutionSegment seg{q, std::vector<int>(n + 1, 0), {}};
    seg.ranks[0] = 1;
    for (int i = 1; i <= n; ++i)
      seg.boundaries.push_back(ZqMatrix(q, seg.ranks[i - 1], 0));
    return seg;
  }
  if (n >= 4 && q->order() > order_bound_n4)
    throw DomainError("bar resolution: group too large for degree " + std::to_string(n) +
                      " (order bound " + std::to_string(order_bound_n4) + ")");
  if (n == 3 && q->order() > order_bound_n3)
    throw DomainError("bar resolution: group too large for degree 3 (order bound " +
                      std::to_string(order_bound_n3) + ")");

  FreeResolutionSegment seg{q, {}, {}};
  for (int i = 0; i <= n; ++i) seg.ranks.push_back(static_cast<int>(bar::tuple_count(q->order(), i)));
  for (int i = 1; i <= n; ++i) {
    ZqMatrix d(q, seg.ranks[i - 1], seg.ranks[i]);
    for (long col = 0; col < seg.ranks[i]; ++col) {
      std::vector<int> t = bar::index_to_tuple(q->order(), i, col);
      // g1 . [g2|...|gi]
      {
        std::vector<int> rest(t.begin() + 1, t.end());
        long row = bar::tuple_to_index(q->order(), rest);
        d(static_cast<int>(row), static_cast<int>(col)) +=
            GroupRingElement::of_element(q, t[0]);
      }
      // interior faces
      int sign = -1;
      for (int j = 0; j + 1 < i; ++j) {
        int merged = q->mul(t[j], t[j + 1]);
        if (merged != 0) {
          std::vector<int> face;
          for (int k = 0; k < i; ++k) {
            if (k == j) face.push_back(merged);
            else if (k != j + 1) face.push_back(t[k]);
          }
          long row = bar::tuple_to_index(q->order(), face);
          d(static_cast<int>(row), static_cast<int>(col)) +=
              GroupRingElement::of_element(q, 0, sign);
        }
        sign = -sign;
      }
      // [g1|...|g_{i-1}]
      {
        std::vector<int> front(t.begin(), t.end() - 1);
        long row = bar::tuple_to_index(q->order(), front);
        d(static_cast<int>(row), static_cast<int>(col)) +=
            GroupRingElement::of_element(q, 0, sign);
      }
    }
    seg.boundaries.push_back(std::move(d));
  }
  seg.validate();
  return seg;
}

/// Smallest element of full order, if the group is cyclic.
inline int cyclic_generator(const FiniteGroup& q) {
  for (int g = 0; g < q.order(); ++g)
    if (q.order_of(g) == q.order()) return g;
  return -1;
}

/// The standard small free resolution of Z over a cyclic group: rank-one
/// modules with boundaries alternating ([x]-1) and the norm element.
inline FreeResolutionSegment periodic_resolution(GroupPtr q, int length) {
  if (length < 0 || length > 5) throw DomainError("periodic resolution: length must be 0..5");
  int gen = cyclic_generator(*q);
  if (gen < 0) throw DomainError("periodic resolution: group is not cyclic");
  if (q->order() < 2) throw DomainError("periodic resolution: order must be >= 2");
  FreeResolutionSegment seg{q, std::vector<int>(length + 1, 1), {}};
  GroupRingElement tminus1 = GroupRingElement::of_element(q, gen);
  tminus1.add_term(0, -1);
  GroupRingElement norm = norm_element(q, gen);
  for (int i = 1; i <= length; ++i) {
    ZqMatrix d(q, 1, 1);
    d(0, 0) = (i % 2 == 1) ? tminus1 : norm;
    seg.boundaries.push_back(std::move(d));
  }
  seg.validate();
  return seg;
}

inline FreeResolutionSegment periodic_resolution(int n, int length) {
  return periodic_resolution(make_group(FiniteGroup::cyclic(n)), length);
}

}  // namespace crossmod

#endif
