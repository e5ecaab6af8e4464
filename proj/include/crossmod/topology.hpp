#ifndef CROSSMOD_TOPOLOGY_HPP
#define CROSSMOD_TOPOLOGY_HPP

#include <string>
#include <utility>
#include <vector>

#include "crossmod/group_ring.hpp"

namespace crossmod {

/// Cellular chain complex of the universal cover of the presentation
/// 2-complex: the Z-expanded Fox boundaries.
struct CoverChainComplex {
  int rank_c0 = 0, rank_c1 = 0, rank_c2 = 0;
  IntMatrix b2;  // C2 -> C1
  IntMatrix b1;  // C1 -> C0

  int euler_characteristic() const { return rank_c0 - rank_c1 + rank_c2; }
};

struct HomologyReport {
  AbelianGroupStructure h0, h1, h2;
  int chi = 0;
};

inline CoverChainComplex cover_complex(const Presentation& p, const WordMap& wm) {
  FoxBoundaries fox = fox_boundaries(p, wm);
  CoverChainComplex c;
  const int n = wm.group()->order();
  c.rank_c0 = n;
  c.rank_c1 = n * p.alphabet->size();
  c.rank_c2 = n * static_cast<int>(p.relators.size());
  c.b2 = zq_matrix_to_int(fox.d2);
  c.b1 = zq_matrix_to_int(fox.d1);
  if (!(c.b1 * c.b2).is_zero())
    throw DomainError("cover complex: internal: boundary composite is not zero");
  return c;
}

inline HomologyReport cover_homology(const CoverChainComplex& c) {
  HomologyReport r;
  r.chi = c.euler_characteristic();
  // no 3-cells: H2 is the kernel of b2, a free group
  r.h2.free_rank = static_cast<int>(kernel_basis(c.b2).size());
  // H1 = ker b1 / im b2: express the image in kernel coordinates
  auto k1 = kernel_basis(c.b1);
  IntMatrix kmat = IntMatrix::from_columns(c.rank_c1, k1);
  IntSolver solver(kmat);
  IntMatrix rel(static_cast<int>(k1.size()), c.b2.cols());
  for (int j = 0; j < c.b2.cols(); ++j) {
    auto coords = solver.solve(c.b2.column(j));
    if (!coords) throw DomainError("cover homology: internal: im b2 outside ker b1");
    rel.set_column(j, *coords);
  }
  r.h1 = cokernel_structure(rel);
  r.h0 = cokernel_structure(c.b1);
  return r;
}

/// Deterministic DOT rendering of a Cayley graph: nodes in element order,
/// edges grouped per generator, LF line endings.
inline std::string export_dot(const CayleyGraph& g, const Alphabet& alphabet) {
  std::string out = "digraph cayley {\n";
  for (int v = 0; v < g.vertices; ++v)
    out += "  n" + std::to_string(v) + " [label=\"" + std::to_string(v) + "\"];\n";
  for (const CayleyEdge& e : g.edges)
    out += "  n" + std::to_string(e.src) + " -> n" + std::to_string(e.dst) + " [label=\"" +
           alphabet.name(e.gen) + "\"];\n";
  out += "}\n";
  return out;
}

}  // namespace crossmod

#endif
