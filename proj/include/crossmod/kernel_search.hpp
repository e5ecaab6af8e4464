#ifndef CROSSMOD_KERNEL_SEARCH_HPP
#define CROSSMOD_KERNEL_SEARCH_HPP

#include <string>
#include <utility>
#include <vector>

#include "crossmod/extensions.hpp"
#include "crossmod/small_groups.hpp"

namespace crossmod {

struct KernelSurveyEntry {
  std::string n_name, q_name;
  std::vector<int> phi_out;
  bool extendible = false;        // obstruction class vanishes
  std::size_t classes = 0;        // congruence classes from the oracle
  Int h2_order = 0;               // |H^2(Q, Z(N))|
  bool agree = false;             // extendible <-> classes > 0, and count matches
};

/// Checks the extension-problem agreement for every abstract kernel with
/// |N| <= max_n and |Q| <= max_q: the obstruction route and the exhaustive
/// factor-system oracle must decide extendibility identically, and for
/// extendible kernels the number of congruence classes must equal
/// |H^2(Q, Z(N))|.
inline std::vector<KernelSurveyEntry> kernel_survey(int max_n, int max_q) {
  std::vector<KernelSurveyEntry> out;
  EnumerationBudget budget;
  budget.max_n = max_n;
  budget.max_q = max_q;
  for (const NamedGroup& n : group_catalog(max_n))
    for (const NamedGroup& q : group_catalog(max_q))
      for (const AbstractKernel& k : enumerate_kernels(n.group, q.group)) {
        KernelSurveyEntry e;
        e.n_name = n.name;
        e.q_name = q.name;
        e.phi_out = k.phi_out;
        Obstruction o = obstruction(k);
        e.extendible = o.zero;
        e.classes = enumerate_extensions(k, budget).size();
        auto h2 = cohomology_group(k.q, o.kcm.view.zmod, 2, Resolution::kBar);
        e.h2_order = h2.structure().order();
        e.agree = e.extendible ? (e.classes > 0 && Int(static_cast<long>(e.classes)) == e.h2_order)
                               : e.classes == 0;
        out.push_back(std::move(e));
      }
  return out;
}

struct NonExtendibleSearch {
  bool found = false;
  std::string n_name, q_name;
  std::vector<int> phi_out;
  std::size_t kernels_scanned = 0;  // obstruction classes computed
  std::size_t kernels_abelian = 0;  // skipped: abelian N is always extendible
};

/// Scans abstract kernels in increasing |N|*|Q| (then catalog and
/// lexicographic phi order) for a non-extendible one; never hard-codes an
/// example.  Kernels with abelian N are counted but not tested: the
/// semidirect product N x| Q realizes every such kernel.  The returned
/// record carries the certificate data when a kernel is found.
inline NonExtendibleSearch find_non_extendible_kernel(int max_n = 8, int max_q = 4) {
  NonExtendibleSearch r;
  std::vector<NamedGroup> ns = group_catalog(max_n);
  std::vector<NamedGroup> qs = group_catalog(max_q);
  std::vector<std::pair<int, std::pair<int, int>>> order;
  for (std::size_t i = 0; i < ns.size(); ++i)
    for (std::size_t j = 0; j < qs.size(); ++j)
      order.push_back({ns[i].group->order() * qs[j].group->order(),
                       {static_cast<int>(i), static_cast<int>(j)}});
  std::sort(order.begin(), order.end());
  for (const auto& [size, ij] : order) {
    const NamedGroup& n = ns[ij.first];
    const NamedGroup& q = qs[ij.second];
    if (n.group->is_abelian()) {
      for (const AbstractKernel& k : enumerate_kernels(n.group, q.group)) {
        (void)k;
        ++r.kernels_abelian;
      }
      continue;
    }
    for (const AbstractKernel& k : enumerate_kernels(n.group, q.group)) {
      ++r.kernels_scanned;
      if (!obstruction(k).zero) {
        r.found = true;
        r.n_name = n.name;
        r.q_name = q.name;
        r.phi_out = k.phi_out;
        return r;
      }
    }
  }
  return r;
}

}  // namespace crossmod

#endif
