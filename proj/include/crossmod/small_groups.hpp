#ifndef CROSSMOD_SMALL_GROUPS_HPP
#define CROSSMOD_SMALL_GROUPS_HPP

#include <string>
#include <utility>
#include <vector>

#include "crossmod/presentation.hpp"

namespace crossmod {

struct NamedGroup {
  std::string name;
  GroupPtr group;
};

/// One group per isomorphism type of order <= max_order (max 8), in
/// increasing order of |G| and fixed within each order.
inline std::vector<NamedGroup> group_catalog(int max_order) {
  if (max_order > 8) throw DomainError("group catalog: only orders up to 8 are built in");
  auto present = [](const char* text) {
    return todd_coxeter(parse_presentation(text)).group;
  };
  std::vector<NamedGroup> all;
  auto cyc = [](int n) {
    return NamedGroup{"C" + std::to_string(n), make_group(FiniteGroup::cyclic(n))};
  };
  all.push_back(cyc(1));
  all.push_back(cyc(2));
  all.push_back(cyc(3));
  all.push_back(cyc(4));
  all.push_back({"C2xC2", make_group(FiniteGroup::direct_product(FiniteGroup::cyclic(2),
                                                                 FiniteGroup::cyclic(2)))});
  all.push_back(cyc(5));
  all.push_back(cyc(6));
  all.push_back({"S3", present("<x,y | x^3, y^2, x*y*x*y>")});
  all.push_back(cyc(7));
  all.push_back(cyc(8));
  all.push_back({"C4xC2", make_group(FiniteGroup::direct_product(FiniteGroup::cyclic(4),
                                                                 FiniteGroup::cyclic(2)))});
  all.push_back({"C2xC2xC2",
                 make_group(FiniteGroup::direct_product(
                     FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)),
                     FiniteGroup::cyclic(2)))});
  all.push_back({"D4", present("<r,s | r^4, s^2, r*s*r*s>")});
  all.push_back({"Q8", present("<a,b | a^4, a^2*b^-2, a*b*a*b^-1>")});

  std::vector<NamedGroup> out;
  for (auto& g : all)
    if (g.group->order() <= max_order) out.push_back(std::move(g));
  return out;
}

}  // namespace crossmod

#endif
