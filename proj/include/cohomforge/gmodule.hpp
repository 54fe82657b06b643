#pragma once

// G-modules: a presented abelian group together with a left action of a
// finite group by automorphisms, plus the stock coefficient modules the
// tables are computed against.

#include <memory>
#include <string>
#include <vector>

#include "cohomforge/group.hpp"
#include "cohomforge/presented.hpp"

namespace cohomforge {

using GroupPtr = std::shared_ptr<const Group>;

class GModule {
 public:
  // With validate set, checks that action(0) = id, that the action is
  // multiplicative, and that every matrix respects the carrier relations.
  GModule(GroupPtr group, PresentedAb carrier, std::vector<IntMat> action,
          std::string spec, bool validate = true);

  const Group& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  const PresentedAb& carrier() const { return carrier_; }
  Index rank() const { return carrier_.gens; }
  const IntMat& action(int g) const { return action_[static_cast<std::size_t>(g)]; }
  AbHom action_hom(int g) const { return AbHom(carrier_, carrier_, action(g)); }
  const std::string& spec() const { return spec_; }

 private:
  GroupPtr group_;
  PresentedAb carrier_;
  std::vector<IntMat> action_;
  std::string spec_;
};

using GModulePtr = std::shared_ptr<const GModule>;

// Z (k = 0) or Z/k with every element acting as the identity.
GModule trivial_module(GroupPtr g, const Int& k);
// Z (or Z/k) with g acting by chi(g) in {+1,-1}.
GModule sign_module(GroupPtr g, std::vector<int> chi, const Int& k = 0);
// Z[G] with the left regular action.
GModule group_ring_module(GroupPtr g);

// Z, Z/<k>, F2, Zsign, ZG, or @file.json
GModule parse_module_spec(GroupPtr g, const std::string& spec);

// The same carrier viewed over a subgroup (actions of its elements only),
// with the subgroup reindexed via subgroup_as_group.
GModule restrict_module(const GModule& m, const Subgroup& s);

// Same carrier, action g -> chi(g) * action(g).
GModule twist_by_character(const GModule& m, const std::vector<int>& chi);

}  // namespace cohomforge
