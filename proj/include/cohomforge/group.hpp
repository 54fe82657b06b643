#pragma once

// Finite groups as validated multiplication tables.  The identity always sits
// at index 0 and the element index order is the total order used by every
// wedge basis and orbit representative downstream.

#include <optional>
#include <string>
#include <vector>

#include "cohomforge/intmat.hpp"

namespace cohomforge {

struct Group {
  Index order = 1;
  std::vector<int> table;     // row-major: table[g*order + h] = g*h
  std::vector<int> inverses;  // two-sided inverses
  std::vector<std::string> names;
  // +1/-1 per element when the construction carries a canonical character
  // onto {+1,-1}; empty otherwise.
  std::vector<int> canonical_sign;
  std::string spec;  // display form, e.g. "C2", "S3", "C2xC2"

  int mul(int a, int b) const { return table[static_cast<std::size_t>(a) * order + b]; }
  int inverse(int g) const { return inverses[static_cast<std::size_t>(g)]; }
};

Group cyclic_group(Index n);
Group dihedral_group(Index n);  // order 2n
Group symmetric_group(Index n);  // n <= 5
Group product_group(const Group& a, const Group& b);
// Validates and, if necessary, reindexes so the identity lands at index 0.
Group group_from_table(Index order, std::vector<int> table,
                       std::vector<std::string> names = {});

// C<n>, D<n>, S<n>, products like C2xC2, or @file.json
Group parse_group_spec(const std::string& spec);

int element_order(const Group& g, int element);
// Sorted, complete list of x with x^k = identity; always contains 0.
std::vector<int> solutions_of_power_equation(const Group& g, const Int& k);

struct Subgroup {
  const Group* parent = nullptr;
  std::vector<int> elements;  // sorted, closed under product and inverse
};

bool subgroup_is_valid(const Subgroup& s);
std::vector<Subgroup> cyclic_subgroups_of_order(const Group& g, Index ell);

// The subgroup as a standalone Group: new index i corresponds to parent
// element s.elements[i]; identity stays first because the list is sorted.
Group subgroup_as_group(const Subgroup& s);

}  // namespace cohomforge
