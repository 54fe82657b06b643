#pragma once

// The first page of the spectral sequence attached to the exterior
// resolution.  Column p is governed by the orbits of G on the wedge basis of
// degree p+1; a free orbit contributes nothing above row zero, while an orbit
// with stabilizer H and sign character chi contributes the cohomology of H
// with coefficients twisted by chi.  Row zero is the exterior complex itself.

#include "json.hpp"

#include "cohomforge/cohomology.hpp"

namespace cohomforge {

struct E1OrbitInfo {
  Index stab_order = 1;
  bool trivial_character = true;
};

struct E1Entry {
  int p = 0, q = 0;
  InvariantFactors invariants;
  std::vector<E1OrbitInfo> orbits;  // all orbits of the column (empty past truncation)
};

struct E1Page {
  std::string group_spec, module_spec;
  int pmax = 0, qmax = 0;
  std::vector<E1Entry> entries;  // p-major, then q
  bool row0_is_zarelua = false;

  const E1Entry& at(int p, int q) const {
    return entries.at(static_cast<std::size_t>(p) * (qmax + 1) + q);
  }
};

// H^q of a cyclic group of prime order through its 2-periodic resolution;
// the fast path and the oracle for prime cyclic stabilizers.
PresentedAb periodic_cyclic_cohomology(const GModule& m, int q);

// H^q of any finite group via the homogeneous complex.
PresentedAb homogeneous_group_cohomology(GroupPtr g, GModulePtr m, int q,
                                         BuildOptions opts = {});

// Ext^q of the degree-(p+1) wedge module into M, with orbit provenance.
E1Entry e1_entry(GroupPtr g, const GModule& m, int p, int q, BuildOptions opts = {});

E1Page e1_page(GroupPtr g, GModulePtr m, int pmax, int qmax, BuildOptions opts = {},
               int threads = 1);

// The (E1^{p,0}, d1) complex; built through the page machinery so that
// comparing it against exterior_k_lambda is a genuine consistency check.
CochainComplex row0_complex(GroupPtr g, GModulePtr m, int pmax, BuildOptions opts = {});

struct PrimeColumnCheck {
  Index ell = 2;
  int q = 1;
  InvariantFactors entry;    // E1^{ell-1, q}
  InvariantFactors product;  // product of subgroup cohomologies, shifted for ell = 2
  std::size_t subgroup_count = 0;
  bool match = false;
};

PrimeColumnCheck prime_column_crosscheck(GroupPtr g, GModulePtr m, Index ell, int q,
                                         BuildOptions opts = {});

struct VanishingCell {
  int p = 0, q = 0;
  bool must_vanish = false;
  bool vanishes = false;
};

// Flags every cell forced to vanish (column truncation, q > 0 with only the
// trivial solution of x^{p+1} = 1) and whether the computed entry does.
std::vector<VanishingCell> vanishing_report(const E1Page& page, const Group& g);

nlohmann::ordered_json render_json(const E1Page& page);
std::string render_text(const E1Page& page);
std::string render_csv(const E1Page& page);

}  // namespace cohomforge
