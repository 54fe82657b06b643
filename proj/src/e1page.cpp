#include "cohomforge/e1page.hpp"

#include <sstream>

#include "cohomforge/parallel.hpp"

namespace cohomforge {

PresentedAb periodic_cyclic_cohomology(const GModule& m, int q) {
  const Group& g = m.group();
  if (g.order < 2) {
    // trivial group: H^0 = M, else 0
    if (q == 0) return m.carrier();
    return PresentedAb::zero();
  }
  const Index rank = m.rank();
  const int gen = 1;
  IntMat sigma = m.action(gen);
  IntMat dec = sigma - IntMat::Identity(rank, rank);  // sigma - 1
  IntMat norm = IntMat::Identity(rank, rank);
  {
    IntMat power = IntMat::Identity(rank, rank);
    for (int k = 1; k < g.order; ++k) {
      power = IntMat(sparse_product(sigma, power));
      norm += power;
    }
  }
  const PresentedAb& mc = m.carrier();
  AbHom d_even(mc, mc, dec);
  AbHom d_odd(mc, mc, norm);
  if (q == 0) return homology_at(AbHom::zero_map(PresentedAb::zero(), mc), d_even);
  if (q % 2 == 1) return homology_at(d_even, d_odd);
  return homology_at(d_odd, d_even);
}

PresentedAb homogeneous_group_cohomology(GroupPtr g, GModulePtr m, int q, BuildOptions opts) {
  CochainComplex k = homogeneous_k(std::move(g), std::move(m), q, opts);
  AbHom d_in = q == 0 ? AbHom::zero_map(PresentedAb::zero(), k.groups[0])
                      : k.diffs[static_cast<std::size_t>(q - 1)];
  return homology_at(d_in, k.diffs[static_cast<std::size_t>(q)]);
}

namespace {

bool is_prime_order(Index p) {
  if (p < 2) return false;
  for (Index d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// twisted coefficients over the stabilizer, per the orbit's sign character
GModule stabilizer_coefficients(const GModule& m, const Orbit& orbit) {
  GModule restricted = restrict_module(m, orbit.stabilizer);
  if (orbit.character_is_trivial()) return restricted;
  return twist_by_character(restricted, orbit.character);
}

PresentedAb orbit_ext_contribution(const GModule& m, const Orbit& orbit, int q,
                                   const BuildOptions& opts) {
  GModule coeffs = stabilizer_coefficients(m, orbit);
  if (is_prime_order(static_cast<Index>(orbit.stabilizer.elements.size())))
    return periodic_cyclic_cohomology(coeffs, q);
  auto shared = std::make_shared<const GModule>(std::move(coeffs));
  return homogeneous_group_cohomology(shared->group_ptr(), shared, q, opts);
}

}  // namespace

E1Entry e1_entry(GroupPtr g, const GModule& m, int p, int q, BuildOptions opts) {
  if (p < 0 || q < 0) throw std::invalid_argument("e1_entry: negative position");
  E1Entry entry;
  entry.p = p;
  entry.q = q;
  if (p + 1 > g->order) {
    // wedge power beyond the group order vanishes
    entry.invariants = invariant_factors(PresentedAb::zero());
    return entry;
  }
  BasedPtr wedge = exterior_power(g, p + 1, opts.max_basis);
  if (q == 0) {
    auto coeffs = std::make_shared<const GModule>(m);
    HomModule hom(wedge, coeffs);
    for (const Orbit& orbit : hom.orbits().orbits)
      entry.orbits.push_back(E1OrbitInfo{static_cast<Index>(orbit.stabilizer.elements.size()),
                                         orbit.character_is_trivial()});
    entry.invariants = invariant_factors(hom.group());
    return entry;
  }
  OrbitDecomposition dec = orbit_decomposition(*wedge);
  std::vector<PresentedAb> contributions;
  for (const Orbit& orbit : dec.orbits) {
    entry.orbits.push_back(E1OrbitInfo{static_cast<Index>(orbit.stabilizer.elements.size()),
                                       orbit.character_is_trivial()});
    if (orbit.stabilizer.elements.size() <= 1) continue;  // free orbits are projective
    contributions.push_back(orbit_ext_contribution(m, orbit, q, opts));
  }
  std::vector<const PresentedAb*> parts;
  for (const auto& c : contributions) parts.push_back(&c);
  entry.invariants = invariant_factors(direct_sum_many(parts));
  return entry;
}

E1Page e1_page(GroupPtr g, GModulePtr m, int pmax, int qmax, BuildOptions opts, int threads) {
  E1Page page;
  page.group_spec = g->spec;
  page.module_spec = m->spec();
  page.pmax = pmax;
  page.qmax = qmax;
  page.entries.resize(static_cast<std::size_t>(pmax + 1) * (qmax + 1));
  parallel_for(page.entries.size(), threads, [&](std::size_t i) {
    int p = static_cast<int>(i) / (qmax + 1);
    int q = static_cast<int>(i) % (qmax + 1);
    page.entries[i] = e1_entry(g, *m, p, q, opts);
  });

  CochainComplex row0 = row0_complex(g, m, pmax, opts);
  CochainComplex zarelua = exterior_k_lambda(g, m, pmax, opts);
  page.row0_is_zarelua = complexes_equal(row0, zarelua);
  return page;
}

CochainComplex row0_complex(GroupPtr g, GModulePtr m, int pmax, BuildOptions opts) {
  // assembled through the page-side machinery: entry groups are the q = 0
  // Hom modules and d1 is the dual of the wedge boundary
  CochainComplex cx;
  cx.label = "K_lambda";
  cx.group = g;
  cx.coeffs = m;
  const int top = pmax + 1;
  for (int p = 0; p <= top; ++p) {
    cx.bases.push_back(exterior_power(g, p + 1, opts.max_basis));
    cx.homs.push_back(std::make_shared<HomModule>(cx.bases.back(), m));
    cx.groups.push_back(cx.homs.back()->group());
  }
  for (int p = 0; p < top; ++p) {
    auto cols = boundary_columns(*cx.bases[static_cast<std::size_t>(p + 1)],
                                 *cx.bases[static_cast<std::size_t>(p)]);
    cx.diffs.push_back(hom_differential(cols, *cx.homs[static_cast<std::size_t>(p)],
                                        *cx.homs[static_cast<std::size_t>(p + 1)]));
  }
  return cx;
}

PrimeColumnCheck prime_column_crosscheck(GroupPtr g, GModulePtr m, Index ell, int q,
                                         BuildOptions opts) {
  if (!is_prime_order(ell)) throw std::invalid_argument("prime_column_crosscheck: ell not prime");
  if (q < 1) throw std::invalid_argument("prime_column_crosscheck: q must be >= 1");
  PrimeColumnCheck check;
  check.ell = ell;
  check.q = q;
  check.entry = e1_entry(g, *m, static_cast<int>(ell) - 1, q, opts).invariants;

  int shifted_q = ell == 2 ? q + 1 : q;
  PresentedAb acc = PresentedAb::zero();
  auto subgroups = cyclic_subgroups_of_order(*g, ell);
  check.subgroup_count = subgroups.size();
  for (const Subgroup& s : subgroups) {
    auto restricted = std::make_shared<const GModule>(restrict_module(*m, s));
    acc = direct_sum(acc,
                     homogeneous_group_cohomology(restricted->group_ptr(), restricted, shifted_q,
                                                  opts));
  }
  check.product = invariant_factors(acc);
  check.match = check.entry == check.product;
  return check;
}

std::vector<VanishingCell> vanishing_report(const E1Page& page, const Group& g) {
  std::vector<VanishingCell> cells;
  for (int p = 0; p <= page.pmax; ++p) {
    bool only_trivial_root = solutions_of_power_equation(g, Int(p + 1)).size() == 1;
    for (int q = 0; q <= page.qmax; ++q) {
      VanishingCell cell;
      cell.p = p;
      cell.q = q;
      cell.must_vanish = (p + 1 > g.order) || (q > 0 && only_trivial_root);
      cell.vanishes = page.at(p, q).invariants.is_trivial();
      cells.push_back(cell);
    }
  }
  return cells;
}

namespace {

nlohmann::ordered_json invariants_json(const InvariantFactors& inv) {
  nlohmann::ordered_json torsion = nlohmann::ordered_json::array();
  for (const Int& d : inv.torsion) {
    if (mpz_fits_slong_p(d.get_mpz_t()))
      torsion.push_back(d.get_si());
    else
      torsion.push_back(to_string(d));
  }
  return {{"free_rank", inv.free_rank}, {"torsion", std::move(torsion)}};
}

}  // namespace

nlohmann::ordered_json render_json(const E1Page& page) {
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& e : page.entries) {
    nlohmann::ordered_json orbits = nlohmann::ordered_json::array();
    for (const auto& o : e.orbits)
      orbits.push_back(
          {{"stab_order", o.stab_order}, {"character", o.trivial_character ? "trivial" : "sign"}});
    nlohmann::ordered_json entry = {{"p", e.p}, {"q", e.q}};
    entry.update(invariants_json(e.invariants));
    entry["orbits"] = std::move(orbits);
    entries.push_back(std::move(entry));
  }
  return {{"group", page.group_spec},
          {"module", page.module_spec},
          {"pmax", page.pmax},
          {"qmax", page.qmax},
          {"entries", std::move(entries)},
          {"row0_is_zarelua", page.row0_is_zarelua}};
}

std::string render_text(const E1Page& page) {
  std::ostringstream os;
  os << "E1 page, group " << page.group_spec << ", module " << page.module_spec << "\n";
  for (int q = page.qmax; q >= 0; --q) {
    os << "  q=" << q << ":";
    for (int p = 0; p <= page.pmax; ++p) os << "  " << page.at(p, q).invariants.to_text();
    os << "\n";
  }
  os << "  row 0 matches the exterior complex: " << (page.row0_is_zarelua ? "yes" : "NO") << "\n";
  return os.str();
}

std::string render_csv(const E1Page& page) {
  std::ostringstream os;
  os << "p,q,free_rank,torsion,orbits\n";
  for (const auto& e : page.entries) {
    os << e.p << "," << e.q << "," << e.invariants.free_rank << ",";
    for (std::size_t i = 0; i < e.invariants.torsion.size(); ++i) {
      if (i) os << ";";
      os << to_string(e.invariants.torsion[i]);
    }
    os << ",";
    for (std::size_t i = 0; i < e.orbits.size(); ++i) {
      if (i) os << ";";
      os << e.orbits[i].stab_order << (e.orbits[i].trivial_character ? "t" : "s");
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace cohomforge
