#include "doctest.h"

#include "cohomforge/e1page.hpp"

using namespace cohomforge;

namespace {

GroupPtr make(const char* spec) {
  return std::make_shared<const Group>(parse_group_spec(spec));
}

GModulePtr module_of(const GroupPtr& g, const char* spec) {
  return std::make_shared<const GModule>(parse_module_spec(g, spec));
}

InvariantFactors factors(Index free_rank, std::initializer_list<long> torsion) {
  InvariantFactors f;
  f.free_rank = free_rank;
  for (long d : torsion) f.torsion.push_back(d);
  return f;
}

}  // namespace

TEST_CASE("periodic cyclic cohomology matches the homogeneous route") {
  for (const char* gs : {"C2", "C3", "C5"}) {
    auto g = make(gs);
    std::vector<const char*> mods{"Z", "F2", "Z/4", "Z/3"};
    for (const char* ms : mods) {
      auto m = module_of(g, ms);
      for (int q = 0; q <= 3; ++q) {
        InvariantFactors periodic = invariant_factors(periodic_cyclic_cohomology(*m, q));
        InvariantFactors homog = invariant_factors(homogeneous_group_cohomology(g, m, q));
        std::string tag = std::string(gs) + " " + ms + " q=" + std::to_string(q);
        CHECK_MESSAGE(periodic == homog, tag);
      }
    }
    if (!g->canonical_sign.empty()) {
      auto zs = module_of(g, "Zsign");
      for (int q = 0; q <= 3; ++q)
        CHECK(invariant_factors(periodic_cyclic_cohomology(*zs, q)) ==
              invariant_factors(homogeneous_group_cohomology(g, zs, q)));
    }
  }
}

TEST_CASE("E1 entries") {
  SUBCASE("column zero vanishes above the bottom row") {
    for (const char* gs : {"C2", "C3", "S3"}) {
      auto g = make(gs);
      auto m = module_of(g, "Z");
      for (int q = 1; q <= 3; ++q)
        CHECK(e1_entry(g, *m, 0, q).invariants == factors(0, {}));
    }
  }
  SUBCASE("no 2-torsion in C3 empties the p = 1 column") {
    auto g = make("C3");
    for (const char* ms : {"Z", "Z/3"}) {
      auto m = module_of(g, ms);
      for (int q = 1; q <= 3; ++q)
        CHECK(e1_entry(g, *m, 1, q).invariants == factors(0, {}));
    }
  }
  SUBCASE("the sign-twisted orbit of C2 reproduces the degree shift") {
    auto g = make("C2");
    auto m = module_of(g, "Z");
    E1Entry e = e1_entry(g, *m, 1, 1);
    CHECK(e.invariants == factors(0, {2}));  // = H^2(C2, Z)
    REQUIRE(e.orbits.size() == 1);
    CHECK(e.orbits[0].stab_order == 2);
    CHECK(!e.orbits[0].trivial_character);
  }
  SUBCASE("entries beyond the group order vanish") {
    auto g = make("C2");
    auto m = module_of(g, "Z");
    for (int q = 0; q <= 2; ++q) {
      CHECK(e1_entry(g, *m, 2, q).invariants == factors(0, {}));
      CHECK(e1_entry(g, *m, 3, q).invariants == factors(0, {}));
    }
  }
  SUBCASE("the bottom row is exactly the equivariant Hom of the wedge") {
    auto g = make("S3");
    auto m = module_of(g, "Z");
    for (int p = 0; p <= 4; ++p) {
      E1Entry e = e1_entry(g, *m, p, 0);
      HomModule hom(exterior_power(g, p + 1), m);
      CHECK(e.invariants == invariant_factors(hom.group()));
    }
  }
}

TEST_CASE("row zero is the exterior complex") {
  SUBCASE("degreewise equal groups and differentials") {
    for (const char* gs : {"C2", "C3", "S3"}) {
      auto g = make(gs);
      auto m = module_of(g, "Z");
      CHECK(complexes_equal(row0_complex(g, m, 4), exterior_k_lambda(g, m, 4)));
    }
  }
  SUBCASE("row-zero cohomology of (C5, Z/5) equals the exterior table") {
    auto g = make("C5");
    auto m = module_of(g, "Z/5");
    CohomologyTable via_row0 = cohomology(row0_complex(g, m, 5));
    CohomologyTable via_kl = cohomology(exterior_k_lambda(g, m, 5));
    for (int i = 0; i <= 5; ++i) CHECK(via_row0.at(i) == via_kl.at(i));
  }
}

TEST_CASE("prime column crosschecks") {
  SUBCASE("(C2, F2, ell = 2, q = 1)") {
    auto g = make("C2");
    PrimeColumnCheck c = prime_column_crosscheck(g, module_of(g, "F2"), 2, 1);
    CHECK(c.match);
    CHECK(c.entry == factors(0, {2}));
    CHECK(c.subgroup_count == 1);
  }
  SUBCASE("(S3, Z, ell = 2, q = 1): three subgroups of order two") {
    auto g = make("S3");
    PrimeColumnCheck c = prime_column_crosscheck(g, module_of(g, "Z"), 2, 1);
    CHECK(c.match);
    CHECK(c.entry == factors(0, {2, 2, 2}));
    CHECK(c.subgroup_count == 3);
  }
  SUBCASE("(C3, Z, ell = 3, q = 2)") {
    auto g = make("C3");
    PrimeColumnCheck c = prime_column_crosscheck(g, module_of(g, "Z"), 3, 2);
    CHECK(c.match);
    CHECK(c.entry == factors(0, {3}));
  }
}

TEST_CASE("page assembly") {
  auto g = make("C2");
  auto m = module_of(g, "Z");
  E1Page page = e1_page(g, m, 3, 2);
  SUBCASE("only the first two columns survive") {
    for (int p = 2; p <= 3; ++p)
      for (int q = 0; q <= 2; ++q) CHECK(page.at(p, q).invariants == factors(0, {}));
    CHECK(page.at(1, 1).invariants == factors(0, {2}));
    CHECK(page.row0_is_zarelua);
  }
  SUBCASE("vanishing report flags the forced cells and they vanish") {
    auto cells = vanishing_report(page, *g);
    int forced = 0;
    for (const auto& cell : cells) {
      if (cell.must_vanish) {
        ++forced;
        CHECK(cell.vanishes);
      }
    }
    // p=0: q=1,2; p=2,3: all q
    CHECK(forced == 2 + 3 + 3);
  }
  SUBCASE("positive rows are torsion killed by the group order") {
    auto s3 = make("S3");
    auto zm = module_of(s3, "Z");
    E1Page p3 = e1_page(s3, zm, 5, 3);
    for (const auto& e : p3.entries) {
      if (e.q == 0) continue;
      CHECK(e.invariants.free_rank == 0);
      for (const Int& d : e.invariants.torsion) CHECK(is_zero(Int(Int(s3->order) % d)));
    }
  }
  SUBCASE("JSON dump is schema-stable and thread-independent") {
    auto s3 = make("S3");
    auto zm = module_of(s3, "Z");
    std::string one = render_json(e1_page(s3, zm, 3, 2, {}, 1)).dump();
    std::string four = render_json(e1_page(s3, zm, 3, 2, {}, 4)).dump();
    CHECK(one == four);
    auto j = render_json(page);
    CHECK(j["entries"][0]["p"] == 0);
    CHECK(j["row0_is_zarelua"] == true);
    CHECK(j["entries"][5]["orbits"].is_array());
  }
}
