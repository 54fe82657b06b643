#include "doctest.h"

#include "cohomforge/complexes.hpp"

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

TEST_CASE("classical cochain complex") {
  auto g = make("C2");
  SUBCASE("degree zero is M and d0 is g - 1") {
    auto zs = module_of(g, "Zsign");
    CochainComplex c = classical_complex(g, zs, 2);
    CHECK(c.groups[0].gens == 1);
    // rows: value at (1) is phi(1 . -) - phi = 0, value at (t) is -2 phi
    CHECK(c.diffs[0].matrix()(0, 0) == 0);
    CHECK(c.diffs[0].matrix()(1, 0) == -2);
  }
  SUBCASE("cochain group sizes") {
    auto f2 = module_of(g, "F2");
    CochainComplex c = classical_complex(g, f2, 3);
    for (int n = 0; n <= 4; ++n) CHECK(c.groups[static_cast<std::size_t>(n)].gens == (1 << n));
  }
  SUBCASE("the normalized subcomplex drops identity-containing tuples") {
    auto f2 = module_of(g, "F2");
    CochainComplex nc = classical_complex(g, f2, 3, true);
    CHECK(nc.groups[1].gens == 1);  // rank drops 2 -> 1
    CHECK(nc.groups[2].gens == 1);
    CHECK(nc.label == "NC");
  }
  SUBCASE("size guard names the offending degree") {
    auto z = module_of(g, "Z");
    CHECK_THROWS_AS(classical_complex(g, z, 3, false, BuildOptions{8}), SizeGuardError);
  }
}

TEST_CASE("homogeneous complexes") {
  auto g = make("C2");
  auto f2 = module_of(g, "F2");
  SUBCASE("K^0 recovers M and K^1(C2) is M^2") {
    auto zg = module_of(g, "ZG");
    CochainComplex k = homogeneous_k(g, zg, 1);
    CHECK(invariant_factors(k.groups[0]) == invariant_factors(zg->carrier()));
    CHECK(invariant_factors(k.groups[1]) == factors(4, {}));  // two free orbits of ZG
  }
  SUBCASE("NK^1(C2) drops the diagonal orbit") {
    auto z = module_of(g, "Z");
    CochainComplex k = homogeneous_k(g, z, 1);
    CochainComplex nk = normalized_k(g, z, 1);
    CHECK(k.groups[1].gens == 2);
    CHECK(nk.groups[1].gens == 1);
  }
  SUBCASE("KS^0 is M; KS^1(C2, Z) = 0; KS^1(C2, F2) = F2 + F2") {
    auto z = module_of(g, "Z");
    CochainComplex ks_z = antisymmetric_ks(g, z, 1);
    CHECK(invariant_factors(ks_z.groups[0]) == factors(1, {}));
    CHECK(invariant_factors(ks_z.groups[1]) == factors(0, {}));
    CochainComplex ks_f2 = antisymmetric_ks(g, f2, 1);
    CHECK(invariant_factors(ks_f2.groups[1]) == factors(0, {2, 2}));
  }
  SUBCASE("K_lambda truncates at the group order") {
    auto z = module_of(g, "Z");
    CochainComplex kl = exterior_k_lambda(g, z, 5);
    for (int n = 2; n <= 5; ++n)
      CHECK(invariant_factors(kl.groups[static_cast<std::size_t>(n)]) == factors(0, {}));
  }
  SUBCASE("the delta complex starts at zero") {
    CochainComplex dh = delta_hom_complex(g, f2, 3);
    CHECK(invariant_factors(dh.groups[0]) == factors(0, {}));
  }
}

TEST_CASE("symmetric invariants route") {
  auto g = make("C2");
  auto f2 = module_of(g, "F2");
  SUBCASE("transpositions square to the identity") {
    CochainComplex c = classical_complex(g, f2, 3);
    for (int n = 1; n <= 3; ++n)
      for (int i = 1; i <= n; ++i) {
        IntMat t = transposition_action(c, n, i);
        AbHom t_hom(c.groups[static_cast<std::size_t>(n)], c.groups[static_cast<std::size_t>(n)],
                    t);
        CHECK(hom_equal(compose(t_hom, t_hom),
                        AbHom::identity(c.groups[static_cast<std::size_t>(n)])));
      }
  }
  SUBCASE("CS^0 = C^0 and tau_1 imposes no condition on C^1(C2, F2)") {
    CochainComplex cs = symmetric_cs_complex(g, f2, 2);
    CHECK(cs.groups[0].gens == 1);
    CHECK(invariant_factors(cs.groups[1]) == factors(0, {2, 2}));
  }
  SUBCASE("CS differentials restrict the classical ones") {
    CochainComplex cs = symmetric_cs_complex(g, f2, 3);
    REQUIRE(cs.ambient);
    for (int n = 0; n < cs.top(); ++n) {
      AbHom left = compose(cs.ambient->diffs[static_cast<std::size_t>(n)],
                           cs.to_ambient[static_cast<std::size_t>(n)]);
      AbHom right = compose(cs.to_ambient[static_cast<std::size_t>(n + 1)],
                            cs.diffs[static_cast<std::size_t>(n)]);
      CHECK(hom_equal(left, right));
    }
  }
}

TEST_CASE("psi chain maps") {
  auto g = make("C2");
  auto f2 = module_of(g, "F2");
  SUBCASE("K <-> C: degree zero is the identity, every degree an isomorphism") {
    CochainComplex k = homogeneous_k(g, f2, 3);
    CochainComplex c = classical_complex(g, f2, 3);
    ChainMap psi = psi_chain_map(k, c);
    CHECK(psi.degrees[0].matrix() == IntMat::Identity(1, 1));
    for (const AbHom& p : psi.degrees) {
      CHECK(invariant_factors(kernel(p).group).is_trivial());
      CHECK(invariant_factors(cokernel(p).group).is_trivial());
    }
  }
  SUBCASE("degree 1 of K <-> C over Z is an explicit invertible 2x2 matrix") {
    auto z = module_of(g, "Z");
    CochainComplex k = homogeneous_k(g, z, 1);
    CochainComplex c = classical_complex(g, z, 1);
    ChainMap psi = psi_chain_map(k, c);
    const IntMat& m = psi.degrees[1].matrix();
    REQUIRE(m.rows() == 2);
    Int det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    CHECK(abs(det) == 1);
  }
  SUBCASE("KS <-> CS lands inside CS with equal invariant factors") {
    CochainComplex ks = antisymmetric_ks(g, f2, 3);
    CochainComplex cs = symmetric_cs_complex(g, f2, 3);
    ChainMap psi = psi_chain_map(ks, cs);
    for (int n = 0; n <= 3; ++n) {
      CHECK(invariant_factors(ks.groups[static_cast<std::size_t>(n)]) ==
            invariant_factors(cs.groups[static_cast<std::size_t>(n)]));
      CHECK(invariant_factors(kernel(psi.degrees[static_cast<std::size_t>(n)]).group)
                .is_trivial());
      CHECK(invariant_factors(cokernel(psi.degrees[static_cast<std::size_t>(n)]).group)
                .is_trivial());
    }
  }
  SUBCASE("mismatched pairs are rejected") {
    CochainComplex k = homogeneous_k(g, f2, 2);
    CochainComplex cs = symmetric_cs_complex(g, f2, 2);
    CHECK_THROWS_AS(psi_chain_map(k, cs), std::invalid_argument);
  }
}

TEST_CASE("splitting of the antisymmetric complex") {
  auto g = make("C2");
  auto f2 = module_of(g, "F2");
  CochainComplex ks = antisymmetric_ks(g, f2, 3);
  CochainComplex kl = exterior_k_lambda(g, f2, 3);
  CochainComplex dh = delta_hom_complex(g, f2, 3);
  ChainMap section = splitting_section(kl, ks);
  ChainMap proj_l = splitting_projection_lambda(ks, kl);
  ChainMap proj_d = splitting_projection_delta(ks, dh);

  SUBCASE("degree 0: everything is M and the delta part vanishes") {
    CHECK(invariant_factors(ks.groups[0]) == factors(0, {2}));
    CHECK(invariant_factors(kl.groups[0]) == factors(0, {2}));
    CHECK(invariant_factors(dh.groups[0]) == factors(0, {}));
  }
  SUBCASE("degree 1 splits as F2 + F2") {
    CHECK(invariant_factors(ks.groups[1]) == factors(0, {2, 2}));
    CHECK(invariant_factors(kl.groups[1]) == factors(0, {2}));
    CHECK(invariant_factors(dh.groups[1]) == factors(0, {2}));
  }
  SUBCASE("projection after section is the identity on K_lambda") {
    for (int n = 0; n <= 3; ++n) {
      AbHom round_trip = compose(proj_l.degrees[static_cast<std::size_t>(n)],
                                 section.degrees[static_cast<std::size_t>(n)]);
      CHECK(hom_equal(round_trip, AbHom::identity(kl.groups[static_cast<std::size_t>(n)])));
    }
  }
  SUBCASE("section after projection is idempotent on KS") {
    for (int n = 0; n <= 3; ++n) {
      AbHom e = compose(section.degrees[static_cast<std::size_t>(n)],
                        proj_l.degrees[static_cast<std::size_t>(n)]);
      CHECK(hom_equal(compose(e, e), e));
    }
  }
  SUBCASE("the two projections are jointly injective") {
    for (int n = 0; n <= 3; ++n) {
      const AbHom& pl = proj_l.degrees[static_cast<std::size_t>(n)];
      const AbHom& pd = proj_d.degrees[static_cast<std::size_t>(n)];
      PresentedAb sum = direct_sum(pl.target(), pd.target());
      IntMat stacked(sum.gens, pl.source().gens);
      stacked.topRows(pl.target().gens) = pl.matrix();
      stacked.bottomRows(pd.target().gens) = pd.matrix();
      AbHom joint(pl.source(), sum, std::move(stacked));
      CHECK(invariant_factors(kernel(joint).group).is_trivial());
    }
  }
}

TEST_CASE("inclusions into the homogeneous complex commute") {
  auto g = make("C2");
  for (const char* mspec : {"F2", "Z"}) {
    auto m = module_of(g, mspec);
    CochainComplex k = homogeneous_k(g, m, 3);
    CochainComplex ks = antisymmetric_ks(g, m, 3);
    CochainComplex kl = exterior_k_lambda(g, m, 3);
    CochainComplex nk = normalized_k(g, m, 3);
    // make_chain_map validates all the squares; reaching here is the test
    ChainMap a = inclusion_into_k(ks, k);
    ChainMap b = inclusion_into_k(kl, k);
    ChainMap c = inclusion_into_k(nk, k);
    CHECK(a.degrees.size() == 5);
    CHECK(b.degrees.size() == 5);
    CHECK(c.degrees.size() == 5);
    // inclusion degree 0 is injective
    CHECK(invariant_factors(kernel(a.degrees[0]).group).is_trivial());
  }
}

TEST_CASE("chain-level collapse without 2-torsion in M") {
  auto g = make("C2");
  auto z = module_of(g, "Z");
  CochainComplex ks = antisymmetric_ks(g, z, 4);
  CochainComplex kl = exterior_k_lambda(g, z, 4);
  ChainMap section = splitting_section(kl, ks);
  for (const AbHom& s : section.degrees) {
    CHECK(invariant_factors(kernel(s).group).is_trivial());
    CHECK(invariant_factors(cokernel(s).group).is_trivial());
  }
}

TEST_CASE("C_lambda: intersection route matches the psi image") {
  auto g = make("C2");
  auto f2 = module_of(g, "F2");
  CochainComplex cl = c_lambda_intersection_complex(g, f2, 3);
  CochainComplex kl = exterior_k_lambda(g, f2, 3);
  REQUIRE(cl.ambient);
  for (int n = 0; n <= 3; ++n) {
    IntMat psi_gens = psi_image_in_classical(kl, *cl.ambient, n);
    CHECK(subgroup_equal(psi_gens, cl.to_ambient[static_cast<std::size_t>(n)].matrix(),
                         cl.ambient->groups[static_cast<std::size_t>(n)].rels));
  }
  // and psi restricted to the pair is a degreewise isomorphism
  ChainMap psi = psi_chain_map(kl, cl);
  for (const AbHom& p : psi.degrees) {
    CHECK(invariant_factors(kernel(p).group).is_trivial());
    CHECK(invariant_factors(cokernel(p).group).is_trivial());
  }
}
