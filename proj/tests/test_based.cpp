#include "doctest.h"

#include "cohomforge/based.hpp"

using namespace cohomforge;

namespace {

GroupPtr make(const char* spec) {
  return std::make_shared<const Group>(parse_group_spec(spec));
}

// Brute-force fixed-point oracle for Hom_G(F, M): one unknown value in M per
// basis element, constrained by sign * x(g.b) = g * x(b) and 2 x(b) = 0 on
// characteristic-2 elements.  Independent of the orbit machinery.
PresentedAb brute_force_hom(const SignedBasedModule& f, const GModule& m) {
  const Index b = f.size();
  const Index rank = m.rank();
  const Index dim = b * rank;
  std::vector<IntMat> constraint_blocks;
  for (int g = 1; g < f.group().order; ++g) {
    IntMat c = IntMat::Zero(dim, dim);
    for (Index i = 0; i < b; ++i) {
      auto [j, sign] = f.act(g, i);
      // sign * x_j - A_g x_i = 0
      c.block(j * rank, j * rank, rank, rank) += Int(sign) * IntMat::Identity(rank, rank);
      c.block(j * rank, i * rank, rank, rank) -= m.action(g);
    }
    constraint_blocks.push_back(std::move(c));
  }
  {
    // 2 x(b) = 0 in M for every characteristic-2 element
    IntMat c = IntMat::Zero(dim, dim);
    bool any = false;
    for (Index i = 0; i < b; ++i)
      if (f.is_char2(i)) {
        any = true;
        c.block(i * rank, i * rank, rank, rank) = IntMat(2 * IntMat::Identity(rank, rank));
      }
    if (any) constraint_blocks.push_back(std::move(c));
  }
  IntMat stacked(dim * static_cast<Index>(constraint_blocks.size()), dim);
  for (std::size_t k = 0; k < constraint_blocks.size(); ++k)
    stacked.middleRows(static_cast<Index>(k) * dim, dim) = constraint_blocks[k];

  std::vector<const PresentedAb*> copies(static_cast<std::size_t>(b), &m.carrier());
  PresentedAb domain = direct_sum_many(copies);
  std::vector<const PresentedAb*> targets(constraint_blocks.size(), &domain);
  AbHom constraint(domain, direct_sum_many(targets), std::move(stacked));
  return kernel(constraint).group;
}

InvariantFactors factors(Index free_rank, std::initializer_list<long> torsion) {
  InvariantFactors f;
  f.free_rank = free_rank;
  for (long d : torsion) f.torsion.push_back(d);
  return f;
}

}  // namespace

TEST_CASE("tensor powers") {
  auto g = make("C2");
  SUBCASE("degree 1: the group ring basis, t swaps") {
    auto t1 = tensor_power(g, 1);
    REQUIRE(t1->size() == 2);
    auto [idx, sign] = t1->act(1, 0);
    CHECK(idx == 1);
    CHECK(sign == 1);
  }
  SUBCASE("degree 2 over C2: four tuples, two free orbits") {
    auto t2 = tensor_power(g, 2);
    CHECK(t2->size() == 4);
    auto dec = orbit_decomposition(*t2);
    CHECK(dec.orbits.size() == 2);
    for (const auto& orbit : dec.orbits) CHECK(orbit.stabilizer.elements.size() == 1);
  }
  SUBCASE("degree 2 over C3: nine tuples, three free orbits") {
    auto t2 = tensor_power(make("C3"), 2);
    CHECK(t2->size() == 9);
    CHECK(orbit_decomposition(*t2).orbits.size() == 3);
  }
}

TEST_CASE("exterior powers") {
  SUBCASE("the top wedge of C2 picks up the sign") {
    auto l2 = exterior_power(make("C2"), 2);
    REQUIRE(l2->size() == 1);
    auto [idx, sign] = l2->act(1, 0);
    CHECK(idx == 0);
    CHECK(sign == -1);
  }
  SUBCASE("wedge beyond the order is the zero module") {
    auto l3 = exterior_power(make("C2"), 3);
    CHECK(l3->size() == 0);
    CHECK(l3->carrier().gens == 0);
  }
  SUBCASE("the top wedge of C3 is stabilized with trivial sign") {
    auto l3 = exterior_power(make("C3"), 3);
    REQUIRE(l3->size() == 1);
    for (int a = 0; a < 3; ++a) {
      auto [idx, sign] = l3->act(a, 0);
      CHECK(idx == 0);
      CHECK(sign == 1);
    }
  }
}

TEST_CASE("delta and tilde powers") {
  auto g = make("C2");
  SUBCASE("degree 1 vanishes") {
    CHECK(delta_power(g, 1)->size() == 0);
  }
  SUBCASE("degree 2 over C2: two repeat-tuples, one free orbit") {
    auto d2 = delta_power(g, 2);
    REQUIRE(d2->size() == 2);
    CHECK(d2->is_char2(0));
    auto dec = orbit_decomposition(*d2);
    REQUIRE(dec.orbits.size() == 1);
    CHECK(dec.orbits[0].stabilizer.elements.size() == 1);
    CHECK(dec.orbits[0].char2);
  }
  SUBCASE("degree 3 over C2: dimension four, two free orbits") {
    auto d3 = delta_power(g, 3);
    CHECK(d3->size() == 4);
    CHECK(orbit_decomposition(*d3).orbits.size() == 2);
  }
  SUBCASE("tilde degree 2 over C2 mixes one wedge with two repeat-tuples") {
    auto t2 = tilde_exterior_power(g, 2);
    REQUIRE(t2->size() == 3);
    int char0 = 0, char2 = 0;
    for (Index i = 0; i < t2->size(); ++i) (t2->is_char2(i) ? char2 : char0)++;
    CHECK(char0 == 1);
    CHECK(char2 == 2);
  }
  SUBCASE("tilde degree 1 is the group ring") {
    auto t1 = tilde_exterior_power(g, 1);
    CHECK(t1->size() == 2);
    for (Index i = 0; i < 2; ++i) CHECK(!t1->is_char2(i));
  }
  SUBCASE("tilde degree 4 over C2: wedge part zero, five repeat-tuples") {
    auto t4 = tilde_exterior_power(g, 4);
    CHECK(t4->size() == 5);
    for (Index i = 0; i < t4->size(); ++i) CHECK(t4->is_char2(i));
  }
}

TEST_CASE("boundary maps") {
  SUBCASE("exterior boundary of the C2 top wedge is 1 - t") {
    auto g = make("C2");
    AbHom d = boundary(*exterior_power(g, 2), *exterior_power(g, 1));
    IntMat want(2, 1);
    want << 1, -1;
    CHECK(d.matrix() == want);
  }
  SUBCASE("tensor boundary of a pair drops to the difference") {
    auto g = make("C2");
    auto t2 = tensor_power(g, 2);
    auto t1 = tensor_power(g, 1);
    AbHom d = boundary(*t2, *t1);
    Index pair = t2->index_of({0, 1});
    // (0,1) -> (1) - (0)
    CHECK(d.matrix()(0, pair) == -1);
    CHECK(d.matrix()(1, pair) == 1);
  }
  SUBCASE("delta boundary over F2: (1,1,t) -> (1,1)") {
    auto g = make("C2");
    auto d3 = delta_power(g, 3);
    auto d2 = delta_power(g, 2);
    AbHom d = boundary(*d3, *d2);
    Index src = d3->index_of({0, 0, 1});
    Index dst = d2->index_of({0, 0});
    // modulo 2: coefficient 1 at (1,1), the two (1,t) faces cancel
    for (Index r = 0; r < d2->size(); ++r) {
      Int want = r == dst ? 1 : 0;
      CHECK(is_zero(Int((d.matrix()(r, src) - want) % 2)));
    }
  }
  SUBCASE("family mismatch is rejected") {
    auto g = make("C2");
    CHECK_THROWS_AS(boundary(*tensor_power(g, 2), *exterior_power(g, 1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(boundary(*tensor_power(g, 3), *tensor_power(g, 1)), std::invalid_argument);
  }
  SUBCASE("d o d = 0 across families and small groups") {
    for (const char* spec : {"C2", "C3", "C2xC2"}) {
      auto g = make(spec);
      for (Family fam :
           {Family::Tensor, Family::NormalizedTensor, Family::Exterior, Family::Delta,
            Family::TildeExterior}) {
        for (int n = 1; n <= 3; ++n) {
          auto lo = make_power(fam, g, n);
          auto mid = make_power(fam, g, n + 1);
          auto hi = make_power(fam, g, n + 2);
          CHECK(hom_is_zero(compose(boundary(*mid, *lo), boundary(*hi, *mid))));
        }
      }
    }
  }
  SUBCASE("tilde boundary never mixes the wedge and repeat blocks") {
    for (const char* spec : {"C2", "C3", "S3"}) {
      auto g = make(spec);
      for (int n = 1; n <= 3; ++n) {
        auto hi = tilde_exterior_power(g, n + 1);
        auto lo = tilde_exterior_power(g, n);
        auto cols = boundary_columns(*hi, *lo);
        for (Index i = 0; i < hi->size(); ++i)
          for (const auto& [t, c] : cols[static_cast<std::size_t>(i)])
            CHECK(hi->is_char2(i) == lo->is_char2(t));
      }
    }
  }
  SUBCASE("boundaries are equivariant") {
    auto g = make("C3");
    auto hi = exterior_power(g, 3);
    auto lo = exterior_power(g, 2);
    AbHom d = boundary(*hi, *lo);
    for (int a = 0; a < 3; ++a) {
      AbHom left = compose(lo->action_hom(a), d);
      AbHom right = compose(d, hi->action_hom(a));
      CHECK(hom_equal(left, right));
    }
  }
}

TEST_CASE("contracting homotopy") {
  SUBCASE("tensor: h(g0,g1) = (1,g0,g1) and the identity holds on an element") {
    auto g = make("C3");
    auto t2 = tensor_power(g, 2);
    auto t3 = tensor_power(g, 3);
    AbHom h = contracting_homotopy(*t2, *t3);
    Index src = t2->index_of({1, 2});
    Index dst = t3->index_of({0, 1, 2});
    CHECK(h.matrix()(dst, src) == 1);
  }
  SUBCASE("prepending the identity to a wedge that starts with it gives zero") {
    auto g = make("C2");
    auto l2 = exterior_power(g, 2);
    auto l3 = exterior_power(g, 3);
    AbHom h = contracting_homotopy(*l2, *l3);
    CHECK(h.matrix().isZero());  // 1^t is the only basis wedge and starts with 1
  }
  SUBCASE("h d + d h = id in positive degrees") {
    for (const char* spec : {"C2", "C3"}) {
      auto g = make(spec);
      for (Family fam : {Family::Tensor, Family::Exterior, Family::TildeExterior, Family::Delta}) {
        for (int n = 1; n <= 3; ++n) {
          auto lo = make_power(fam, g, n);
          auto mid = make_power(fam, g, n + 1);
          auto hi = make_power(fam, g, n + 2);
          AbHom hd = compose(contracting_homotopy(*lo, *mid), boundary(*mid, *lo));
          AbHom dh = compose(boundary(*hi, *mid), contracting_homotopy(*mid, *hi));
          AbHom sum(mid->carrier(), mid->carrier(), IntMat(hd.matrix() + dh.matrix()));
          CHECK(hom_equal(sum, AbHom::identity(mid->carrier())));
        }
      }
    }
  }
  SUBCASE("degree 0: d h = id - section after augmentation") {
    for (Family fam : {Family::Tensor, Family::Exterior, Family::TildeExterior}) {
      auto g = make("C3");
      auto f1 = make_power(fam, g, 1);
      auto f2 = make_power(fam, g, 2);
      AbHom dh = compose(boundary(*f2, *f1), contracting_homotopy(*f1, *f2));
      AbHom correction = compose(augmentation_section(*f1), augmentation(*f1));
      AbHom want(f1->carrier(), f1->carrier(),
                 IntMat(IntMat::Identity(f1->size(), f1->size()) - correction.matrix()));
      CHECK(hom_equal(dh, want));
    }
  }
}

TEST_CASE("orbit decomposition") {
  SUBCASE("top wedge of C2: stabilizer C2 with the sign character") {
    auto l2 = exterior_power(make("C2"), 2);
    auto dec = orbit_decomposition(*l2);
    REQUIRE(dec.orbits.size() == 1);
    const Orbit& o = dec.orbits[0];
    CHECK(o.stabilizer.elements == std::vector<int>{0, 1});
    CHECK(o.character == std::vector<int>{1, -1});
  }
  SUBCASE("top wedge of C3: stabilizer C3 with the trivial character") {
    auto l3 = exterior_power(make("C3"), 3);
    auto dec = orbit_decomposition(*l3);
    REQUIRE(dec.orbits.size() == 1);
    CHECK(dec.orbits[0].stabilizer.elements.size() == 3);
    CHECK(dec.orbits[0].character_is_trivial());
  }
  SUBCASE("delta squares are free of size |G|, cubes of size |G|^2") {
    for (const char* spec : {"C2", "C3", "S3"}) {
      auto g = make(spec);
      auto d2 = delta_power(g, 2);
      CHECK(d2->size() == g->order);
      auto d3 = delta_power(g, 3);
      CHECK(d3->size() == g->order * g->order);
      for (const auto* d : {d2.get(), d3.get()})
        for (const auto& orbit : orbit_decomposition(*d).orbits) {
          CHECK(orbit.stabilizer.elements.size() == 1);
          CHECK(orbit.character_is_trivial());
        }
    }
  }
  SUBCASE("stabilizer order divides the degree") {
    for (const char* spec : {"C2", "C4", "S3", "C2xC2"}) {
      auto g = make(spec);
      for (Family fam : {Family::Exterior, Family::Delta, Family::TildeExterior}) {
        for (int n = 1; n <= std::min<Index>(4, g->order + 1); ++n) {
          auto f = make_power(fam, g, n);
          for (const auto& orbit : orbit_decomposition(*f).orbits) {
            CHECK(n % orbit.stabilizer.elements.size() == 0);
            CHECK(subgroup_is_valid(orbit.stabilizer));
          }
        }
      }
    }
  }
  SUBCASE("orbits partition the basis with deterministic representatives") {
    auto f = tilde_exterior_power(make("S3"), 3);
    auto dec = orbit_decomposition(*f);
    std::vector<bool> seen(static_cast<std::size_t>(f->size()), false);
    for (const auto& orbit : dec.orbits) {
      CHECK(orbit.representative == orbit.elements.front());
      for (Index e : orbit.elements) {
        CHECK(!seen[static_cast<std::size_t>(e)]);
        seen[static_cast<std::size_t>(e)] = true;
      }
    }
    for (bool b : seen) CHECK(b);
  }
}

TEST_CASE("equivariant hom") {
  auto g = make("C2");
  SUBCASE("Hom(top wedge of C2, Z) = 0, with the sign module it is Z") {
    auto l2 = exterior_power(g, 2);
    auto z = std::make_shared<const GModule>(trivial_module(g, 0));
    CHECK(invariant_factors(HomModule(l2, z).group()) == factors(0, {}));
    auto zs = std::make_shared<const GModule>(sign_module(g, g->canonical_sign));
    CHECK(invariant_factors(HomModule(l2, zs).group()) == factors(1, {}));
  }
  SUBCASE("Hom(Z[G], M) recovers M") {
    auto t1 = tensor_power(g, 1);
    auto zg = std::make_shared<const GModule>(group_ring_module(g));
    CHECK(invariant_factors(HomModule(t1, zg).group()) ==
          invariant_factors(zg->carrier()));
  }
  SUBCASE("group mismatch is rejected") {
    auto z3 = std::make_shared<const GModule>(trivial_module(make("C3"), 0));
    CHECK_THROWS_AS(HomModule(tensor_power(g, 1), z3), std::invalid_argument);
  }
  SUBCASE("evaluator transports along the orbit") {
    auto t1 = tensor_power(g, 1);
    auto zs = std::make_shared<const GModule>(sign_module(g, g->canonical_sign));
    HomModule hom(t1, zs);
    REQUIRE(hom.group().gens == 1);
    IntVec coords(1);
    coords << 1;
    IntVec at_rep = hom.evaluate(coords, 0);
    IntVec at_other = hom.evaluate(coords, 1);
    CHECK(at_rep(0) == 1);
    CHECK(at_other(0) == -1);  // f(t) = t . f(1) = -f(1)
  }
  SUBCASE("orbit route agrees with the brute-force fixed-point oracle") {
    for (const char* gs : {"C2", "C3"}) {
      auto gg = make(gs);
      std::vector<GModule> modules;
      modules.push_back(trivial_module(gg, 0));
      modules.push_back(trivial_module(gg, 2));
      modules.push_back(trivial_module(gg, 3));
      modules.push_back(group_ring_module(gg));
      if (!gg->canonical_sign.empty()) modules.push_back(sign_module(gg, gg->canonical_sign));
      for (const auto& m : modules) {
        for (Family fam : {Family::Tensor, Family::Exterior, Family::Delta,
                           Family::TildeExterior}) {
          for (int n = 1; n <= 3; ++n) {
            auto f = make_power(fam, gg, n);
            if (f->size() * m.rank() > 64 || f->size() == 0) continue;
            auto shared = std::make_shared<const GModule>(m);
            HomModule hom(f, shared);
            std::string tag = std::string(gs) + " " + family_name(fam) + "^" +
                              std::to_string(n) + " with " + m.spec();
            CHECK_MESSAGE(invariant_factors(hom.group()) ==
                              invariant_factors(brute_force_hom(*f, m)),
                          tag);
          }
        }
      }
    }
  }
}

TEST_CASE("hom differential") {
  auto g = make("C2");
  SUBCASE("the exterior differential on Hom(., F2) vanishes in degree 0") {
    auto f2 = std::make_shared<const GModule>(trivial_module(g, 2));
    auto l1 = exterior_power(g, 1);
    auto l2 = exterior_power(g, 2);
    HomModule h1(l1, f2), h2(l2, f2);
    AbHom d = hom_differential(boundary_columns(*l2, *l1), h1, h2);
    CHECK(hom_is_zero(d));  // f(1 - t) = f(1) - f(t) = 0 for the trivial action
  }
  SUBCASE("contravariant functoriality: consecutive duals compose to zero") {
    auto c3 = make("C3");
    auto z3 = std::make_shared<const GModule>(trivial_module(c3, 3));
    auto t1 = tensor_power(c3, 1);
    auto t2 = tensor_power(c3, 2);
    auto t3 = tensor_power(c3, 3);
    HomModule h1(t1, z3), h2(t2, z3), h3(t3, z3);
    AbHom d0 = hom_differential(boundary_columns(*t2, *t1), h1, h2);
    AbHom d1 = hom_differential(boundary_columns(*t3, *t2), h2, h3);
    CHECK(hom_is_zero(compose(d1, d0)));
  }
  SUBCASE("zero boundary gives the zero map") {
    auto z = std::make_shared<const GModule>(trivial_module(g, 0));
    auto l2 = exterior_power(g, 2);
    auto l3 = exterior_power(g, 3);  // zero module
    HomModule h2(l2, z), h3(l3, z);
    AbHom d = hom_differential(boundary_columns(*l3, *l2), h2, h3);
    CHECK(d.matrix().rows() == 0);
  }
}
