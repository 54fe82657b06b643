#include "cohomforge/papercheck.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "cohomforge/e1page.hpp"

namespace cohomforge {

namespace {

InvariantFactors trivial_factors() { return InvariantFactors{}; }

InvariantFactors z2_factors() {
  InvariantFactors f;
  f.torsion.push_back(2);
  return f;
}

InvariantFactors torsion_factors(std::vector<long> ds) {
  InvariantFactors f;
  for (long d : ds) f.torsion.push_back(d);
  return f;
}

struct Mismatches {
  std::ostringstream detail;
  bool ok = true;

  void expect(bool cond, const std::string& what) {
    if (cond) return;
    if (!ok) detail << "; ";
    ok = false;
    detail << what;
  }
  void expect_eq(const InvariantFactors& got, const InvariantFactors& want,
                 const std::string& where) {
    expect(got == want, where + ": got " + got.to_text() + ", want " + want.to_text());
  }
};

struct GridCase {
  std::string group, module;
};

std::vector<GridCase> acceptance_grid() {
  std::vector<GridCase> grid;
  for (const char* g : {"C2", "C3", "C4", "C2xC2", "S3"}) {
    for (const char* m : {"Z", "F2", "Z/4"}) grid.push_back({g, m});
    if (std::string(g) != "C3") grid.push_back({g, "Zsign"});
  }
  return grid;
}

using Body = std::function<void(Mismatches&)>;

void run_item(CheckReport& report, std::ostream* progress, const std::string& id,
              const std::string& claim, const Body& body) {
  CheckItem item;
  item.id = id;
  item.claim = claim;
  auto start = std::chrono::steady_clock::now();
  Mismatches mm;
  try {
    body(mm);
    item.pass = mm.ok;
    item.detail = mm.detail.str();
  } catch (const std::exception& e) {
    item.pass = false;
    item.detail = std::string("exception: ") + e.what();
  }
  item.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (progress) {
    (*progress) << (item.pass ? "PASS" : "FAIL") << "  " << item.id << "  " << item.claim << "  ("
                << item.seconds << "s)";
    if (!item.pass) (*progress) << "\n      " << item.detail;
    (*progress) << "\n" << std::flush;
  }
  report.all_pass = report.all_pass && item.pass;
  report.items.push_back(std::move(item));
}

}  // namespace

CheckReport run_papercheck(std::size_t max_basis, int threads, std::ostream* progress) {
  CheckReport report;
  BuildOptions opts{max_basis};

  run_item(report, progress, "hs-c2-f2-period4",
           "HS^i(C2,F2) is F2 at i = 0 and i = 1 mod 4, else 0, for i <= 9", [&](Mismatches& mm) {
             auto g = std::make_shared<const Group>(cyclic_group(2));
             auto m = std::make_shared<const GModule>(trivial_module(g, 2));
             CohomologyTable hs = cohomology(antisymmetric_ks(g, m, 9, opts), threads);
             for (int i = 0; i <= 9; ++i) {
               bool hit = i == 0 || i % 4 == 1;
               mm.expect_eq(hs.at(i), hit ? z2_factors() : trivial_factors(),
                            "HS^" + std::to_string(i));
             }
           });

  run_item(report, progress, "hlambda-c2",
           "H_lambda^n(C2,M) equals classical cohomology for n = 0,1 and vanishes for n >= 2",
           [&](Mismatches& mm) {
             auto g = std::make_shared<const Group>(cyclic_group(2));
             for (const char* spec : {"Z", "F2", "Zsign"}) {
               auto m = std::make_shared<const GModule>(parse_module_spec(g, spec));
               CohomologyTable classical = cohomology(homogeneous_k(g, m, 1, opts), threads);
               CohomologyTable ext = cohomology(exterior_k_lambda(g, m, 6, opts), threads);
               std::string tag = std::string("(C2,") + spec + ")";
               mm.expect_eq(ext.at(0), classical.at(0), tag + " n=0");
               mm.expect_eq(ext.at(1), classical.at(1), tag + " n=1");
               for (int n = 2; n <= 6; ++n)
                 mm.expect_eq(ext.at(n), trivial_factors(), tag + " n=" + std::to_string(n));
             }
           });

  run_item(report, progress, "hlambda-cyclic-prime",
           "H_lambda of C3 and C5 equals classical cohomology below the order and vanishes after",
           [&](Mismatches& mm) {
             for (int ell : {3, 5}) {
               auto g = std::make_shared<const Group>(cyclic_group(ell));
               for (std::string spec : {std::string("Z"), "Z/" + std::to_string(ell)}) {
                 auto m = std::make_shared<const GModule>(parse_module_spec(g, spec));
                 CohomologyTable classical =
                     cohomology(homogeneous_k(g, m, ell - 1, opts), threads);
                 CohomologyTable ext = cohomology(exterior_k_lambda(g, m, ell + 1, opts), threads);
                 std::string tag = "(C" + std::to_string(ell) + "," + spec + ")";
                 for (int i = 0; i <= ell - 1; ++i)
                   mm.expect_eq(ext.at(i), classical.at(i), tag + " i=" + std::to_string(i));
                 for (int i = ell; i <= ell + 1; ++i)
                   mm.expect_eq(ext.at(i), trivial_factors(), tag + " i=" + std::to_string(i));
               }
             }
           });

  run_item(report, progress, "hdelta-vanishing-low",
           "H_delta^i(G,M) = 0 for 0 <= i <= 4 across the group/module grid",
           [&](Mismatches& mm) {
             for (const GridCase& c : acceptance_grid()) {
               auto g = std::make_shared<const Group>(parse_group_spec(c.group));
               auto m = std::make_shared<const GModule>(parse_module_spec(g, c.module));
               CohomologyTable del = cohomology(delta_hom_complex(g, m, 4, opts), threads);
               for (int i = 0; i <= 4; ++i)
                 mm.expect_eq(del.at(i), trivial_factors(),
                              "H_delta^" + std::to_string(i) + "(" + c.group + "," + c.module +
                                  ")");
             }
           });

  run_item(report, progress, "hdelta5-c2-gamma5",
           "H_delta^5(C2,F2) = F2 and gamma^5 is not surjective", [&](Mismatches& mm) {
             auto g = std::make_shared<const Group>(cyclic_group(2));
             auto m = std::make_shared<const GModule>(trivial_module(g, 2));
             CohomologyTable del = cohomology(delta_hom_complex(g, m, 5, opts), threads);
             mm.expect_eq(del.at(5), z2_factors(), "H_delta^5(C2,F2)");
             ComparisonMaps cmp = comparison_maps(g, m, 5, opts, threads);
             mm.expect(!cmp.gamma.degrees[5].cokernel_inv.is_trivial(),
                       "gamma^5 should have nontrivial cokernel");
             mm.expect(!cmp.gamma.degrees[5].is_iso, "gamma^5 should not be an isomorphism");
           });

  run_item(report, progress, "hs-splits",
           "HS^n = H_lambda^n + H_delta^n realized by the splitting maps, n <= 5, on the grid",
           [&](Mismatches& mm) {
             for (const GridCase& c : acceptance_grid()) {
               auto g = std::make_shared<const Group>(parse_group_spec(c.group));
               auto m = std::make_shared<const GModule>(parse_module_spec(g, c.module));
               DirectSumReport ds = direct_sum_check(g, m, 5, opts);
               for (const auto& d : ds.degrees) {
                 std::string tag =
                     "(" + c.group + "," + c.module + ") n=" + std::to_string(d.n);
                 mm.expect(d.factors_match, tag + ": invariant factors of HS differ from the sum");
                 mm.expect(d.split_is_iso, tag + ": splitting maps are not an isomorphism");
               }
             }
           });

  run_item(report, progress, "no-2-torsion-collapse",
           "for M in {Z, Z/3, Z/5}: KS^n = K_lambda^n as subcomplexes and gamma iso, n <= 5",
           [&](Mismatches& mm) {
             for (const char* gspec : {"C2", "C3", "C4", "C2xC2", "S3"}) {
               auto g = std::make_shared<const Group>(parse_group_spec(gspec));
               for (const char* mspec : {"Z", "Z/3", "Z/5"}) {
                 auto m = std::make_shared<const GModule>(parse_module_spec(g, mspec));
                 CochainComplex ks = antisymmetric_ks(g, m, 5, opts);
                 CochainComplex kl = exterior_k_lambda(g, m, 5, opts);
                 CochainComplex dh = delta_hom_complex(g, m, 5, opts);
                 ChainMap section = splitting_section(kl, ks);
                 std::string tag = std::string("(") + gspec + "," + mspec + ")";
                 for (int n = 0; n <= 5; ++n) {
                   mm.expect(kernel_cokernel(section.degrees[static_cast<std::size_t>(n)]).is_iso,
                             tag + " KS^" + std::to_string(n) + " != K_lambda^" +
                                 std::to_string(n));
                   mm.expect(invariant_factors(dh.groups[static_cast<std::size_t>(n)]).is_trivial(),
                             tag + " delta-hom^" + std::to_string(n) + " nontrivial");
                   mm.expect(kernel_cokernel(induced_at(kl, ks, section, n)).is_iso,
                             tag + " gamma^" + std::to_string(n) + " not iso");
                 }
               }
             }
           });

  run_item(report, progress, "alpha-beta-low-degrees",
           "alpha, beta iso in degrees 0,1 and mono in degree 2 on the grid; beta^2 iso without "
           "2-torsion in G",
           [&](Mismatches& mm) {
             for (const GridCase& c : acceptance_grid()) {
               auto g = std::make_shared<const Group>(parse_group_spec(c.group));
               auto m = std::make_shared<const GModule>(parse_module_spec(g, c.module));
               ComparisonMaps cmp = comparison_maps(g, m, 2, opts, threads);
               std::string tag = "(" + c.group + "," + c.module + ")";
               for (int n = 0; n <= 1; ++n) {
                 mm.expect(cmp.alpha.degrees[static_cast<std::size_t>(n)].is_iso,
                           tag + " alpha^" + std::to_string(n) + " not iso");
                 mm.expect(cmp.beta.degrees[static_cast<std::size_t>(n)].is_iso,
                           tag + " beta^" + std::to_string(n) + " not iso");
               }
               mm.expect(cmp.alpha.degrees[2].is_mono, tag + " alpha^2 not mono");
               mm.expect(cmp.beta.degrees[2].is_mono, tag + " beta^2 not mono");
               mm.expect(cmp.beta_equals_alpha_gamma, tag + " beta != alpha o gamma");
             }
             for (const char* gspec : {"C3", "C5"}) {
               auto g = std::make_shared<const Group>(parse_group_spec(gspec));
               for (const char* mspec : {"Z", "F2", "Z/4"}) {
                 auto m = std::make_shared<const GModule>(parse_module_spec(g, mspec));
                 ComparisonMaps cmp = comparison_maps(g, m, 2, opts, threads);
                 mm.expect(cmp.beta.degrees[2].is_iso, std::string("(") + gspec + "," + mspec +
                                                           ") beta^2 not iso");
               }
             }
           });

  run_item(report, progress, "e1-s3-page",
           "E1 page of (S3, Z) up to p = 5, q = 3: prime columns match independent subgroup "
           "computations, forced cells vanish",
           [&](Mismatches& mm) {
             auto g = std::make_shared<const Group>(symmetric_group(3));
             auto m = std::make_shared<const GModule>(trivial_module(g, 0));
             E1Page page = e1_page(g, m, 5, 3, opts, threads);
             mm.expect(page.row0_is_zarelua, "row 0 differs from the exterior complex");
             for (int q = 1; q <= 3; ++q)
               mm.expect_eq(page.at(0, q).invariants, trivial_factors(),
                            "E1(0," + std::to_string(q) + ")");
             // column p=1: three C2 subgroups, degree-shifted C2 cohomology
             mm.expect_eq(page.at(1, 1).invariants, torsion_factors({2, 2, 2}), "E1(1,1)");
             mm.expect_eq(page.at(1, 2).invariants, trivial_factors(), "E1(1,2)");
             mm.expect_eq(page.at(1, 3).invariants, torsion_factors({2, 2, 2}), "E1(1,3)");
             // column p=2: the unique C3 subgroup
             mm.expect_eq(page.at(2, 1).invariants, trivial_factors(), "E1(2,1)");
             mm.expect_eq(page.at(2, 2).invariants, torsion_factors({3}), "E1(2,2)");
             mm.expect_eq(page.at(2, 3).invariants, trivial_factors(), "E1(2,3)");
             for (int q = 1; q <= 3; ++q) {
               PrimeColumnCheck c2 = prime_column_crosscheck(g, m, 2, q, opts);
               mm.expect(c2.match, "prime column ell=2 q=" + std::to_string(q) + ": entry " +
                                       c2.entry.to_text() + " vs product " +
                                       c2.product.to_text());
               PrimeColumnCheck c3 = prime_column_crosscheck(g, m, 3, q, opts);
               mm.expect(c3.match, "prime column ell=3 q=" + std::to_string(q) + ": entry " +
                                       c3.entry.to_text() + " vs product " +
                                       c3.product.to_text());
             }
             for (const VanishingCell& cell : vanishing_report(page, *g))
               if (cell.must_vanish)
                 mm.expect(cell.vanishes, "cell (" + std::to_string(cell.p) + "," +
                                              std::to_string(cell.q) + ") must vanish");
             // every stabilizer order divides p+1
             for (int p = 0; p <= 5; ++p)
               for (const auto& orbit : page.at(p, 0).orbits)
                 mm.expect((p + 1) % orbit.stab_order == 0,
                           "stabilizer order " + std::to_string(orbit.stab_order) +
                               " does not divide " + std::to_string(p + 1));
           });

  run_item(report, progress, "structural-invariants",
           "d o d = 0, the contracting homotopy identity, Delta acyclicity to degree 5, psi "
           "isomorphisms, and the brute-force symmetric-invariants comparison",
           [&](Mismatches& mm) {
             // contracting homotopy on the three resolution families
             for (const char* gspec : {"C2", "C3", "C4"}) {
               auto g = std::make_shared<const Group>(parse_group_spec(gspec));
               for (Family fam : {Family::Tensor, Family::Exterior, Family::TildeExterior}) {
                 for (int n = 1; n <= 4; ++n) {
                   auto f_lo = make_power(fam, g, n, opts.max_basis);
                   auto f_mid = make_power(fam, g, n + 1, opts.max_basis);
                   auto f_hi = make_power(fam, g, n + 2, opts.max_basis);
                   AbHom h_lo = contracting_homotopy(*f_lo, *f_mid);
                   AbHom h_mid = contracting_homotopy(*f_mid, *f_hi);
                   AbHom d_mid = boundary(*f_mid, *f_lo);
                   AbHom d_hi = boundary(*f_hi, *f_mid);
                   AbHom lhs(f_mid->carrier(), f_mid->carrier(),
                             IntMat(sparse_product(h_lo.matrix(), d_mid.matrix()) +
                                    sparse_product(d_hi.matrix(), h_mid.matrix())));
                   mm.expect(hom_equal(lhs, AbHom::identity(f_mid->carrier())),
                             std::string(gspec) + " " + family_name(fam) + " homotopy at degree " +
                                 std::to_string(n));
                   if (n >= 2)
                     mm.expect(hom_is_zero(compose(boundary(*f_mid, *f_lo),
                                                   boundary(*f_hi, *f_mid))),
                               std::string(gspec) + " " + family_name(fam) + " d o d at " +
                                   std::to_string(n));
                 }
               }
             }
             // Delta chain acyclicity in degrees 0..5
             for (const char* gspec : {"C2", "C3", "C4", "C2xC2", "S3"}) {
               auto g = std::make_shared<const Group>(parse_group_spec(gspec));
               for (int k = 0; k <= 5; ++k) {
                 auto del_mid = delta_power(g, k + 1, opts.max_basis);
                 auto del_hi = delta_power(g, k + 2, opts.max_basis);
                 AbHom d_in = boundary(*del_hi, *del_mid);
                 AbHom d_out = k == 0
                                   ? AbHom::zero_map(del_mid->carrier(), PresentedAb::zero())
                                   : boundary(*del_mid, *delta_power(g, k, opts.max_basis));
                 PresentedAb h = homology_at(d_in, d_out);
                 mm.expect(invariant_factors(h).is_trivial(),
                           std::string("Delta chain of ") + gspec + " not acyclic at degree " +
                               std::to_string(k));
               }
             }
             // psi is a degreewise isomorphism (squares are validated at build)
             {
               auto g2 = std::make_shared<const Group>(cyclic_group(2));
               auto f2 = std::make_shared<const GModule>(trivial_module(g2, 2));
               auto g3 = std::make_shared<const Group>(cyclic_group(3));
               auto z3 = std::make_shared<const GModule>(trivial_module(g3, 3));
               auto check_pair = [&](const CochainComplex& ka, const CochainComplex& ca,
                                     const std::string& tag) {
                 ChainMap psi = psi_chain_map(ka, ca);
                 for (std::size_t n = 0; n < psi.degrees.size(); ++n)
                   mm.expect(kernel_cokernel(psi.degrees[n]).is_iso,
                             tag + " psi^" + std::to_string(n) + " not iso");
               };
               check_pair(homogeneous_k(g2, f2, 3, opts), classical_complex(g2, f2, 3, false, opts),
                          "K<->C (C2,F2)");
               check_pair(homogeneous_k(g3, z3, 3, opts), classical_complex(g3, z3, 3, false, opts),
                          "K<->C (C3,Z/3)");
               check_pair(normalized_k(g2, f2, 3, opts),
                          classical_complex(g2, f2, 3, true, opts), "NK<->NC (C2,F2)");
               check_pair(antisymmetric_ks(g2, f2, 3, opts),
                          symmetric_cs_complex(g2, f2, 3, opts), "KS<->CS (C2,F2)");
               check_pair(exterior_k_lambda(g2, f2, 3, opts),
                          c_lambda_intersection_complex(g2, f2, 3, opts), "K_lambda<->C_lambda");
             }
             // brute-force CS equals the psi image of KS, and the same for C_lambda
             for (const char* gspec : {"C1", "C2", "C3"}) {
               auto g = std::make_shared<const Group>(parse_group_spec(gspec));
               for (const char* mspec : {"F2", "Z/3", "Z"}) {
                 auto m = std::make_shared<const GModule>(parse_module_spec(g, mspec));
                 CochainComplex ks = antisymmetric_ks(g, m, 3, opts);
                 CochainComplex kl = exterior_k_lambda(g, m, 3, opts);
                 CochainComplex cs = symmetric_cs_complex(g, m, 3, opts);
                 CochainComplex cl = c_lambda_intersection_complex(g, m, 3, opts);
                 for (int n = 0; n <= 3; ++n) {
                   IntMat psi_ks = psi_image_in_classical(ks, *cs.ambient, n);
                   mm.expect(
                       subgroup_equal(psi_ks,
                                      cs.to_ambient[static_cast<std::size_t>(n)].matrix(),
                                      cs.ambient->groups[static_cast<std::size_t>(n)].rels),
                       std::string("(") + gspec + "," + mspec + ") CS^" + std::to_string(n) +
                           " != psi(KS^" + std::to_string(n) + ")");
                   IntMat psi_kl = psi_image_in_classical(kl, *cl.ambient, n);
                   mm.expect(
                       subgroup_equal(psi_kl,
                                      cl.to_ambient[static_cast<std::size_t>(n)].matrix(),
                                      cl.ambient->groups[static_cast<std::size_t>(n)].rels),
                       std::string("(") + gspec + "," + mspec + ") C_lambda^" + std::to_string(n) +
                           " != psi(K_lambda^" + std::to_string(n) + ")");
                 }
               }
             }
           });

  return report;
}

nlohmann::ordered_json render_json(const CheckReport& report) {
  nlohmann::ordered_json items = nlohmann::ordered_json::array();
  for (const auto& item : report.items)
    items.push_back({{"id", item.id},
                     {"claim", item.claim},
                     {"pass", item.pass},
                     {"seconds", item.seconds},
                     {"detail", item.detail}});
  return {{"items", std::move(items)}, {"all_pass", report.all_pass}};
}

}  // namespace cohomforge
