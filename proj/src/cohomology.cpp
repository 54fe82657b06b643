#include "cohomforge/cohomology.hpp"

#include <sstream>

#include "cohomforge/parallel.hpp"

namespace cohomforge {

namespace {

AbHom incoming_diff(const CochainComplex& cx, int n) {
  if (n == 0) return AbHom::zero_map(PresentedAb::zero(), cx.groups[0]);
  return cx.diffs[static_cast<std::size_t>(n - 1)];
}

std::string default_theory(const std::string& label) {
  if (label == "K" || label == "C") return "classical";
  if (label == "NK" || label == "NC") return "normalized";
  if (label == "KS" || label == "CS") return "symmetric";
  if (label == "K_lambda" || label == "C_lambda") return "exterior";
  if (label == "delta_hom") return "delta";
  return label;
}

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

std::string torsion_csv(const InvariantFactors& inv) {
  std::string out;
  for (std::size_t i = 0; i < inv.torsion.size(); ++i) {
    if (i) out += ";";
    out += to_string(inv.torsion[i]);
  }
  return out;
}

}  // namespace

CohomologyTable cohomology(const CochainComplex& cx, int threads, std::string theory_label) {
  CohomologyTable table;
  table.theory = theory_label.empty() ? default_theory(cx.label) : std::move(theory_label);
  table.group_spec = cx.group->spec;
  table.module_spec = cx.coeffs->spec();
  const int degrees = cx.top();  // 0..top-1
  table.degrees.resize(static_cast<std::size_t>(degrees));
  parallel_for(static_cast<std::size_t>(degrees), threads, [&](std::size_t n) {
    PresentedAb h = homology_at(incoming_diff(cx, static_cast<int>(n)),
                                cx.diffs[n]);
    table.degrees[n] = DegreeEntry{static_cast<int>(n), invariant_factors(h)};
  });
  return table;
}

std::string render_text(const CohomologyTable& t) {
  std::ostringstream os;
  os << "theory " << t.theory << ", group " << t.group_spec << ", module " << t.module_spec
     << "\n";
  for (const auto& d : t.degrees)
    os << "  H^" << d.n << " = " << d.invariants.to_text() << "\n";
  return os.str();
}

std::string render_csv(const CohomologyTable& t) {
  std::ostringstream os;
  os << "n,free_rank,torsion\n";
  for (const auto& d : t.degrees)
    os << d.n << "," << d.invariants.free_rank << "," << torsion_csv(d.invariants) << "\n";
  return os.str();
}

nlohmann::ordered_json render_json(const CohomologyTable& t) {
  nlohmann::ordered_json degrees = nlohmann::ordered_json::array();
  for (const auto& d : t.degrees) {
    nlohmann::ordered_json entry = {{"n", d.n}};
    entry.update(invariants_json(d.invariants));
    degrees.push_back(std::move(entry));
  }
  return {{"theory", t.theory},
          {"group", t.group_spec},
          {"module", t.module_spec},
          {"degrees", std::move(degrees)}};
}

AbHom induced_at(const CochainComplex& src, const CochainComplex& dst, const ChainMap& f, int n) {
  if (n < 0 || n >= src.top()) throw std::invalid_argument("induced_at: degree out of range");
  ChainMapSquare sq{
      incoming_diff(src, n),
      src.diffs[static_cast<std::size_t>(n)],
      incoming_diff(dst, n),
      dst.diffs[static_cast<std::size_t>(n)],
      n == 0 ? AbHom::zero_map(PresentedAb::zero(), PresentedAb::zero())
             : f.degrees[static_cast<std::size_t>(n - 1)],
      f.degrees[static_cast<std::size_t>(n)],
      f.degrees[static_cast<std::size_t>(n + 1)],
  };
  return induced_on_homology(sq);
}

KernelCokernel kernel_cokernel(const AbHom& f) {
  KernelCokernel out;
  out.kernel_inv = invariant_factors(kernel(f).group);
  out.cokernel_inv = invariant_factors(cokernel(f).group);
  out.is_mono = out.kernel_inv.is_trivial();
  out.is_iso = out.is_mono && out.cokernel_inv.is_trivial();
  return out;
}

namespace {

MapReport report_for(const std::string& label, const std::vector<AbHom>& maps) {
  MapReport report{label, {}};
  for (std::size_t n = 0; n < maps.size(); ++n) {
    KernelCokernel kc = kernel_cokernel(maps[n]);
    report.degrees.push_back(
        MapDegree{static_cast<int>(n), kc.kernel_inv, kc.cokernel_inv, kc.is_mono, kc.is_iso});
  }
  return report;
}

}  // namespace

ComparisonMaps comparison_maps(GroupPtr g, GModulePtr m, int max_degree, BuildOptions opts,
                               int threads) {
  CochainComplex k = homogeneous_k(g, m, max_degree, opts);
  CochainComplex ks = antisymmetric_ks(g, m, max_degree, opts);
  CochainComplex kl = exterior_k_lambda(g, m, max_degree, opts);
  CochainComplex dh = delta_hom_complex(g, m, max_degree, opts);

  ChainMap incl_ks = inclusion_into_k(ks, k);
  ChainMap incl_kl = inclusion_into_k(kl, k);
  ChainMap section = splitting_section(kl, ks);
  ChainMap proj_l = splitting_projection_lambda(ks, kl);
  ChainMap proj_d = splitting_projection_delta(ks, dh);

  ComparisonMaps out;
  out.group_spec = g->spec;
  out.module_spec = m->spec();
  out.classical = cohomology(k, threads);
  out.symmetric = cohomology(ks, threads);
  out.exterior = cohomology(kl, threads);
  out.delta = cohomology(dh, threads);

  const std::size_t degrees = static_cast<std::size_t>(max_degree) + 1;
  out.alpha_h.reserve(degrees);
  for (std::size_t n = 0; n < degrees; ++n) {
    int d = static_cast<int>(n);
    out.alpha_h.push_back(induced_at(ks, k, incl_ks, d));
    out.beta_h.push_back(induced_at(kl, k, incl_kl, d));
    out.gamma_h.push_back(induced_at(kl, ks, section, d));
    out.proj_lambda_h.push_back(induced_at(ks, kl, proj_l, d));
    out.proj_delta_h.push_back(induced_at(ks, dh, proj_d, d));
    if (!hom_equal(out.beta_h.back(), compose(out.alpha_h.back(), out.gamma_h.back())))
      out.beta_equals_alpha_gamma = false;
  }
  out.alpha = report_for("alpha", out.alpha_h);
  out.beta = report_for("beta", out.beta_h);
  out.gamma = report_for("gamma", out.gamma_h);
  out.delta_projection = report_for("delta_projection", out.proj_delta_h);
  return out;
}

namespace {

nlohmann::ordered_json map_report_json(const MapReport& r) {
  nlohmann::ordered_json degrees = nlohmann::ordered_json::array();
  for (const auto& d : r.degrees) {
    degrees.push_back({{"n", d.n},
                       {"kernel", invariants_json(d.kernel_inv)},
                       {"cokernel", invariants_json(d.cokernel_inv)},
                       {"is_mono", d.is_mono},
                       {"is_iso", d.is_iso}});
  }
  return {{"map", r.label}, {"degrees", std::move(degrees)}};
}

void map_report_text(std::ostringstream& os, const MapReport& r) {
  for (const auto& d : r.degrees) {
    os << "  " << r.label << "^" << d.n << ": kernel " << d.kernel_inv.to_text() << ", cokernel "
       << d.cokernel_inv.to_text() << (d.is_iso ? " [iso]" : d.is_mono ? " [mono]" : "") << "\n";
  }
}

}  // namespace

std::string render_text(const ComparisonMaps& r) {
  std::ostringstream os;
  os << "comparison maps, group " << r.group_spec << ", module " << r.module_spec << "\n";
  map_report_text(os, r.alpha);
  map_report_text(os, r.beta);
  map_report_text(os, r.gamma);
  map_report_text(os, r.delta_projection);
  os << "  beta = alpha o gamma: " << (r.beta_equals_alpha_gamma ? "holds" : "FAILS") << "\n";
  return os.str();
}

std::string render_csv(const ComparisonMaps& r) {
  std::ostringstream os;
  os << "map,n,kernel_free,kernel_torsion,cokernel_free,cokernel_torsion,is_mono,is_iso\n";
  for (const MapReport* rep : {&r.alpha, &r.beta, &r.gamma, &r.delta_projection})
    for (const auto& d : rep->degrees)
      os << rep->label << "," << d.n << "," << d.kernel_inv.free_rank << ","
         << torsion_csv(d.kernel_inv) << "," << d.cokernel_inv.free_rank << ","
         << torsion_csv(d.cokernel_inv) << "," << (d.is_mono ? 1 : 0) << "," << (d.is_iso ? 1 : 0)
         << "\n";
  return os.str();
}

nlohmann::ordered_json render_json(const ComparisonMaps& r) {
  return {{"group", r.group_spec},
          {"module", r.module_spec},
          {"maps",
           {map_report_json(r.alpha), map_report_json(r.beta), map_report_json(r.gamma),
            map_report_json(r.delta_projection)}},
          {"beta_equals_alpha_gamma", r.beta_equals_alpha_gamma}};
}

DirectSumReport direct_sum_check(GroupPtr g, GModulePtr m, int max_degree, BuildOptions opts) {
  CochainComplex ks = antisymmetric_ks(g, m, max_degree, opts);
  CochainComplex kl = exterior_k_lambda(g, m, max_degree, opts);
  CochainComplex dh = delta_hom_complex(g, m, max_degree, opts);
  ChainMap proj_l = splitting_projection_lambda(ks, kl);
  ChainMap proj_d = splitting_projection_delta(ks, dh);

  DirectSumReport report;
  for (int n = 0; n <= max_degree; ++n) {
    AbHom pl = induced_at(ks, kl, proj_l, n);
    AbHom pd = induced_at(ks, dh, proj_d, n);
    DirectSumDegree deg;
    deg.n = n;
    deg.hs = invariant_factors(pl.source());
    deg.lambda_part = invariant_factors(pl.target());
    deg.delta_part = invariant_factors(pd.target());

    PresentedAb sum = direct_sum(pl.target(), pd.target());
    deg.factors_match = deg.hs == invariant_factors(sum);

    IntMat stacked(sum.gens, pl.source().gens);
    stacked.topRows(pl.target().gens) = pl.matrix();
    stacked.bottomRows(pd.target().gens) = pd.matrix();
    KernelCokernel kc = kernel_cokernel(AbHom(pl.source(), sum, std::move(stacked)));
    deg.split_is_iso = kc.is_iso;

    report.all_pass = report.all_pass && deg.factors_match && deg.split_is_iso;
    report.degrees.push_back(std::move(deg));
  }
  return report;
}

}  // namespace cohomforge
