#pragma once

// Cohomology tables of any built complex, the comparison maps alpha, beta,
// gamma between the classical, symmetric and exterior theories, and the
// splitting check HS = H_lambda + H_delta.  Tables and reports render to
// text, JSON and CSV.

#include "json.hpp"

#include "cohomforge/complexes.hpp"

namespace cohomforge {

struct DegreeEntry {
  int n = 0;
  InvariantFactors invariants;
};

struct CohomologyTable {
  std::string theory, group_spec, module_spec;
  std::vector<DegreeEntry> degrees;

  const InvariantFactors& at(int n) const { return degrees.at(static_cast<std::size_t>(n)).invariants; }
};

// Degrees 0..top-1 of the complex (the buffer degree only feeds the last
// differential).  Degree 0 is ker d^0.
CohomologyTable cohomology(const CochainComplex& cx, int threads = 1,
                           std::string theory_label = "");

std::string render_text(const CohomologyTable& t);
std::string render_csv(const CohomologyTable& t);
nlohmann::ordered_json render_json(const CohomologyTable& t);

struct MapDegree {
  int n = 0;
  InvariantFactors kernel_inv, cokernel_inv;
  bool is_mono = false, is_iso = false;
};

struct MapReport {
  std::string label;
  std::vector<MapDegree> degrees;
};

struct ComparisonMaps {
  std::string group_spec, module_spec;
  CohomologyTable classical, symmetric, exterior, delta;
  MapReport alpha, beta, gamma, delta_projection;
  // induced maps on cohomology, one per degree 0..N
  std::vector<AbHom> alpha_h, beta_h, gamma_h, proj_lambda_h, proj_delta_h;
  bool beta_equals_alpha_gamma = true;
};

ComparisonMaps comparison_maps(GroupPtr g, GModulePtr m, int max_degree, BuildOptions opts = {},
                               int threads = 1);

std::string render_text(const ComparisonMaps& r);
std::string render_csv(const ComparisonMaps& r);
nlohmann::ordered_json render_json(const ComparisonMaps& r);

struct DirectSumDegree {
  int n = 0;
  InvariantFactors hs, lambda_part, delta_part;
  bool factors_match = false;  // HS = H_lambda + H_delta as invariant factors
  bool split_is_iso = false;   // the two projections assemble to an isomorphism
};

struct DirectSumReport {
  std::vector<DirectSumDegree> degrees;
  bool all_pass = true;
};

DirectSumReport direct_sum_check(GroupPtr g, GModulePtr m, int max_degree, BuildOptions opts = {});

// Map induced on cohomology at degree n by a chain map.
AbHom induced_at(const CochainComplex& src, const CochainComplex& dst, const ChainMap& f, int n);

struct KernelCokernel {
  InvariantFactors kernel_inv, cokernel_inv;
  bool is_mono = false, is_iso = false;
};
KernelCokernel kernel_cokernel(const AbHom& f);

}  // namespace cohomforge
