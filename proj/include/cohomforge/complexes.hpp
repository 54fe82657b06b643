#pragma once

// Builders for the cochain complexes computing classical, normalized,
// symmetric, exterior and delta cohomology, and the chain maps tying them
// together: the resolution-side inclusions and splittings and the
// homogeneous-to-inhomogeneous isomorphism psi.
//
// A complex asked for up to degree N is built with one extra buffer degree so
// the top differential exists; cohomology() then reports degrees 0..N.

#include "cohomforge/based.hpp"

namespace cohomforge {

struct BuildOptions {
  std::size_t max_basis = kDefaultMaxBasis;
};

struct CochainComplex {
  std::string label;  // K, NK, KS, K_lambda, delta_hom, C, NC, CS, C_lambda
  GroupPtr group;
  GModulePtr coeffs;
  std::vector<PresentedAb> groups;  // degrees 0..top
  std::vector<AbHom> diffs;         // d[n]: degree n -> n+1

  // resolution route only: tuple module and Hom data per degree
  std::vector<BasedPtr> bases;
  std::vector<HomPtr> homs;

  // subcomplexes of the classical complex carry their inclusions
  std::shared_ptr<const CochainComplex> ambient;
  std::vector<AbHom> to_ambient;

  int top() const { return static_cast<int>(groups.size()) - 1; }
};

// --- resolution (homogeneous) route ---------------------------------------

// family Tensor -> "K", NormalizedTensor -> "NK", TildeExterior -> "KS",
// Exterior -> "K_lambda", Delta -> "delta_hom"
CochainComplex homogeneous_complex(GroupPtr g, GModulePtr m, int max_degree, Family family,
                                   BuildOptions opts = {});

inline CochainComplex homogeneous_k(GroupPtr g, GModulePtr m, int n, BuildOptions o = {}) {
  return homogeneous_complex(std::move(g), std::move(m), n, Family::Tensor, o);
}
inline CochainComplex normalized_k(GroupPtr g, GModulePtr m, int n, BuildOptions o = {}) {
  return homogeneous_complex(std::move(g), std::move(m), n, Family::NormalizedTensor, o);
}
inline CochainComplex antisymmetric_ks(GroupPtr g, GModulePtr m, int n, BuildOptions o = {}) {
  return homogeneous_complex(std::move(g), std::move(m), n, Family::TildeExterior, o);
}
inline CochainComplex exterior_k_lambda(GroupPtr g, GModulePtr m, int n, BuildOptions o = {}) {
  return homogeneous_complex(std::move(g), std::move(m), n, Family::Exterior, o);
}
inline CochainComplex delta_hom_complex(GroupPtr g, GModulePtr m, int n, BuildOptions o = {}) {
  return homogeneous_complex(std::move(g), std::move(m), n, Family::Delta, o);
}

// --- explicit cochain route (cross-validation; gated by size) -------------

// Functions G^n -> M with the inhomogeneous differential; `normalized` cuts
// down to cochains vanishing whenever some argument is the identity.
CochainComplex classical_complex(GroupPtr g, GModulePtr m, int max_degree,
                                 bool normalized = false, BuildOptions opts = {});

// The action of the adjacent transposition tau_i on n-cochains, 1 <= i <= n.
IntMat transposition_action(const CochainComplex& classical, int degree, int i);

// Sigma_{n+1}-invariant cochains inside the classical complex.
CochainComplex symmetric_cs_complex(GroupPtr g, GModulePtr m, int max_degree,
                                    BuildOptions opts = {});

// CS intersected with the normalized subcomplex, cut out inside C directly.
CochainComplex c_lambda_intersection_complex(GroupPtr g, GModulePtr m, int max_degree,
                                             BuildOptions opts = {});

// --- chain maps ------------------------------------------------------------

struct ChainMap {
  std::string label;
  std::vector<AbHom> degrees;
};

// validates every square against the two complexes
ChainMap make_chain_map(std::string label, std::vector<AbHom> maps, const CochainComplex& src,
                        const CochainComplex& dst);

// KS -> K, K_lambda -> K (these two carry the degree sign making the squares
// commute), K_lambda -> KS, NK -> K, delta_hom <- KS projections, etc.
ChainMap inclusion_into_k(const CochainComplex& sub, const CochainComplex& k);
ChainMap splitting_section(const CochainComplex& k_lambda, const CochainComplex& ks);
ChainMap splitting_projection_lambda(const CochainComplex& ks, const CochainComplex& k_lambda);
ChainMap splitting_projection_delta(const CochainComplex& ks, const CochainComplex& delta_hom);

// The degreewise isomorphism between a resolution-route complex and its
// cochain-route partner: K<->C, NK<->NC, KS<->CS, K_lambda<->C_lambda.
ChainMap psi_chain_map(const CochainComplex& k_side, const CochainComplex& c_side);

// Generators of psi(source degree n) inside the classical complex C^n,
// one column per source generator (used for subgroup comparisons).
IntMat psi_image_in_classical(const CochainComplex& k_side, const CochainComplex& c_full,
                              int degree);

bool complexes_equal(const CochainComplex& a, const CochainComplex& b);

}  // namespace cohomforge
