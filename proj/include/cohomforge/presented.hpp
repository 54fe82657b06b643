#pragma once

// Finitely generated abelian groups as presentations Z^g / column-span(rels),
// homomorphisms between them, and the derived constructions every cohomology
// table reduces to: kernels, images, cokernels, homology of a composable
// pair, and maps induced on homology.

#include <ostream>
#include <string>
#include <vector>

#include "cohomforge/smith.hpp"

namespace cohomforge {

struct PresentedAb {
  Index gens = 0;
  IntMat rels;  // gens rows, one column per relation; zero columns allowed

  PresentedAb() : rels(IntMat::Zero(0, 0)) {}
  PresentedAb(Index g, IntMat r) : gens(g), rels(std::move(r)) {
    if (rels.rows() != gens) throw std::invalid_argument("PresentedAb: relation rows != gens");
  }

  static PresentedAb zero() { return PresentedAb(0, IntMat::Zero(0, 0)); }
  static PresentedAb free_of_rank(Index n) { return PresentedAb(n, IntMat::Zero(n, 0)); }
  // Z/k for k > 0, Z for k = 0
  static PresentedAb cyclic(const Int& k);

  bool same_presentation(const PresentedAb& o) const {
    return gens == o.gens && rels.rows() == o.rels.rows() &&
           rels.cols() == o.rels.cols() && rels == o.rels;
  }
};

struct InvariantFactors {
  Index free_rank = 0;
  std::vector<Int> torsion;  // each > 1, each dividing the next

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  bool operator==(const InvariantFactors& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }
  bool operator!=(const InvariantFactors& o) const { return !(*this == o); }
  // "0", "Z", "Z^2 + Z/2 + Z/4", ...
  std::string to_text() const;
};

inline std::ostream& operator<<(std::ostream& os, const InvariantFactors& f) {
  return os << f.to_text();
}

InvariantFactors invariant_factors(const PresentedAb& p);

class AbHom {
 public:
  // Well-definedness (matrix carries source relations into target relations)
  // is checked at construction.
  AbHom(PresentedAb source, PresentedAb target, IntMat matrix);

  static AbHom zero_map(PresentedAb source, PresentedAb target);
  static AbHom identity(PresentedAb p);

  const PresentedAb& source() const { return source_; }
  const PresentedAb& target() const { return target_; }
  const IntMat& matrix() const { return matrix_; }

 private:
  PresentedAb source_, target_;
  IntMat matrix_;
};

// g after f
AbHom compose(const AbHom& g, const AbHom& f);
// Equality as maps of presented groups (difference lands in target relations).
bool hom_equal(const AbHom& f, const AbHom& g);
bool hom_is_zero(const AbHom& f);

PresentedAb direct_sum(const PresentedAb& a, const PresentedAb& b);
// one-pass block-diagonal sum; folding direct_sum pairwise is quadratic
PresentedAb direct_sum_many(const std::vector<const PresentedAb*>& parts);

// Columns spanning { x in Z^source.gens : f(x) = 0 in the target }.
IntMat preimage_lattice_of_zero(const AbHom& f);

struct SubgroupPresentation {
  PresentedAb group;
  AbHom inclusion;  // into the ambient group; injective by construction
};
struct QuotientPresentation {
  PresentedAb group;
  AbHom projection;
};

SubgroupPresentation kernel(const AbHom& f);
SubgroupPresentation image(const AbHom& f);
QuotientPresentation cokernel(const AbHom& f);

struct HomologyData {
  PresentedAb group;
  IntMat cycle_lift;  // ambient gens x homology gens; lifts classes to cycles
};

// ker(d_out) / im(d_in); throws unless the pair composes to zero.
HomologyData homology_with_lift(const AbHom& d_in, const AbHom& d_out);
PresentedAb homology_at(const AbHom& d_in, const AbHom& d_out);

// Two commuting squares over a composable pair:
//
//        d_in        d_out
//    A -------> B --------> C
//    |v_in      |v_mid      |v_out
//    A'-------> B'--------> C'
//        d_in2       d_out2
struct ChainMapSquare {
  AbHom d_in, d_out;
  AbHom d_in2, d_out2;
  AbHom v_in, v_mid, v_out;
};

AbHom induced_on_homology(const ChainMapSquare& sq);

// Subgroups of a common ambient presented group, given by generator matrices.
bool subgroup_contains(const IntMat& haystack_gens, const IntMat& ambient_rels,
                       const IntMat& needle_gens);
bool subgroup_equal(const IntMat& gens1, const IntMat& gens2,
                    const IntMat& ambient_rels);
IntMat intersect_subgroups(const IntMat& gens1, const IntMat& gens2,
                           const IntMat& ambient_rels);

// The subgroup spanned by the given generator columns, presented on exactly
// those generators.
SubgroupPresentation subgroup_from_generators(const IntMat& gens, const PresentedAb& ambient);

// f restricted to subgroups of its source and target; f must map the source
// subgroup into the target one.
AbHom restrict_hom(const AbHom& f, const SubgroupPresentation& sub_source,
                   const SubgroupPresentation& sub_target);

}  // namespace cohomforge
