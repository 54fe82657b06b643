#pragma once

// The based G-modules underlying the four resolutions of Z: tensor powers,
// exterior powers, their mixed "tilde" version, the repeat-tuple Delta part,
// and the normalized tensor quotient.  Each is free over Z (or F2) on a
// finite tuple basis that the group permutes up to sign.  On top of these sit
// the boundary maps, the contracting homotopy, orbit decompositions, and
// equivariant Hom into a coefficient module.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "cohomforge/gmodule.hpp"
#include "cohomforge/guards.hpp"

namespace cohomforge {

enum class Family { Tensor, NormalizedTensor, Exterior, Delta, TildeExterior };

const char* family_name(Family f);

using Word = std::vector<int>;

// Canonical basis form of a raw tuple in the given family, with the sign
// picked up by sorting; nullopt when the tuple dies (repeats in the exterior
// family, adjacent repeats in the normalized tensor family, repeat-free
// tuples in the Delta family).
struct NormalizedWord {
  Word word;
  int sign = 1;
  bool char2 = false;
};
std::optional<NormalizedWord> normalize_word(Family family, Word raw);

class SignedBasedModule {
 public:
  SignedBasedModule(GroupPtr group, Family family, int degree,
                    std::size_t max_basis = kDefaultMaxBasis);

  const Group& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  Family family() const { return family_; }
  int degree() const { return degree_; }
  Index size() const { return static_cast<Index>(basis_.size()); }
  const Word& word(Index i) const { return basis_[static_cast<std::size_t>(i)]; }
  bool is_char2(Index i) const { return char2_[static_cast<std::size_t>(i)] != 0; }
  // index of a canonical word, -1 if absent
  Index index_of(const Word& w) const;

  // g acting on basis element i: the target index and the sign
  std::pair<Index, int> act(int g, Index i) const;

  // gens = basis size; relations 2e for every characteristic-2 element
  PresentedAb carrier() const;
  AbHom action_hom(int g) const;

 private:
  GroupPtr group_;
  Family family_;
  int degree_;
  std::vector<Word> basis_;
  std::vector<char> char2_;
  std::map<Word, Index> index_;
};

using BasedPtr = std::shared_ptr<const SignedBasedModule>;

BasedPtr tensor_power(GroupPtr g, int n, std::size_t max_basis = kDefaultMaxBasis);
BasedPtr normalized_tensor_power(GroupPtr g, int n, std::size_t max_basis = kDefaultMaxBasis);
// n > |G| gives the zero module, not an error
BasedPtr exterior_power(GroupPtr g, int n, std::size_t max_basis = kDefaultMaxBasis);
BasedPtr delta_power(GroupPtr g, int n, std::size_t max_basis = kDefaultMaxBasis);
BasedPtr tilde_exterior_power(GroupPtr g, int n, std::size_t max_basis = kDefaultMaxBasis);
BasedPtr make_power(Family f, GroupPtr g, int n, std::size_t max_basis = kDefaultMaxBasis);

// One column per basis element of `from`, entries indexed into `to`.
using SparseCol = std::vector<std::pair<Index, Int>>;

// The resolution boundary from degree tuples of length n+1 to length n.
// Tensor-family signs alternate starting at +1 on the first omitted slot,
// the exterior/tilde/Delta families start at -1.
std::vector<SparseCol> boundary_columns(const SignedBasedModule& from,
                                        const SignedBasedModule& to);
AbHom boundary(const SignedBasedModule& from, const SignedBasedModule& to);

// h with h d + d h = id in degrees >= 1 and d h = id - section(augmentation)
// at the bottom; prepends the identity element, with the family sign that
// makes the identity hold.
AbHom contracting_homotopy(const SignedBasedModule& from, const SignedBasedModule& to);
// F_1 -> Z sending every basis element to 1, and its section Z -> F_1.
AbHom augmentation(const SignedBasedModule& bottom);
AbHom augmentation_section(const SignedBasedModule& bottom);

struct Orbit {
  Index representative = 0;  // minimal basis index in the orbit
  std::vector<Index> elements;  // ascending basis indices
  std::vector<int> transport_g;  // per element: least g with g*rep = +-element
  std::vector<int> transport_sign;
  Subgroup stabilizer;
  std::vector<int> character;  // +-1 per stabilizer element; all +1 on char-2 orbits
  bool char2 = false;

  bool character_is_trivial() const {
    for (int c : character)
      if (c != 1) return false;
    return true;
  }
};

struct OrbitDecomposition {
  std::vector<Orbit> orbits;
  std::vector<Index> orbit_of;      // basis index -> orbit number
  std::vector<Index> pos_in_orbit;  // basis index -> position inside the orbit
};

OrbitDecomposition orbit_decomposition(const SignedBasedModule& f);

// Hom_G(F, M) as a presented group: one block of generators per orbit, the
// block presenting { m in M : h m = character(h) m for the stabilizer },
// with 2m = 0 forced on characteristic-2 orbits.  The evaluator transports a
// representative value across the orbit by f(g * rep) = sign * g * f(rep).
class HomModule {
 public:
  HomModule(BasedPtr basis_module, GModulePtr coeffs);

  const PresentedAb& group() const { return group_; }
  const SignedBasedModule& basis_module() const { return *basis_module_; }
  const GModule& coefficients() const { return *coeffs_; }
  const OrbitDecomposition& orbits() const { return orbits_; }

  Index orbit_offset(Index o) const { return offsets_[static_cast<std::size_t>(o)]; }
  Index orbit_gens(Index o) const;
  // inclusion of the orbit's value subgroup into the coefficient carrier
  const IntMat& orbit_inclusion(Index o) const;

  // M-coordinates of each Hom generator evaluated at basis element b; only
  // the block of b's orbit is nonzero.
  struct ValueBlock {
    Index gen_offset = 0;
    IntMat values;  // coeff rank x orbit gens
  };
  ValueBlock value_block(Index b) const;

  // full value of a Hom element at b
  IntVec evaluate(const IntVec& coords, Index b) const;

  // coordinates in orbit o's block of a value known to lie in its subgroup
  IntVec express_in_orbit(Index o, const IntVec& value) const;

 private:
  struct SubSpace {
    PresentedAb sub;
    IntMat incl;  // coeff rank x sub gens
    std::shared_ptr<LinearSolver> express;
  };

  BasedPtr basis_module_;
  GModulePtr coeffs_;
  OrbitDecomposition orbits_;
  std::vector<std::shared_ptr<const SubSpace>> blocks_;
  std::vector<Index> offsets_;
  PresentedAb group_;
};

using HomPtr = std::shared_ptr<const HomModule>;

// Dual of the boundary: Hom(F_low, M) -> Hom(F_high, M), f -> f o d.
AbHom hom_differential(const std::vector<SparseCol>& boundary_cols,
                       const HomModule& low, const HomModule& high);

// Dual of a basis-level word map F_B -> F_A (words of B normalized into A's
// family): Hom(F_A, M) -> Hom(F_B, M), scaled by global_sign.  This covers
// every inclusion, projection and section between the resolution families.
AbHom dual_word_map(const HomModule& hom_a, const HomModule& hom_b, int global_sign,
                    const std::function<Word(const Word&)>& transform = {});

}  // namespace cohomforge
