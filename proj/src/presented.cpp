#include "cohomforge/presented.hpp"

#include <sstream>

namespace cohomforge {

PresentedAb PresentedAb::cyclic(const Int& k) {
  if (sgn(k) < 0) throw std::invalid_argument("cyclic: negative modulus");
  if (is_zero(k)) return free_of_rank(1);
  IntMat r(1, 1);
  r(0, 0) = k;
  return PresentedAb(1, std::move(r));
}

std::string InvariantFactors::to_text() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << " ⊕ ";  // direct-sum sign
    first = false;
  };
  if (free_rank == 1) {
    sep();
    os << "Z";
  } else if (free_rank > 1) {
    sep();
    os << "Z^" << free_rank;
  }
  for (const auto& d : torsion) {
    sep();
    os << "Z/" << to_string(d);
  }
  return os.str();
}

InvariantFactors invariant_factors(const PresentedAb& p) {
  auto s = smith_normal_form(p.rels, {.want_u = false, .want_v = false});
  InvariantFactors out;
  out.free_rank = p.gens - s.rank;
  for (Index i = 0; i < s.rank; ++i) {
    if (s.d(i, i) > 1) out.torsion.push_back(s.d(i, i));
  }
  return out;
}

namespace {

// matrix * rels with relation matrices treated as sparse
IntMat push_relations(const IntMat& matrix, const IntMat& rels) {
  return sparse_product(matrix, rels);
}

IntMat hcat(const IntMat& a, const IntMat& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hcat: row mismatch");
  IntMat m(a.rows(), a.cols() + b.cols());
  m.leftCols(a.cols()) = a;
  m.rightCols(b.cols()) = b;
  return m;
}

// k when the relations are exactly { k e_i } for every generator
std::optional<Int> uniform_modulus(const PresentedAb& p) {
  const IntMat& rels = p.rels;
  if (rels.cols() != p.gens || p.gens == 0) return std::nullopt;
  std::vector<bool> row_has(static_cast<std::size_t>(p.gens), false);
  Int k;
  for (Index j = 0; j < rels.cols(); ++j) {
    Index nz = -1;
    for (Index i = 0; i < rels.rows(); ++i) {
      if (is_zero(rels(i, j))) continue;
      if (nz >= 0) return std::nullopt;
      nz = i;
    }
    if (nz < 0) return std::nullopt;
    if (row_has[static_cast<std::size_t>(nz)]) return std::nullopt;
    row_has[static_cast<std::size_t>(nz)] = true;
    Int v = abs(rels(nz, j));
    if (is_zero(k))
      k = v;
    else if (k != v)
      return std::nullopt;
  }
  for (bool b : row_has)
    if (!b) return std::nullopt;
  return k;
}

}  // namespace

AbHom::AbHom(PresentedAb source, PresentedAb target, IntMat matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_.gens || matrix_.cols() != source_.gens)
    throw std::invalid_argument("AbHom: matrix shape does not match presentations");
  if (source_.rels.cols() > 0) {
    IntMat pushed = push_relations(matrix_, source_.rels);
    if (!LinearSolver(target_.rels).solvable(pushed))
      throw std::invalid_argument("AbHom: map does not respect source relations");
  }
}

AbHom AbHom::zero_map(PresentedAb source, PresentedAb target) {
  IntMat m = IntMat::Zero(target.gens, source.gens);
  return AbHom(std::move(source), std::move(target), std::move(m));
}

AbHom AbHom::identity(PresentedAb p) {
  IntMat m = IntMat::Identity(p.gens, p.gens);
  PresentedAb q = p;
  return AbHom(std::move(p), std::move(q), std::move(m));
}

AbHom compose(const AbHom& g, const AbHom& f) {
  if (!f.target().same_presentation(g.source()))
    throw std::invalid_argument("compose: middle presentations differ");
  return AbHom(f.source(), g.target(), sparse_product(g.matrix(), f.matrix()));
}

bool hom_equal(const AbHom& f, const AbHom& g) {
  if (!f.source().same_presentation(g.source()) ||
      !f.target().same_presentation(g.target()))
    return false;
  IntMat diff = f.matrix() - g.matrix();
  if (diff.isZero()) return true;
  return LinearSolver(f.target().rels).solvable(diff);
}

bool hom_is_zero(const AbHom& f) {
  if (f.matrix().isZero()) return true;
  return LinearSolver(f.target().rels).solvable(f.matrix());
}

PresentedAb direct_sum(const PresentedAb& a, const PresentedAb& b) {
  return direct_sum_many({&a, &b});
}

PresentedAb direct_sum_many(const std::vector<const PresentedAb*>& parts) {
  Index gens = 0, rel_cols = 0;
  for (const PresentedAb* p : parts) {
    gens += p->gens;
    rel_cols += p->rels.cols();
  }
  IntMat rels = IntMat::Zero(gens, rel_cols);
  Index row = 0, col = 0;
  for (const PresentedAb* p : parts) {
    rels.block(row, col, p->gens, p->rels.cols()) = p->rels;
    row += p->gens;
    col += p->rels.cols();
  }
  return PresentedAb(gens, std::move(rels));
}

IntMat preimage_lattice_of_zero(const AbHom& f) {
  const IntMat& rels = f.target().rels;
  if (rels.cols() == 0) return lattice_kernel(f.matrix());
  if (auto k = uniform_modulus(f.target())) return preimage_lattice_mod(f.matrix(), *k);
  IntMat stacked = hcat(f.matrix(), rels);
  IntMat ker = lattice_kernel(stacked);
  return ker.topRows(f.source().gens);
}

namespace {

// Relations among the given generators inside the ambient group, modulo the
// extra denominators: { a : gens a lies in span(denom) + relations }.  A
// uniformly k-torsion ambient group keeps the whole computation mod k.
IntMat relations_modulo(const IntMat& gens, const IntMat& denom, const PresentedAb& ambient) {
  if (auto k = uniform_modulus(ambient)) {
    IntMat pre = preimage_kernel_mod(hcat(gens, denom), *k);
    IntMat rels(gens.cols(), pre.cols() + gens.cols());
    rels.leftCols(pre.cols()) = pre.topRows(gens.cols());
    // the ambient group is k-torsion, so k kills every generator
    rels.rightCols(gens.cols()) = IntMat(*k * IntMat::Identity(gens.cols(), gens.cols()));
    return rels;
  }
  IntMat stacked = hcat(hcat(gens, denom), ambient.rels);
  IntMat ker = lattice_kernel(stacked);
  return ker.topRows(gens.cols());
}

// Generators for the preimage of zero viewed inside the source group; when
// source and target are k-torsion for the same k, the k Z^g block is already
// swallowed by the source relations and can be left out.
IntMat cycle_generators(const AbHom& f) {
  auto kt = uniform_modulus(f.target());
  auto ks = uniform_modulus(f.source());
  if (kt && ks && *kt == *ks) return preimage_kernel_mod(f.matrix(), *kt);
  return preimage_lattice_of_zero(f);
}

}  // namespace

SubgroupPresentation kernel(const AbHom& f) {
  IntMat lat = cycle_generators(f);
  IntMat rels = relations_modulo(lat, IntMat::Zero(f.source().gens, 0), f.source());
  PresentedAb k(lat.cols(), std::move(rels));
  AbHom incl(k, f.source(), lat);
  return {std::move(k), std::move(incl)};
}

SubgroupPresentation image(const AbHom& f) {
  IntMat rels = preimage_lattice_of_zero(f);
  PresentedAb img(f.source().gens, std::move(rels));
  AbHom incl(img, f.target(), f.matrix());
  return {std::move(img), std::move(incl)};
}

QuotientPresentation cokernel(const AbHom& f) {
  PresentedAb q(f.target().gens, hcat(f.target().rels, f.matrix()));
  AbHom proj(f.target(), q, IntMat::Identity(f.target().gens, f.target().gens));
  return {std::move(q), std::move(proj)};
}

HomologyData homology_with_lift(const AbHom& d_in, const AbHom& d_out) {
  if (!d_in.target().same_presentation(d_out.source()))
    throw std::invalid_argument("homology: non-composable pair");
  if (!hom_is_zero(compose(d_out, d_in)))
    throw std::invalid_argument("homology: d_out after d_in is not zero");
  IntMat cycles = cycle_generators(d_out);
  IntMat rels = relations_modulo(cycles, d_in.matrix(), d_in.target());
  return {PresentedAb(cycles.cols(), std::move(rels)), std::move(cycles)};
}

PresentedAb homology_at(const AbHom& d_in, const AbHom& d_out) {
  return homology_with_lift(d_in, d_out).group;
}

AbHom induced_on_homology(const ChainMapSquare& sq) {
  if (!hom_equal(compose(sq.v_mid, sq.d_in), compose(sq.d_in2, sq.v_in)))
    throw std::invalid_argument("induced_on_homology: left square does not commute");
  if (!hom_equal(compose(sq.v_out, sq.d_out), compose(sq.d_out2, sq.v_mid)))
    throw std::invalid_argument("induced_on_homology: right square does not commute");

  HomologyData h1 = homology_with_lift(sq.d_in, sq.d_out);
  HomologyData h2 = homology_with_lift(sq.d_in2, sq.d_out2);

  IntMat basis = hcat(hcat(h2.cycle_lift, sq.d_in2.matrix()), sq.d_in2.target().rels);
  LinearSolver solver(basis);
  IntMat m(h2.group.gens, h1.group.gens);
  for (Index j = 0; j < h1.group.gens; ++j) {
    IntVec v = sparse_product(sq.v_mid.matrix(), IntMat(h1.cycle_lift.col(j)));
    auto w = solver.solve(IntVec(v));
    if (!w) throw std::logic_error("induced_on_homology: image class not expressible");
    m.col(j) = w->head(h2.group.gens);
  }
  return AbHom(h1.group, h2.group, std::move(m));
}

bool subgroup_contains(const IntMat& haystack_gens, const IntMat& ambient_rels,
                       const IntMat& needle_gens) {
  IntMat basis = hcat(haystack_gens, ambient_rels);
  return LinearSolver(basis).solvable(needle_gens);
}

bool subgroup_equal(const IntMat& gens1, const IntMat& gens2, const IntMat& ambient_rels) {
  return subgroup_contains(gens1, ambient_rels, gens2) &&
         subgroup_contains(gens2, ambient_rels, gens1);
}

IntMat intersect_subgroups(const IntMat& gens1, const IntMat& gens2,
                           const IntMat& ambient_rels) {
  IntMat stacked = hcat(hcat(gens1, IntMat(-gens2)), ambient_rels);
  IntMat ker = lattice_kernel(stacked);
  IntMat coeffs = ker.topRows(gens1.cols());
  return sparse_product(gens1, coeffs);
}

SubgroupPresentation subgroup_from_generators(const IntMat& gens, const PresentedAb& ambient) {
  if (gens.rows() != ambient.gens)
    throw std::invalid_argument("subgroup_from_generators: generator rows mismatch");
  IntMat rels = relations_modulo(gens, IntMat::Zero(ambient.gens, 0), ambient);
  PresentedAb p(gens.cols(), std::move(rels));
  AbHom incl(p, ambient, gens);
  return {std::move(p), std::move(incl)};
}

AbHom restrict_hom(const AbHom& f, const SubgroupPresentation& sub_source,
                   const SubgroupPresentation& sub_target) {
  IntMat mapped = sparse_product(f.matrix(), sub_source.inclusion.matrix());
  IntMat basis = hcat(sub_target.inclusion.matrix(), f.target().rels);
  auto sol = LinearSolver(basis).solve(mapped);
  if (!sol) throw std::invalid_argument("restrict_hom: image leaves the target subgroup");
  return AbHom(sub_source.group, sub_target.group, sol->topRows(sub_target.group.gens));
}

}  // namespace cohomforge
