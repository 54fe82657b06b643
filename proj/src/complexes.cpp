#include "cohomforge/complexes.hpp"

namespace cohomforge {

namespace {

IntMat block_diag_rels(const IntMat& block, Index copies) {
  IntMat rels = IntMat::Zero(block.rows() * copies, block.cols() * copies);
  for (Index c = 0; c < copies; ++c)
    rels.block(c * block.rows(), c * block.cols(), block.rows(), block.cols()) = block;
  return rels;
}

PresentedAb repeated_sum(const PresentedAb& p, Index copies) {
  return PresentedAb(p.gens * copies, block_diag_rels(p.rels, copies));
}

// lexicographic indexing of G^n (or (G \ 1)^n for the normalized complex)
struct TupleIndexer {
  Index order = 1;
  int n = 0;
  bool identity_free = false;

  Index base() const { return identity_free ? order - 1 : order; }
  Index count() const {
    Index c = 1;
    for (int k = 0; k < n; ++k) c *= base();
    return c;
  }
  Index encode(const Word& t) const {
    Index idx = 0;
    for (int k = 0; k < n; ++k) {
      int e = t[static_cast<std::size_t>(k)];
      if (identity_free) {
        if (e == 0) return -1;
        idx = idx * base() + (e - 1);
      } else {
        idx = idx * base() + e;
      }
    }
    return idx;
  }
  Word decode(Index idx) const {
    Word t(static_cast<std::size_t>(n));
    for (int k = n - 1; k >= 0; --k) {
      Index d = idx % base();
      idx /= base();
      t[static_cast<std::size_t>(k)] = identity_free ? static_cast<int>(d) + 1 : static_cast<int>(d);
    }
    return t;
  }
};

TupleIndexer classical_indexer(const CochainComplex& cx, int degree) {
  return TupleIndexer{cx.group->order, degree, cx.label == "NC"};
}

void check_dd_zero(const CochainComplex& cx) {
  for (std::size_t n = 0; n + 1 < cx.diffs.size(); ++n) {
    if (!hom_is_zero(compose(cx.diffs[n + 1], cx.diffs[n])))
      throw std::logic_error("complex " + cx.label + ": d o d != 0 at degree " +
                             std::to_string(n));
  }
}

std::string family_label(Family f) {
  switch (f) {
    case Family::Tensor:
      return "K";
    case Family::NormalizedTensor:
      return "NK";
    case Family::TildeExterior:
      return "KS";
    case Family::Exterior:
      return "K_lambda";
    case Family::Delta:
      return "delta_hom";
  }
  return "?";
}

}  // namespace

CochainComplex homogeneous_complex(GroupPtr g, GModulePtr m, int max_degree, Family family,
                                   BuildOptions opts) {
  if (max_degree < 0) throw std::invalid_argument("complex: negative degree bound");
  CochainComplex cx;
  cx.label = family_label(family);
  cx.group = g;
  cx.coeffs = m;
  const int top = max_degree + 1;
  for (int n = 0; n <= top; ++n) {
    cx.bases.push_back(make_power(family, g, n + 1, opts.max_basis));
    cx.homs.push_back(std::make_shared<HomModule>(cx.bases.back(), m));
    cx.groups.push_back(cx.homs.back()->group());
  }
  for (int n = 0; n < top; ++n) {
    auto cols = boundary_columns(*cx.bases[static_cast<std::size_t>(n + 1)],
                                 *cx.bases[static_cast<std::size_t>(n)]);
    cx.diffs.push_back(hom_differential(cols, *cx.homs[static_cast<std::size_t>(n)],
                                        *cx.homs[static_cast<std::size_t>(n + 1)]));
  }
  check_dd_zero(cx);
  return cx;
}

CochainComplex classical_complex(GroupPtr g, GModulePtr m, int max_degree, bool normalized,
                                 BuildOptions opts) {
  if (max_degree < 0) throw std::invalid_argument("complex: negative degree bound");
  CochainComplex cx;
  cx.label = normalized ? "NC" : "C";
  cx.group = g;
  cx.coeffs = m;
  const int top = max_degree + 1;
  const Index rank = m->rank();
  const PresentedAb& mc = m->carrier();

  std::vector<TupleIndexer> indexer;
  for (int n = 0; n <= top; ++n) {
    indexer.push_back(TupleIndexer{g->order, n, normalized});
    Index cnt = indexer.back().count();
    check_basis_guard(cx.label + "^" + std::to_string(n) + " over " + g->spec,
                      static_cast<std::size_t>(cnt * rank), opts.max_basis);
    cx.groups.push_back(repeated_sum(mc, cnt));
  }

  const IntMat id = IntMat::Identity(rank, rank);
  for (int n = 0; n < top; ++n) {
    const TupleIndexer& out = indexer[static_cast<std::size_t>(n + 1)];
    const TupleIndexer& in = indexer[static_cast<std::size_t>(n)];
    IntMat d = IntMat::Zero(rank * out.count(), rank * in.count());
    for (Index tidx = 0; tidx < out.count(); ++tidx) {
      Word t = out.decode(tidx);
      // g0 . phi(g1,...,gn)
      {
        Word read(t.begin() + 1, t.end());
        Index ridx = in.encode(read);
        if (ridx >= 0) d.block(tidx * rank, ridx * rank, rank, rank) += m->action(t[0]);
      }
      // alternating merges
      for (int j = 1; j <= n; ++j) {
        Word read;
        read.reserve(static_cast<std::size_t>(n));
        for (int k = 0; k <= n; ++k) {
          if (k == j - 1)
            read.push_back(g->mul(t[static_cast<std::size_t>(j - 1)], t[static_cast<std::size_t>(j)]));
          else if (k != j)
            read.push_back(t[static_cast<std::size_t>(k)]);
        }
        Index ridx = in.encode(read);
        if (ridx < 0) continue;
        if (j % 2 == 0)
          d.block(tidx * rank, ridx * rank, rank, rank) += id;
        else
          d.block(tidx * rank, ridx * rank, rank, rank) -= id;
      }
      // last face
      {
        Word read(t.begin(), t.end() - 1);
        Index ridx = in.encode(read);
        if (ridx >= 0) {
          if ((n + 1) % 2 == 0)
            d.block(tidx * rank, ridx * rank, rank, rank) += id;
          else
            d.block(tidx * rank, ridx * rank, rank, rank) -= id;
        }
      }
    }
    cx.diffs.emplace_back(cx.groups[static_cast<std::size_t>(n)],
                          cx.groups[static_cast<std::size_t>(n + 1)], std::move(d));
  }
  check_dd_zero(cx);
  return cx;
}

IntMat transposition_action(const CochainComplex& classical, int degree, int i) {
  if (classical.label != "C")
    throw std::invalid_argument("transposition_action: needs the full classical complex");
  if (degree < 1 || i < 1 || i > degree)
    throw std::invalid_argument("transposition_action: bad transposition index");
  const Group& g = *classical.group;
  const GModule& m = *classical.coeffs;
  const Index rank = m.rank();
  TupleIndexer ix{g.order, degree, false};
  IntMat t_mat = IntMat::Zero(rank * ix.count(), rank * ix.count());
  const int n = degree;
  for (Index tidx = 0; tidx < ix.count(); ++tidx) {
    Word t = ix.decode(tidx);
    Word read = t;
    bool with_action = false;
    if (i == 1) {
      // -g1 phi(g1^{-1}, g1 g2, g3, ..., gn)
      with_action = true;
      read[0] = g.inverse(t[0]);
      if (n >= 2) read[1] = g.mul(t[0], t[1]);
    } else if (i < n) {
      read[static_cast<std::size_t>(i - 2)] = g.mul(t[static_cast<std::size_t>(i - 2)], t[static_cast<std::size_t>(i - 1)]);
      read[static_cast<std::size_t>(i - 1)] = g.inverse(t[static_cast<std::size_t>(i - 1)]);
      read[static_cast<std::size_t>(i)] = g.mul(t[static_cast<std::size_t>(i - 1)], t[static_cast<std::size_t>(i)]);
    } else {
      read[static_cast<std::size_t>(n - 2)] = g.mul(t[static_cast<std::size_t>(n - 2)], t[static_cast<std::size_t>(n - 1)]);
      read[static_cast<std::size_t>(n - 1)] = g.inverse(t[static_cast<std::size_t>(n - 1)]);
    }
    Index ridx = ix.encode(read);
    if (with_action)
      t_mat.block(tidx * rank, ridx * rank, rank, rank) = IntMat(-m.action(t[0]));
    else
      t_mat.block(tidx * rank, ridx * rank, rank, rank) = IntMat(-IntMat::Identity(rank, rank));
  }
  return t_mat;
}

namespace {

std::vector<SubgroupPresentation> cs_subgroups(const std::shared_ptr<const CochainComplex>& c) {
  std::vector<SubgroupPresentation> subs;
  for (int n = 0; n <= c->top(); ++n) {
    const PresentedAb& cn = c->groups[static_cast<std::size_t>(n)];
    if (n == 0) {
      subs.push_back({cn, AbHom::identity(cn)});
      continue;
    }
    IntMat stacked(cn.gens * n, cn.gens);
    for (int i = 1; i <= n; ++i) {
      IntMat ti = transposition_action(*c, n, i);
      ti -= IntMat::Identity(cn.gens, cn.gens);
      stacked.middleRows(static_cast<Index>(i - 1) * cn.gens, cn.gens) = ti;
    }
    AbHom constraint(cn, repeated_sum(cn, n), std::move(stacked));
    subs.push_back(kernel(constraint));
  }
  return subs;
}

CochainComplex subcomplex_from(const std::shared_ptr<const CochainComplex>& c,
                               std::vector<SubgroupPresentation> subs, std::string label) {
  CochainComplex cx;
  cx.label = std::move(label);
  cx.group = c->group;
  cx.coeffs = c->coeffs;
  cx.ambient = c;
  for (auto& s : subs) {
    cx.groups.push_back(s.group);
    cx.to_ambient.push_back(s.inclusion);
  }
  for (int n = 0; n < c->top(); ++n)
    cx.diffs.push_back(restrict_hom(c->diffs[static_cast<std::size_t>(n)],
                                    subs[static_cast<std::size_t>(n)],
                                    subs[static_cast<std::size_t>(n + 1)]));
  check_dd_zero(cx);
  return cx;
}

}  // namespace

CochainComplex symmetric_cs_complex(GroupPtr g, GModulePtr m, int max_degree, BuildOptions opts) {
  auto c = std::make_shared<const CochainComplex>(
      classical_complex(g, m, max_degree, false, opts));
  return subcomplex_from(c, cs_subgroups(c), "CS");
}

CochainComplex c_lambda_intersection_complex(GroupPtr g, GModulePtr m, int max_degree,
                                             BuildOptions opts) {
  auto c = std::make_shared<const CochainComplex>(
      classical_complex(g, m, max_degree, false, opts));
  auto cs = cs_subgroups(c);
  const Index rank = m->rank();
  std::vector<SubgroupPresentation> subs;
  for (int n = 0; n <= c->top(); ++n) {
    // embedding of the normalized cochains: identity-free tuples only
    TupleIndexer full{g->order, n, false};
    TupleIndexer reduced{g->order, n, true};
    IntMat embed = IntMat::Zero(rank * full.count(), rank * reduced.count());
    for (Index ridx = 0; ridx < reduced.count(); ++ridx) {
      Index fidx = full.encode(reduced.decode(ridx));
      embed.block(fidx * rank, ridx * rank, rank, rank) = IntMat::Identity(rank, rank);
    }
    IntMat gens = intersect_subgroups(cs[static_cast<std::size_t>(n)].inclusion.matrix(), embed,
                                      c->groups[static_cast<std::size_t>(n)].rels);
    subs.push_back(subgroup_from_generators(gens, c->groups[static_cast<std::size_t>(n)]));
  }
  return subcomplex_from(c, std::move(subs), "C_lambda");
}

ChainMap make_chain_map(std::string label, std::vector<AbHom> maps, const CochainComplex& src,
                        const CochainComplex& dst) {
  if (maps.size() != src.groups.size() || maps.size() != dst.groups.size())
    throw std::invalid_argument("chain map '" + label + "': degree count mismatch");
  for (std::size_t n = 0; n + 1 < maps.size(); ++n) {
    if (!hom_equal(compose(dst.diffs[n], maps[n]), compose(maps[n + 1], src.diffs[n])))
      throw std::logic_error("chain map '" + label + "': square at degree " + std::to_string(n) +
                             " does not commute");
  }
  return ChainMap{std::move(label), std::move(maps)};
}

namespace {

ChainMap dual_word_chain_map(std::string label, const CochainComplex& src,
                             const CochainComplex& dst, bool alternate_sign) {
  if (src.homs.empty() || dst.homs.empty())
    throw std::invalid_argument("chain map '" + label + "': resolution data missing");
  std::vector<AbHom> maps;
  for (std::size_t n = 0; n < src.groups.size(); ++n) {
    int sign = alternate_sign && (n % 2 == 1) ? -1 : 1;
    maps.push_back(dual_word_map(*src.homs[n], *dst.homs[n], sign));
  }
  return make_chain_map(std::move(label), std::move(maps), src, dst);
}

}  // namespace

ChainMap inclusion_into_k(const CochainComplex& sub, const CochainComplex& k) {
  if (k.label != "K") throw std::invalid_argument("inclusion_into_k: target is not K");
  if (sub.label == "KS" || sub.label == "K_lambda")
    return dual_word_chain_map(sub.label + "->K", sub, k, true);
  if (sub.label == "NK") return dual_word_chain_map("NK->K", sub, k, false);
  throw std::invalid_argument("inclusion_into_k: unsupported source " + sub.label);
}

ChainMap splitting_section(const CochainComplex& k_lambda, const CochainComplex& ks) {
  if (k_lambda.label != "K_lambda" || ks.label != "KS")
    throw std::invalid_argument("splitting_section: expects K_lambda -> KS");
  return dual_word_chain_map("K_lambda->KS", k_lambda, ks, false);
}

ChainMap splitting_projection_lambda(const CochainComplex& ks, const CochainComplex& k_lambda) {
  if (k_lambda.label != "K_lambda" || ks.label != "KS")
    throw std::invalid_argument("splitting_projection_lambda: expects KS -> K_lambda");
  return dual_word_chain_map("KS->K_lambda", ks, k_lambda, false);
}

ChainMap splitting_projection_delta(const CochainComplex& ks, const CochainComplex& delta_hom) {
  if (ks.label != "KS" || delta_hom.label != "delta_hom")
    throw std::invalid_argument("splitting_projection_delta: expects KS -> delta_hom");
  return dual_word_chain_map("KS->delta_hom", ks, delta_hom, false);
}

namespace {

// psi(f)(g1,...,gn) = f(1, g1, g1 g2, ..., g1 ... gn) assembled in the
// coordinates of the full classical complex at this degree
IntMat psi_values(const CochainComplex& k_side, int degree, bool identity_free_target) {
  const Group& g = *k_side.group;
  const Index rank = k_side.coeffs->rank();
  const HomModule& hom = *k_side.homs[static_cast<std::size_t>(degree)];
  TupleIndexer ix{g.order, degree, identity_free_target};
  IntMat out = IntMat::Zero(rank * ix.count(), hom.group().gens);
  for (Index tidx = 0; tidx < ix.count(); ++tidx) {
    Word t = ix.decode(tidx);
    Word w(static_cast<std::size_t>(degree + 1));
    w[0] = 0;
    for (int k = 0; k < degree; ++k)
      w[static_cast<std::size_t>(k + 1)] = g.mul(w[static_cast<std::size_t>(k)], t[static_cast<std::size_t>(k)]);
    auto norm = normalize_word(k_side.homs[0]->basis_module().family(), std::move(w));
    if (!norm) continue;
    Index ia = hom.basis_module().index_of(norm->word);
    if (ia < 0) continue;  // zero part of the resolution
    auto vb = hom.value_block(ia);
    if (norm->sign > 0)
      out.block(tidx * rank, vb.gen_offset, rank, vb.values.cols()) = vb.values;
    else
      out.block(tidx * rank, vb.gen_offset, rank, vb.values.cols()) = IntMat(-vb.values);
  }
  return out;
}

}  // namespace

IntMat psi_image_in_classical(const CochainComplex& k_side, const CochainComplex& c_full,
                              int degree) {
  if (c_full.label != "C") throw std::invalid_argument("psi_image_in_classical: ambient must be C");
  return psi_values(k_side, degree, false);
}

ChainMap psi_chain_map(const CochainComplex& k_side, const CochainComplex& c_side) {
  const bool direct = (k_side.label == "K" && c_side.label == "C") ||
                      (k_side.label == "NK" && c_side.label == "NC");
  const bool restricted = (k_side.label == "KS" && c_side.label == "CS") ||
                          (k_side.label == "K_lambda" && c_side.label == "C_lambda");
  if (!direct && !restricted)
    throw std::invalid_argument("psi_chain_map: unsupported pair " + k_side.label + "<->" +
                                c_side.label);
  std::vector<AbHom> maps;
  for (int n = 0; n <= k_side.top(); ++n) {
    if (direct) {
      IntMat vals = psi_values(k_side, n, c_side.label == "NC");
      maps.emplace_back(k_side.groups[static_cast<std::size_t>(n)],
                        c_side.groups[static_cast<std::size_t>(n)], std::move(vals));
    } else {
      IntMat vals = psi_values(k_side, n, false);
      if (n % 2 == 1) vals = -vals;
      const AbHom& incl = c_side.to_ambient[static_cast<std::size_t>(n)];
      IntMat basis(incl.matrix().rows(), incl.matrix().cols() + incl.target().rels.cols());
      basis.leftCols(incl.matrix().cols()) = incl.matrix();
      basis.rightCols(incl.target().rels.cols()) = incl.target().rels;
      auto sol = LinearSolver(std::move(basis)).solve(vals);
      if (!sol) throw std::logic_error("psi_chain_map: psi image escapes the subcomplex");
      maps.emplace_back(k_side.groups[static_cast<std::size_t>(n)],
                        c_side.groups[static_cast<std::size_t>(n)],
                        IntMat(sol->topRows(incl.matrix().cols())));
    }
  }
  return make_chain_map("psi:" + k_side.label + "->" + c_side.label, std::move(maps), k_side,
                        c_side);
}

bool complexes_equal(const CochainComplex& a, const CochainComplex& b) {
  if (a.groups.size() != b.groups.size()) return false;
  for (std::size_t n = 0; n < a.groups.size(); ++n)
    if (!a.groups[n].same_presentation(b.groups[n])) return false;
  for (std::size_t n = 0; n < a.diffs.size(); ++n)
    if (a.diffs[n].matrix() != b.diffs[n].matrix()) return false;
  return true;
}

}  // namespace cohomforge
