#include "cohomforge/based.hpp"

#include <algorithm>
#include <limits>

namespace cohomforge {

const char* family_name(Family f) {
  switch (f) {
    case Family::Tensor:
      return "tensor";
    case Family::NormalizedTensor:
      return "normalized-tensor";
    case Family::Exterior:
      return "exterior";
    case Family::Delta:
      return "delta";
    case Family::TildeExterior:
      return "tilde-exterior";
  }
  return "?";
}

namespace {

// sort ascending, returning the parity of the permutation applied
std::pair<Word, int> sort_with_parity(Word w) {
  int sign = 1;
  for (std::size_t i = 1; i < w.size(); ++i) {
    for (std::size_t j = i; j > 0 && w[j] < w[j - 1]; --j) {
      std::swap(w[j], w[j - 1]);
      sign = -sign;
    }
  }
  return {std::move(w), sign};
}

bool has_repeat_sorted(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1]) return true;
  return false;
}

bool has_adjacent_repeat(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1]) return true;
  return false;
}

}  // namespace

std::optional<NormalizedWord> normalize_word(Family family, Word raw) {
  switch (family) {
    case Family::Tensor:
      return NormalizedWord{std::move(raw), 1, false};
    case Family::NormalizedTensor:
      if (has_adjacent_repeat(raw)) return std::nullopt;
      return NormalizedWord{std::move(raw), 1, false};
    case Family::Exterior: {
      auto [sorted, sign] = sort_with_parity(std::move(raw));
      if (has_repeat_sorted(sorted)) return std::nullopt;
      return NormalizedWord{std::move(sorted), sign, false};
    }
    case Family::Delta: {
      auto [sorted, sign] = sort_with_parity(std::move(raw));
      if (!has_repeat_sorted(sorted)) return std::nullopt;
      return NormalizedWord{std::move(sorted), 1, true};
    }
    case Family::TildeExterior: {
      auto [sorted, sign] = sort_with_parity(std::move(raw));
      if (has_repeat_sorted(sorted)) return NormalizedWord{std::move(sorted), 1, true};
      return NormalizedWord{std::move(sorted), sign, false};
    }
  }
  throw std::logic_error("normalize_word: bad family");
}

namespace {

Int count_tuples(Family family, Index order, int n) {
  Int g(static_cast<long>(order));
  Int count;
  switch (family) {
    case Family::Tensor:
      mpz_pow_ui(count.get_mpz_t(), g.get_mpz_t(), static_cast<unsigned long>(n));
      break;
    case Family::NormalizedTensor: {
      Int rest;
      mpz_ui_pow_ui(rest.get_mpz_t(), static_cast<unsigned long>(order > 1 ? order - 1 : 0),
                    static_cast<unsigned long>(n - 1));
      count = n == 1 ? g : g * rest;
      break;
    }
    case Family::Exterior:
      mpz_bin_uiui(count.get_mpz_t(), static_cast<unsigned long>(order),
                   static_cast<unsigned long>(n));
      break;
    case Family::Delta: {
      Int weak, strict;
      mpz_bin_uiui(weak.get_mpz_t(), static_cast<unsigned long>(order + n - 1),
                   static_cast<unsigned long>(n));
      mpz_bin_uiui(strict.get_mpz_t(), static_cast<unsigned long>(order),
                   static_cast<unsigned long>(n));
      count = weak - strict;
      break;
    }
    case Family::TildeExterior: {
      mpz_bin_uiui(count.get_mpz_t(), static_cast<unsigned long>(order + n - 1),
                   static_cast<unsigned long>(n));
      break;
    }
  }
  return count;
}

void enumerate_tensor(Index order, int n, std::vector<Word>& out) {
  Word w(static_cast<std::size_t>(n), 0);
  while (true) {
    out.push_back(w);
    int pos = n - 1;
    while (pos >= 0) {
      if (++w[static_cast<std::size_t>(pos)] < order) break;
      w[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
}

void enumerate_normalized_tensor(Index order, int n, std::vector<Word>& out) {
  Word w;
  std::function<void()> rec = [&] {
    if (static_cast<int>(w.size()) == n) {
      out.push_back(w);
      return;
    }
    for (int g = 0; g < order; ++g) {
      if (!w.empty() && w.back() == g) continue;
      w.push_back(g);
      rec();
      w.pop_back();
    }
  };
  rec();
}

void enumerate_weakly_increasing(Index order, int n, bool strict, bool with_repeat,
                                 std::vector<Word>& out) {
  Word w;
  std::function<void(int)> rec = [&](int lo) {
    if (static_cast<int>(w.size()) == n) {
      if (!with_repeat || has_repeat_sorted(w)) out.push_back(w);
      return;
    }
    for (int g = lo; g < order; ++g) {
      w.push_back(g);
      rec(strict ? g + 1 : g);
      w.pop_back();
    }
  };
  rec(0);
}

}  // namespace

SignedBasedModule::SignedBasedModule(GroupPtr group, Family family, int degree,
                                     std::size_t max_basis)
    : group_(std::move(group)), family_(family), degree_(degree) {
  if (!group_) throw std::invalid_argument("SignedBasedModule: null group");
  if (degree_ < 1) throw std::invalid_argument("SignedBasedModule: degree must be >= 1");
  const Index n = group_->order;

  Int count = count_tuples(family_, n, degree_);
  if (count > Int(static_cast<unsigned long>(max_basis))) {
    std::size_t requested = mpz_fits_ulong_p(count.get_mpz_t())
                                ? static_cast<std::size_t>(count.get_ui())
                                : std::numeric_limits<std::size_t>::max();
    throw SizeGuardError(std::string(family_name(family_)) + "^" + std::to_string(degree_) +
                             " over " + group_->spec,
                         requested, max_basis);
  }

  switch (family_) {
    case Family::Tensor:
      enumerate_tensor(n, degree_, basis_);
      break;
    case Family::NormalizedTensor:
      enumerate_normalized_tensor(n, degree_, basis_);
      break;
    case Family::Exterior:
      if (degree_ <= n) enumerate_weakly_increasing(n, degree_, true, false, basis_);
      break;
    case Family::Delta:
      enumerate_weakly_increasing(n, degree_, false, true, basis_);
      break;
    case Family::TildeExterior:
      if (degree_ <= n) enumerate_weakly_increasing(n, degree_, true, false, basis_);
      {
        std::size_t lambda_part = basis_.size();
        enumerate_weakly_increasing(n, degree_, false, true, basis_);
        char2_.assign(basis_.size(), 0);
        for (std::size_t i = lambda_part; i < basis_.size(); ++i) char2_[i] = 1;
      }
      break;
  }
  if (char2_.empty()) char2_.assign(basis_.size(), family_ == Family::Delta ? 1 : 0);
  for (Index i = 0; i < size(); ++i) index_[basis_[static_cast<std::size_t>(i)]] = i;
}

Index SignedBasedModule::index_of(const Word& w) const {
  auto it = index_.find(w);
  return it == index_.end() ? -1 : it->second;
}

std::pair<Index, int> SignedBasedModule::act(int g, Index i) const {
  Word moved = word(i);
  for (int& x : moved) x = group_->mul(g, x);
  auto norm = normalize_word(family_, std::move(moved));
  if (!norm) throw std::logic_error("act: image left the basis");
  Index j = index_of(norm->word);
  if (j < 0) throw std::logic_error("act: image word not indexed");
  return {j, is_char2(i) ? 1 : norm->sign};
}

PresentedAb SignedBasedModule::carrier() const {
  std::vector<Index> torsion;
  for (Index i = 0; i < size(); ++i)
    if (is_char2(i)) torsion.push_back(i);
  IntMat rels = IntMat::Zero(size(), static_cast<Index>(torsion.size()));
  for (std::size_t c = 0; c < torsion.size(); ++c) rels(torsion[c], static_cast<Index>(c)) = 2;
  return PresentedAb(size(), std::move(rels));
}

AbHom SignedBasedModule::action_hom(int g) const {
  IntMat m = IntMat::Zero(size(), size());
  for (Index i = 0; i < size(); ++i) {
    auto [j, sign] = act(g, i);
    m(j, i) = sign;
  }
  PresentedAb c = carrier();
  return AbHom(c, c, std::move(m));
}

BasedPtr make_power(Family f, GroupPtr g, int n, std::size_t max_basis) {
  return std::make_shared<SignedBasedModule>(std::move(g), f, n, max_basis);
}
BasedPtr tensor_power(GroupPtr g, int n, std::size_t max_basis) {
  return make_power(Family::Tensor, std::move(g), n, max_basis);
}
BasedPtr normalized_tensor_power(GroupPtr g, int n, std::size_t max_basis) {
  return make_power(Family::NormalizedTensor, std::move(g), n, max_basis);
}
BasedPtr exterior_power(GroupPtr g, int n, std::size_t max_basis) {
  return make_power(Family::Exterior, std::move(g), n, max_basis);
}
BasedPtr delta_power(GroupPtr g, int n, std::size_t max_basis) {
  return make_power(Family::Delta, std::move(g), n, max_basis);
}
BasedPtr tilde_exterior_power(GroupPtr g, int n, std::size_t max_basis) {
  return make_power(Family::TildeExterior, std::move(g), n, max_basis);
}

std::vector<SparseCol> boundary_columns(const SignedBasedModule& from,
                                        const SignedBasedModule& to) {
  if (from.family() != to.family())
    throw std::invalid_argument("boundary: family mismatch");
  if (from.degree() != to.degree() + 1)
    throw std::invalid_argument("boundary: degrees are not consecutive");
  if (&from.group() != &to.group() && from.group().table != to.group().table)
    throw std::invalid_argument("boundary: different groups");

  const bool tensor_signs =
      from.family() == Family::Tensor || from.family() == Family::NormalizedTensor;
  std::vector<SparseCol> cols(static_cast<std::size_t>(from.size()));
  for (Index i = 0; i < from.size(); ++i) {
    const Word& w = from.word(i);
    std::map<Index, Int> acc;
    for (std::size_t j = 0; j < w.size(); ++j) {
      Word sub;
      sub.reserve(w.size() - 1);
      for (std::size_t k = 0; k < w.size(); ++k)
        if (k != j) sub.push_back(w[k]);
      auto norm = normalize_word(to.family(), std::move(sub));
      if (!norm) continue;
      Index t = to.index_of(norm->word);
      if (t < 0) throw std::logic_error("boundary: target word not indexed");
      int sign = (j % 2 == 0) ? 1 : -1;
      if (!tensor_signs) sign = -sign;
      acc[t] += sign * norm->sign;
    }
    for (auto& [t, c] : acc)
      if (!is_zero(c)) cols[static_cast<std::size_t>(i)].emplace_back(t, c);
  }
  return cols;
}

AbHom boundary(const SignedBasedModule& from, const SignedBasedModule& to) {
  auto cols = boundary_columns(from, to);
  IntMat m = IntMat::Zero(to.size(), from.size());
  for (Index i = 0; i < from.size(); ++i)
    for (const auto& [t, c] : cols[static_cast<std::size_t>(i)]) m(t, i) = c;
  return AbHom(from.carrier(), to.carrier(), std::move(m));
}

AbHom contracting_homotopy(const SignedBasedModule& from, const SignedBasedModule& to) {
  if (from.family() != to.family())
    throw std::invalid_argument("contracting_homotopy: family mismatch");
  if (to.degree() != from.degree() + 1)
    throw std::invalid_argument("contracting_homotopy: degrees are not consecutive");
  const bool tensor_signs =
      from.family() == Family::Tensor || from.family() == Family::NormalizedTensor;
  const int s = tensor_signs ? 1 : -1;
  IntMat m = IntMat::Zero(to.size(), from.size());
  for (Index i = 0; i < from.size(); ++i) {
    Word w = from.word(i);
    w.insert(w.begin(), 0);
    auto norm = normalize_word(to.family(), std::move(w));
    if (!norm) continue;
    Index t = to.index_of(norm->word);
    if (t < 0) throw std::logic_error("contracting_homotopy: target word not indexed");
    m(t, i) = s * norm->sign;
  }
  return AbHom(from.carrier(), to.carrier(), std::move(m));
}

AbHom augmentation(const SignedBasedModule& bottom) {
  if (bottom.degree() != 1) throw std::invalid_argument("augmentation: degree must be 1");
  IntMat m = IntMat::Constant(1, bottom.size(), Int(1));
  return AbHom(bottom.carrier(), PresentedAb::free_of_rank(1), std::move(m));
}

AbHom augmentation_section(const SignedBasedModule& bottom) {
  if (bottom.degree() != 1) throw std::invalid_argument("augmentation_section: degree must be 1");
  IntMat m = IntMat::Zero(bottom.size(), 1);
  Index id = bottom.index_of(Word{0});
  if (id >= 0) m(id, 0) = 1;
  return AbHom(PresentedAb::free_of_rank(1), bottom.carrier(), std::move(m));
}

OrbitDecomposition orbit_decomposition(const SignedBasedModule& f) {
  OrbitDecomposition dec;
  const Index n = f.size();
  dec.orbit_of.assign(static_cast<std::size_t>(n), -1);
  dec.pos_in_orbit.assign(static_cast<std::size_t>(n), -1);
  const Group& g = f.group();

  for (Index rep = 0; rep < n; ++rep) {
    if (dec.orbit_of[static_cast<std::size_t>(rep)] >= 0) continue;
    Orbit orbit;
    orbit.representative = rep;
    orbit.char2 = f.is_char2(rep);

    std::map<Index, std::pair<int, int>> transport;  // element -> (g, sign), least g wins
    std::vector<int> stab_elements;
    std::vector<int> character;
    for (int a = 0; a < g.order; ++a) {
      auto [target, sign] = f.act(a, rep);
      if (target == rep) {
        stab_elements.push_back(a);
        character.push_back(orbit.char2 ? 1 : sign);
      }
      transport.emplace(target, std::make_pair(a, sign));  // no overwrite: first (least) g kept
    }
    for (const auto& [elem, tg] : transport) {
      dec.orbit_of[static_cast<std::size_t>(elem)] = static_cast<Index>(dec.orbits.size());
      dec.pos_in_orbit[static_cast<std::size_t>(elem)] = static_cast<Index>(orbit.elements.size());
      orbit.elements.push_back(elem);
      orbit.transport_g.push_back(tg.first);
      orbit.transport_sign.push_back(orbit.char2 ? 1 : tg.second);
    }
    orbit.stabilizer = Subgroup{&g, std::move(stab_elements)};
    orbit.character = std::move(character);
    dec.orbits.push_back(std::move(orbit));
  }
  return dec;
}

HomModule::HomModule(BasedPtr basis_module, GModulePtr coeffs)
    : basis_module_(std::move(basis_module)), coeffs_(std::move(coeffs)) {
  if (!basis_module_ || !coeffs_) throw std::invalid_argument("HomModule: null input");
  if (&basis_module_->group() != &coeffs_->group() &&
      basis_module_->group().table != coeffs_->group().table)
    throw std::invalid_argument("HomModule: based module and coefficients over different groups");

  orbits_ = orbit_decomposition(*basis_module_);
  const PresentedAb& mc = coeffs_->carrier();
  const Index m = mc.gens;

  // orbits with the same stabilizer/character/characteristic share their
  // value subgroup
  std::map<std::tuple<std::vector<int>, std::vector<int>, bool>,
           std::shared_ptr<const SubSpace>>
      cache;

  Index offset = 0;
  for (const Orbit& orbit : orbits_.orbits) {
    auto key = std::make_tuple(orbit.stabilizer.elements, orbit.character, orbit.char2);
    auto it = cache.find(key);
    std::shared_ptr<const SubSpace> block;
    if (it != cache.end()) {
      block = it->second;
    } else {
      bool free_orbit = orbit.stabilizer.elements.size() == 1 && !orbit.char2;
      if (free_orbit) {
        auto sp = std::make_shared<SubSpace>();
        sp->sub = mc;
        sp->incl = IntMat::Identity(m, m);
        block = sp;
      } else {
        Index constraints = static_cast<Index>(orbit.stabilizer.elements.size()) - 1 +
                            (orbit.char2 ? 1 : 0);
        IntMat stacked = IntMat::Zero(constraints * m, m);
        PresentedAb target = PresentedAb::zero();
        Index row = 0;
        for (std::size_t s = 1; s < orbit.stabilizer.elements.size(); ++s) {
          int h = orbit.stabilizer.elements[s];
          IntMat c = coeffs_->action(h);
          if (orbit.character[s] == 1)
            c -= IntMat::Identity(m, m);
          else
            c += IntMat::Identity(m, m);
          stacked.middleRows(row * m, m) = c;
          target = direct_sum(target, mc);
          ++row;
        }
        if (orbit.char2) {
          stacked.middleRows(row * m, m) = IntMat(2 * IntMat::Identity(m, m));
          target = direct_sum(target, mc);
        }
        AbHom constraint(mc, std::move(target), std::move(stacked));
        SubgroupPresentation k = kernel(constraint);
        auto sp = std::make_shared<SubSpace>();
        sp->sub = k.group;
        sp->incl = k.inclusion.matrix();
        IntMat basis(m, sp->incl.cols() + mc.rels.cols());
        basis.leftCols(sp->incl.cols()) = sp->incl;
        basis.rightCols(mc.rels.cols()) = mc.rels;
        sp->express = std::make_shared<LinearSolver>(std::move(basis));
        block = sp;
      }
      cache.emplace(std::move(key), block);
    }
    offsets_.push_back(offset);
    offset += block->sub.gens;
    blocks_.push_back(std::move(block));
  }
  std::vector<const PresentedAb*> parts;
  parts.reserve(blocks_.size());
  for (const auto& b : blocks_) parts.push_back(&b->sub);
  group_ = direct_sum_many(parts);
}

Index HomModule::orbit_gens(Index o) const {
  return blocks_[static_cast<std::size_t>(o)]->sub.gens;
}

const IntMat& HomModule::orbit_inclusion(Index o) const {
  return blocks_[static_cast<std::size_t>(o)]->incl;
}

HomModule::ValueBlock HomModule::value_block(Index b) const {
  Index o = orbits_.orbit_of[static_cast<std::size_t>(b)];
  Index pos = orbits_.pos_in_orbit[static_cast<std::size_t>(b)];
  const Orbit& orbit = orbits_.orbits[static_cast<std::size_t>(o)];
  int g = orbit.transport_g[static_cast<std::size_t>(pos)];
  int sign = orbit.transport_sign[static_cast<std::size_t>(pos)];
  const IntMat& incl = blocks_[static_cast<std::size_t>(o)]->incl;
  IntMat values = g == 0 ? incl : IntMat(sparse_product(coeffs_->action(g), incl));
  if (sign < 0) values = -values;
  return {offsets_[static_cast<std::size_t>(o)], std::move(values)};
}

IntVec HomModule::evaluate(const IntVec& coords, Index b) const {
  if (coords.size() != group_.gens) throw std::invalid_argument("evaluate: bad coords size");
  ValueBlock vb = value_block(b);
  return vb.values * coords.segment(vb.gen_offset, vb.values.cols());
}

IntVec HomModule::express_in_orbit(Index o, const IntVec& value) const {
  const SubSpace& sp = *blocks_[static_cast<std::size_t>(o)];
  if (!sp.express) return value;  // identity inclusion
  auto sol = sp.express->solve(value);
  if (!sol) throw std::logic_error("express_in_orbit: value not in the orbit subgroup");
  return sol->head(sp.sub.gens);
}

AbHom hom_differential(const std::vector<SparseCol>& boundary_cols, const HomModule& low,
                       const HomModule& high) {
  const auto& dec = low.orbits();
  IntMat result = IntMat::Zero(high.group().gens, low.group().gens);
  const Index high_orbits = static_cast<Index>(high.orbits().orbits.size());
  for (Index oh = 0; oh < high_orbits; ++oh) {
    Index rep = high.orbits().orbits[static_cast<std::size_t>(oh)].representative;
    const SparseCol& col = boundary_cols[static_cast<std::size_t>(rep)];
    std::map<Index, IntMat> contrib;  // low orbit -> m x k block
    for (const auto& [b, c] : col) {
      auto vb = low.value_block(b);
      Index ol = dec.orbit_of[static_cast<std::size_t>(b)];
      auto it = contrib.find(ol);
      if (it == contrib.end())
        contrib.emplace(ol, IntMat(c * vb.values));
      else
        it->second += c * vb.values;
    }
    for (const auto& [ol, block] : contrib) {
      for (Index j = 0; j < block.cols(); ++j) {
        IntVec y = high.express_in_orbit(oh, IntVec(block.col(j)));
        result.block(high.orbit_offset(oh), low.orbit_offset(ol) + j, y.size(), 1) = y;
      }
    }
  }
  return AbHom(low.group(), high.group(), std::move(result));
}

AbHom dual_word_map(const HomModule& hom_a, const HomModule& hom_b, int global_sign,
                    const std::function<Word(const Word&)>& transform) {
  const Family fam_a = hom_a.basis_module().family();
  IntMat result = IntMat::Zero(hom_b.group().gens, hom_a.group().gens);
  const Index b_orbits = static_cast<Index>(hom_b.orbits().orbits.size());
  for (Index ob = 0; ob < b_orbits; ++ob) {
    Index rep = hom_b.orbits().orbits[static_cast<std::size_t>(ob)].representative;
    Word w = hom_b.basis_module().word(rep);
    if (transform) w = transform(w);
    auto norm = normalize_word(fam_a, std::move(w));
    if (!norm) continue;
    Index ia = hom_a.basis_module().index_of(norm->word);
    if (ia < 0) throw std::logic_error("dual_word_map: image word not indexed");
    auto vb = hom_a.value_block(ia);
    IntMat block = (norm->sign * global_sign) * vb.values;
    for (Index j = 0; j < block.cols(); ++j) {
      IntVec y = hom_b.express_in_orbit(ob, IntVec(block.col(j)));
      result.block(hom_b.orbit_offset(ob), vb.gen_offset + j, y.size(), 1) = y;
    }
  }
  return AbHom(hom_a.group(), hom_b.group(), std::move(result));
}

}  // namespace cohomforge
