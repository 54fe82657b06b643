#include "cohomforge/gmodule.hpp"

#include <fstream>

#include "json.hpp"

namespace cohomforge {

GModule::GModule(GroupPtr group, PresentedAb carrier, std::vector<IntMat> action,
                 std::string spec, bool validate)
    : group_(std::move(group)),
      carrier_(std::move(carrier)),
      action_(std::move(action)),
      spec_(std::move(spec)) {
  if (!group_) throw std::invalid_argument("GModule: null group");
  if (static_cast<Index>(action_.size()) != group_->order)
    throw std::invalid_argument("GModule: one action matrix per group element required");
  for (const auto& m : action_)
    if (m.rows() != carrier_.gens || m.cols() != carrier_.gens)
      throw std::invalid_argument("GModule: action matrix shape mismatch");
  if (validate) {
    std::vector<AbHom> homs;
    homs.reserve(action_.size());
    for (const auto& m : action_) homs.emplace_back(carrier_, carrier_, m);  // relation check
    if (!hom_equal(homs[0], AbHom::identity(carrier_)))
      throw std::invalid_argument("GModule: identity must act as the identity");
    for (int a = 0; a < group_->order; ++a)
      for (int b = 0; b < group_->order; ++b) {
        int ab = group_->mul(a, b);
        if (!hom_equal(compose(homs[static_cast<std::size_t>(a)], homs[static_cast<std::size_t>(b)]),
                       homs[static_cast<std::size_t>(ab)]))
          throw std::invalid_argument("GModule: action is not multiplicative");
      }
  }
}

GModule trivial_module(GroupPtr g, const Int& k) {
  PresentedAb carrier = PresentedAb::cyclic(k);
  std::vector<IntMat> action(static_cast<std::size_t>(g->order), IntMat::Identity(1, 1));
  std::string spec = is_zero(k) ? "Z" : (k == 2 ? "F2" : "Z/" + to_string(k));
  return GModule(std::move(g), std::move(carrier), std::move(action), std::move(spec), false);
}

GModule sign_module(GroupPtr g, std::vector<int> chi, const Int& k) {
  if (static_cast<Index>(chi.size()) != g->order)
    throw std::invalid_argument("sign_module: character size mismatch");
  for (int a = 0; a < g->order; ++a)
    for (int b = 0; b < g->order; ++b)
      if (chi[static_cast<std::size_t>(a)] * chi[static_cast<std::size_t>(b)] !=
          chi[static_cast<std::size_t>(g->mul(a, b))])
        throw std::invalid_argument("sign_module: not a character");
  PresentedAb carrier = PresentedAb::cyclic(k);
  std::vector<IntMat> action;
  for (int a = 0; a < g->order; ++a) {
    IntMat m(1, 1);
    m(0, 0) = chi[static_cast<std::size_t>(a)];
    action.push_back(std::move(m));
  }
  return GModule(std::move(g), std::move(carrier), std::move(action), "Zsign", false);
}

GModule group_ring_module(GroupPtr g) {
  const Index n = g->order;
  PresentedAb carrier = PresentedAb::free_of_rank(n);
  std::vector<IntMat> action;
  for (int a = 0; a < n; ++a) {
    IntMat m = IntMat::Zero(n, n);
    for (int b = 0; b < n; ++b) m(g->mul(a, b), b) = 1;
    action.push_back(std::move(m));
  }
  return GModule(std::move(g), std::move(carrier), std::move(action), "ZG", false);
}

GModule parse_module_spec(GroupPtr g, const std::string& spec) {
  if (spec.empty()) throw std::invalid_argument("module spec: empty");
  if (spec == "Z") return trivial_module(std::move(g), 0);
  if (spec == "F2") return trivial_module(std::move(g), 2);
  if (spec == "ZG") return group_ring_module(std::move(g));
  if (spec == "Zsign") {
    if (g->canonical_sign.empty())
      throw std::invalid_argument(
          "module spec: group " + g->spec +
          " carries no canonical sign character; use @file.json with explicit matrices");
    std::vector<int> chi = g->canonical_sign;
    return sign_module(std::move(g), std::move(chi));
  }
  if (spec.rfind("Z/", 0) == 0) {
    Int k(spec.substr(2));
    if (k < 1) throw std::invalid_argument("module spec: bad modulus in " + spec);
    return trivial_module(std::move(g), k);
  }
  if (spec[0] == '@') {
    std::ifstream in(spec.substr(1));
    if (!in) throw std::invalid_argument("module spec: cannot open " + spec.substr(1));
    nlohmann::json j;
    in >> j;
    Index gens = j.at("gens").get<Index>();
    IntMat rels = IntMat::Zero(gens, 0);
    if (j.contains("relations")) {
      const auto& cols = j.at("relations");
      rels = IntMat::Zero(gens, static_cast<Index>(cols.size()));
      Index c = 0;
      for (const auto& col : cols) {
        if (static_cast<Index>(col.size()) != gens)
          throw std::invalid_argument("module spec: relation column length mismatch");
        Index r = 0;
        for (const auto& entry : col) rels(r++, c) = Int(entry.get<long>());
        ++c;
      }
    }
    std::vector<IntMat> action;
    for (const auto& mat : j.at("action")) {
      IntMat m(gens, gens);
      Index r = 0;
      for (const auto& row : mat) {
        Index c = 0;
        for (const auto& entry : row) m(r, c++) = Int(entry.get<long>());
        ++r;
      }
      action.push_back(std::move(m));
    }
    return GModule(std::move(g), PresentedAb(gens, std::move(rels)), std::move(action), spec, true);
  }
  throw std::invalid_argument("module spec: cannot parse '" + spec + "'");
}

GModule restrict_module(const GModule& m, const Subgroup& s) {
  if (s.parent != &m.group() && s.parent->table != m.group().table)
    throw std::invalid_argument("restrict_module: subgroup of a different group");
  auto sub = std::make_shared<Group>(subgroup_as_group(s));
  std::vector<IntMat> action;
  for (int elem : s.elements) action.push_back(m.action(elem));
  return GModule(sub, m.carrier(), std::move(action), m.spec() + "|" + sub->spec, false);
}

GModule twist_by_character(const GModule& m, const std::vector<int>& chi) {
  if (static_cast<Index>(chi.size()) != m.group().order)
    throw std::invalid_argument("twist_by_character: character size mismatch");
  std::vector<IntMat> action;
  for (int a = 0; a < m.group().order; ++a) {
    IntMat t = m.action(a);
    if (chi[static_cast<std::size_t>(a)] == -1) t = -t;
    action.push_back(std::move(t));
  }
  return GModule(m.group_ptr(), m.carrier(), std::move(action), m.spec() + "~twist", false);
}

}  // namespace cohomforge
