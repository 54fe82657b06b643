#include "cohomforge/group.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace cohomforge {

namespace {

void validate_group(const Group& g) {
  const Index n = g.order;
  if (n < 1) throw std::invalid_argument("group: order must be positive");
  if (static_cast<Index>(g.table.size()) != n * n)
    throw std::invalid_argument("group: table size mismatch");
  for (int entry : g.table)
    if (entry < 0 || entry >= n) throw std::invalid_argument("group: table entry out of range");
  for (int a = 0; a < n; ++a) {
    if (g.mul(0, a) != a || g.mul(a, 0) != a)
      throw std::invalid_argument("group: index 0 is not a two-sided identity");
  }
  for (int a = 0; a < n; ++a) {
    int inv = g.inverses[static_cast<std::size_t>(a)];
    if (inv < 0 || inv >= n || g.mul(a, inv) != 0 || g.mul(inv, a) != 0)
      throw std::invalid_argument("group: missing two-sided inverse");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
          throw std::invalid_argument("group: multiplication is not associative");
}

std::vector<int> compute_inverses(Index n, const std::vector<int>& table) {
  std::vector<int> inv(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (table[static_cast<std::size_t>(a) * n + b] == 0 &&
          table[static_cast<std::size_t>(b) * n + a] == 0)
        inv[static_cast<std::size_t>(a)] = b;
  for (int a = 0; a < n; ++a)
    if (inv[static_cast<std::size_t>(a)] < 0)
      throw std::invalid_argument("group: missing two-sided inverse");
  return inv;
}

bool is_prime(Index p) {
  if (p < 2) return false;
  for (Index d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

Group cyclic_group(Index n) {
  if (n < 1) throw std::invalid_argument("cyclic_group: order must be >= 1");
  Group g;
  g.order = n;
  g.table.resize(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.table[static_cast<std::size_t>(a) * n + b] = (a + b) % static_cast<int>(n);
  for (int a = 0; a < n; ++a) {
    if (n == 2)
      g.names.push_back(a == 0 ? "1" : "t");
    else if (a == 0)
      g.names.push_back("1");
    else if (a == 1)
      g.names.push_back("g");
    else
      g.names.push_back("g^" + std::to_string(a));
  }
  if (n % 2 == 0) {
    g.canonical_sign.resize(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) g.canonical_sign[static_cast<std::size_t>(a)] = (a % 2 == 0) ? 1 : -1;
  }
  g.spec = "C" + std::to_string(n);
  g.inverses = compute_inverses(n, g.table);
  validate_group(g);
  return g;
}

Group dihedral_group(Index n) {
  if (n < 1) throw std::invalid_argument("dihedral_group: parameter must be >= 1");
  const Index order = 2 * n;
  Group g;
  g.order = order;
  g.table.resize(static_cast<std::size_t>(order) * order);
  // element a + n*b  <->  r^a s^b;  s r = r^{-1} s
  auto idx = [n](int a, int b) { return a + static_cast<int>(n) * b; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < 2; ++d) {
          int rot = b == 0 ? (a + c) % static_cast<int>(n)
                           : ((a - c) % static_cast<int>(n) + static_cast<int>(n)) % static_cast<int>(n);
          g.table[static_cast<std::size_t>(idx(a, b)) * order + idx(c, d)] = idx(rot, (b + d) % 2);
        }
  // push order matches idx(a, b) = a + n*b
  for (int b = 0; b < 2; ++b)
    for (int a = 0; a < n; ++a) {
      std::string nm = a == 0 ? (b == 0 ? "1" : "s") : "r^" + std::to_string(a) + (b ? " s" : "");
      if (a == 1) nm = b ? "r s" : "r";
      g.names.push_back(nm);
    }
  g.canonical_sign.resize(static_cast<std::size_t>(order));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < 2; ++b) g.canonical_sign[static_cast<std::size_t>(idx(a, b))] = b == 0 ? 1 : -1;
  g.spec = "D" + std::to_string(n);
  g.inverses = compute_inverses(order, g.table);
  validate_group(g);
  return g;
}

Group symmetric_group(Index n) {
  if (n < 1) throw std::invalid_argument("symmetric_group: parameter must be >= 1");
  if (n > 5) throw std::invalid_argument("symmetric_group: n > 5 exceeds the size guard");
  std::vector<std::vector<int>> perms;
  std::vector<int> base(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) base[static_cast<std::size_t>(i)] = i;
  std::vector<int> p = base;
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  // lexicographic order puts the identity first
  const Index order = static_cast<Index>(perms.size());
  std::map<std::vector<int>, int> index_of;
  for (int i = 0; i < order; ++i) index_of[perms[static_cast<std::size_t>(i)]] = i;

  Group g;
  g.order = order;
  g.table.resize(static_cast<std::size_t>(order) * order);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      std::vector<int> comp(static_cast<std::size_t>(n));
      for (int x = 0; x < n; ++x)
        comp[static_cast<std::size_t>(x)] =
            perms[static_cast<std::size_t>(a)][static_cast<std::size_t>(
                perms[static_cast<std::size_t>(b)][static_cast<std::size_t>(x)])];
      g.table[static_cast<std::size_t>(a) * order + b] = index_of.at(comp);
    }
  g.canonical_sign.resize(static_cast<std::size_t>(order));
  for (int a = 0; a < order; ++a) {
    // parity by counting inversions
    int inversions = 0;
    const auto& perm = perms[static_cast<std::size_t>(a)];
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) ++inversions;
    g.canonical_sign[static_cast<std::size_t>(a)] = inversions % 2 == 0 ? 1 : -1;
    std::ostringstream nm;
    nm << "[";
    for (int x = 0; x < n; ++x) nm << perm[static_cast<std::size_t>(x)];
    nm << "]";
    g.names.push_back(nm.str());
  }
  g.spec = "S" + std::to_string(n);
  g.inverses = compute_inverses(order, g.table);
  validate_group(g);
  return g;
}

Group product_group(const Group& a, const Group& b) {
  Group g;
  g.order = a.order * b.order;
  g.table.resize(static_cast<std::size_t>(g.order) * g.order);
  auto idx = [&](int x, int y) { return x + static_cast<int>(a.order) * y; };
  for (int x1 = 0; x1 < a.order; ++x1)
    for (int y1 = 0; y1 < b.order; ++y1)
      for (int x2 = 0; x2 < a.order; ++x2)
        for (int y2 = 0; y2 < b.order; ++y2)
          g.table[static_cast<std::size_t>(idx(x1, y1)) * g.order + idx(x2, y2)] =
              idx(a.mul(x1, x2), b.mul(y1, y2));
  for (int y = 0; y < b.order; ++y)
    for (int x = 0; x < a.order; ++x)
      g.names.push_back("(" + a.names[static_cast<std::size_t>(x)] + "," +
                        b.names[static_cast<std::size_t>(y)] + ")");
  if (!a.canonical_sign.empty() || !b.canonical_sign.empty()) {
    g.canonical_sign.resize(static_cast<std::size_t>(g.order));
    for (int x = 0; x < a.order; ++x)
      for (int y = 0; y < b.order; ++y) {
        int sa = a.canonical_sign.empty() ? 1 : a.canonical_sign[static_cast<std::size_t>(x)];
        int sb = b.canonical_sign.empty() ? 1 : b.canonical_sign[static_cast<std::size_t>(y)];
        g.canonical_sign[static_cast<std::size_t>(idx(x, y))] = sa * sb;
      }
  }
  g.spec = a.spec + "x" + b.spec;
  g.inverses = compute_inverses(g.order, g.table);
  validate_group(g);
  return g;
}

Group group_from_table(Index order, std::vector<int> table, std::vector<std::string> names) {
  if (order < 1) throw std::invalid_argument("group: order must be positive");
  if (static_cast<Index>(table.size()) != order * order)
    throw std::invalid_argument("group: table size mismatch");
  for (int entry : table)
    if (entry < 0 || entry >= order) throw std::invalid_argument("group: table entry out of range");

  // locate the two-sided identity, then relabel it to index 0
  int identity = -1;
  for (int e = 0; e < order; ++e) {
    bool ok = true;
    for (int a = 0; a < order && ok; ++a)
      ok = table[static_cast<std::size_t>(e) * order + a] == a &&
           table[static_cast<std::size_t>(a) * order + e] == a;
    if (ok) {
      identity = e;
      break;
    }
  }
  if (identity < 0) throw std::invalid_argument("group: no two-sided identity");
  if (identity != 0) {
    std::vector<int> relabel(static_cast<std::size_t>(order));
    for (int i = 0; i < order; ++i) relabel[static_cast<std::size_t>(i)] = i;
    std::swap(relabel[0], relabel[static_cast<std::size_t>(identity)]);
    // relabel is an involution here
    std::vector<int> fresh(static_cast<std::size_t>(order) * order);
    for (int a = 0; a < order; ++a)
      for (int b = 0; b < order; ++b)
        fresh[static_cast<std::size_t>(a) * order + b] = relabel[static_cast<std::size_t>(
            table[static_cast<std::size_t>(relabel[static_cast<std::size_t>(a)]) * order +
                  relabel[static_cast<std::size_t>(b)]])];
    table = std::move(fresh);
    if (!names.empty()) {
      std::swap(names[0], names[static_cast<std::size_t>(identity)]);
    }
  }

  Group g;
  g.order = order;
  g.table = std::move(table);
  if (names.empty()) {
    for (int a = 0; a < order; ++a) g.names.push_back("e" + std::to_string(a));
  } else {
    if (static_cast<Index>(names.size()) != order)
      throw std::invalid_argument("group: names size mismatch");
    g.names = std::move(names);
  }
  g.spec = "table" + std::to_string(order);
  g.inverses = compute_inverses(order, g.table);
  validate_group(g);
  return g;
}

namespace {

Group parse_atom(const std::string& atom) {
  if (atom.size() < 2) throw std::invalid_argument("group spec: bad atom '" + atom + "'");
  char kind = atom[0];
  Index n = 0;
  for (std::size_t i = 1; i < atom.size(); ++i) {
    if (!isdigit(static_cast<unsigned char>(atom[i])))
      throw std::invalid_argument("group spec: bad atom '" + atom + "'");
    n = n * 10 + (atom[i] - '0');
  }
  switch (kind) {
    case 'C':
      return cyclic_group(n);
    case 'D':
      return dihedral_group(n);
    case 'S':
      return symmetric_group(n);
    default:
      throw std::invalid_argument("group spec: unknown kind '" + atom + "'");
  }
}

}  // namespace

Group parse_group_spec(const std::string& spec) {
  if (spec.empty()) throw std::invalid_argument("group spec: empty");
  if (spec[0] == '@') {
    std::ifstream in(spec.substr(1));
    if (!in) throw std::invalid_argument("group spec: cannot open " + spec.substr(1));
    nlohmann::json j;
    in >> j;
    Index order = j.at("order").get<Index>();
    std::vector<int> table;
    for (const auto& row : j.at("table"))
      for (const auto& entry : row) table.push_back(entry.get<int>());
    std::vector<std::string> names;
    if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
    Group g = group_from_table(order, std::move(table), std::move(names));
    g.spec = spec;
    return g;
  }
  std::vector<std::string> atoms;
  std::string cur;
  for (char c : spec) {
    if (c == 'x') {
      atoms.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  atoms.push_back(cur);
  Group g = parse_atom(atoms[0]);
  for (std::size_t i = 1; i < atoms.size(); ++i) g = product_group(g, parse_atom(atoms[i]));
  return g;
}

int element_order(const Group& g, int element) {
  if (element < 0 || element >= g.order) throw std::invalid_argument("element_order: out of range");
  int k = 1;
  int acc = element;
  while (acc != 0) {
    acc = g.mul(acc, element);
    ++k;
  }
  return k;
}

std::vector<int> solutions_of_power_equation(const Group& g, const Int& k) {
  if (sgn(k) <= 0) throw std::invalid_argument("solutions_of_power_equation: k must be >= 1");
  std::vector<int> out;
  for (int x = 0; x < g.order; ++x) {
    if (mpz_divisible_ui_p(k.get_mpz_t(), static_cast<unsigned long>(element_order(g, x))))
      out.push_back(x);
  }
  return out;
}

bool subgroup_is_valid(const Subgroup& s) {
  if (!s.parent) return false;
  if (s.elements.empty() || s.elements[0] != 0) return false;
  if (!std::is_sorted(s.elements.begin(), s.elements.end())) return false;
  std::set<int> members(s.elements.begin(), s.elements.end());
  if (members.size() != s.elements.size()) return false;
  for (int a : s.elements) {
    if (!members.count(s.parent->inverse(a))) return false;
    for (int b : s.elements)
      if (!members.count(s.parent->mul(a, b))) return false;
  }
  return true;
}

std::vector<Subgroup> cyclic_subgroups_of_order(const Group& g, Index ell) {
  if (!is_prime(ell)) throw std::invalid_argument("cyclic_subgroups_of_order: order must be prime");
  std::set<std::vector<int>> seen;
  std::vector<Subgroup> out;
  for (int x = 1; x < g.order; ++x) {
    if (element_order(g, x) != ell) continue;
    std::vector<int> elems;
    int acc = 0;
    do {
      elems.push_back(acc);
      acc = g.mul(acc, x);
    } while (acc != 0);
    std::sort(elems.begin(), elems.end());
    if (seen.insert(elems).second) {
      out.push_back(Subgroup{&g, std::move(elems)});
    }
  }
  return out;
}

Group subgroup_as_group(const Subgroup& s) {
  if (!subgroup_is_valid(s)) throw std::invalid_argument("subgroup_as_group: invalid subgroup");
  const Group& parent = *s.parent;
  const Index n = static_cast<Index>(s.elements.size());
  std::map<int, int> new_index;
  for (int i = 0; i < n; ++i) new_index[s.elements[static_cast<std::size_t>(i)]] = i;
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      table[static_cast<std::size_t>(i) * n + j] = new_index.at(
          parent.mul(s.elements[static_cast<std::size_t>(i)], s.elements[static_cast<std::size_t>(j)]));
  for (int i = 0; i < n; ++i) names.push_back(parent.names[static_cast<std::size_t>(s.elements[static_cast<std::size_t>(i)])]);
  Group g = group_from_table(n, std::move(table), std::move(names));
  g.spec = parent.spec + "<sub" + std::to_string(n) + ">";
  return g;
}

}  // namespace cohomforge
