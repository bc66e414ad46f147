#include "gerbeforge/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gerbeforge/errors.hpp"
#include "gerbeforge/limits.hpp"

namespace gerbeforge {

FiniteGroup::FiniteGroup() {
  auto t = std::make_shared<Tables>();
  t->mult = {0};
  t->inverse = {0};
  t->element_order = {1};
  t->class_of = {0};
  t->classes = {{0}};
  t->name = "trivial";
  t_ = std::move(t);
}

FiniteGroup FiniteGroup::from_table(int order, std::vector<int> mult, std::string name,
                                    std::vector<std::string> labels) {
  if (order < 1) throw InvalidInput("group order must be positive");
  const std::size_t n = static_cast<std::size_t>(order);
  if (mult.size() != n * n) throw InvalidInput("multiplication table has wrong size");
  for (int v : mult)
    if (v < 0 || v >= order) throw InvalidInput("table entry out of range");
  auto at = [&](int a, int b) { return mult[static_cast<std::size_t>(a) * n + b]; };
  for (int a = 0; a < order; ++a)
    if (at(0, a) != a || at(a, 0) != a) throw InvalidInput("element 0 is not a two-sided identity");
  for (int a = 0; a < order; ++a) {
    std::vector<char> row(n, 0), col(n, 0);
    for (int b = 0; b < order; ++b) {
      if (row[at(a, b)]++ || col[at(b, a)]++) throw InvalidInput("table is not a Latin square");
    }
  }
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      int ab = at(a, b);
      for (int c = 0; c < order; ++c)
        if (at(ab, c) != at(a, at(b, c))) throw InvalidInput("table is not associative");
    }

  auto t = std::make_shared<Tables>();
  t->mult = std::move(mult);
  t->name = std::move(name);
  t->labels = std::move(labels);
  if (!t->labels.empty() && t->labels.size() != n) throw InvalidInput("label count mismatch");
  t->inverse.assign(n, 0);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      if (t->mult[static_cast<std::size_t>(a) * n + b] == 0) t->inverse[a] = b;
  t->element_order.assign(n, 1);
  t->exponent = 1;
  for (int a = 0; a < order; ++a) {
    int k = 1, x = a;
    while (x != 0) {
      x = t->mult[static_cast<std::size_t>(x) * n + a];
      ++k;
    }
    t->element_order[a] = k;
    t->exponent = std::lcm(t->exponent, k);
  }
  t->abelian = true;
  for (int a = 0; a < order && t->abelian; ++a)
    for (int b = 0; b < order; ++b)
      if (t->mult[static_cast<std::size_t>(a) * n + b] != t->mult[static_cast<std::size_t>(b) * n + a]) {
        t->abelian = false;
        break;
      }
  t->class_of.assign(n, -1);
  for (int a = 0; a < order; ++a) {
    if (t->class_of[a] >= 0) continue;
    std::set<int> cls;
    for (int g = 0; g < order; ++g) {
      int ga = t->mult[static_cast<std::size_t>(g) * n + a];
      cls.insert(t->mult[static_cast<std::size_t>(ga) * n + t->inverse[g]]);
    }
    int idx = static_cast<int>(t->classes.size());
    for (int c : cls) t->class_of[c] = idx;
    t->classes.emplace_back(cls.begin(), cls.end());
  }

  FiniteGroup g;
  g.n_ = order;
  g.t_ = std::move(t);
  return g;
}

int FiniteGroup::power(int g, long long k) const {
  long long o = element_order(g);
  k %= o;
  if (k < 0) k += o;
  int x = 0;
  for (long long i = 0; i < k; ++i) x = mul(x, g);
  return x;
}

std::string FiniteGroup::label(int g) const {
  if (!t_->labels.empty()) return t_->labels[g];
  return std::to_string(g);
}

bool GroupHom::is_homomorphism() const {
  if (static_cast<int>(image.size()) != source.order()) return false;
  if (image[0] != 0) return false;
  for (int a = 0; a < source.order(); ++a)
    for (int b = 0; b < source.order(); ++b)
      if (image[source.mul(a, b)] != target.mul(image[a], image[b])) return false;
  return true;
}

bool GroupAction::is_valid() const {
  if (set_size < 1 || table.size() != static_cast<std::size_t>(group.order()) * set_size) return false;
  for (int x = 0; x < set_size; ++x)
    if (act(0, x) != x) return false;
  for (int g = 0; g < group.order(); ++g)
    for (int h = 0; h < group.order(); ++h)
      for (int x = 0; x < set_size; ++x)
        if (act(g, act(h, x)) != act(group.mul(g, h), x)) return false;
  return true;
}

GroupAction GroupAction::trivial(const FiniteGroup& g, int points) {
  GroupAction a;
  a.group = g;
  a.set_size = points;
  a.table.resize(static_cast<std::size_t>(g.order()) * points);
  for (int q = 0; q < g.order(); ++q)
    for (int x = 0; x < points; ++x) a.table[static_cast<std::size_t>(q) * points + x] = x;
  return a;
}

GroupAction GroupAction::from_images(const FiniteGroup& g, int points, std::vector<int> table) {
  GroupAction a;
  a.group = g;
  a.set_size = points;
  a.table = std::move(table);
  if (!a.is_valid()) throw InvalidInput("not a group action");
  return a;
}

bool SubgroupDatum::contains(int g) const { return std::binary_search(members.begin(), members.end(), g); }

int SubgroupDatum::index_of(int g) const {
  auto it = std::lower_bound(members.begin(), members.end(), g);
  if (it == members.end() || *it != g) return -1;
  return static_cast<int>(it - members.begin());
}

SubgroupDatum make_subgroup(const FiniteGroup& g, std::vector<int> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  SubgroupDatum k{g, std::move(members), false};
  if (k.members.empty() || k.members[0] != 0) throw InvalidInput("subgroup must contain the identity");
  for (int a : k.members) {
    if (a < 0 || a >= g.order()) throw InvalidInput("subgroup element out of range");
    if (!k.contains(g.inv(a))) throw InvalidInput("subset not closed under inverses");
    for (int b : k.members)
      if (!k.contains(g.mul(a, b))) throw InvalidInput("subset not closed under multiplication");
  }
  k.is_normal = true;
  for (int x = 0; x < g.order() && k.is_normal; ++x)
    for (int a : k.members)
      if (!k.contains(g.conj(x, a))) {
        k.is_normal = false;
        break;
      }
  return k;
}

SubgroupDatum generated_subgroup(const FiniteGroup& g, const std::vector<int>& generators) {
  std::set<int> seen{0};
  std::deque<int> todo{0};
  while (!todo.empty()) {
    int x = todo.front();
    todo.pop_front();
    for (int s : generators) {
      int y = g.mul(x, s);
      if (seen.insert(y).second) todo.push_back(y);
    }
  }
  return make_subgroup(g, std::vector<int>(seen.begin(), seen.end()));
}

SubgroupDatum center(const FiniteGroup& g) {
  std::vector<int> z;
  for (int a = 0; a < g.order(); ++a) {
    bool central = true;
    for (int b = 0; b < g.order() && central; ++b) central = g.mul(a, b) == g.mul(b, a);
    if (central) z.push_back(a);
  }
  return make_subgroup(g, z);
}

FiniteGroup subgroup_group(const SubgroupDatum& k) {
  const int n = k.order();
  std::vector<int> mult(static_cast<std::size_t>(n) * n);
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) {
    labels.push_back(k.parent.label(k.members[i]));
    for (int j = 0; j < n; ++j)
      mult[static_cast<std::size_t>(i) * n + j] = k.index_of(k.parent.mul(k.members[i], k.members[j]));
  }
  return FiniteGroup::from_table(n, std::move(mult), k.parent.name() + "/sub", std::move(labels));
}

QuotientData quotient_with_section(const FiniteGroup& g, const SubgroupDatum& k) {
  if (!k.is_normal) throw InvalidInput("quotient requires a normal subgroup");
  if (!k.parent.same_table(g)) throw InvalidInput("subgroup belongs to a different group");
  QuotientData out;
  std::vector<int> coset_of(g.order(), -1);
  for (int x = 0; x < g.order(); ++x) {
    if (coset_of[x] >= 0) continue;
    std::vector<int> c;
    for (int a : k.members) c.push_back(g.mul(x, a));
    std::sort(c.begin(), c.end());
    int idx = static_cast<int>(out.cosets.size());
    for (int y : c) coset_of[y] = idx;
    out.section.push_back(c.front());
    out.cosets.push_back(std::move(c));
  }
  const int m = static_cast<int>(out.cosets.size());
  std::vector<int> mult(static_cast<std::size_t>(m) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      mult[static_cast<std::size_t>(a) * m + b] = coset_of[g.mul(out.section[a], out.section[b])];
  std::vector<std::string> labels;
  for (int a = 0; a < m; ++a) labels.push_back("[" + g.label(out.section[a]) + "]");
  out.quotient = FiniteGroup::from_table(m, std::move(mult), g.name() + "/K", std::move(labels));
  out.proj = GroupHom{g, out.quotient, coset_of};
  out.cocycle.resize(static_cast<std::size_t>(m) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      int prod = g.mul(out.section[a], out.section[b]);
      out.cocycle[static_cast<std::size_t>(a) * m + b] =
          g.mul(prod, g.inv(out.section[out.quotient.mul(a, b)]));
    }
  return out;
}

std::vector<Orbit> act_orbits(const GroupAction& a) {
  std::vector<Orbit> out;
  std::vector<char> seen(a.set_size, 0);
  for (int x = 0; x < a.set_size; ++x) {
    if (seen[x]) continue;
    std::set<int> pts;
    for (int g = 0; g < a.group.order(); ++g) pts.insert(a.act(g, x));
    for (int p : pts) seen[p] = 1;
    std::vector<int> stab;
    for (int g = 0; g < a.group.order(); ++g)
      if (a.act(g, x) == x) stab.push_back(g);
    out.push_back(Orbit{std::vector<int>(pts.begin(), pts.end()), x, make_subgroup(a.group, stab)});
  }
  return out;
}

GroupAction coset_action(const FiniteGroup& g, const SubgroupDatum& h) {
  if (!h.parent.same_table(g)) throw InvalidInput("subgroup of another group");
  std::vector<int> coset_of(static_cast<std::size_t>(g.order()), -1), rep;
  for (int x = 0; x < g.order(); ++x) {
    if (coset_of[static_cast<std::size_t>(x)] >= 0) continue;
    for (int m : h.members) coset_of[static_cast<std::size_t>(g.mul(x, m))] = static_cast<int>(rep.size());
    rep.push_back(x);
  }
  const int n = static_cast<int>(rep.size());
  std::vector<int> table(static_cast<std::size_t>(g.order()) * n);
  for (int q = 0; q < g.order(); ++q)
    for (int c = 0; c < n; ++c) table[static_cast<std::size_t>(q) * n + c] = coset_of[static_cast<std::size_t>(g.mul(q, rep[static_cast<std::size_t>(c)]))];
  return GroupAction::from_images(g, n, std::move(table));
}

GroupAction regular_action(const FiniteGroup& g) { return coset_action(g, make_subgroup(g, {0})); }

GroupAction conj_band(const FiniteGroup& g, const SubgroupDatum& k) {
  QuotientData qd = quotient_with_section(g, k);
  FiniteGroup kg = subgroup_group(k);
  const int nc = static_cast<int>(kg.classes().size());
  std::vector<int> table(static_cast<std::size_t>(qd.quotient.order()) * nc);
  for (int q = 0; q < qd.quotient.order(); ++q)
    for (int c = 0; c < nc; ++c) {
      int rep = k.members[kg.classes()[c][0]];
      int img = g.conj(qd.section[q], rep);
      table[static_cast<std::size_t>(q) * nc + c] = kg.class_of(k.index_of(img));
    }
  return GroupAction::from_images(qd.quotient, nc, std::move(table));
}

std::vector<int> generating_set(const FiniteGroup& g) {
  std::vector<int> gens;
  std::vector<int> current{0};
  while (static_cast<int>(current.size()) < g.order()) {
    int best = -1;
    std::size_t best_size = 0;
    for (int x = 1; x < g.order(); ++x) {
      if (std::binary_search(current.begin(), current.end(), x)) continue;
      auto trial = gens;
      trial.push_back(x);
      std::size_t sz = generated_subgroup(g, trial).members.size();
      if (sz > best_size) {
        best_size = sz;
        best = x;
      }
    }
    gens.push_back(best);
    current = generated_subgroup(g, gens).members;
  }
  return gens;
}

namespace {

// Every element written as a word: element = via[element] * generator, built breadth first.
struct WordTree {
  std::vector<int> parent, gen;
  std::vector<int> order;  // BFS order
};

WordTree word_tree(const FiniteGroup& g, const std::vector<int>& gens) {
  WordTree w;
  w.parent.assign(g.order(), -1);
  w.gen.assign(g.order(), -1);
  std::vector<char> seen(g.order(), 0);
  seen[0] = 1;
  std::deque<int> todo{0};
  while (!todo.empty()) {
    int x = todo.front();
    todo.pop_front();
    w.order.push_back(x);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      int y = g.mul(x, gens[i]);
      if (!seen[y]) {
        seen[y] = 1;
        w.parent[y] = x;
        w.gen[y] = static_cast<int>(i);
        todo.push_back(y);
      }
    }
  }
  return w;
}

// All homomorphisms a -> b that are bijections, determined by generator images.
void search_isos(const FiniteGroup& a, const FiniteGroup& b, const std::vector<int>& gens, const WordTree& tree,
                 std::vector<int>& images, std::vector<std::vector<int>>& out, bool first_only) {
  if (first_only && !out.empty()) return;
  if (images.size() == gens.size()) {
    std::vector<int> map(a.order(), -1);
    map[0] = 0;
    for (int x : tree.order)
      if (x != 0) map[x] = b.mul(map[tree.parent[x]], images[tree.gen[x]]);
    std::vector<char> hit(b.order(), 0);
    for (int x = 0; x < a.order(); ++x) {
      if (hit[map[x]]) return;
      hit[map[x]] = 1;
    }
    for (int x = 0; x < a.order(); ++x)
      for (int y = 0; y < a.order(); ++y)
        if (map[a.mul(x, y)] != b.mul(map[x], map[y])) return;
    out.push_back(std::move(map));
    return;
  }
  int g = gens[images.size()];
  for (int y = 0; y < b.order(); ++y) {
    if (b.element_order(y) != a.element_order(g)) continue;
    images.push_back(y);
    search_isos(a, b, gens, tree, images, out, first_only);
    images.pop_back();
  }
}

}  // namespace

AutomorphismGroup automorphism_group(const FiniteGroup& g) {
  if (g.order() > limits().max_automorphism_order)
    throw CapExceeded("automorphism search limited to order " + std::to_string(limits().max_automorphism_order));
  auto gens = generating_set(g);
  auto tree = word_tree(g, gens);
  std::vector<int> images;
  std::vector<std::vector<int>> maps;
  search_isos(g, g, gens, tree, images, maps, false);
  std::sort(maps.begin(), maps.end());
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < maps.size(); ++i) index[maps[i]] = static_cast<int>(i);
  const int n = static_cast<int>(maps.size());
  std::vector<int> mult(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<int> comp(g.order());
      for (int x = 0; x < g.order(); ++x) comp[x] = maps[i][maps[j][x]];
      mult[static_cast<std::size_t>(i) * n + j] = index.at(comp);
    }
  return AutomorphismGroup{FiniteGroup::from_table(n, std::move(mult), "Aut(" + g.name() + ")"), std::move(maps)};
}

std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() != b.order() || a.is_abelian() != b.is_abelian() ||
      a.classes().size() != b.classes().size())
    return std::nullopt;
  auto gens = generating_set(a);
  auto tree = word_tree(a, gens);
  std::vector<int> images;
  std::vector<std::vector<int>> maps;
  search_isos(a, b, gens, tree, images, maps, true);
  if (maps.empty()) return std::nullopt;
  return maps.front();
}

FiniteGroup cyclic_group(int n) {
  if (n < 1) throw InvalidInput("cyclic order must be positive");
  std::vector<int> mult(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mult[static_cast<std::size_t>(i) * n + j] = (i + j) % n;
  return FiniteGroup::from_table(n, std::move(mult), "cyclic " + std::to_string(n));
}

FiniteGroup dihedral_group(int n) {
  if (n < 1) throw InvalidInput("dihedral parameter must be positive");
  // index j*n + i  <->  r^i s^j
  const int order = 2 * n;
  std::vector<int> mult(static_cast<std::size_t>(order) * order);
  std::vector<std::string> labels;
  for (int x = 0; x < order; ++x) {
    int i = x % n, j = x / n;
    labels.push_back((i ? "r" + std::to_string(i) : std::string(j ? "" : "e")) + (j ? "s" : ""));
    for (int y = 0; y < order; ++y) {
      int k = y % n, l = y / n;
      int rot = ((i + (j ? -k : k)) % n + n) % n;
      mult[static_cast<std::size_t>(x) * order + y] = ((j + l) % 2) * n + rot;
    }
  }
  return FiniteGroup::from_table(order, std::move(mult), "dihedral " + std::to_string(n), std::move(labels));
}

FiniteGroup quaternion_group() {
  // index b*4 + a  <->  x^a y^b with x^4 = 1, y^2 = x^2, y x y^-1 = x^-1
  std::vector<int> mult(64);
  const char* names[] = {"1", "i", "-1", "-i", "j", "k", "-j", "-k"};
  for (int u = 0; u < 8; ++u)
    for (int v = 0; v < 8; ++v) {
      int a = u % 4, b = u / 4, c = v % 4, d = v / 4;
      int e = a + (b ? -c : c) + (b && d ? 2 : 0);
      e = ((e % 4) + 4) % 4;
      mult[u * 8 + v] = ((b + d) % 2) * 4 + e;
    }
  // with x = i and y = j: x y = k, x^2 y = -j, x^3 y = -k
  std::vector<std::string> labels(names, names + 8);
  return FiniteGroup::from_table(8, std::move(mult), "quaternion8", std::move(labels));
}

namespace {

FiniteGroup from_permutation_list(std::vector<std::vector<int>> perms, const std::string& name) {
  std::sort(perms.begin(), perms.end());
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);
  const int n = static_cast<int>(perms.size());
  const std::size_t d = perms.front().size();
  std::vector<int> mult(static_cast<std::size_t>(n) * n);
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) {
    std::string l = "(";
    for (std::size_t p = 0; p < d; ++p) l += (p ? " " : "") + std::to_string(perms[i][p]);
    labels.push_back(l + ")");
    for (int j = 0; j < n; ++j) {
      // (a b)(x) = a(b(x)): apply right factor first.
      std::vector<int> c(d);
      for (std::size_t p = 0; p < d; ++p) c[p] = perms[i][perms[j][p]];
      auto it = index.find(c);
      if (it == index.end()) throw InvalidInput("permutation set not closed");
      mult[static_cast<std::size_t>(i) * n + j] = it->second;
    }
  }
  return FiniteGroup::from_table(n, std::move(mult), name, std::move(labels));
}

}  // namespace

FiniteGroup symmetric_group(int n) {
  if (n < 1 || n > 4) throw InvalidInput("sym n supported for 1 <= n <= 4");
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> perms;
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return from_permutation_list(perms, "sym " + std::to_string(n));
}

FiniteGroup alternating4_group() {
  std::vector<int> p{0, 1, 2, 3};
  std::vector<std::vector<int>> perms;
  do {
    int inv = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) inv += p[i] > p[j];
    if (inv % 2 == 0) perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return from_permutation_list(perms, "alt4");
}

FiniteGroup abelian_group(const std::vector<int>& factors) {
  int order = 1;
  for (int f : factors) {
    if (f < 1) throw InvalidInput("abelian factors must be positive");
    order *= f;
    if (order > limits().max_group_order) throw CapExceeded("group order above cap");
  }
  // mixed radix: first factor is the fastest digit
  auto digits = [&](int x) {
    std::vector<int> d;
    for (int f : factors) {
      d.push_back(x % f);
      x /= f;
    }
    return d;
  };
  std::vector<int> mult(static_cast<std::size_t>(order) * order);
  std::vector<std::string> labels;
  for (int x = 0; x < order; ++x) {
    auto dx = digits(x);
    std::string l = "(";
    for (std::size_t i = 0; i < dx.size(); ++i) l += (i ? "," : "") + std::to_string(dx[i]);
    labels.push_back(l + ")");
    for (int y = 0; y < order; ++y) {
      auto dy = digits(y);
      int z = 0, base = 1;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        z += ((dx[i] + dy[i]) % factors[i]) * base;
        base *= factors[i];
      }
      mult[static_cast<std::size_t>(x) * order + y] = z;
    }
  }
  std::string name = "abelian";
  for (int f : factors) name += " " + std::to_string(f);
  return FiniteGroup::from_table(order, std::move(mult), name, std::move(labels));
}

FiniteGroup elementary_abelian_group(int p, int k) {
  if (p < 2 || k < 0) throw InvalidInput("elementary-abelian needs prime p and k >= 0");
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) throw InvalidInput("elementary-abelian needs a prime");
  FiniteGroup g = abelian_group(std::vector<int>(k, p));
  return FiniteGroup::from_table(g.order(), g.table(), "elementary-abelian " + std::to_string(p) + "^" +
                                 std::to_string(k), g.labels());
}

FiniteGroup heisenberg_group(int p) {
  if (p != 3) throw InvalidInput("heisenberg catalog entry supports p = 3");
  const int n = p * p * p;
  // index a + p b + p^2 c  <->  upper unitriangular [[1,a,c],[0,1,b],[0,0,1]]
  std::vector<int> mult(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int a = x % p, b = (x / p) % p, c = x / (p * p);
      int a2 = y % p, b2 = (y / p) % p, c2 = y / (p * p);
      int z = (a + a2) % p + p * ((b + b2) % p) + p * p * ((c + c2 + a * b2) % p);
      mult[static_cast<std::size_t>(x) * n + y] = z;
    }
  return FiniteGroup::from_table(n, std::move(mult), "heisenberg 3");
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int n = a.order() * b.order();
  if (n > limits().max_group_order) throw CapExceeded("group order above cap");
  // index ia + |A| ib
  std::vector<int> mult(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      mult[static_cast<std::size_t>(x) * n + y] =
          a.mul(x % a.order(), y % a.order()) + a.order() * b.mul(x / a.order(), y / a.order());
  return FiniteGroup::from_table(n, std::move(mult), a.name() + " x " + b.name());
}

FiniteGroup from_permutations(int degree, const std::vector<std::vector<int>>& generators) {
  if (degree < 1) throw InvalidInput("permutation degree must be positive");
  for (const auto& g : generators) {
    if (static_cast<int>(g.size()) != degree) throw InvalidInput("generator has wrong degree");
    std::vector<int> s = g;
    std::sort(s.begin(), s.end());
    for (int i = 0; i < degree; ++i)
      if (s[i] != i) throw InvalidInput("generator is not a permutation");
  }
  std::vector<int> id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::set<std::vector<int>> seen{id};
  std::deque<std::vector<int>> todo{id};
  while (!todo.empty()) {
    auto x = todo.front();
    todo.pop_front();
    for (const auto& g : generators) {
      std::vector<int> y(degree);
      for (int p = 0; p < degree; ++p) y[p] = g[x[p]];
      if (seen.insert(y).second) {
        if (static_cast<int>(seen.size()) > limits().max_group_order)
          throw CapExceeded("generator closure exceeds max order " + std::to_string(limits().max_group_order));
        todo.push_back(y);
      }
    }
  }
  return from_permutation_list(std::vector<std::vector<int>>(seen.begin(), seen.end()), "permutation group");
}

namespace {

std::vector<int> parse_ints(std::istringstream& in) {
  std::vector<int> out;
  std::string tok;
  while (in >> tok) {
    for (char& c : tok)
      if (c == '^' || c == ',' || c == 'x') c = ' ';
    std::istringstream t(tok);
    int v;
    while (t >> v) out.push_back(v);
  }
  return out;
}

FiniteGroup load_catalog(const std::string& text) {
  std::istringstream in(text);
  std::string name;
  in >> name;
  auto args = parse_ints(in);
  auto need = [&](std::size_t k) {
    if (args.size() != k) throw InvalidInput("catalog entry '" + name + "' expects " + std::to_string(k) +
                                             " parameter(s)");
  };
  FiniteGroup g;
  if (name == "trivial") {
    need(0);
  } else if (name == "cyclic") {
    need(1);
    g = cyclic_group(args[0]);
  } else if (name == "dihedral") {
    need(1);
    g = dihedral_group(args[0]);
  } else if (name == "quaternion8") {
    need(0);
    g = quaternion_group();
  } else if (name == "sym") {
    need(1);
    g = symmetric_group(args[0]);
  } else if (name == "alt4") {
    need(0);
    g = alternating4_group();
  } else if (name == "elementary-abelian") {
    need(2);
    g = elementary_abelian_group(args[0], args[1]);
  } else if (name == "heisenberg") {
    need(1);
    g = heisenberg_group(args[0]);
  } else if (name == "abelian") {
    g = abelian_group(args);
  } else {
    throw InvalidInput("unknown catalog group '" + name + "'");
  }
  if (g.order() > limits().max_group_order) throw CapExceeded("group order above cap");
  return g;
}

}  // namespace

FiniteGroup load_group(const std::string& spec) {
  std::string s = spec;
  auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw InvalidInput("empty group spec");
  s = s.substr(first);
  if (s[0] != '{') {
    if (s.rfind("catalog:", 0) == 0) s = s.substr(8);
    return load_catalog(s);
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(s);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("group spec is not valid JSON: ") + e.what());
  }
  try {
    if (j.contains("mult")) {
      int n = j.at("order").get<int>();
      if (n > limits().max_group_order) throw CapExceeded("group order above cap");
      auto rows = j.at("mult").get<std::vector<std::vector<int>>>();
      if (static_cast<int>(rows.size()) != n) throw InvalidInput("mult must have `order` rows");
      std::vector<int> flat;
      for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != n) throw InvalidInput("mult rows must have `order` entries");
        flat.insert(flat.end(), r.begin(), r.end());
      }
      std::vector<std::string> labels;
      if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
      return FiniteGroup::from_table(n, std::move(flat), j.value("name", "table"), std::move(labels));
    }
    if (j.contains("generators")) {
      return from_permutations(j.at("degree").get<int>(), j.at("generators").get<std::vector<std::vector<int>>>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed group spec: ") + e.what());
  }
  throw InvalidInput("group spec needs `mult` or `generators`");
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> names = {"abelian d1 d2 ...", "alt4",         "cyclic n",  "dihedral n",
                                    "elementary-abelian p k", "heisenberg 3", "quaternion8", "sym n",
                                    "trivial"};
  std::sort(names.begin(), names.end());
  return names;
}

}  // namespace gerbeforge
