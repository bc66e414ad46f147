#include "gerbeforge/groupoid.hpp"

#include <cmath>
#include <string>

#include "gerbeforge/errors.hpp"
#include "gerbeforge/kernels/bar.hpp"
#include "gerbeforge/limits.hpp"

namespace gerbeforge {

using kernels::mod;

ActionGroupoid build_action_groupoid(const FiniteGroup& q, const GroupAction& a) {
  if (!a.group.same_table(q)) throw InvalidInput("action is by a different group");
  if (!a.is_valid()) throw InvalidInput("invalid group action");
  return ActionGroupoid{q, a};
}

GroupoidCochain::GroupoidCochain(ActionGroupoid g, int degree, std::int64_t modulus)
    : g_(std::move(g)), degree_(degree), modulus_(modulus) {
  if (degree < 0) throw InvalidInput("negative cochain degree");
  tuples_ = ipow(static_cast<std::size_t>(g_.group.order() - 1), degree);
  values_.assign(tuples_ * static_cast<std::size_t>(g_.points()), 0);
}

long long GroupoidCochain::index(int x, std::span<const int> arrows) const {
  if (static_cast<int>(arrows.size()) != degree_) throw InvalidInput("string length differs from degree");
  if (x < 0 || x >= g_.points()) throw InvalidInput("object out of range");
  long long idx = 0;
  const long long base = g_.group.order() - 1;
  for (int q : arrows) {
    if (q == 0) return -1;
    idx = idx * base + (q - 1);
  }
  return static_cast<long long>(x) * static_cast<long long>(tuples_) + idx;
}

std::int64_t GroupoidCochain::at(int x, std::span<const int> arrows) const {
  long long i = index(x, arrows);
  return i < 0 ? 0 : values_[static_cast<std::size_t>(i)];
}

void GroupoidCochain::set(int x, std::span<const int> arrows, std::int64_t v) {
  long long i = index(x, arrows);
  if (i < 0) {
    if (mod(v, modulus_) != 0) throw InvalidInput("normalized cochain must vanish on identity arrows");
    return;
  }
  values_[static_cast<std::size_t>(i)] = mod(v, modulus_);
}

void GroupoidCochain::assign(Vec64 v) {
  if (v.size() != values_.size()) throw InvalidInput("groupoid cochain has wrong length");
  for (auto& x : v) x = mod(x, modulus_);
  values_ = std::move(v);
}

GroupoidCochain GroupoidCochain::operator+(const GroupoidCochain& o) const {
  if (o.modulus_ != modulus_ || o.degree_ != degree_) throw InvalidInput("incompatible groupoid cochains");
  GroupoidCochain r = *this;
  for (std::size_t i = 0; i < values_.size(); ++i) r.values_[i] = mod(values_[i] + o.values_[i], modulus_);
  return r;
}

GroupoidCochain GroupoidCochain::operator-(const GroupoidCochain& o) const {
  if (o.modulus_ != modulus_ || o.degree_ != degree_) throw InvalidInput("incompatible groupoid cochains");
  GroupoidCochain r = *this;
  for (std::size_t i = 0; i < values_.size(); ++i) r.values_[i] = mod(values_[i] - o.values_[i], modulus_);
  return r;
}

bool GroupoidCochain::is_zero() const {
  for (auto v : values_)
    if (v != 0) return false;
  return true;
}

nlohmann::json GroupoidCochain::to_json() const {
  nlohmann::json j;
  j["degree"] = degree_;
  j["modulus"] = modulus_;
  j["points"] = g_.points();
  j["values"] = values_;
  return j;
}

namespace {

std::vector<int> decode_tuple(std::size_t idx, int n, int order) {
  std::vector<int> t(n);
  const std::size_t base = static_cast<std::size_t>(order - 1);
  for (int i = n - 1; i >= 0; --i) {
    t[i] = static_cast<int>(idx % base) + 1;
    idx /= base;
  }
  return t;
}

int product(const FiniteGroup& g, const std::vector<int>& t) {
  int p = 0;
  for (int q : t) p = g.mul(p, q);
  return p;
}

void check_nerve(const ActionGroupoid& g, int n) {
  if (n < 1) throw InvalidInput("groupoid C^x cohomology needs degree >= 1");
  if (n > limits().max_degree) throw CapExceeded("degree above the configured cap; reduce the degree");
  const double side = std::pow(static_cast<double>(g.group.order() - 1), n + 1) * g.points();
  if (side > static_cast<double>(limits().max_matrix_side))
    throw CapExceeded("nerve complex too large (" + std::to_string(static_cast<long long>(side)) +
                      " rows); reduce the degree, the group or the set");
}

std::int64_t groupoid_modulus(const FiniteGroup& q) { return std::max<std::int64_t>(q.order(), 2); }

std::int64_t checked_rep_modulus(const FiniteGroup& q, std::int64_t m) {
  if (m < 2 || m % q.order() != 0) throw InvalidInput("representative modulus must be a multiple of |Q| and at least 2");
  return m;
}

bool is_point_functions(const AbAction& coeff, const GroupAction& a) {
  const auto& f = coeff.module.factors();
  if (f.size() != static_cast<std::size_t>(a.set_size) || f.empty()) return false;
  for (auto x : f)
    if (x != f[0]) return false;
  if (f[0] < 2) return false;
  return coeff.matrices == point_functions(a, f[0]).matrices;
}

}  // namespace

ModMatrix nerve_differential_matrix(const ActionGroupoid& g, int n, std::int64_t modulus, Execution exec) {
  return kernels::assemble_nerve_differential(g.group.order(), g.group.table().data(), g.points(),
                                              g.action.table.data(), n, modulus, exec);
}

GroupoidCochain nerve_differential_reference(const GroupoidCochain& c) {
  const auto& g = c.groupoid();
  const int n = c.degree();
  GroupoidCochain out(g, n + 1, c.modulus());
  for (int x = 0; x < g.points(); ++x)
    for (std::size_t t = 0; t < out.tuple_count(); ++t) {
      auto q = decode_tuple(t, n + 1, g.group.order());
      std::int64_t v = c.at(x, std::vector<int>(q.begin() + 1, q.end()));
      for (int k = 1; k <= n; ++k) {
        std::vector<int> s(q.begin(), q.end());
        s[k - 1] = g.group.mul(q[k - 1], q[k]);
        s.erase(s.begin() + k);
        v += (k % 2 ? -1 : 1) * c.at(x, s);
      }
      v += ((n + 1) % 2 ? -1 : 1) * c.at(g.target(q[n], x), std::vector<int>(q.begin(), q.end() - 1));
      out.set(x, q, v);
    }
  return out;
}

GroupoidCochain differential(const GroupoidCochain& c, Execution exec) {
  GroupoidCochain out(c.groupoid(), c.degree() + 1, c.modulus());
  out.assign(nerve_differential_matrix(c.groupoid(), c.degree(), c.modulus(), exec).apply(c.values()));
  return out;
}

ScalarFamily nerve_family(const ActionGroupoid& g, int degree, Execution exec) {
  check_nerve(g, degree);
  return [g, degree, exec](std::int64_t m) {
    return ScalarComplex{nerve_differential_matrix(g, degree - 1, m, exec), nerve_differential_matrix(g, degree, m, exec)};
  };
}

ScalarFamily induced_family(const GroupAction& a, int degree, Execution exec) {
  check_nerve(ActionGroupoid{a.group, a}, degree);
  return [a, degree, exec](std::int64_t m) {
    auto coeff = point_functions(a, m);
    return ScalarComplex{bar_differential_matrix(a.group, coeff, degree - 1, exec),
                         bar_differential_matrix(a.group, coeff, degree, exec)};
  };
}

GroupoidCohomology::GroupoidCohomology(ActionGroupoid g, int degree, Execution exec)
    : GroupoidCohomology(g, degree, groupoid_modulus(g.group), exec) {}

GroupoidCohomology::GroupoidCohomology(ActionGroupoid g, int degree, std::int64_t rep_modulus, Execution exec)
    : g_(std::move(g)),
      degree_(degree),
      cx_(nerve_family(g_, degree, exec), checked_rep_modulus(g_.group, rep_modulus), groupoid_modulus(g_.group), exec) {}

std::vector<GroupoidCochain> GroupoidCohomology::generators() const {
  std::vector<GroupoidCochain> out;
  for (const auto& v : cx_.generators()) {
    GroupoidCochain c(g_, degree_, cx_.modulus());
    c.assign(v);
    out.push_back(std::move(c));
  }
  return out;
}

GroupoidCochain GroupoidCohomology::representative(const Vec64& coords) const {
  GroupoidCochain c(g_, degree_, cx_.modulus());
  c.assign(cx_.representative(coords));
  return c;
}

Vec64 GroupoidCohomology::classify(const GroupoidCochain& c) const {
  if (c.degree() != degree_) throw InvalidInput("cochain degree differs from the cohomology degree");
  return cx_.classify(c.values(), c.modulus());
}

DivisibleCohomology induced_cohomology(const GroupAction& a, int degree, Execution exec) {
  const std::int64_t m = groupoid_modulus(a.group);
  return DivisibleCohomology(induced_family(a, degree, exec), m, m, exec);
}

GroupoidCochain transport(const Cochain& c, const ActionGroupoid& g) {
  if (!c.group().same_table(g.group) || !is_point_functions(c.coeff(), g.action))
    throw InvalidInput("transport needs coefficients Maps(X, mu_N) with the permutation action");
  const std::int64_t n_mod = c.coeff().module.factors()[0];
  GroupoidCochain out(g, c.degree(), n_mod);
  for (std::size_t t = 0; t < c.tuple_count(); ++t) {
    auto q = c.tuple_at(t);
    const int p = product(g.group, q);
    for (int x = 0; x < g.points(); ++x) out.set(x, q, c.at(q, static_cast<std::size_t>(g.target(p, x))));
  }
  return out;
}

Cochain transport_inverse(const GroupoidCochain& c) {
  const auto& g = c.groupoid();
  if (c.modulus() < 2) throw InvalidInput("transport needs modulus >= 2");
  Cochain out(g.group, point_functions(g.action, c.modulus()), c.degree());
  for (std::size_t t = 0; t < out.tuple_count(); ++t) {
    auto q = out.tuple_at(t);
    const int back = g.group.inv(product(g.group, q));
    Vec64 v(static_cast<std::size_t>(g.points()));
    for (int y = 0; y < g.points(); ++y) v[static_cast<std::size_t>(y)] = c.at(g.target(back, y), q);
    out.set(q, v);
  }
  return out;
}

Cochain restrict_to_point(const GroupoidCochain& c, int x, const SubgroupDatum& stabilizer) {
  const auto& g = c.groupoid();
  if (!stabilizer.parent.same_table(g.group)) throw InvalidInput("stabilizer of another group");
  for (int s : stabilizer.members)
    if (g.target(s, x) != x) throw InvalidInput("subgroup does not fix the point");
  FiniteGroup sg = subgroup_group(stabilizer);
  Cochain out(sg, roots_of_unity(sg, c.modulus()), c.degree());
  for (std::size_t t = 0; t < out.tuple_count(); ++t) {
    auto local = out.tuple_at(t);
    std::vector<int> q(local.size());
    for (std::size_t i = 0; i < local.size(); ++i) q[i] = stabilizer.members[static_cast<std::size_t>(local[i])];
    out.set(local, Vec64{c.at(x, q)});
  }
  return out;
}

GerbeDecomposer::GerbeDecomposer(ActionGroupoid g, Execution exec)
    : GerbeDecomposer(g, groupoid_modulus(g.group), exec) {}

GerbeDecomposer::GerbeDecomposer(ActionGroupoid g, std::int64_t rep_modulus, Execution exec)
    : g_(std::move(g)),
      h2_(std::make_shared<GroupoidCohomology>(g_, 2, rep_modulus, exec)),
      orbits_(act_orbits(g_.action)) {
  const std::int64_t m = h2_->modulus();
  transversal_.assign(static_cast<std::size_t>(g_.points()), -1);
  orbit_of_.assign(static_cast<std::size_t>(g_.points()), -1);
  for (std::size_t j = 0; j < orbits_.size(); ++j) {
    stab_groups_.push_back(subgroup_group(orbits_[j].stabilizer));
    stab_h2_.emplace_back(stab_groups_.back(), 2, m, exec);
    for (int q = 0; q < g_.group.order(); ++q) {
      const int y = g_.target(q, orbits_[j].representative);
      if (transversal_[static_cast<std::size_t>(y)] < 0) {
        transversal_[static_cast<std::size_t>(y)] = q;
        orbit_of_[static_cast<std::size_t>(y)] = static_cast<int>(j);
      }
    }
  }
}

std::vector<Vec64> GerbeDecomposer::decompose(const Vec64& coords) const {
  auto rep = h2_->representative(coords);
  std::vector<Vec64> out;
  for (std::size_t j = 0; j < orbits_.size(); ++j)
    out.push_back(stab_h2_[j].classify(restrict_to_point(rep, orbits_[j].representative, orbits_[j].stabilizer)));
  return out;
}

GroupoidCochain GerbeDecomposer::spread(std::size_t orbit, const Cochain& cocycle) const {
  const auto& stab = orbits_.at(orbit).stabilizer;
  if (!cocycle.group().same_table(stab_groups_[orbit])) throw InvalidInput("cocycle is not on the stabilizer");
  const int n = cocycle.degree();
  const FiniteGroup& q = g_.group;
  GroupoidCochain out(g_, n, cocycle.coeff().module.factors()[0]);
  for (int y : orbits_[orbit].points)
    for (std::size_t t = 0; t < out.tuple_count(); ++t) {
      auto arrows = decode_tuple(t, n, q.order());
      std::vector<int> local(static_cast<std::size_t>(n));
      int src = y;
      for (int k = n - 1; k >= 0; --k) {
        const int a = arrows[static_cast<std::size_t>(k)], dst = g_.target(a, src);
        const int f = q.mul(q.mul(q.inv(transversal_[static_cast<std::size_t>(dst)]), a), transversal_[static_cast<std::size_t>(src)]);
        local[static_cast<std::size_t>(k)] = stab.index_of(f);
        src = dst;
      }
      out.set(y, arrows, cocycle.at(local, 0));
    }
  return out;
}

Vec64 GerbeDecomposer::assemble(const std::vector<Vec64>& orbit_coords) const {
  if (orbit_coords.size() != orbits_.size()) throw InvalidInput("one class per orbit expected");
  GroupoidCochain total(g_, 2, h2_->modulus());
  for (std::size_t j = 0; j < orbits_.size(); ++j) total = total + spread(j, stab_h2_[j].representative(orbit_coords[j]));
  return h2_->classify(total);
}

GerbeDatum GerbeDecomposer::datum(const Vec64& coords) const {
  GerbeDatum d{g_, h2_->modulus(), h2_->group(), h2_->group().reduce(coords), {}};
  auto parts = decompose(coords);
  for (std::size_t j = 0; j < orbits_.size(); ++j)
    d.orbit_decomposition.push_back(
        OrbitEntry{orbits_[j].representative, orbits_[j].stabilizer, stab_groups_[j], stab_h2_[j].group(), parts[j]});
  return d;
}

nlohmann::json GerbeDatum::to_json() const {
  nlohmann::json j;
  j["groupoid"] = {{"group", groupoid.group.name()},
                   {"order", groupoid.group.order()},
                   {"points", groupoid.points()},
                   {"action", groupoid.action.table}};
  j["modulus"] = rep_modulus;
  j["h2"] = h2.factors();
  j["class"] = coords;
  auto list = nlohmann::json::array();
  for (const auto& e : orbit_decomposition)
    list.push_back({{"representative", e.representative},
                    {"stabilizer", e.stabilizer.members},
                    {"h2", e.h2.factors()},
                    {"class", e.coords}});
  j["decomposition"] = list;
  return j;
}

std::size_t regular_class_count(const Cochain& phi) {
  if (phi.degree() != 2 || phi.rank() != 1) throw InvalidInput("regular classes need a scalar 2-cocycle");
  const FiniteGroup& g = phi.group();
  const std::int64_t m = phi.coeff().module.factors().empty() ? 1 : phi.coeff().module.factors()[0];
  std::size_t count = 0;
  for (const auto& cls : g.classes()) {
    const int c = cls.front();
    bool regular = true;
    for (int z = 0; z < g.order() && regular; ++z) {
      if (g.mul(c, z) != g.mul(z, c)) continue;
      const int cz[2] = {c, z}, zc[2] = {z, c};
      regular = mod(phi.at(cz, 0) - phi.at(zc, 0), m) == 0;
    }
    if (regular) ++count;
  }
  return count;
}

TwistedCount twisted_rep_count(const GerbeDecomposer& d, const Vec64& coords) {
  TwistedCount out;
  auto parts = d.decompose(coords);
  for (std::size_t j = 0; j < parts.size(); ++j) {
    const std::size_t n = regular_class_count(d.stabilizer_cohomology(j).representative(parts[j]));
    out.per_orbit.push_back(n);
    out.total += n;
  }
  return out;
}

}  // namespace gerbeforge
