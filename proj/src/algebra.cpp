#include "gerbeforge/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "gerbeforge/cyclotomic.hpp"
#include "gerbeforge/errors.hpp"
#include "gerbeforge/limits.hpp"

namespace gerbeforge {

using kernels::mod;

namespace {

bool same_action(const AbAction& a, const AbAction& b) {
  return a.group.same_table(b.group) && a.module == b.module && a.matrices == b.matrices;
}

void require_cocycle(const Cochain& c, const char* what) {
  if (!differential(c).is_zero()) throw InvalidInput(std::string(what) + " is not a cocycle");
}

}  // namespace

// ---- extensions ----

SubgroupDatum ExtensionDatum::kernel() const {
  std::vector<int> members = embed;
  std::sort(members.begin(), members.end());
  return make_subgroup(total, members);
}

Vec64 ExtensionDatum::kernel_coords(int t) const {
  const int na = static_cast<int>(band.module.order());
  if (t / na != 0) throw InvalidInput("element does not lie in the kernel");
  return band.module.element_at(t % na);
}

ExtensionDatum build_extension(const FiniteGroup& q, const AbAction& band, const Cochain& eta) {
  if (!band.group.same_table(q) || !band.is_valid()) throw InvalidInput("band is not a valid action of the quotient");
  if (eta.degree() != 2 || !same_action(eta.coeff(), band)) throw InvalidInput("eta must be a 2-cochain with the band as coefficients");
  require_cocycle(eta, "eta");
  const FinAbGroup& a = band.module;
  const int na = static_cast<int>(a.order()), nq = q.order(), n = na * nq;
  if (n > limits().max_group_order) throw CapExceeded("extension larger than the group-order cap");
  const auto elems = a.elements();
  std::vector<int> mult(static_cast<std::size_t>(n) * n);
  std::vector<std::string> labels(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    const int qx = x / na;
    const Vec64& ax = elems[static_cast<std::size_t>(x % na)];
    std::string l = "(";
    for (std::size_t i = 0; i < ax.size(); ++i) l += (i ? "," : "") + std::to_string(ax[i]);
    labels[static_cast<std::size_t>(x)] = l + ";" + q.label(qx) + ")";
    for (int y = 0; y < n; ++y) {
      const int qy = y / na;
      const int pair[2] = {qx, qy};
      Vec64 s = a.add(a.add(ax, band.act(qx, elems[static_cast<std::size_t>(y % na)])), eta.at(pair));
      mult[static_cast<std::size_t>(x) * n + y] = q.mul(qx, qy) * na + static_cast<int>(a.index_of(s));
    }
  }
  ExtensionDatum e{q, band, eta, FiniteGroup::from_table(n, std::move(mult), "extension", std::move(labels)), {}, {}, {}};
  for (int i = 0; i < na; ++i) e.embed.push_back(i);
  for (int x = 0; x < n; ++x) e.proj.push_back(x / na);
  for (int k = 0; k < nq; ++k) e.section.push_back(k * na);
  return e;
}

Cochain extract_cocycle(const ExtensionDatum& e) {
  auto qd = quotient_with_section(e.total, e.kernel());
  const int nq = e.quotient.order();
  std::vector<int> to_local(static_cast<std::size_t>(nq));  // Q element -> quotient index
  for (int j = 0; j < nq; ++j) to_local[static_cast<std::size_t>(e.proj[static_cast<std::size_t>(qd.section[static_cast<std::size_t>(j)])])] = j;
  Cochain f(e.quotient, e.band, 2);
  for (std::size_t t = 0; t < f.tuple_count(); ++t) {
    auto pair = f.tuple_at(t);
    const int v = qd.f(to_local[static_cast<std::size_t>(pair[0])], to_local[static_cast<std::size_t>(pair[1])]);
    f.set(pair, e.kernel_coords(v));
  }
  return f;
}

std::optional<std::vector<int>> extension_equivalence(const ExtensionDatum& x, const ExtensionDatum& y) {
  if (!x.quotient.same_table(y.quotient) || !same_action(x.band, y.band)) return std::nullopt;
  const int na = static_cast<int>(x.band.module.order()), nq = x.quotient.order(), n = na * nq;
  double space = std::pow(static_cast<double>(na), nq - 1);
  if (space > 4e6) throw CapExceeded("extension equivalence search too large");
  std::vector<int> b(static_cast<std::size_t>(nq), 0);  // b(q) as index of A; b(1) = 0
  const auto elems = x.band.module.elements();
  std::vector<int> map(static_cast<std::size_t>(n));
  while (true) {
    for (int t = 0; t < n; ++t) {
      const int q = t / na;
      Vec64 s = x.band.module.add(elems[static_cast<std::size_t>(t % na)], elems[static_cast<std::size_t>(b[static_cast<std::size_t>(q)])]);
      map[static_cast<std::size_t>(t)] = q * na + static_cast<int>(x.band.module.index_of(s));
    }
    bool hom = true;
    for (int s = 0; s < n && hom; ++s)
      for (int t = 0; t < n && hom; ++t)
        hom = map[static_cast<std::size_t>(x.total.mul(s, t))] ==
              y.total.mul(map[static_cast<std::size_t>(s)], map[static_cast<std::size_t>(t)]);
    if (hom) return map;
    int k = 1;
    while (k < nq && ++b[static_cast<std::size_t>(k)] == na) b[static_cast<std::size_t>(k++)] = 0;
    if (k >= nq) return std::nullopt;
  }
}

// ---- monomial algebras ----

bool MonomialAlgebra::is_associative() const {
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const Product& ij = product(i, j);
      for (std::size_t k = 0; k < dim; ++k) {
        const Product& jk = product(j, k);
        Product left, right;
        if (ij.index >= 0) {
          left = product(static_cast<std::size_t>(ij.index), k);
          left.exponent += ij.exponent;
        }
        if (jk.index >= 0) {
          right = product(i, static_cast<std::size_t>(jk.index));
          right.exponent += jk.exponent;
        }
        if (left.index != right.index) return false;
        if (left.index >= 0 && mod(left.exponent - right.exponent, root_order) != 0) return false;
      }
    }
  return true;
}

nlohmann::json MonomialAlgebra::to_json() const {
  nlohmann::json j;
  j["dimension"] = dim;
  j["root_order"] = root_order;
  j["basis"] = labels;
  auto triples = nlohmann::json::array();
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b) {
      const auto& p = product(a, b);
      if (p.index >= 0) triples.push_back({a, b, p.index, mod(p.exponent, root_order)});
    }
  j["products"] = triples;
  return j;
}

std::size_t center_dimension(const MonomialAlgebra& a) {
  if (a.dim > limits().max_algebra_dim) throw CapExceeded("algebra dimension above the configured cap");
  CyclotomicField field(static_cast<int>(a.root_order));
  CyclotomicEchelon ech(field, a.dim);
  for (std::size_t x = 0; x < a.dim && ech.nullity() > 0; ++x) {
    // z x - x z, one equation per output basis element
    std::map<std::size_t, CyclotomicEchelon::Row> rows;
    for (std::size_t col = 0; col < a.dim; ++col) {
      const auto& zx = a.product(col, x);
      const auto& xz = a.product(x, col);
      if (zx.index >= 0) {
        auto& e = rows[static_cast<std::size_t>(zx.index)][col];
        e = e.empty() ? field.root(zx.exponent) : field.add(e, field.root(zx.exponent));
      }
      if (xz.index >= 0) {
        auto& e = rows[static_cast<std::size_t>(xz.index)][col];
        e = e.empty() ? field.neg(field.root(xz.exponent)) : field.sub(e, field.root(xz.exponent));
      }
    }
    for (auto& [k, row] : rows) ech.add_row(std::move(row));
  }
  return ech.nullity();
}

TwistedGroupAlgebra twisted_group_algebra(const FiniteGroup& k, const Cochain& phi) {
  if (!phi.group().same_table(k) || phi.degree() != 2 || phi.rank() != 1 || !phi.coeff().is_trivial())
    throw InvalidInput("twist must be a scalar 2-cochain on the group with trivial action");
  require_cocycle(phi, "twist");
  const std::size_t n = static_cast<std::size_t>(k.order());
  MonomialAlgebra alg;
  alg.dim = n;
  alg.root_order = phi.coeff().module.factors()[0];
  alg.unit = 0;
  alg.table.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    alg.labels.push_back("u[" + k.label(static_cast<int>(i)) + "]");
    for (std::size_t j = 0; j < n; ++j) {
      const int pair[2] = {static_cast<int>(i), static_cast<int>(j)};
      alg.table[i * n + j] = {k.mul(pair[0], pair[1]), phi.at(pair, 0)};
    }
  }
  return TwistedGroupAlgebra{k, phi, std::move(alg)};
}

GradedAlgebraR build_graded_algebra(const GroupAction& band, const std::vector<int>& dims, const Cochain& c) {
  const int pts = band.set_size;
  if (static_cast<int>(dims.size()) != pts) throw InvalidInput("one dimension per point expected");
  for (int d : dims)
    if (d < 1) throw InvalidInput("dimensions must be positive");
  if (c.degree() != 2 || !c.group().same_table(band.group) || c.coeff().module.rank() != static_cast<std::size_t>(pts) ||
      c.coeff().module.factors()[0] < 2 || c.coeff().matrices != point_functions(band, c.coeff().module.factors()[0]).matrices)
    throw InvalidInput("cocycle must take values in Maps(X, mu_N) with the band action");
  require_cocycle(c, "cocycle");
  const FiniteGroup& q = band.group;
  const int nq = q.order();
  GradedAlgebraR r{band, dims, c, {}, {}};
  // offset[q * pts + i]: first basis index of the block V_i -> V_{q.i}
  std::vector<std::size_t> offset(static_cast<std::size_t>(nq) * pts);
  std::size_t dim = 0;
  for (int g = 0; g < nq; ++g) {
    r.grade_start.push_back(dim);
    for (int i = 0; i < pts; ++i) {
      offset[static_cast<std::size_t>(g) * pts + i] = dim;
      dim += static_cast<std::size_t>(dims[static_cast<std::size_t>(band.act(g, i))]) * dims[static_cast<std::size_t>(i)];
    }
  }
  r.grade_start.push_back(dim);
  if (dim > limits().max_algebra_dim) throw CapExceeded("graded algebra dimension above the configured cap");
  struct Unit {
    int g, i, row, col;
  };
  std::vector<Unit> units;
  for (int g = 0; g < nq; ++g)
    for (int i = 0; i < pts; ++i) {
      const int target = band.act(g, i);
      for (int a = 0; a < dims[static_cast<std::size_t>(target)]; ++a)
        for (int b = 0; b < dims[static_cast<std::size_t>(i)]; ++b) units.push_back({g, i, a, b});
    }
  auto& alg = r.algebra;
  alg.dim = dim;
  alg.root_order = c.coeff().module.factors()[0];
  alg.table.resize(dim * dim);
  for (const auto& u : units)
    alg.labels.push_back("[" + q.label(u.g) + ";" + std::to_string(u.i) + ";" + std::to_string(u.row) + "," + std::to_string(u.col) + "]");
  if (nq == 1 && dim == 1) alg.unit = 0;
  for (std::size_t x = 0; x < dim; ++x)
    for (std::size_t y = 0; y < dim; ++y) {
      const Unit& l = units[x];
      const Unit& rr = units[y];
      if (band.act(rr.g, rr.i) != l.i || rr.row != l.col) continue;
      const int g = q.mul(l.g, rr.g);
      const int dims_i = dims[static_cast<std::size_t>(rr.i)];
      const std::size_t idx = offset[static_cast<std::size_t>(g) * pts + rr.i] + static_cast<std::size_t>(l.row) * dims_i + rr.col;
      const int pair[2] = {l.g, rr.g};
      alg.table[x * dim + y] = {static_cast<int>(idx), c.at(pair, static_cast<std::size_t>(band.act(g, rr.i)))};
    }
  return r;
}

bool GradedAlgebraR::is_strongly_graded() const {
  const FiniteGroup& q = band.group;
  for (int g = 0; g < q.order(); ++g)
    for (int h = 0; h < q.order(); ++h) {
      std::set<int> hit;
      for (std::size_t x = grade_start[static_cast<std::size_t>(g)]; x < grade_start[static_cast<std::size_t>(g) + 1]; ++x)
        for (std::size_t y = grade_start[static_cast<std::size_t>(h)]; y < grade_start[static_cast<std::size_t>(h) + 1]; ++y) {
          const auto& p = algebra.product(x, y);
          if (p.index >= 0) hit.insert(p.index);
        }
      if (hit.size() != grade_dim(q.mul(g, h))) return false;
    }
  return true;
}

GerbeDatum extension_to_gerbe(const GradedAlgebraR& r, Execution exec) {
  auto g = build_action_groupoid(r.band.group, r.band);
  const std::int64_t n = r.cocycle.coeff().module.factors()[0];
  const std::int64_t m = std::lcm(n, std::max<std::int64_t>(g.group.order(), 2));
  GerbeDecomposer d(g, m, exec);
  return d.datum(d.cohomology().classify(transport(r.cocycle, g)));
}

GradedAlgebraR gerbe_to_extension(const GerbeDatum& g, std::vector<int> dims, Execution exec) {
  if (dims.empty()) dims.assign(static_cast<std::size_t>(g.groupoid.points()), 1);
  if (static_cast<int>(dims.size()) != g.groupoid.points()) throw InvalidInput("band mismatch: one dimension per object expected");
  GroupoidCohomology h(g.groupoid, 2, g.rep_modulus, exec);
  if (!(h.group() == g.h2)) throw InvalidInput("gerbe datum does not match its groupoid");
  return build_graded_algebra(g.groupoid.action, dims, transport_inverse(h.representative(g.coords)));
}

}  // namespace gerbeforge
