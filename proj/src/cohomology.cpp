#include "gerbeforge/cohomology.hpp"

#include <cmath>
#include <mutex>
#include <numeric>

#include "gerbeforge/errors.hpp"
#include "gerbeforge/limits.hpp"

namespace gerbeforge {

using kernels::mod;
using kernels::mulmod;
using kernels::smith_mod;
using kernels::SmithRequest;

namespace {

Vec64 column(const ModMatrix& a, std::size_t c) {
  Vec64 v(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) v[r] = a.at(r, c);
  return v;
}

void check_orders(const Vec64& orders, Residue m, const char* what) {
  for (auto r : orders)
    if (r < 1 || m % r != 0) throw InvalidInput(std::string(what) + ": coordinate order does not divide the modulus");
}

}  // namespace

// ---------------------------------------------------------------- boundary solver

BoundarySolver::BoundarySolver(ModMatrix d_prev, Vec64 orders, Execution exec)
    : d_prev_(std::move(d_prev)), orders_(std::move(orders)) {
  const Residue m = d_prev_.modulus();
  if (orders_.size() != d_prev_.rows()) throw InvalidInput("boundary solver: order list has wrong length");
  check_orders(orders_, m, "boundary solver");
  if (m < 2) return;
  std::vector<std::size_t> extra;
  for (std::size_t i = 0; i < orders_.size(); ++i)
    if (orders_[i] < m) extra.push_back(i);
  ModMatrix a(d_prev_.rows(), d_prev_.cols() + extra.size(), m);
  for (std::size_t r = 0; r < d_prev_.rows(); ++r)
    for (std::size_t c = 0; c < d_prev_.cols(); ++c) a.at(r, c) = d_prev_.at(r, c);
  for (std::size_t k = 0; k < extra.size(); ++k) a.at(extra[k], d_prev_.cols() + k) = orders_[extra[k]];
  smith_ = smith_mod(std::move(a), SmithRequest{true, false, true, false}, exec);
}

std::optional<Vec64> BoundarySolver::solve(const Vec64& x0) const {
  const Residue m = d_prev_.modulus();
  if (x0.size() != orders_.size()) throw InvalidInput("boundary solver: vector has wrong length");
  if (m < 2) return Vec64(d_prev_.cols(), 0);
  Vec64 x(x0.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = mod(x0[i], orders_[i]);
  Vec64 b = smith_.left.apply(x);
  const std::size_t cols = smith_.right.rows();
  Vec64 u(cols, 0);
  for (std::size_t i = 0; i < b.size(); ++i) {
    const Residue e = i < smith_.diagonal.size() ? smith_.diagonal[i] : m;
    if (e == m) {
      if (b[i] != 0) return std::nullopt;
      continue;
    }
    if (b[i] % e != 0) return std::nullopt;
    u[i] = b[i] / e;
  }
  Vec64 sol = smith_.right.apply(u);
  sol.resize(d_prev_.cols());
  return sol;
}

// ---------------------------------------------------------------- slice

struct CohomologySlice::Lazy {
  std::once_flag once;
  std::unique_ptr<BoundarySolver> solver;
};

CohomologySlice::CohomologySlice(ModMatrix d_prev, ModMatrix d_next, Vec64 orders, Vec64 next_orders, Execution exec)
    : d_prev_(std::move(d_prev)),
      d_next_(std::move(d_next)),
      orders_(std::move(orders)),
      next_orders_(std::move(next_orders)),
      exec_(exec),
      lazy_(std::make_shared<Lazy>()) {
  const Residue m = d_next_.modulus();
  const std::size_t n = orders_.size();
  if (d_prev_.modulus() != m) throw InvalidInput("cohomology slice: differentials over different moduli");
  if (d_prev_.rows() != n || d_next_.cols() != n || d_next_.rows() != next_orders_.size())
    throw InvalidInput("cohomology slice: shapes do not match");
  check_orders(orders_, m, "cohomology slice");
  check_orders(next_orders_, m, "cohomology slice");
  if (m < 2 || n == 0) return;

  // cocycle condition (d_next x)_i = 0 mod next_orders[i], scaled up to modulus m
  ModMatrix scaled = d_next_;
  for (std::size_t r = 0; r < scaled.rows(); ++r) {
    const Residue f = m / next_orders_[r];
    Residue* row = scaled.row(r);
    for (std::size_t c = 0; c < n; ++c) row[c] = mulmod(row[c], f, m);
  }
  auto ks = smith_mod(std::move(scaled), SmithRequest{false, false, true, true}, exec);
  right_ = std::move(ks.right);
  right_inverse_ = std::move(ks.right_inverse);
  kernel_orders_.assign(n, m);
  for (std::size_t j = 0; j < ks.diagonal.size(); ++j) kernel_orders_[j] = ks.diagonal[j];

  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < n; ++j)
    if (kernel_orders_[j] > 1) kept.push_back(j);
  const std::size_t k = kept.size();

  auto to_z = [&](const Vec64& x) {
    Vec64 w = right_inverse_.apply(x);
    Vec64 z(k);
    std::size_t t = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const Residue a = m / kernel_orders_[j];
      if (w[j] % a != 0) throw CheckFailed("cohomology slice: boundary is not a cocycle (d^2 != 0)");
      if (t < k && kept[t] == j) z[t++] = w[j] / a;
    }
    return z;
  };

  std::vector<Vec64> rel;
  for (std::size_t c = 0; c < d_prev_.cols(); ++c) rel.push_back(to_z(column(d_prev_, c)));
  for (std::size_t i = 0; i < n; ++i)
    if (orders_[i] < m) {
      Vec64 e(n, 0);
      e[i] = orders_[i];
      rel.push_back(to_z(e));
    }
  if (k == 0) return;
  ModMatrix r(k, rel.size() + k, m);
  for (std::size_t c = 0; c < rel.size(); ++c)
    for (std::size_t t = 0; t < k; ++t) r.at(t, c) = rel[c][t];
  for (std::size_t t = 0; t < k; ++t) r.at(t, rel.size() + t) = mod(kernel_orders_[kept[t]], m);
  auto cs = smith_mod(std::move(r), SmithRequest{true, true, false, false}, exec);
  class_left_ = std::move(cs.left);
  class_left_inverse_ = std::move(cs.left_inverse);
  class_orders_.assign(k, m);
  for (std::size_t t = 0; t < cs.diagonal.size(); ++t) class_orders_[t] = cs.diagonal[t];
  Vec64 cyc;
  for (std::size_t t = 0; t < k; ++t)
    if (class_orders_[t] > 1) {
      class_kept_.push_back(t);
      cyc.push_back(class_orders_[t]);
    }
  normal_ = normalize_cyclic(cyc);
  group_ = normal_.group;

  for (std::size_t g = 0; g < group_.rank(); ++g) {
    Vec64 e(group_.rank(), 0);
    e[g] = 1;
    generators_.push_back(representative(e));
  }
}

Vec64 CohomologySlice::reduce(Vec64 x) const {
  if (x.size() != orders_.size()) throw InvalidInput("cochain vector has wrong length");
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = mod(x[i], orders_[i]);
  return x;
}

bool CohomologySlice::is_cocycle(const Vec64& x0) const {
  Vec64 x = reduce(x0);
  Vec64 y = d_next_.apply(x);
  for (std::size_t i = 0; i < y.size(); ++i)
    if (y[i] % next_orders_[i] != 0) return false;
  return true;
}

Vec64 CohomologySlice::classify(const Vec64& x0) const {
  Vec64 x = reduce(x0);
  if (!is_cocycle(x)) throw CheckFailed("classify: cochain is not a cocycle");
  if (group_.trivial()) return {};
  const Residue m = modulus();
  Vec64 w = right_inverse_.apply(x);
  Vec64 z;
  for (std::size_t j = 0; j < w.size(); ++j)
    if (kernel_orders_[j] > 1) z.push_back(w[j] / (m / kernel_orders_[j]));
  Vec64 c = class_left_.apply(z);
  Vec64 cyc(class_kept_.size());
  for (std::size_t t = 0; t < class_kept_.size(); ++t) cyc[t] = mod(c[class_kept_[t]], class_orders_[class_kept_[t]]);
  Vec64 out(group_.rank(), 0);
  for (std::size_t r = 0; r < group_.rank(); ++r) {
    const Residue f = group_.factors()[r];
    Residue acc = 0;
    for (std::size_t t = 0; t < cyc.size(); ++t) acc = (acc + mulmod(normal_.to_group[r][t], cyc[t], f)) % f;
    out[r] = acc;
  }
  return out;
}

Vec64 CohomologySlice::representative(const Vec64& coords) const {
  if (coords.size() != group_.rank()) throw InvalidInput("class coordinates have wrong length");
  const Residue m = modulus();
  const std::size_t n = orders_.size();
  if (group_.trivial()) return Vec64(n, 0);
  // cyclic coordinates -> z coordinates
  Vec64 z(class_left_inverse_.rows(), 0);
  for (std::size_t t = 0; t < class_kept_.size(); ++t) {
    Residue ct = 0;
    for (std::size_t r = 0; r < coords.size(); ++r) ct = (ct + mulmod(normal_.from_group[t][r], mod(coords[r], m), m)) % m;
    const std::size_t col = class_kept_[t];
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = (z[i] + mulmod(class_left_inverse_.at(i, col), ct, m)) % m;
  }
  Vec64 y(n, 0);
  std::size_t t = 0;
  for (std::size_t j = 0; j < n; ++j)
    if (kernel_orders_[j] > 1) y[j] = mulmod(z[t++], m / kernel_orders_[j], m);
  return reduce(right_.apply(y));
}

std::optional<Vec64> CohomologySlice::solve_boundary(const Vec64& x) const {
  std::call_once(lazy_->once, [&] { lazy_->solver = std::make_unique<BoundarySolver>(d_prev_, orders_, exec_); });
  return lazy_->solver->solve(x);
}

Integer CohomologySlice::cocycle_count() const {
  const Residue m = modulus();
  Integer z = 1;
  if (m < 2) return z;
  for (auto g : kernel_orders_) z *= static_cast<long>(g);
  for (auto r : orders_) z /= static_cast<long>(m / r);
  return z;
}

// ---------------------------------------------------------------- group cohomology

namespace {

Vec64 cochain_orders(const FiniteGroup& g, const AbAction& coeff, int n) {
  const std::size_t tuples = ipow(static_cast<std::size_t>(g.order() - 1), n);
  Vec64 o(tuples * coeff.module.rank());
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = coeff.module.factors()[i % coeff.module.rank()];
  return o;
}

ModMatrix bar_or_empty(const FiniteGroup& g, const AbAction& coeff, int n, Execution exec) {
  if (n < 0) return ModMatrix(coeff.module.rank(), 0, std::max<std::int64_t>(coeff.module.exponent(), 1));
  return bar_differential_matrix(g, coeff, n, exec);
}

void check_degree(int n) {
  if (n < 0) throw InvalidInput("negative cohomological degree");
  if (n > limits().max_degree) throw CapExceeded("degree above the configured cap; reduce the degree");
}

void check_size(const FiniteGroup& g, const AbAction& coeff, int n) {
  const double side = std::pow(static_cast<double>(g.order() - 1), n + 1) * static_cast<double>(coeff.module.rank());
  if (side > static_cast<double>(limits().max_matrix_side))
    throw CapExceeded("bar complex too large (" + std::to_string(static_cast<long long>(side)) +
                      " rows); reduce the degree or the group");
}

CohomologySlice group_slice(const FiniteGroup& g, const AbAction& coeff, int n, Execution exec) {
  check_degree(n);
  check_size(g, coeff, n);
  return CohomologySlice(bar_or_empty(g, coeff, n - 1, exec), bar_or_empty(g, coeff, n, exec), cochain_orders(g, coeff, n),
                         cochain_orders(g, coeff, n + 1), exec);
}

}  // namespace

GroupCohomology::GroupCohomology(FiniteGroup g, AbAction coeff, int degree, Execution exec)
    : base_(std::move(g)),
      coeff_(std::move(coeff)),
      degree_(degree),
      slice_(group_slice(base_, coeff_, degree, exec)) {}

Cochain GroupCohomology::wrap(Vec64 v) const {
  Cochain c(base_, coeff_, degree_);
  c.assign(std::move(v));
  return c;
}

std::vector<Cochain> GroupCohomology::generators() const {
  std::vector<Cochain> out;
  for (const auto& v : slice_.generators()) out.push_back(wrap(v));
  return out;
}

Cochain GroupCohomology::representative(const Vec64& coords) const { return wrap(slice_.representative(coords)); }

Vec64 GroupCohomology::classify(const Cochain& c) const {
  if (c.degree() != degree_ || !c.group().same_table(base_)) throw InvalidInput("classify: cochain from another complex");
  return slice_.classify(c.values());
}

std::optional<Cochain> GroupCohomology::coboundary_witness(const Cochain& c) const {
  if (degree_ == 0) {
    if (c.is_zero()) return Cochain(base_, coeff_, 0);
    return std::nullopt;
  }
  auto y = slice_.solve_boundary(c.values());
  if (!y) return std::nullopt;
  Cochain w(base_, coeff_, degree_ - 1);
  w.assign(*y);
  return w;
}

// ---------------------------------------------------------------- C^x coefficients

DivisibleCohomology::DivisibleCohomology(const ScalarFamily& family, std::int64_t rep_modulus,
                                         std::int64_t headroom, Execution exec)
    : rep_modulus_(rep_modulus), headroom_(headroom) {
  if (rep_modulus < 1 || headroom < 1) throw InvalidInput("C^x model needs positive moduli");
  auto make = [&](std::int64_t m) {
    ScalarComplex c = family(m);
    Vec64 orders(c.d_prev.rows(), m), next(c.d_next.rows(), m);
    return std::make_shared<CohomologySlice>(std::move(c.d_prev), std::move(c.d_next), orders, next, exec);
  };
  fine_ = make(rep_modulus_);
  ambient_ = headroom_ == 1 ? fine_ : make(rep_modulus_ * headroom_);
  std::vector<Vec64> images;
  for (const auto& g : fine_->generators()) images.push_back(ambient_->classify(embed(g, rep_modulus_)));
  sub_ = std::make_shared<SubgroupPresentation>(ambient_->group(), images);
  for (std::size_t i = 0; i < sub_->structure().rank(); ++i) {
    Vec64 e(sub_->structure().rank(), 0);
    e[i] = 1;
    generators_.push_back(representative(e));
  }
}

Vec64 DivisibleCohomology::embed(const Vec64& x, std::int64_t m) const {
  if (m < 1 || rep_modulus_ % m != 0) throw InvalidInput("C^x model: cochain modulus must divide the representative modulus");
  const std::int64_t big = rep_modulus_ * headroom_;
  const std::int64_t f = big / m;
  Vec64 y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = mulmod(mod(x[i], m), f, big);
  return y;
}

Vec64 DivisibleCohomology::representative(const Vec64& coords) const {
  Vec64 c = sub_->combination(coords);
  Vec64 out(fine_->dimension(), 0);
  const auto& gens = fine_->generators();
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (out[i] + mulmod(mod(c[g], rep_modulus_), gens[g][i], rep_modulus_)) % rep_modulus_;
  return out;
}

Vec64 DivisibleCohomology::classify(const Vec64& x, std::int64_t m) const {
  return sub_->coordinates(ambient_->classify(embed(x, m)));
}

bool DivisibleCohomology::is_cocycle(const Vec64& x, std::int64_t m) const { return ambient_->is_cocycle(embed(x, m)); }

bool DivisibleCohomology::is_trivial(const Vec64& x, std::int64_t m) const { return trivialize(x, m).has_value(); }

std::optional<Vec64> DivisibleCohomology::trivialize(const Vec64& x, std::int64_t m) const {
  Vec64 y = embed(x, m);
  if (!ambient_->is_cocycle(y)) throw CheckFailed("trivialize: cochain is not a cocycle");
  return ambient_->solve_boundary(y);
}

ScalarFamily bar_family(const FiniteGroup& g, int degree, Execution exec) {
  return [g, degree, exec](std::int64_t m) {
    AbAction mu = roots_of_unity(g, m);
    return ScalarComplex{bar_or_empty(g, mu, degree - 1, exec), bar_or_empty(g, mu, degree, exec)};
  };
}

namespace {

std::int64_t checked_cx_degree(const FiniteGroup& g, int degree) {
  if (degree < 1) throw InvalidInput("H^n(G, C^x) is computed for n >= 1");
  check_degree(degree);
  check_size(g, roots_of_unity(g, 2), degree);
  return g.order();
}

}  // namespace

CxCohomology::CxCohomology(FiniteGroup g, int degree, Execution exec)
    : CxCohomology(g, degree, g.order(), exec) {}

CxCohomology::CxCohomology(FiniteGroup g, int degree, std::int64_t rep_modulus, Execution exec)
    : base_(std::move(g)),
      degree_(degree),
      cx_(bar_family(base_, degree, exec), rep_modulus, checked_cx_degree(base_, degree), exec) {
  if (rep_modulus % base_.order() != 0) throw InvalidInput("representative modulus must be a multiple of |G|");
}

std::vector<Cochain> CxCohomology::generators() const {
  std::vector<Cochain> out;
  for (std::size_t i = 0; i < group().rank(); ++i) {
    Vec64 e(group().rank(), 0);
    e[i] = 1;
    out.push_back(representative(e));
  }
  return out;
}

Cochain CxCohomology::representative(const Vec64& coords) const {
  Cochain c(base_, roots_of_unity(base_, modulus()), degree_);
  c.assign(cx_.representative(coords));
  return c;
}

namespace {

void check_scalar(const Cochain& c, const FiniteGroup& g, int degree) {
  if (c.degree() != degree || !c.group().same_table(g)) throw InvalidInput("cochain from another complex");
  if (c.rank() > 1 || !c.coeff().is_trivial()) throw InvalidInput("C^x classes need scalar mu_m cochains");
}

Vec64 scalar_values(const Cochain& c) { return c.rank() == 0 ? Vec64(c.tuple_count(), 0) : c.values(); }

}  // namespace

Vec64 CxCohomology::classify(const Cochain& c) const {
  check_scalar(c, base_, degree_);
  return cx_.classify(scalar_values(c), std::max<std::int64_t>(c.modulus(), 1));
}

bool CxCohomology::is_trivial(const Cochain& c) const {
  check_scalar(c, base_, degree_);
  return cx_.is_trivial(scalar_values(c), std::max<std::int64_t>(c.modulus(), 1));
}

bool CxCohomology::same_class(const Cochain& a, const Cochain& b) const { return classify(a) == classify(b); }

std::vector<Integer> integral_cohomology_factors(const FiniteGroup& g, int n) {
  if (n < 0) throw InvalidInput("negative degree");
  const std::size_t base = static_cast<std::size_t>(g.order() - 1);
  const std::size_t rows = ipow(base, n + 1), cols = ipow(base, n);
  if (static_cast<double>(rows) > static_cast<double>(limits().max_matrix_side) * 8)
    throw CapExceeded("integral bar complex too large");
  SparseIntMatrix m(rows, cols);
  std::vector<int> t(n + 1), s(n);
  auto index = [&](const std::vector<int>& tup) -> long long {
    long long idx = 0;
    for (int x : tup) {
      if (x == 0) return -1;
      idx = idx * static_cast<long long>(base) + (x - 1);
    }
    return idx;
  };
  for (std::size_t r = 0; r < rows; ++r) {
    std::size_t rem = r;
    for (int i = n; i >= 0; --i) {
      t[i] = static_cast<int>(rem % base) + 1;
      rem /= base;
    }
    for (int k = 0; k <= n + 1; ++k) {
      if (k == 0) {
        for (int i = 0; i < n; ++i) s[i] = t[i + 1];
      } else if (k == n + 1) {
        for (int i = 0; i < n; ++i) s[i] = t[i];
      } else {
        for (int i = 0; i < k - 1; ++i) s[i] = t[i];
        s[k - 1] = g.mul(t[k - 1], t[k]);
        for (int i = k + 1; i <= n; ++i) s[i - 1] = t[i];
      }
      long long c = index(s);
      if (c >= 0) m.add(r, static_cast<std::size_t>(c), k % 2 ? -1 : 1);
    }
  }
  std::vector<Integer> out;
  for (auto& f : invariant_factors(std::move(m)))
    if (f > 1) out.push_back(f);
  return out;
}

CohomologousResult is_cohomologous(const Cochain& a, const Cochain& b, Execution exec) {
  if (a.degree() != b.degree() || !a.group().same_table(b.group()) ||
      a.coeff().module.factors() != b.coeff().module.factors())
    throw InvalidInput("is_cohomologous: cochains live in different complexes");
  if (!differential(a).is_zero() || !differential(b).is_zero()) throw InvalidInput("is_cohomologous: inputs are not cocycles");
  Cochain diff = a - b;
  CohomologousResult out;
  if (a.degree() == 0) {
    out.cohomologous = diff.is_zero();
    return out;
  }
  BoundarySolver solver(bar_differential_matrix(a.group(), a.coeff(), a.degree() - 1, exec),
                        cochain_orders(a.group(), a.coeff(), a.degree()), exec);
  auto y = solver.solve(diff.values());
  if (!y) return out;
  out.cohomologous = true;
  Cochain w(a.group(), a.coeff(), a.degree() - 1);
  w.assign(*y);
  out.witness = std::move(w);
  return out;
}

// ---------------------------------------------------------------- induced maps

AbHom induced_from_images(const FinAbGroup& source, const FinAbGroup& target, const std::vector<Vec64>& images) {
  if (images.size() != source.rank()) throw InvalidInput("one image per source generator expected");
  AbHom h{source, target, Mat64(target.rank(), Vec64(source.rank(), 0))};
  for (std::size_t j = 0; j < images.size(); ++j)
    for (std::size_t i = 0; i < target.rank(); ++i) h.matrix[i][j] = images[j][i];
  if (!h.is_well_defined()) throw CheckFailed("induced map is not well defined");
  return h;
}

AbHom induced_map_along(const GroupCohomology& source, const GroupCohomology& target, const GroupHom& hom) {
  if (!hom.target.same_table(source.base()) || !hom.source.same_table(target.base()))
    throw InvalidInput("induced map: homomorphism does not connect the two groups");
  std::vector<Vec64> images;
  for (const auto& g : source.generators()) images.push_back(target.classify(pullback(g, hom, target.coeff())));
  return induced_from_images(source.group(), target.group(), images);
}

AbHom induced_map_along(const CxCohomology& source, const CxCohomology& target, const GroupHom& hom) {
  if (!hom.target.same_table(source.base()) || !hom.source.same_table(target.base()))
    throw InvalidInput("induced map: homomorphism does not connect the two groups");
  std::vector<Vec64> images;
  for (const auto& g : source.generators())
    images.push_back(target.classify(pullback(g, hom, roots_of_unity(hom.source, g.modulus()))));
  return induced_from_images(source.group(), target.group(), images);
}

AbHom induced_map_coefficient(const GroupCohomology& source, const GroupCohomology& target, const AbHom& coeff_map) {
  const AbAction& a = source.coeff();
  const AbAction& b = target.coeff();
  if (!source.base().same_table(target.base()) || source.degree() != target.degree())
    throw InvalidInput("coefficient map: cohomology over different groups or degrees");
  if (!(coeff_map.source == a.module) || !(coeff_map.target == b.module) || !coeff_map.is_well_defined())
    throw InvalidInput("coefficient map does not match the coefficient modules");
  for (int g = 0; g < source.base().order(); ++g)
    for (std::size_t i = 0; i < a.module.rank(); ++i) {
      Vec64 e(a.module.rank(), 0);
      e[i] = 1;
      if (coeff_map.apply(a.act(g, e)) != b.act(g, coeff_map.apply(e)))
        throw InvalidInput("coefficient map is not equivariant");
    }
  std::vector<Vec64> images;
  const std::size_t ra = a.module.rank(), rb = b.module.rank();
  for (const auto& c : source.generators()) {
    Vec64 flat(c.tuple_count() * rb);
    for (std::size_t t = 0; t < c.tuple_count(); ++t) {
      Vec64 v(c.values().begin() + static_cast<long>(t * ra), c.values().begin() + static_cast<long>((t + 1) * ra));
      Vec64 w = coeff_map.apply(v);
      for (std::size_t i = 0; i < rb; ++i) flat[t * rb + i] = w[i];
    }
    Cochain img(target.base(), b, target.degree());
    img.assign(std::move(flat));
    images.push_back(target.classify(img));
  }
  return induced_from_images(source.group(), target.group(), images);
}

GroupHom inclusion_hom(const SubgroupDatum& k) { return GroupHom{subgroup_group(k), k.parent, k.members}; }

GroupHom projection_hom(const QuotientData& qd) { return qd.proj; }

}  // namespace gerbeforge
