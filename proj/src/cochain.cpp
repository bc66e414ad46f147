#include "gerbeforge/cochain.hpp"

#include <sstream>

#include "gerbeforge/errors.hpp"
#include "gerbeforge/kernels/bar.hpp"

namespace gerbeforge {

namespace {

std::int64_t pmod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

std::int64_t uniform_below(std::mt19937_64& rng, std::int64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t un = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return static_cast<std::int64_t>(x % un);
}

AbAction roots_of_unity(const FiniteGroup& g, std::int64_t n) {
  if (n < 1) throw InvalidInput("mu_N needs N >= 1");
  return AbAction::trivial(g, n == 1 ? FinAbGroup() : FinAbGroup({n}));
}

AbAction point_functions(const GroupAction& a, std::int64_t n) {
  if (n < 2) throw InvalidInput("point_functions needs N >= 2");
  const std::size_t r = static_cast<std::size_t>(a.set_size);
  AbAction out{a.group, FinAbGroup(Vec64(r, n)), {}};
  for (int q = 0; q < a.group.order(); ++q) {
    Mat64 m(r, Vec64(r, 0));
    // (q.f)(x) = f(q^-1 x)
    for (std::size_t x = 0; x < r; ++x) m[x][static_cast<std::size_t>(a.act(a.group.inv(q), static_cast<int>(x)))] = 1;
    out.matrices.push_back(std::move(m));
  }
  return out;
}

Cochain::Cochain(FiniteGroup g, AbAction coeff, int degree)
    : group_(std::move(g)), coeff_(std::move(coeff)), degree_(degree) {
  if (degree < 0) throw InvalidInput("negative cochain degree");
  if (!coeff_.group.same_table(group_)) throw InvalidInput("coefficient module acts through a different group");
  tuples_ = ipow(static_cast<std::size_t>(group_.order() - 1), degree);
  values_.assign(tuples_ * rank(), 0);
}

long long Cochain::tuple_index(std::span<const int> tuple) const {
  if (static_cast<int>(tuple.size()) != degree_) throw InvalidInput("tuple length differs from degree");
  long long idx = 0;
  const long long base = group_.order() - 1;
  for (int g : tuple) {
    if (g == 0) return -1;
    idx = idx * base + (g - 1);
  }
  return idx;
}

std::vector<int> Cochain::tuple_at(std::size_t index) const {
  std::vector<int> t(degree_);
  const std::size_t base = static_cast<std::size_t>(group_.order() - 1);
  for (int i = degree_ - 1; i >= 0; --i) {
    t[i] = static_cast<int>(index % base) + 1;
    index /= base;
  }
  return t;
}

Vec64 Cochain::at(std::span<const int> tuple) const {
  long long idx = tuple_index(tuple);
  Vec64 v(rank(), 0);
  if (idx < 0) return v;
  for (std::size_t i = 0; i < rank(); ++i) v[i] = values_[static_cast<std::size_t>(idx) * rank() + i];
  return v;
}

std::int64_t Cochain::at(std::span<const int> tuple, std::size_t comp) const {
  long long idx = tuple_index(tuple);
  if (idx < 0) return 0;
  return values_[static_cast<std::size_t>(idx) * rank() + comp];
}

void Cochain::set(std::span<const int> tuple, const Vec64& v) {
  long long idx = tuple_index(tuple);
  if (idx < 0) {
    if (!coeff_.module.is_zero(v)) throw InvalidInput("normalized cochain must vanish on tuples with the identity");
    return;
  }
  Vec64 r = coeff_.module.reduce(v);
  for (std::size_t i = 0; i < rank(); ++i) values_[static_cast<std::size_t>(idx) * rank() + i] = r[i];
}

Vec64 Cochain::component_orders() const {
  Vec64 o(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) o[i] = coeff_.module.factors()[i % rank()];
  return o;
}

void Cochain::assign(Vec64 flat) {
  if (flat.size() != values_.size()) throw InvalidInput("cochain value vector has wrong length");
  for (std::size_t i = 0; i < flat.size(); ++i) flat[i] = pmod(flat[i], coeff_.module.factors()[i % rank()]);
  values_ = std::move(flat);
}

Cochain Cochain::operator+(const Cochain& o) const {
  Cochain c = *this;
  Vec64 v = values_;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.values_.at(i);
  c.assign(std::move(v));
  return c;
}

Cochain Cochain::operator-(const Cochain& o) const { return *this + o.scaled(-1); }

Cochain Cochain::scaled(std::int64_t k) const {
  Cochain c = *this;
  Vec64 v = values_;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::int64_t m = coeff_.module.factors()[i % rank()];
    v[i] = pmod(v[i] * pmod(k, m), m);
  }
  c.assign(std::move(v));
  return c;
}

bool Cochain::is_zero() const {
  for (auto v : values_)
    if (v != 0) return false;
  return true;
}

nlohmann::json Cochain::to_json() const {
  nlohmann::json j;
  j["degree"] = degree_;
  if (rank() == 1)
    j["modulus"] = coeff_.module.factors()[0];
  else
    j["coeff"] = coeff_.module.factors();
  nlohmann::json vals = nlohmann::json::object();
  for (std::size_t t = 0; t < tuples_; ++t) {
    Vec64 v(values_.begin() + static_cast<long>(t * rank()), values_.begin() + static_cast<long>((t + 1) * rank()));
    bool zero = true;
    for (auto x : v) zero = zero && x == 0;
    if (zero) continue;
    std::ostringstream key;
    auto tup = tuple_at(t);
    for (std::size_t i = 0; i < tup.size(); ++i) key << (i ? "," : "") << tup[i];
    vals[key.str()] = v;
  }
  j["values"] = vals;
  return j;
}

Cochain differential(const Cochain& c) {
  const FiniteGroup& g = c.group();
  const int n = c.degree();
  Cochain out(g, c.coeff(), n + 1);
  const std::size_t r = c.rank();
  Vec64 flat(out.tuple_count() * r, 0);
  std::vector<int> s(n);
  for (std::size_t idx = 0; idx < out.tuple_count(); ++idx) {
    auto t = out.tuple_at(idx);
    Vec64 acc = c.coeff().act(t[0], c.at(std::span<const int>(t.data() + 1, n)));
    for (int k = 1; k <= n; ++k) {
      for (int i = 0; i < k - 1; ++i) s[i] = t[i];
      s[k - 1] = g.mul(t[k - 1], t[k]);
      for (int i = k + 1; i <= n; ++i) s[i - 1] = t[i];
      Vec64 v = c.at(s);
      for (std::size_t i = 0; i < r; ++i) acc[i] += (k % 2 ? -v[i] : v[i]);
    }
    Vec64 last = c.at(std::span<const int>(t.data(), n));
    for (std::size_t i = 0; i < r; ++i) {
      acc[i] += ((n + 1) % 2 ? -last[i] : last[i]);
      flat[idx * r + i] = acc[i];
    }
  }
  out.assign(std::move(flat));
  return out;
}

ModMatrix bar_differential_matrix(const FiniteGroup& g, const AbAction& coeff, int n, Execution exec) {
  const std::size_t r = coeff.module.rank();
  std::vector<std::int64_t> action(static_cast<std::size_t>(g.order()) * r * r);
  for (int q = 0; q < g.order(); ++q)
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) action[(static_cast<std::size_t>(q) * r + i) * r + j] = coeff.matrices[q][i][j];
  const Residue m = std::max<std::int64_t>(coeff.module.exponent(), 1);
  return kernels::assemble_bar_differential(g.order(), g.table().data(), n, static_cast<int>(r), action.data(), m,
                                            exec);
}

ModMatrix bar_differential_matrix_reference(const FiniteGroup& g, const AbAction& coeff, int n) {
  Cochain basis(g, coeff, n);
  const std::size_t cols = basis.values().size();
  const std::size_t rows = ipow(static_cast<std::size_t>(g.order() - 1), n + 1) * coeff.module.rank();
  ModMatrix d(rows, cols, std::max<std::int64_t>(coeff.module.exponent(), 1));
  for (std::size_t j = 0; j < cols; ++j) {
    Vec64 e(cols, 0);
    e[j] = 1;
    Cochain c(g, coeff, n);
    c.assign(e);
    Cochain dc = differential(c);
    // entries come out reduced modulo the row's component order
    for (std::size_t i = 0; i < rows; ++i) d.at(i, j) = dc.values()[i];
  }
  return d;
}

Cochain random_cochain(const FiniteGroup& g, const AbAction& coeff, int n, std::mt19937_64& rng) {
  Cochain c(g, coeff, n);
  Vec64 flat(c.values().size());
  for (std::size_t i = 0; i < flat.size(); ++i) flat[i] = uniform_below(rng, coeff.module.factors()[i % c.rank()]);
  c.assign(std::move(flat));
  return c;
}

Cochain rescale(const Cochain& c, std::int64_t target_modulus) {
  if (c.rank() != 1) throw InvalidInput("rescale expects scalar cochains");
  const std::int64_t m = c.modulus();
  if (target_modulus % m != 0) throw InvalidInput("rescale: target modulus must be a multiple");
  Cochain out(c.group(), roots_of_unity(c.group(), target_modulus), c.degree());
  Vec64 v = c.values();
  for (auto& x : v) x *= target_modulus / m;
  out.assign(std::move(v));
  return out;
}

Cochain pullback(const Cochain& c, const GroupHom& along, const AbAction& coeff_on_source) {
  if (!along.target.same_table(c.group())) throw InvalidInput("pullback: cochain lives on another group");
  Cochain out(along.source, coeff_on_source, c.degree());
  if (coeff_on_source.module.factors() != c.coeff().module.factors())
    throw InvalidInput("pullback: coefficient modules differ");
  Vec64 flat(out.values().size());
  const std::size_t r = c.rank();
  std::vector<int> img(c.degree());
  for (std::size_t t = 0; t < out.tuple_count(); ++t) {
    auto tup = out.tuple_at(t);
    for (int i = 0; i < c.degree(); ++i) img[i] = along(tup[i]);
    Vec64 v = c.at(img);
    for (std::size_t i = 0; i < r; ++i) flat[t * r + i] = v[i];
  }
  out.assign(std::move(flat));
  return out;
}

}  // namespace gerbeforge
