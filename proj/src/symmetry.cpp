#include "gerbeforge/symmetry.hpp"

#include <numeric>

#include "gerbeforge/errors.hpp"
#include "gerbeforge/groupoid.hpp"

namespace gerbeforge {

using kernels::mod;

namespace {

std::size_t side(const FiniteGroup& g) { return static_cast<std::size_t>(g.order() - 1); }

/// Big-endian index of a tuple of non-identity elements, or -1.
long long encode(const FiniteGroup& g, std::initializer_list<int> tuple) {
  long long idx = 0;
  for (int x : tuple) {
    if (x == 0) return -1;
    idx = idx * static_cast<long long>(side(g)) + (x - 1);
  }
  return idx;
}

ModMatrix kron(const ModMatrix& a, const ModMatrix& b) {
  ModMatrix out(a.rows() * b.rows(), a.cols() * b.cols(), a.modulus());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const auto x = a.at(i, j);
      if (!x) continue;
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c)
          if (b.at(r, c)) out.at(i * b.rows() + r, j * b.cols() + c) = kernels::mulmod(x, b.at(r, c), a.modulus());
    }
  return out;
}

void paste(ModMatrix& dst, const ModMatrix& src, std::size_t r0, std::size_t c0, bool negate) {
  for (std::size_t r = 0; r < src.rows(); ++r)
    for (std::size_t c = 0; c < src.cols(); ++c)
      if (src.at(r, c)) dst.at(r0 + r, c0 + c) = negate ? mod(-src.at(r, c), dst.modulus()) : src.at(r, c);
}

/// eta over (k; q1, q2) <-> the C^{2,1} block over (q1, q2; k).
Vec64 eta_to_block(const Vec64& eta, std::size_t nq2, std::size_t nk1) {
  Vec64 out(eta.size());
  for (std::size_t kk = 0; kk < nk1; ++kk)
    for (std::size_t t = 0; t < nq2; ++t) out[t * nk1 + kk] = eta[kk * nq2 + t];
  return out;
}

Vec64 block_to_eta(const Vec64& block, std::size_t nq2, std::size_t nk1) {
  Vec64 out(block.size());
  for (std::size_t kk = 0; kk < nk1; ++kk)
    for (std::size_t t = 0; t < nq2; ++t) out[kk * nq2 + t] = block[t * nk1 + kk];
  return out;
}

}  // namespace

std::int64_t MixedCocyclePair::omega_at(int qq, int k1, int k2) const {
  const long long a = encode(q, {qq}), b = encode(k, {k1, k2});
  if (a < 0 || b < 0) return 0;
  return omega[static_cast<std::size_t>(a) * side(k) * side(k) + static_cast<std::size_t>(b)];
}

std::int64_t MixedCocyclePair::eta_at(int kk, int q1, int q2) const {
  const long long a = encode(k, {kk}), b = encode(q, {q1, q2});
  if (a < 0 || b < 0) return 0;
  return eta[static_cast<std::size_t>(a) * side(q) * side(q) + static_cast<std::size_t>(b)];
}

nlohmann::json MixedCocyclePair::to_json() const {
  return {{"q", q.name()}, {"k", k.name()}, {"modulus", modulus}, {"omega", omega}, {"eta", eta}};
}

bool satisfies_conditions(const MixedCocyclePair& p) {
  const FiniteGroup &q = p.q, &k = p.k;
  const std::int64_t m = p.modulus;
  const int nq = q.order(), nk = k.order();
  for (int a = 0; a < nq; ++a)
    for (int x = 0; x < nk; ++x)
      for (int y = 0; y < nk; ++y)
        for (int z = 0; z < nk; ++z)
          if (mod(p.omega_at(a, y, z) - p.omega_at(a, k.mul(x, y), z) + p.omega_at(a, x, k.mul(y, z)) - p.omega_at(a, x, y), m)) return false;
  for (int x = 0; x < nk; ++x)
    for (int a = 0; a < nq; ++a)
      for (int b = 0; b < nq; ++b)
        for (int c = 0; c < nq; ++c)
          if (mod(p.eta_at(x, b, c) - p.eta_at(x, q.mul(a, b), c) + p.eta_at(x, a, q.mul(b, c)) - p.eta_at(x, a, b), m)) return false;
  for (int a = 0; a < nq; ++a)
    for (int b = 0; b < nq; ++b)
      for (int x = 0; x < nk; ++x)
        for (int y = 0; y < nk; ++y) {
          const std::int64_t dq = p.omega_at(b, x, y) - p.omega_at(q.mul(a, b), x, y) + p.omega_at(a, x, y);
          const std::int64_t dk = p.eta_at(y, a, b) - p.eta_at(k.mul(x, y), a, b) + p.eta_at(x, a, b);
          if (mod(dq - dk, m)) return false;
        }
  return true;
}

MixedCocyclePair transpose_pair(const MixedCocyclePair& p) { return {p.k, p.q, p.modulus, p.eta, p.omega}; }

MixedCocyclePair gauge(const MixedCocyclePair& p, const Vec64& b) {
  const FiniteGroup &q = p.q, &k = p.k;
  if (b.size() != side(q) * side(k)) throw InvalidInput("gauge cochain has wrong length");
  auto at = [&](int qq, int kk) -> std::int64_t {
    const long long a = encode(q, {qq}), c = encode(k, {kk});
    return a < 0 || c < 0 ? 0 : b[static_cast<std::size_t>(a) * side(k) + static_cast<std::size_t>(c)];
  };
  MixedCocyclePair out = p;
  for (int a = 1; a < q.order(); ++a)
    for (int x = 1; x < k.order(); ++x)
      for (int y = 1; y < k.order(); ++y) {
        const auto i = static_cast<std::size_t>(encode(q, {a})) * side(k) * side(k) + static_cast<std::size_t>(encode(k, {x, y}));
        out.omega[i] = mod(p.omega[i] + at(a, y) - at(a, k.mul(x, y)) + at(a, x), p.modulus);
      }
  for (int x = 1; x < k.order(); ++x)
    for (int a = 1; a < q.order(); ++a)
      for (int c = 1; c < q.order(); ++c) {
        const auto i = static_cast<std::size_t>(encode(k, {x})) * side(q) * side(q) + static_cast<std::size_t>(encode(q, {a, c}));
        out.eta[i] = mod(p.eta[i] + at(c, x) - at(q.mul(a, c), x) + at(a, x), p.modulus);
      }
  return out;
}

ScalarFamily mixed_family(const FiniteGroup& q, const FiniteGroup& k, Execution exec) {
  return [q, k, exec](std::int64_t m) {
    const std::size_t nq = side(q), nk = side(k);
    auto bar_q = [&](int p) { return bar_differential_matrix(q, roots_of_unity(q, m), p, exec); };
    auto bar_k = [&](int p) { return bar_differential_matrix(k, roots_of_unity(k, m), p, exec); };
    auto id = [&](std::size_t n) { return ModMatrix::identity(n, m); };
    // d_Q on C^{p,r} is bar_Q(p) x 1, d_K is 1 x bar_K(r)
    const std::size_t c11 = nq * nk, c12 = nq * nk * nk, c21 = nq * nq * nk;
    const std::size_t c13 = nq * nk * nk * nk, c22 = nq * nq * nk * nk, c31 = nq * nq * nq * nk;
    ScalarComplex out{ModMatrix(c12 + c21, c11, m), ModMatrix(c13 + c22 + c31, c12 + c21, m)};
    paste(out.d_prev, kron(id(nq), bar_k(1)), 0, 0, false);
    paste(out.d_prev, kron(bar_q(1), id(nk)), c12, 0, false);
    paste(out.d_next, kron(id(nq), bar_k(2)), 0, 0, false);
    paste(out.d_next, kron(bar_q(1), id(nk * nk)), c13, 0, false);
    paste(out.d_next, kron(id(nq * nq), bar_k(1)), c13, c12, true);
    paste(out.d_next, kron(bar_q(2), id(nk)), c13 + c22, c12, false);
    return out;
  };
}

namespace {

std::int64_t checked_headroom(const FiniteGroup& q, const FiniteGroup& k) {
  if (q.order() * k.order() > 64) throw CapExceeded("mixed cocycles are solved for |Q||K| <= 64");
  return static_cast<std::int64_t>(q.order()) * k.order();
}

}  // namespace

MixedCohomology::MixedCohomology(FiniteGroup q, FiniteGroup k, Execution exec)
    : q_(std::move(q)),
      k_(std::move(k)),
      cx_(mixed_family(q_, k_, exec), std::max<std::int64_t>(std::lcm(q_.order(), k_.order()), 2), checked_headroom(q_, k_),
          exec) {}

MixedCocyclePair MixedCohomology::representative(const Vec64& coords) const {
  const Vec64 v = cx_.representative(coords);
  const std::size_t c12 = side(q_) * side(k_) * side(k_);
  MixedCocyclePair p{q_, k_, cx_.modulus(), Vec64(v.begin(), v.begin() + static_cast<long>(c12)), {}};
  p.eta = block_to_eta(Vec64(v.begin() + static_cast<long>(c12), v.end()), side(q_) * side(q_), side(k_));
  return p;
}

Vec64 MixedCohomology::flatten(const MixedCocyclePair& p) const {
  if (!p.q.same_table(q_) || !p.k.same_table(k_)) throw InvalidInput("pair over other groups");
  Vec64 x = p.omega;
  const Vec64 block = eta_to_block(p.eta, side(q_) * side(q_), side(k_));
  x.insert(x.end(), block.begin(), block.end());
  return x;
}

Vec64 MixedCohomology::classify(const MixedCocyclePair& p) const {
  if (cx_.modulus() % p.modulus) throw InvalidInput("pair modulus must divide the representative modulus");
  return cx_.classify(flatten(p), p.modulus);
}

bool MixedCohomology::is_cocycle(const MixedCocyclePair& p) const { return cx_.is_cocycle(flatten(p), p.modulus); }

std::vector<MixedCocyclePair> solve_mixed_cocycles(const FiniteGroup& q, const FiniteGroup& k) {
  MixedCohomology h(q, k);
  std::vector<MixedCocyclePair> out;
  for (const auto& cls : h.group().elements()) {
    out.push_back(h.representative(cls));
    if (!satisfies_conditions(out.back())) throw CheckFailed("representative violates the mixed conditions");
  }
  return out;
}

namespace {

Cochain eta_slice(const MixedCocyclePair& p, int kk) {
  return scalar_cochain(p.q, std::max<std::int64_t>(p.modulus, 2), 2,
                        [&](const std::vector<int>& t) { return p.eta_at(kk, t[0], t[1]); });
}

}  // namespace

std::vector<Vec64> fixed_point_classes(const MixedCocyclePair& p) {
  std::vector<Vec64> out;
  if (p.q.order() == 1) return std::vector<Vec64>(static_cast<std::size_t>(p.k.order()));
  CxCohomology h(p.q, 2, std::lcm<std::int64_t>(p.q.order(), std::max<std::int64_t>(p.modulus, 2)));
  for (int kk = 0; kk < p.k.order(); ++kk) out.push_back(h.classify(eta_slice(p, kk)));
  return out;
}

std::size_t equivariant_simple_count(const MixedCocyclePair& p) {
  std::size_t total = 0;
  for (int kk = 0; kk < p.k.order(); ++kk) total += regular_class_count(eta_slice(p, kk));
  return total;
}

std::size_t equivariant_simple_count_groupoid(const MixedCocyclePair& p) {
  if (p.q.order() == 1) return static_cast<std::size_t>(p.k.order());
  auto groupoid = build_action_groupoid(p.q, GroupAction::trivial(p.q, p.k.order()));
  GerbeDecomposer dec(groupoid, std::lcm<std::int64_t>(p.q.order(), std::max<std::int64_t>(p.modulus, 2)));
  GroupoidCochain c(groupoid, 2, std::max<std::int64_t>(p.modulus, 2));
  for (int x = 0; x < p.k.order(); ++x)
    for (int a = 1; a < p.q.order(); ++a)
      for (int b = 1; b < p.q.order(); ++b) {
        const int arrows[2] = {a, b};
        c.set(x, arrows, p.eta_at(x, a, b));
      }
  return twisted_rep_count(dec, dec.cohomology().classify(c)).total;
}

}  // namespace gerbeforge
