#include "gerbeforge/cyclotomic.hpp"

#include "gerbeforge/errors.hpp"

namespace gerbeforge {

std::vector<long long> cyclotomic_polynomial(int n) {
  if (n < 1) throw InvalidInput("cyclotomic polynomial needs n >= 1");
  // x^n - 1 divided by Phi_d for every proper divisor d
  std::vector<long long> p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(n)] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d) continue;
    auto q = cyclotomic_polynomial(d);
    // exact division by the monic q
    const std::size_t dq = q.size() - 1;
    std::vector<long long> out(p.size() - dq, 0);
    for (std::size_t i = p.size(); i-- > dq;) {
      const long long c = p[i];
      out[i - dq] = c;
      for (std::size_t j = 0; j <= dq; ++j) p[i - dq + j] -= c * q[j];
    }
    p = std::move(out);
  }
  return p;
}

CyclotomicField::CyclotomicField(int n) : n_(n), phi_(cyclotomic_polynomial(n)) {}

CyclotomicField::Element CyclotomicField::reduce(std::vector<mpq_class> poly) const {
  const std::size_t d = static_cast<std::size_t>(degree());
  for (std::size_t i = poly.size(); i-- > d;) {
    if (poly[i] == 0) continue;
    const mpq_class c = poly[i];
    for (std::size_t j = 0; j <= d; ++j) poly[i - d + j] -= c * static_cast<long>(phi_[j]);
  }
  poly.resize(d);
  return poly;
}

CyclotomicField::Element CyclotomicField::one() const { return from_rational(1); }

CyclotomicField::Element CyclotomicField::from_rational(const mpq_class& q) const {
  Element e = zero();
  if (degree() > 0) e[0] = q;
  return e;
}

CyclotomicField::Element CyclotomicField::root(long long k) const {
  k %= n_;
  if (k < 0) k += n_;
  std::vector<mpq_class> poly(static_cast<std::size_t>(k) + 1);
  poly[static_cast<std::size_t>(k)] = 1;
  if (static_cast<int>(poly.size()) < degree()) poly.resize(static_cast<std::size_t>(degree()));
  return reduce(std::move(poly));
}

CyclotomicField::Element CyclotomicField::add(const Element& a, const Element& b) const {
  Element r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

CyclotomicField::Element CyclotomicField::sub(const Element& a, const Element& b) const {
  Element r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

CyclotomicField::Element CyclotomicField::neg(const Element& a) const {
  Element r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

CyclotomicField::Element CyclotomicField::mul(const Element& a, const Element& b) const {
  std::vector<mpq_class> p(a.size() + b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[j] != 0) p[i + j] += a[i] * b[j];
  }
  return reduce(std::move(p));
}

bool CyclotomicField::is_zero(const Element& a) const {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

CyclotomicField::Element CyclotomicField::inv(const Element& a) const {
  if (is_zero(a)) throw InvalidInput("division by zero in a cyclotomic field");
  // solve (multiplication by a) y = 1 over Q
  const std::size_t d = static_cast<std::size_t>(degree());
  std::vector<std::vector<mpq_class>> m(d, std::vector<mpq_class>(d + 1));
  for (std::size_t j = 0; j < d; ++j) {
    Element basis = zero();
    basis[j] = 1;
    Element col = mul(a, basis);
    for (std::size_t i = 0; i < d; ++i) m[i][j] = col[i];
  }
  m[0][d] = 1;
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t p = c;
    while (m[p][c] == 0) ++p;
    std::swap(m[p], m[c]);
    const mpq_class piv = m[c][c];
    for (auto& x : m[c]) x /= piv;
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const mpq_class f = m[r][c];
      for (std::size_t k = c; k <= d; ++k) m[r][k] -= f * m[c][k];
    }
  }
  Element y(d);
  for (std::size_t i = 0; i < d; ++i) y[i] = m[i][d];
  return y;
}

bool CyclotomicEchelon::add_row(Row row) {
  for (auto it = row.begin(); it != row.end();) {
    if (field_.is_zero(it->second)) {
      it = row.erase(it);
      continue;
    }
    auto piv = pivots_.find(it->first);
    if (piv == pivots_.end()) {
      ++it;
      continue;
    }
    const auto factor = it->second;
    const std::size_t col = it->first;
    for (const auto& [c, v] : piv->second) {
      auto& dst = row[c];
      if (dst.empty()) dst = field_.zero();
      dst = field_.sub(dst, field_.mul(factor, v));
    }
    row.erase(col);
    it = row.upper_bound(col);
  }
  if (row.empty()) return false;
  const std::size_t lead = row.begin()->first;
  const auto scale = field_.inv(row.begin()->second);
  for (auto& [c, v] : row) v = field_.mul(scale, v);
  pivots_.emplace(lead, std::move(row));
  return true;
}

}  // namespace gerbeforge
