#define EIGEN_DONT_PARALLELIZE
#include "gerbeforge/character.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "gerbeforge/cyclotomic.hpp"
#include "gerbeforge/errors.hpp"
#include "gerbeforge/limits.hpp"

namespace gerbeforge {

namespace {

using I64 = std::int64_t;

I64 pmod(I64 a, I64 p) {
  a %= p;
  return a < 0 ? a + p : a;
}

I64 powmod(I64 b, I64 e, I64 p) {
  I64 r = 1;
  b = pmod(b, p);
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

I64 invmod(I64 a, I64 p) { return powmod(a, p - 2, p); }

bool is_prime(I64 n) {
  if (n < 2) return false;
  for (I64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

using ModMat = std::vector<std::vector<I64>>;

// Basis of the null space of m (rows x cols) over F_p, as column vectors.
std::vector<std::vector<I64>> null_space(ModMat m, I64 p) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    const I64 inv = invmod(m[r][c], p);
    for (auto& x : m[r]) x = x * inv % p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const I64 f = m[i][c];
      for (std::size_t k = 0; k < cols; ++k) m[i][k] = pmod(m[i][k] - f * m[r][k], p);
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<std::vector<I64>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<I64> v(cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[static_cast<std::size_t>(pivot_col[i])] = pmod(-m[i][free], p);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Reduced row echelon form of a list of row vectors in place; returns pivot columns.
std::vector<int> echelon(ModMat& rows, I64 p) {
  std::vector<int> piv;
  const std::size_t n = rows.size(), cols = n ? rows[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < n; ++c) {
    std::size_t i = r;
    while (i < n && rows[i][c] == 0) ++i;
    if (i == n) continue;
    std::swap(rows[i], rows[r]);
    const I64 inv = invmod(rows[r][c], p);
    for (auto& x : rows[r]) x = x * inv % p;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == r || rows[k][c] == 0) continue;
      const I64 f = rows[k][c];
      for (std::size_t m = 0; m < cols; ++m) rows[k][m] = pmod(rows[k][m] - f * rows[r][m], p);
    }
    piv.push_back(static_cast<int>(c));
    ++r;
  }
  return piv;
}

I64 primitive_root_of_order(I64 e, I64 p) {
  std::vector<I64> primes;
  for (I64 d = 2, n = e; n > 1; ++d)
    if (n % d == 0) {
      primes.push_back(d);
      while (n % d == 0) n /= d;
    }
  for (I64 a = 2; a < p; ++a) {
    const I64 z = powmod(a, (p - 1) / e, p);
    bool ok = true;
    for (I64 q : primes) ok = ok && powmod(z, e / q, p) != 1;
    if (ok) return z;
  }
  return 1;
}

}  // namespace

double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Complex CharacterTable::value(std::size_t chi, std::size_t cls) const {
  Complex s = 0;
  const auto& m = values[chi][cls];
  for (int k = 0; k < exponent; ++k)
    if (m[static_cast<std::size_t>(k)]) s += static_cast<double>(m[static_cast<std::size_t>(k)]) * std::polar(1.0, 2 * std::numbers::pi * k / exponent);
  return s;
}

bool CharacterTable::orthogonal() const {
  CyclotomicField field(exponent);
  const std::size_t r = class_sizes.size();
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = 0; b < size(); ++b) {
      // sum over classes of |C| chi_a conj(chi_b), as an integer combination of roots
      std::vector<long long> acc(static_cast<std::size_t>(exponent), 0);
      for (std::size_t c = 0; c < r; ++c)
        for (int k = 0; k < exponent; ++k) {
          const int mk = values[a][c][static_cast<std::size_t>(k)];
          if (!mk) continue;
          for (int l = 0; l < exponent; ++l) {
            const int ml = values[b][c][static_cast<std::size_t>(l)];
            if (ml) acc[static_cast<std::size_t>(((k - l) % exponent + exponent) % exponent)] += static_cast<long long>(class_sizes[c]) * mk * ml;
          }
        }
      auto s = field.zero();
      for (int k = 0; k < exponent; ++k)
        if (acc[static_cast<std::size_t>(k)]) s = field.add(s, field.mul(field.from_rational(mpq_class(static_cast<long>(acc[static_cast<std::size_t>(k)]))), field.root(k)));
      const auto expected = field.from_rational(a == b ? group.order() : 0);
      if (s != expected) return false;
    }
  return true;
}

nlohmann::json CharacterTable::to_json() const {
  nlohmann::json j;
  j["group"] = group.name();
  j["order"] = group.order();
  j["exponent"] = exponent;
  j["prime"] = prime;
  nlohmann::json reps = nlohmann::json::array();
  for (const auto& c : group.classes()) reps.push_back(group.label(c.front()));
  j["class_representatives"] = reps;
  j["class_sizes"] = class_sizes;
  j["dims"] = dims;
  j["values"] = values;
  return j;
}

std::int64_t dixon_prime(int order, int exponent) {
  const double bound = 2 * std::sqrt(static_cast<double>(order));
  for (I64 p = exponent + 1;; p += exponent)
    if (p > bound && is_prime(p)) return p;
}

CharacterTable character_table(const FiniteGroup& g) {
  if (g.order() > limits().max_character_table_order) throw CapExceeded("group above the character-table cap");
  const auto& classes = g.classes();
  const std::size_t r = classes.size();
  const int n = g.order(), e = g.exponent();
  const I64 p = dixon_prime(n, e);
  CharacterTable t;
  t.group = g;
  t.exponent = e;
  t.prime = p;
  for (const auto& c : classes) t.class_sizes.push_back(static_cast<int>(c.size()));

  // class multiplication coefficients a[j][i][k]
  std::vector<ModMat> coeff(r, ModMat(r, std::vector<I64>(r, 0)));
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<I64> count(r, 0);
      for (int x : classes[j])
        for (int y : classes[i]) ++count[static_cast<std::size_t>(g.class_of(g.mul(x, y)))];
      for (std::size_t k = 0; k < r; ++k) coeff[j][i][k] = count[k] / t.class_sizes[k] % p;
    }

  // refine common eigenspaces of the class matrices until every space is a line
  std::vector<ModMat> spaces = {[&] {
    ModMat b(r, std::vector<I64>(r, 0));
    for (std::size_t i = 0; i < r; ++i) b[i][i] = 1;
    return b;
  }()};  // each space: list of basis vectors in reduced echelon form
  for (std::size_t j = 0; j < r; ++j) {
    std::vector<ModMat> next;
    for (auto& basis : spaces) {
      if (basis.size() == 1) {
        next.push_back(basis);
        continue;
      }
      auto piv = echelon(basis, p);
      const std::size_t d = basis.size();
      // restricted matrix: image of each basis vector read off at the pivot coordinates
      ModMat a(d, std::vector<I64>(d, 0));
      for (std::size_t col = 0; col < d; ++col)
        for (std::size_t row = 0; row < d; ++row) {
          I64 v = 0;
          const std::size_t i = static_cast<std::size_t>(piv[row]);
          for (std::size_t k = 0; k < r; ++k) v = (v + coeff[j][i][k] * basis[col][k]) % p;
          a[row][col] = v;
        }
      std::size_t found = 0;
      for (I64 lambda = 0; lambda < p && found < d; ++lambda) {
        ModMat shifted = a;
        for (std::size_t i = 0; i < d; ++i) shifted[i][i] = pmod(shifted[i][i] - lambda, p);
        auto ns = null_space(shifted, p);
        if (ns.empty()) continue;
        ModMat sub;
        for (const auto& v : ns) {
          std::vector<I64> w(r, 0);
          for (std::size_t c = 0; c < d; ++c)
            for (std::size_t k = 0; k < r; ++k) w[k] = (w[k] + v[c] * basis[c][k]) % p;
          sub.push_back(std::move(w));
        }
        found += sub.size();
        next.push_back(std::move(sub));
      }
      if (found != d) throw CheckFailed("Dixon: class matrix is not diagonalizable over F_p");
    }
    spaces = std::move(next);
  }
  std::vector<std::vector<I64>> omegas;
  for (const auto& s : spaces) {
    if (s.size() != 1) throw CheckFailed("Dixon splitting did not separate the characters");
    omegas.push_back(s[0]);
  }

  const I64 z = primitive_root_of_order(e, p);
  // class index of g^l for a representative g
  std::vector<std::vector<int>> power_class(r, std::vector<int>(static_cast<std::size_t>(e)));
  for (std::size_t c = 0; c < r; ++c)
    for (int l = 0; l < e; ++l) power_class[c][static_cast<std::size_t>(l)] = g.class_of(g.power(classes[c].front(), l));
  std::vector<int> inverse_class(r);
  for (std::size_t c = 0; c < r; ++c) inverse_class[c] = g.class_of(g.inv(classes[c].front()));

  for (auto& w : omegas) {
    const I64 scale = invmod(w[0], p);
    for (auto& x : w) x = x * scale % p;
    I64 s = 0;
    for (std::size_t i = 0; i < r; ++i)
      s = (s + w[i] * w[static_cast<std::size_t>(inverse_class[i])] % p * invmod(t.class_sizes[i], p)) % p;
    const I64 d2 = n % p * invmod(s, p) % p;
    int dim = 0;
    for (int d = 1; d * d <= n; ++d)
      if (static_cast<I64>(d) * d % p == d2) dim = d;
    if (dim == 0) throw CheckFailed("Dixon: no degree matches");
    std::vector<I64> chi(r);
    for (std::size_t i = 0; i < r; ++i) chi[i] = w[i] * dim % p * invmod(t.class_sizes[i], p) % p;
    std::vector<std::vector<int>> row(r, std::vector<int>(static_cast<std::size_t>(e), 0));
    const I64 inv_e = invmod(e, p);
    for (std::size_t c = 0; c < r; ++c)
      for (int k = 0; k < e; ++k) {
        I64 m = 0;
        for (int l = 0; l < e; ++l)
          m = (m + chi[static_cast<std::size_t>(power_class[c][static_cast<std::size_t>(l)])] * powmod(z, pmod(-static_cast<I64>(k) * l, e), p)) % p;
        m = m * inv_e % p;
        if (m > dim) throw CheckFailed("Dixon: eigenvalue multiplicity out of range");
        row[c][static_cast<std::size_t>(k)] = static_cast<int>(m);
      }
    t.values.push_back(std::move(row));
    t.dims.push_back(dim);
  }
  // trivial character first, then by degree, then by values
  auto trivial_row = [&](std::size_t a) {
    for (const auto& v : t.values[a])
      if (v[0] != 1) return false;
    return t.dims[a] == 1;
  };
  std::vector<std::size_t> order(t.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (trivial_row(a) != trivial_row(b)) return trivial_row(a);
    if (t.dims[a] != t.dims[b]) return t.dims[a] < t.dims[b];
    return t.values[a] > t.values[b];
  });
  CharacterTable sorted = t;
  sorted.values.clear();
  sorted.dims.clear();
  for (auto i : order) {
    sorted.values.push_back(t.values[i]);
    sorted.dims.push_back(t.dims[i]);
  }
  return sorted;
}

IrrepMatrices irrep_matrices(const CharacterTable& table, std::uint64_t seed) {
  const FiniteGroup& g = table.group;
  const int n = g.order();
  std::mt19937_64 rng(seed);
  IrrepMatrices out;
  for (std::size_t chi = 0; chi < table.size(); ++chi) {
    const int d = table.dims[chi];
    // isotypic projector in the left regular representation: L(h) e_x = e_{hx}
    Eigen::MatrixXcd proj = Eigen::MatrixXcd::Zero(n, n);
    for (int h = 0; h < n; ++h) {
      const Complex c = std::conj(table.value_at(chi, h)) * (static_cast<double>(d) / n);
      for (int x = 0; x < n; ++x) proj(g.mul(h, x), x) += c;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> pe(proj);
    std::vector<int> keep;
    for (int i = 0; i < n; ++i)
      if (pe.eigenvalues()(i) > 0.5) keep.push_back(i);
    if (static_cast<int>(keep.size()) != d * d) throw CheckFailed("isotypic block has the wrong dimension");
    Eigen::MatrixXcd basis(n, d * d);
    for (int i = 0; i < d * d; ++i) basis.col(i) = pe.eigenvectors().col(keep[static_cast<std::size_t>(i)]);

    std::vector<Eigen::MatrixXcd> mats;
    bool done = false;
    for (int attempt = 0; attempt < 8 && !done; ++attempt) {
      // random self-adjoint element of the right regular action, which commutes with L
      Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
      for (int h = 0; h < n; ++h) {
        const Complex c(unit_double(rng) - 0.5, unit_double(rng) - 0.5);
        for (int x = 0; x < n; ++x) a(g.mul(x, g.inv(h)), x) += c;
      }
      Eigen::MatrixXcd herm = a + a.adjoint();
      Eigen::MatrixXcd restricted = basis.adjoint() * herm * basis;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> he(restricted);
      const auto& ev = he.eigenvalues();
      if (d * d > d && ev(d) - ev(d - 1) < 1e-6) continue;
      if (ev(d - 1) - ev(0) > 1e-7) continue;
      Eigen::MatrixXcd w = basis * he.eigenvectors().leftCols(d);
      mats.assign(static_cast<std::size_t>(n), Eigen::MatrixXcd());
      for (int h = 0; h < n; ++h) {
        Eigen::MatrixXcd lw(n, d);
        for (int x = 0; x < n; ++x) lw.row(g.mul(h, x)) = w.row(x);
        mats[static_cast<std::size_t>(h)] = w.adjoint() * lw;
      }
      double hom = 0, uni = 0, chr = 0;
      for (int h = 0; h < n; ++h) {
        const auto& mh = mats[static_cast<std::size_t>(h)];
        uni = std::max(uni, (mh.adjoint() * mh - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff());
        chr = std::max(chr, std::abs(mh.trace() - table.value_at(chi, h)));
        for (int k = 0; k < n; ++k)
          hom = std::max(hom, (mh * mats[static_cast<std::size_t>(k)] - mats[static_cast<std::size_t>(g.mul(h, k))]).cwiseAbs().maxCoeff());
      }
      if (hom > IrrepMatrices::tolerance || uni > IrrepMatrices::tolerance || chr > IrrepMatrices::tolerance) continue;
      out.homomorphism_defect = std::max(out.homomorphism_defect, hom);
      out.unitarity_defect = std::max(out.unitarity_defect, uni);
      out.character_defect = std::max(out.character_defect, chr);
      done = true;
    }
    if (!done) throw CheckFailed("irrep construction exceeded the tolerance after retries; try another seed");
    out.matrices.push_back(std::move(mats));
  }
  return out;
}

}  // namespace gerbeforge
