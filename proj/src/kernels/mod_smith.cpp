#include "gerbeforge/kernels/modmatrix.hpp"

#include <stdexcept>
#include <utility>

namespace gerbeforge::kernels {

Residue xgcd(Residue a, Residue b, Residue& s, Residue& t) {
  Residue s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (b != 0) {
    Residue q = a / b;
    Residue r = a - q * b;
    a = b;
    b = r;
    Residue ns = s0 - q * s1;
    s0 = s1;
    s1 = ns;
    Residue nt = t0 - q * t1;
    t0 = t1;
    t1 = nt;
  }
  s = s0;
  t = t0;
  return a;
}

Residue invmod(Residue a, Residue m) {
  Residue s, t;
  Residue g = xgcd(mod(a, m), m, s, t);
  if (g != 1) throw std::domain_error("invmod: not a unit");
  return mod(s, m);
}

ModMatrix ModMatrix::identity(std::size_t n, Residue modulus) {
  ModMatrix id(n, n, modulus);
  for (std::size_t i = 0; i < n; ++i) id.at(i, i) = modulus == 1 ? 0 : 1;
  return id;
}

ModMatrix ModMatrix::operator*(const ModMatrix& other) const {
  if (cols_ != other.rows_ || modulus_ != other.modulus_)
    throw std::invalid_argument("ModMatrix: shape or modulus mismatch");
  ModMatrix out(rows_, other.cols_, modulus_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      Residue a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j)
        out.at(i, j) = mod(out.at(i, j) + mulmod(a, other.at(k, j), modulus_), modulus_);
    }
  return out;
}

std::vector<Residue> ModMatrix::apply(std::span<const Residue> x) const {
  if (x.size() != cols_) throw std::invalid_argument("ModMatrix::apply: size mismatch");
  std::vector<Residue> y(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    Residue acc = 0;
    for (std::size_t j = 0; j < cols_; ++j) acc = mod(acc + mulmod(at(i, j), mod(x[j], modulus_), modulus_), modulus_);
    y[i] = acc;
  }
  return y;
}

namespace {

Residue gcd_mod(Residue a, Residue m) { return std::gcd(a, m); }

class Eliminator {
 public:
  Eliminator(ModMatrix& a, SmithRequest want, bool par)
      : a_(a), m_(a.modulus()), par_(par) {
    if (want.left) u_ = ModMatrix::identity(a.rows(), m_);
    if (want.left_inverse) ui_ = ModMatrix::identity(a.rows(), m_);
    if (want.right) v_ = ModMatrix::identity(a.cols(), m_);
    if (want.right_inverse) vi_ = ModMatrix::identity(a.cols(), m_);
    want_ = want;
  }

  ModSmith run() {
    const std::size_t rows = a_.rows(), cols = a_.cols();
    const std::size_t n = std::min(rows, cols);
    ModSmith out;
    out.diagonal.assign(n, m_);
    std::size_t t = 0;
    for (; t < n; ++t) {
      if (!place_pivot(t)) break;
      clear_cross(t);
      out.diagonal[t] = a_.at(t, t);
    }
    out.rank = t;
    if (want_.left) out.left = std::move(u_);
    if (want_.left_inverse) out.left_inverse = std::move(ui_);
    if (want_.right) out.right = std::move(v_);
    if (want_.right_inverse) out.right_inverse = std::move(vi_);
    return out;
  }

 private:
  // Moves an entry of minimal ideal (smallest gcd with M) to (t,t) and scales it to that divisor.
  bool place_pivot(std::size_t t) {
    std::size_t bi = 0, bj = 0;
    Residue best = 0;
    for (std::size_t i = t; i < a_.rows() && best != 1; ++i) {
      const Residue* r = a_.row(i);
      for (std::size_t j = t; j < a_.cols(); ++j) {
        if (r[j] == 0) continue;
        Residue g = gcd_mod(r[j], m_);
        if (best == 0 || g < best) {
          best = g;
          bi = i;
          bj = j;
          if (g == 1) break;
        }
      }
    }
    if (best == 0) return false;
    if (bi != t) swap_rows(t, bi);
    if (bj != t) swap_cols(t, bj);
    normalize_pivot(t);
    return true;
  }

  void normalize_pivot(std::size_t t) {
    Residue p = a_.at(t, t);
    Residue g = gcd_mod(p, m_);
    if (p == g) return;
    Residue step = m_ / g;
    Residue lam = (p / g) % step;
    while (std::gcd(lam, m_) != 1) lam += step;
    Residue lam_inv = invmod(lam, m_);
    scale_row(t, lam_inv, lam);
  }

  void clear_cross(std::size_t t) {
    for (;;) {
      clear_column(t);
      if (!clear_row(t)) return;
    }
  }

  void clear_column(std::size_t t) {
    const std::size_t rows = a_.rows();
    for (std::size_t i = t + 1; i < rows; ++i) {
      Residue e = a_.at(i, t);
      if (e == 0) continue;
      Residue p = a_.at(t, t);
      if (e % p != 0) combine_rows(t, i, p, e);
    }
    const Residue p = a_.at(t, t);
    std::vector<Residue> factor(rows, 0);
    bool any = false;
    for (std::size_t i = t + 1; i < rows; ++i) {
      factor[i] = a_.at(i, t) / p;
      any = any || factor[i] != 0;
    }
    if (!any) return;
    const std::size_t cols = a_.cols();
    const Residue* pivot_row = a_.row(t);
    const bool track_u = want_.left;
    const std::int64_t lo = static_cast<std::int64_t>(t + 1), hi = static_cast<std::int64_t>(rows);
#pragma omp parallel for schedule(static) if (par_)
    for (std::int64_t ii = lo; ii < hi; ++ii) {
      const std::size_t i = static_cast<std::size_t>(ii);
      const Residue x = factor[i];
      if (x == 0) continue;
      Residue* r = a_.row(i);
      for (std::size_t j = t; j < cols; ++j)
        if (pivot_row[j] != 0) r[j] = mod(r[j] - mulmod(x, pivot_row[j], m_), m_);
      if (track_u) {
        Residue* ur = u_.row(i);
        const Residue* ut = u_.row(t);
        for (std::size_t j = 0; j < rows; ++j)
          if (ut[j] != 0) ur[j] = mod(ur[j] - mulmod(x, ut[j], m_), m_);
      }
    }
    if (want_.left_inverse) {
      // U^{-1} column t absorbs sum_i x_i * column i.
      const std::int64_t n = static_cast<std::int64_t>(rows);
#pragma omp parallel for schedule(static) if (par_)
      for (std::int64_t rr = 0; rr < n; ++rr) {
        Residue* r = ui_.row(static_cast<std::size_t>(rr));
        Residue acc = r[t];
        for (std::size_t i = t + 1; i < rows; ++i)
          if (factor[i] != 0 && r[i] != 0) acc = mod(acc + mulmod(factor[i], r[i], m_), m_);
        r[t] = acc;
      }
    }
  }

  // Returns true when a column combination reintroduced entries below the pivot.
  bool clear_row(std::size_t t) {
    const std::size_t cols = a_.cols();
    bool dirty = false;
    for (std::size_t j = t + 1; j < cols; ++j) {
      Residue e = a_.at(t, j);
      if (e == 0) continue;
      Residue p = a_.at(t, t);
      if (e % p != 0) {
        combine_cols(t, j, p, e);
        dirty = true;
      }
    }
    const Residue p = a_.at(t, t);
    std::vector<Residue> factor(cols, 0);
    bool any = false;
    for (std::size_t j = t + 1; j < cols; ++j) {
      Residue e = a_.at(t, j);
      if (e == 0) continue;
      factor[j] = e / p;
      any = true;
    }
    if (any) {
      // Column t is zero outside the pivot (or will be re-cleared), so only row t changes in A,
      // except when dirty: then apply the full column operation.
      const std::size_t rows = a_.rows();
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (factor[j] == 0) continue;
        for (std::size_t i = 0; i < rows; ++i) {
          Residue c = a_.at(i, t);
          if (c != 0) a_.at(i, j) = mod(a_.at(i, j) - mulmod(factor[j], c, m_), m_);
        }
      }
      if (want_.right) {
        const std::int64_t n = static_cast<std::int64_t>(cols);
#pragma omp parallel for schedule(static) if (par_)
        for (std::int64_t rr = 0; rr < n; ++rr) {
          Residue* r = v_.row(static_cast<std::size_t>(rr));
          const Residue vt = r[t];
          if (vt == 0) continue;
          for (std::size_t j = t + 1; j < cols; ++j)
            if (factor[j] != 0) r[j] = mod(r[j] - mulmod(factor[j], vt, m_), m_);
        }
      }
      if (want_.right_inverse) {
        Residue* target = vi_.row(t);
        const std::int64_t n = static_cast<std::int64_t>(cols);
#pragma omp parallel for schedule(static) if (par_)
        for (std::int64_t cc = 0; cc < n; ++cc) {
          const std::size_t c = static_cast<std::size_t>(cc);
          Residue acc = target[c];
          for (std::size_t j = t + 1; j < cols; ++j)
            if (factor[j] != 0) {
              Residue w = vi_.at(j, c);
              if (w != 0) acc = mod(acc + mulmod(factor[j], w, m_), m_);
            }
          target[c] = acc;
        }
      }
    }
    return dirty;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < a_.cols(); ++c) std::swap(a_.at(i, c), a_.at(j, c));
    if (want_.left)
      for (std::size_t c = 0; c < u_.cols(); ++c) std::swap(u_.at(i, c), u_.at(j, c));
    if (want_.left_inverse)
      for (std::size_t r = 0; r < ui_.rows(); ++r) std::swap(ui_.at(r, i), ui_.at(r, j));
  }

  void swap_cols(std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < a_.rows(); ++r) std::swap(a_.at(r, i), a_.at(r, j));
    if (want_.right)
      for (std::size_t r = 0; r < v_.rows(); ++r) std::swap(v_.at(r, i), v_.at(r, j));
    if (want_.right_inverse)
      for (std::size_t c = 0; c < vi_.cols(); ++c) std::swap(vi_.at(i, c), vi_.at(j, c));
  }

  // Row t scaled by lam; lam_inv is its inverse.
  void scale_row(std::size_t t, Residue lam, Residue lam_inv) {
    for (std::size_t c = 0; c < a_.cols(); ++c) a_.at(t, c) = mulmod(a_.at(t, c), lam, m_);
    if (want_.left)
      for (std::size_t c = 0; c < u_.cols(); ++c) u_.at(t, c) = mulmod(u_.at(t, c), lam, m_);
    if (want_.left_inverse)
      for (std::size_t r = 0; r < ui_.rows(); ++r) ui_.at(r, t) = mulmod(ui_.at(r, t), lam_inv, m_);
  }

  static void mix(Residue& x, Residue& y, Residue s, Residue u, Residue v, Residue w, Residue m) {
    Residue nx = mod(mulmod(s, x, m) + mulmod(u, y, m), m);
    Residue ny = mod(mulmod(v, x, m) + mulmod(w, y, m), m);
    x = nx;
    y = ny;
  }

  // Unimodular 2x2 on rows (t,i) so that the pivot becomes gcd(p, e) and entry (i,t) vanishes.
  void combine_rows(std::size_t t, std::size_t i, Residue p, Residue e) {
    Residue s, u;
    Residue g = xgcd(p, e, s, u);
    Residue v = mod(-(e / g), m_), w = mod(p / g, m_);
    s = mod(s, m_);
    u = mod(u, m_);
    for (std::size_t c = 0; c < a_.cols(); ++c) mix(a_.at(t, c), a_.at(i, c), s, u, v, w, m_);
    if (want_.left)
      for (std::size_t c = 0; c < u_.cols(); ++c) mix(u_.at(t, c), u_.at(i, c), s, u, v, w, m_);
    if (want_.left_inverse)
      for (std::size_t r = 0; r < ui_.rows(); ++r)
        mix(ui_.at(r, t), ui_.at(r, i), w, mod(-v, m_), mod(-u, m_), s, m_);
  }

  void combine_cols(std::size_t t, std::size_t j, Residue p, Residue e) {
    Residue s, u;
    Residue g = xgcd(p, e, s, u);
    Residue v = mod(-(e / g), m_), w = mod(p / g, m_);
    s = mod(s, m_);
    u = mod(u, m_);
    for (std::size_t r = 0; r < a_.rows(); ++r) mix(a_.at(r, t), a_.at(r, j), s, u, v, w, m_);
    if (want_.right)
      for (std::size_t r = 0; r < v_.rows(); ++r) mix(v_.at(r, t), v_.at(r, j), s, u, v, w, m_);
    if (want_.right_inverse)
      for (std::size_t c = 0; c < vi_.cols(); ++c)
        mix(vi_.at(t, c), vi_.at(j, c), w, mod(-v, m_), mod(-u, m_), s, m_);
  }

  ModMatrix& a_;
  Residue m_;
  bool par_;
  SmithRequest want_;
  ModMatrix u_, ui_, v_, vi_;
};

}  // namespace

ModSmith smith_mod(ModMatrix a, SmithRequest want, Execution exec) {
  if (a.modulus() < 2) throw std::invalid_argument("smith_mod: modulus must be at least 2");
  Eliminator e(a, want, exec == Execution::parallel);
  return e.run();
}

}  // namespace gerbeforge::kernels
