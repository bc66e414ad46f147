#include "gerbeforge/abelian.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "gerbeforge/errors.hpp"
#include "gerbeforge/limits.hpp"

namespace gerbeforge {

namespace {

std::int64_t to64(const Integer& x) {
  if (!x.fits_slong_p()) throw CheckFailed("integer does not fit 64 bits");
  return x.get_si();
}

std::int64_t pmod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t pmod(const Integer& a, std::int64_t m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r.get_si();
}

}  // namespace

// ---------------------------------------------------------------- IntMatrix

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix id(n, n);
  for (std::size_t i = 0; i < n; ++i) id.at(i, i) = 1;
  return id;
}

IntMatrix IntMatrix::from(const Mat64& m, std::size_t cols_if_empty) {
  std::size_t cols = m.empty() ? cols_if_empty : m.front().size();
  IntMatrix out(m.size(), cols);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != cols) throw InvalidInput("ragged matrix");
    for (std::size_t j = 0; j < cols; ++j) out.at(i, j) = static_cast<long>(m[i][j]);
  }
  return out;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw InvalidInput("IntMatrix: shape mismatch");
  IntMatrix out(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) out.at(i, j) += a * o.at(k, j);
    }
  return out;
}

bool IntMatrix::operator==(const IntMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

Integer IntMatrix::determinant() const {
  if (rows_ != cols_) throw InvalidInput("determinant of non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix a = *this;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a.at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a.at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a.at(i, j) = v;
      }
    prev = a.at(k, k);
  }
  return sign * a.at(n - 1, n - 1);
}

std::vector<Integer> SmithDecomposition::diagonal() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D.at(i, i));
  return d;
}

// ---------------------------------------------------------------- dense Smith form

namespace {

class DenseSmith {
 public:
  DenseSmith(IntMatrix a, bool track) : a_(std::move(a)), track_(track) {
    if (track_) {
      u_ = IntMatrix::identity(a_.rows());
      ui_ = u_;
      v_ = IntMatrix::identity(a_.cols());
      vi_ = v_;
    }
  }

  void run() {
    const std::size_t m = a_.rows(), n = a_.cols();
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
      if (!pick_pivot(t, t, m, t, n)) break;
      for (;;) {
        bool changed = false;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (a_.at(i, t) == 0) continue;
          Integer q = a_.at(i, t) / a_.at(t, t);
          if (q != 0) row_axpy(i, t, q);
          changed = changed || a_.at(i, t) != 0;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (a_.at(t, j) == 0) continue;
          Integer q = a_.at(t, j) / a_.at(t, t);
          if (q != 0) col_axpy(j, t, q);
          changed = changed || a_.at(t, j) != 0;
        }
        if (changed) {
          // move the smallest remainder in the pivot row/column to the pivot
          std::size_t bi = t, bj = t;
          Integer best = abs(a_.at(t, t));
          for (std::size_t i = t + 1; i < m; ++i)
            if (a_.at(i, t) != 0 && abs(a_.at(i, t)) < best) {
              best = abs(a_.at(i, t));
              bi = i;
              bj = t;
            }
          for (std::size_t j = t + 1; j < n; ++j)
            if (a_.at(t, j) != 0 && abs(a_.at(t, j)) < best) {
              best = abs(a_.at(t, j));
              bi = t;
              bj = j;
            }
          if (bi != t) swap_rows(t, bi);
          if (bj != t) swap_cols(t, bj);
          continue;
        }
        bool fixed = false;
        for (std::size_t i = t + 1; i < m && !fixed; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (a_.at(i, j) % a_.at(t, t) != 0) {
              row_add(t, i);
              fixed = true;
              break;
            }
        if (!fixed) break;
      }
      if (a_.at(t, t) < 0) negate_row(t);
    }
  }

  IntMatrix a_;
  bool track_;
  IntMatrix u_, ui_, v_, vi_;

 private:
  bool pick_pivot(std::size_t t, std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) {
    Integer best = 0;
    std::size_t bi = 0, bj = 0;
    long best_count = 0;
    auto count = [&](std::size_t i, std::size_t j) {
      long c = 0;
      for (std::size_t x = c0; x < c1; ++x) c += a_.at(i, x) != 0;
      for (std::size_t y = r0; y < r1; ++y) c += a_.at(y, j) != 0;
      return c;
    };
    for (std::size_t i = r0; i < r1; ++i)
      for (std::size_t j = c0; j < c1; ++j) {
        const Integer& x = a_.at(i, j);
        if (x == 0) continue;
        Integer ax = abs(x);
        if (best == 0 || ax < best) {
          best = ax;
          bi = i;
          bj = j;
          best_count = -1;
        } else if (ax == best) {
          if (best_count < 0) best_count = count(bi, bj);
          long c = count(i, j);
          if (c < best_count) {
            best_count = c;
            bi = i;
            bj = j;
          }
        }
      }
    if (best == 0) return false;
    if (bi != t) swap_rows(t, bi);
    if (bj != t) swap_cols(t, bj);
    return true;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < a_.cols(); ++c) std::swap(a_.at(i, c), a_.at(j, c));
    if (!track_) return;
    for (std::size_t c = 0; c < u_.cols(); ++c) std::swap(u_.at(i, c), u_.at(j, c));
    for (std::size_t r = 0; r < ui_.rows(); ++r) std::swap(ui_.at(r, i), ui_.at(r, j));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < a_.rows(); ++r) std::swap(a_.at(r, i), a_.at(r, j));
    if (!track_) return;
    for (std::size_t r = 0; r < v_.rows(); ++r) std::swap(v_.at(r, i), v_.at(r, j));
    for (std::size_t c = 0; c < vi_.cols(); ++c) std::swap(vi_.at(i, c), vi_.at(j, c));
  }
  // row_i -= q row_t
  void row_axpy(std::size_t i, std::size_t t, const Integer& q) {
    for (std::size_t c = 0; c < a_.cols(); ++c)
      if (a_.at(t, c) != 0) a_.at(i, c) -= q * a_.at(t, c);
    if (!track_) return;
    for (std::size_t c = 0; c < u_.cols(); ++c)
      if (u_.at(t, c) != 0) u_.at(i, c) -= q * u_.at(t, c);
    for (std::size_t r = 0; r < ui_.rows(); ++r)
      if (ui_.at(r, i) != 0) ui_.at(r, t) += q * ui_.at(r, i);
  }
  // col_j -= q col_t
  void col_axpy(std::size_t j, std::size_t t, const Integer& q) {
    for (std::size_t r = 0; r < a_.rows(); ++r)
      if (a_.at(r, t) != 0) a_.at(r, j) -= q * a_.at(r, t);
    if (!track_) return;
    for (std::size_t r = 0; r < v_.rows(); ++r)
      if (v_.at(r, t) != 0) v_.at(r, j) -= q * v_.at(r, t);
    for (std::size_t c = 0; c < vi_.cols(); ++c)
      if (vi_.at(j, c) != 0) vi_.at(t, c) += q * vi_.at(j, c);
  }
  // row_t += row_i
  void row_add(std::size_t t, std::size_t i) {
    for (std::size_t c = 0; c < a_.cols(); ++c) a_.at(t, c) += a_.at(i, c);
    if (!track_) return;
    for (std::size_t c = 0; c < u_.cols(); ++c) u_.at(t, c) += u_.at(i, c);
    for (std::size_t r = 0; r < ui_.rows(); ++r) ui_.at(r, i) -= ui_.at(r, t);
  }
  void negate_row(std::size_t t) {
    for (std::size_t c = 0; c < a_.cols(); ++c) a_.at(t, c) = -a_.at(t, c);
    if (!track_) return;
    for (std::size_t c = 0; c < u_.cols(); ++c) u_.at(t, c) = -u_.at(t, c);
    for (std::size_t r = 0; r < ui_.rows(); ++r) ui_.at(r, t) = -ui_.at(r, t);
  }
};

void check_cap(std::size_t rows, std::size_t cols) {
  if (std::max(rows, cols) > limits().max_matrix_side)
    throw CapExceeded("matrix side " + std::to_string(std::max(rows, cols)) + " above cap " +
                      std::to_string(limits().max_matrix_side));
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& m) {
  check_cap(m.rows(), m.cols());
  DenseSmith s(m, true);
  s.run();
  SmithDecomposition out;
  out.original = m;
  out.D = std::move(s.a_);
  out.U = std::move(s.u_);
  out.U_inverse = std::move(s.ui_);
  out.V = std::move(s.v_);
  out.V_inverse = std::move(s.vi_);
  return out;
}

void SparseIntMatrix::add(std::size_t r, std::size_t c, const Integer& v) {
  if (v == 0) return;
  auto& row = row_entries[r];
  auto it = row.find(c);
  if (it == row.end()) {
    row.emplace(c, v);
  } else {
    it->second += v;
    if (it->second == 0) row.erase(it);
  }
}

std::vector<Integer> invariant_factors(SparseIntMatrix m) {
  check_cap(m.rows, m.cols);
  std::vector<std::set<std::size_t>> col_rows(m.cols);
  for (std::size_t r = 0; r < m.rows; ++r)
    for (const auto& [c, v] : m.row_entries[r]) col_rows[c].insert(r);
  std::vector<char> alive(m.rows, 1);
  std::size_t ones = 0;
  for (;;) {
    std::size_t br = 0, bc = 0;
    std::size_t best_cost = SIZE_MAX;
    for (std::size_t r = 0; r < m.rows; ++r) {
      if (!alive[r]) continue;
      const std::size_t rl = m.row_entries[r].size();
      for (const auto& [c, v] : m.row_entries[r]) {
        if (v != 1 && v != -1) continue;
        std::size_t cost = (rl - 1) * (col_rows[c].size() - 1);
        if (cost < best_cost) {
          best_cost = cost;
          br = r;
          bc = c;
          if (cost == 0) break;
        }
      }
      if (best_cost == 0) break;
    }
    if (best_cost == SIZE_MAX) break;
    const Integer pv = m.row_entries[br].at(bc);
    const auto pivot_row = m.row_entries[br];
    std::vector<std::size_t> others(col_rows[bc].begin(), col_rows[bc].end());
    for (std::size_t i : others) {
      if (i == br) continue;
      Integer f = m.row_entries[i].at(bc) * pv;
      for (const auto& [c, v] : pivot_row) {
        auto& row = m.row_entries[i];
        auto it = row.find(c);
        if (it == row.end()) {
          row.emplace(c, -f * v);
          col_rows[c].insert(i);
        } else {
          it->second -= f * v;
          if (it->second == 0) {
            row.erase(it);
            col_rows[c].erase(i);
          }
        }
      }
    }
    for (const auto& [c, v] : pivot_row) col_rows[c].erase(br);
    m.row_entries[br].clear();
    alive[br] = 0;
    ++ones;
  }
  std::vector<std::size_t> rows, cols;
  for (std::size_t r = 0; r < m.rows; ++r)
    if (alive[r] && !m.row_entries[r].empty()) rows.push_back(r);
  for (std::size_t c = 0; c < m.cols; ++c)
    if (!col_rows[c].empty()) cols.push_back(c);
  std::vector<Integer> out(ones, Integer(1));
  if (rows.empty()) return out;
  IntMatrix core(rows.size(), cols.size());
  std::vector<std::size_t> col_index(m.cols, 0);
  for (std::size_t j = 0; j < cols.size(); ++j) col_index[cols[j]] = j;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [c, v] : m.row_entries[rows[i]]) core.at(i, col_index[c]) = v;
  DenseSmith s(std::move(core), false);
  s.run();
  for (std::size_t i = 0; i < std::min(s.a_.rows(), s.a_.cols()); ++i)
    if (s.a_.at(i, i) != 0) out.push_back(s.a_.at(i, i));
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- FinAbGroup

FinAbGroup::FinAbGroup(Vec64 f) : factors_(std::move(f)) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 2) throw InvalidInput("invariant factors must be >= 2");
    if (i + 1 < factors_.size() && factors_[i + 1] % factors_[i] != 0)
      throw InvalidInput("invariant factors must form a divisibility chain");
  }
}

std::int64_t FinAbGroup::order() const {
  std::int64_t o = 1;
  for (auto f : factors_) o *= f;
  return o;
}

Vec64 FinAbGroup::reduce(Vec64 x) const {
  if (x.size() != rank()) throw InvalidInput("element has wrong rank");
  for (std::size_t i = 0; i < rank(); ++i) x[i] = pmod(x[i], factors_[i]);
  return x;
}

Vec64 FinAbGroup::add(const Vec64& x, const Vec64& y) const {
  Vec64 z(rank());
  for (std::size_t i = 0; i < rank(); ++i) z[i] = pmod(x[i] + y[i], factors_[i]);
  return z;
}

Vec64 FinAbGroup::neg(const Vec64& x) const {
  Vec64 z(rank());
  for (std::size_t i = 0; i < rank(); ++i) z[i] = pmod(-x[i], factors_[i]);
  return z;
}

Vec64 FinAbGroup::scale(const Vec64& x, std::int64_t k) const {
  Vec64 z(rank());
  for (std::size_t i = 0; i < rank(); ++i) z[i] = pmod(pmod(x[i], factors_[i]) * pmod(k, factors_[i]), factors_[i]);
  return z;
}

bool FinAbGroup::is_zero(const Vec64& x) const {
  for (std::size_t i = 0; i < rank(); ++i)
    if (pmod(x[i], factors_[i]) != 0) return false;
  return true;
}

std::vector<Vec64> FinAbGroup::elements() const {
  const std::int64_t n = order();
  if (n > 1'000'000) throw CapExceeded("element enumeration above 10^6");
  std::vector<Vec64> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) out.push_back(element_at(i));
  return out;
}

std::int64_t FinAbGroup::index_of(const Vec64& x) const {
  Vec64 r = reduce(x);
  std::int64_t idx = 0, base = 1;
  for (std::size_t i = 0; i < rank(); ++i) {
    idx += r[i] * base;
    base *= factors_[i];
  }
  return idx;
}

Vec64 FinAbGroup::element_at(std::int64_t index) const {
  Vec64 x(rank());
  for (std::size_t i = 0; i < rank(); ++i) {
    x[i] = index % factors_[i];
    index /= factors_[i];
  }
  return x;
}

std::string FinAbGroup::to_string() const {
  if (factors_.empty()) return "0";
  std::ostringstream out;
  for (std::size_t i = 0; i < factors_.size(); ++i) out << (i ? " x " : "") << "Z/" << factors_[i];
  return out.str();
}

CyclicNormalization normalize_cyclic(const Vec64& orders) {
  const std::size_t k = orders.size();
  CyclicNormalization out;
  if (k == 0) return out;
  IntMatrix d(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    if (orders[i] < 1) throw InvalidInput("cyclic orders must be positive");
    d.at(i, i) = static_cast<long>(orders[i]);
  }
  auto s = smith_normal_form(d);
  Vec64 factors;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < k; ++i) {
    std::int64_t di = to64(s.D.at(i, i));
    if (di > 1) {
      factors.push_back(di);
      kept.push_back(i);
    }
  }
  out.group = FinAbGroup(factors);
  for (std::size_t r = 0; r < kept.size(); ++r) {
    Vec64 row(k);
    for (std::size_t j = 0; j < k; ++j) row[j] = pmod(s.U.at(kept[r], j), factors[r]);
    out.to_group.push_back(row);
  }
  out.from_group.assign(k, Vec64(kept.size(), 0));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t r = 0; r < kept.size(); ++r) out.from_group[j][r] = pmod(s.U_inverse.at(j, kept[r]), orders[j]);
  return out;
}

// ---------------------------------------------------------------- AbHom

Vec64 AbHom::apply(const Vec64& x) const {
  Vec64 y(target.rank(), 0);
  for (std::size_t i = 0; i < target.rank(); ++i) {
    Integer acc = 0;
    for (std::size_t j = 0; j < source.rank(); ++j) acc += Integer(static_cast<long>(matrix[i][j])) * static_cast<long>(x[j]);
    y[i] = pmod(acc, target.factors()[i]);
  }
  return y;
}

bool AbHom::is_well_defined() const {
  if (matrix.size() != target.rank()) return false;
  for (const auto& row : matrix)
    if (row.size() != source.rank()) return false;
  for (std::size_t j = 0; j < source.rank(); ++j)
    for (std::size_t i = 0; i < target.rank(); ++i) {
      Integer v = Integer(static_cast<long>(matrix[i][j])) * static_cast<long>(source.factors()[j]);
      if (pmod(v, target.factors()[i]) != 0) return false;
    }
  return true;
}

AbHom compose(const AbHom& second, const AbHom& first) {
  if (!(first.target == second.source)) throw InvalidInput("compose: incompatible homomorphisms");
  AbHom out{first.source, second.target, Mat64(second.target.rank(), Vec64(first.source.rank(), 0))};
  for (std::size_t j = 0; j < first.source.rank(); ++j) {
    Vec64 e(first.source.rank(), 0);
    e[j] = 1;
    Vec64 img = second.apply(first.apply(e));
    for (std::size_t i = 0; i < img.size(); ++i) out.matrix[i][j] = img[i];
  }
  return out;
}

// ---------------------------------------------------------------- subgroups, kernels, cokernels

namespace {

// Integer kernel basis (columns) of an integer matrix.
std::vector<std::vector<Integer>> integer_kernel(const IntMatrix& b) {
  auto s = smith_normal_form(b);
  std::size_t rank = 0;
  while (rank < std::min(b.rows(), b.cols()) && s.D.at(rank, rank) != 0) ++rank;
  std::vector<std::vector<Integer>> out;
  for (std::size_t j = rank; j < b.cols(); ++j) {
    std::vector<Integer> v(b.cols());
    for (std::size_t i = 0; i < b.cols(); ++i) v[i] = s.V.at(i, j);
    out.push_back(std::move(v));
  }
  return out;
}

IntMatrix generator_block(const FinAbGroup& ambient, const std::vector<Vec64>& gens) {
  const std::size_t r = ambient.rank(), k = gens.size();
  IntMatrix b(r, k + r);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < r; ++i) b.at(i, j) = static_cast<long>(gens[j][i]);
  for (std::size_t i = 0; i < r; ++i) b.at(i, k + i) = static_cast<long>(ambient.factors()[i]);
  return b;
}

}  // namespace

SubgroupPresentation::SubgroupPresentation(const FinAbGroup& ambient, std::vector<Vec64> generators)
    : ambient_(ambient), generators_(std::move(generators)), k_(generators_.size()) {
  for (auto& g : generators_) g = ambient_.reduce(g);
  const std::size_t r = ambient_.rank();
  IntMatrix b = generator_block(ambient_, generators_);
  solver_ = smith_normal_form(b);
  if (k_ == 0) return;
  auto ker = integer_kernel(b);
  IntMatrix rel(k_, ker.size());
  for (std::size_t j = 0; j < ker.size(); ++j)
    for (std::size_t i = 0; i < k_; ++i) rel.at(i, j) = ker[j][i];
  auto s = smith_normal_form(rel);
  coord_map_ = s.U;
  coord_inverse_ = s.U_inverse;
  Vec64 factors;
  for (std::size_t i = 0; i < k_; ++i) {
    Integer d = i < std::min(rel.rows(), rel.cols()) ? s.D.at(i, i) : Integer(0);
    if (d == 0) throw CheckFailed("subgroup presentation: relation lattice not of full rank");
    if (d > 1) {
      factors.push_back(to64(d));
      kept_.push_back(i);
    }
  }
  structure_ = FinAbGroup(factors);
  for (std::size_t i = 0; i < kept_.size(); ++i) {
    Vec64 e(kept_.size(), 0);
    e[i] = 1;
    Vec64 c = combination(e);
    Vec64 y(r, 0);
    for (std::size_t g = 0; g < k_; ++g)
      for (std::size_t t = 0; t < r; ++t) y[t] += c[g] * generators_[g][t];
    basis_.push_back(ambient_.reduce(y));
  }
}

bool SubgroupPresentation::solve(const Vec64& y0, Vec64& c) const {
  Vec64 y = ambient_.reduce(y0);
  const std::size_t r = ambient_.rank();
  const IntMatrix& U = solver_.U;
  const IntMatrix& V = solver_.V;
  const std::size_t cols = k_ + r;
  std::vector<Integer> z(r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) z[i] += U.at(i, j) * static_cast<long>(y[j]);
  std::vector<Integer> w(cols);
  for (std::size_t i = 0; i < r; ++i) {
    Integer d = i < cols ? solver_.D.at(i, i) : Integer(0);
    if (d == 0) {
      if (z[i] != 0) return false;
      continue;
    }
    if (z[i] % d != 0) return false;
    w[i] = z[i] / d;
  }
  c.assign(k_, 0);
  for (std::size_t g = 0; g < k_; ++g) {
    Integer acc = 0;
    for (std::size_t j = 0; j < cols; ++j) acc += V.at(g, j) * w[j];
    c[g] = pmod(acc, std::max<std::int64_t>(1, ambient_.exponent()));
  }
  return true;
}

bool SubgroupPresentation::contains(const Vec64& y) const {
  Vec64 c;
  return solve(y, c);
}

Vec64 SubgroupPresentation::coordinates(const Vec64& y) const {
  Vec64 c;
  if (!solve(y, c)) throw InvalidInput("element is not in the subgroup");
  Vec64 out(kept_.size(), 0);
  for (std::size_t i = 0; i < kept_.size(); ++i) {
    Integer acc = 0;
    for (std::size_t g = 0; g < k_; ++g) acc += coord_map_.at(kept_[i], g) * static_cast<long>(c[g]);
    out[i] = pmod(acc, structure_.factors()[i]);
  }
  return out;
}

Vec64 SubgroupPresentation::combination(const Vec64& coords) const {
  Vec64 c(k_, 0);
  for (std::size_t g = 0; g < k_; ++g) {
    Integer acc = 0;
    for (std::size_t i = 0; i < kept_.size(); ++i) acc += coord_inverse_.at(g, kept_[i]) * static_cast<long>(coords[i]);
    c[g] = pmod(acc, std::max<std::int64_t>(1, ambient_.exponent()));
  }
  return c;
}

Vec64 HomStructure::project(const Vec64& y) const {
  Vec64 out(cokernel.rank(), 0);
  for (std::size_t i = 0; i < cokernel.rank(); ++i) {
    Integer acc = 0;
    for (std::size_t j = 0; j < y.size(); ++j) acc += Integer(static_cast<long>(projection[i][j])) * static_cast<long>(y[j]);
    out[i] = pmod(acc, cokernel.factors()[i]);
  }
  return out;
}

HomStructure hom_structure(const AbHom& m) {
  if (!m.is_well_defined()) throw InvalidInput("hom_structure: matrix does not respect the moduli");
  const std::size_t rs = m.source.rank(), rt = m.target.rank();
  HomStructure out;
  // kernel: x with M x in diag(t) Z
  IntMatrix b(rt, rs + rt);
  for (std::size_t i = 0; i < rt; ++i) {
    for (std::size_t j = 0; j < rs; ++j) b.at(i, j) = static_cast<long>(m.matrix[i][j]);
    b.at(i, rs + i) = static_cast<long>(m.target.factors()[i]);
  }
  std::vector<Vec64> kgens;
  if (rt == 0) {
    for (std::size_t j = 0; j < rs; ++j) {
      Vec64 e(rs, 0);
      e[j] = 1;
      kgens.push_back(e);
    }
  } else {
    for (const auto& v : integer_kernel(b)) {
      Vec64 x(rs);
      for (std::size_t j = 0; j < rs; ++j) x[j] = pmod(v[j], m.source.factors()[j]);
      kgens.push_back(x);
    }
  }
  SubgroupPresentation ker(m.source, kgens);
  out.kernel = ker.structure();
  out.kernel_basis = ker.basis();
  std::vector<Vec64> igens;
  for (std::size_t j = 0; j < rs; ++j) {
    Vec64 e(rs, 0);
    e[j] = 1;
    igens.push_back(m.apply(e));
  }
  SubgroupPresentation img(m.target, igens);
  out.image = img.structure();
  out.image_basis = img.basis();
  if (rt > 0) {
    auto s = smith_normal_form(b);
    Vec64 factors;
    for (std::size_t i = 0; i < rt; ++i) {
      std::int64_t d = to64(s.D.at(i, i));
      if (d > 1) {
        factors.push_back(d);
        Vec64 row(rt);
        for (std::size_t j = 0; j < rt; ++j) row[j] = pmod(s.U.at(i, j), d);
        out.projection.push_back(row);
      }
    }
    out.cokernel = FinAbGroup(factors);
  }
  return out;
}

// ---------------------------------------------------------------- actions and duals

AbAction AbAction::trivial(const FiniteGroup& g, const FinAbGroup& a) {
  Mat64 id(a.rank(), Vec64(a.rank(), 0));
  for (std::size_t i = 0; i < a.rank(); ++i) id[i][i] = 1;
  return AbAction{g, a, std::vector<Mat64>(g.order(), id)};
}

Vec64 AbAction::act(int g, const Vec64& a) const {
  const Mat64& m = matrices[g];
  Vec64 y(module.rank(), 0);
  for (std::size_t i = 0; i < module.rank(); ++i) {
    std::int64_t acc = 0;
    const std::int64_t d = module.factors()[i];
    for (std::size_t j = 0; j < module.rank(); ++j) acc = pmod(acc + pmod(m[i][j], d) * pmod(a[j], d), d);
    y[i] = acc;
  }
  return y;
}

bool AbAction::is_trivial() const {
  for (int g = 0; g < group.order(); ++g)
    for (std::size_t j = 0; j < module.rank(); ++j) {
      Vec64 e(module.rank(), 0);
      e[j] = 1;
      if (act(g, e) != e) return false;
    }
  return true;
}

bool AbAction::is_valid() const {
  if (static_cast<int>(matrices.size()) != group.order()) return false;
  for (int g = 0; g < group.order(); ++g) {
    AbHom h{module, module, matrices[g]};
    if (!h.is_well_defined()) return false;
  }
  std::vector<Vec64> basis;
  for (std::size_t j = 0; j < module.rank(); ++j) {
    Vec64 e(module.rank(), 0);
    e[j] = 1;
    basis.push_back(e);
  }
  for (const auto& e : basis)
    if (act(0, e) != e) return false;
  for (int g = 0; g < group.order(); ++g)
    for (int h = 0; h < group.order(); ++h)
      for (const auto& e : basis)
        if (act(g, act(h, e)) != act(group.mul(g, h), e)) return false;
  // automorphism: identity with inverse element
  for (int g = 0; g < group.order(); ++g)
    for (const auto& e : basis)
      if (act(group.inv(g), act(g, e)) != e) return false;
  return true;
}

Mat64 character_pullback(const FinAbGroup& a, const Mat64& m) {
  const std::size_t r = a.rank();
  Mat64 t(r, Vec64(r, 0));
  const auto& d = a.factors();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      // (chi o m)_j = sum_i chi_i m_ij d_j / d_i
      Integer v = Integer(static_cast<long>(m[i][j])) * static_cast<long>(d[j]);
      if (v % d[i] != 0) throw InvalidInput("endomorphism does not respect the moduli");
      t[j][i] = pmod(Integer(v / d[i]), d[j]);
    }
  return t;
}

std::int64_t DualGroup::pair(const Vec64& chi, const Vec64& a) const {
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < group.rank(); ++i) {
    const std::int64_t d = group.factors()[i];
    acc = pmod(acc + pmod(chi[i], d) * pmod(a[i], d) % modulus * (modulus / d), modulus);
  }
  return acc;
}

DualGroup dual_group(const FinAbGroup& a) { return dual_group(AbAction::trivial(FiniteGroup(), a)); }

DualGroup dual_group(const AbAction& band) {
  if (!band.is_valid()) throw InvalidInput("band does not act by automorphisms");
  DualGroup out;
  out.group = band.module;
  out.modulus = band.module.exponent();
  out.left_action.group = band.group;
  out.left_action.module = band.module;
  for (int q = 0; q < band.group.order(); ++q) {
    out.left_action.matrices.push_back(character_pullback(band.module, band.matrices[band.group.inv(q)]));
    out.right_matrices.push_back(character_pullback(band.module, band.matrices[q]));
  }
  return out;
}

AbelianCoordinates abelian_coordinates(const FiniteGroup& g) {
  if (!g.is_abelian()) throw InvalidInput("abelian_coordinates: group is not abelian");
  const int n = g.order();
  AbelianCoordinates out;
  if (n == 1) {
    out.coords = {Vec64{}};
    out.element[Vec64{}] = 0;
    return out;
  }
  auto gens = generating_set(g);
  // generators e_1..e_{n-1}; relations e_x + e_s - e_{xs}
  IntMatrix rel(n - 1, static_cast<std::size_t>(n) * gens.size());
  std::size_t col = 0;
  for (int x = 0; x < n; ++x)
    for (int s : gens) {
      int xs = g.mul(x, s);
      if (x) rel.at(x - 1, col) += 1;
      rel.at(s - 1, col) += 1;
      if (xs) rel.at(xs - 1, col) -= 1;
      ++col;
    }
  auto s = smith_normal_form(rel);
  Vec64 factors;
  std::vector<std::size_t> kept;
  for (int i = 0; i < n - 1; ++i) {
    std::int64_t d = to64(s.D.at(i, i));
    if (d == 0) throw CheckFailed("abelian_coordinates: presentation not finite");
    if (d > 1) {
      factors.push_back(d);
      kept.push_back(i);
    }
  }
  out.group = FinAbGroup(factors);
  if (out.group.order() != n) throw CheckFailed("abelian_coordinates: order mismatch");
  out.coords.assign(n, Vec64(kept.size(), 0));
  for (int x = 1; x < n; ++x)
    for (std::size_t r = 0; r < kept.size(); ++r) out.coords[x][r] = pmod(s.U.at(kept[r], x - 1), factors[r]);
  for (int x = 0; x < n; ++x) {
    if (!out.element.emplace(out.coords[x], x).second) throw CheckFailed("abelian_coordinates: not injective");
  }
  return out;
}

AbAction conjugation_band(const FiniteGroup& g, const SubgroupDatum& k, const QuotientData& qd,
                          const AbelianCoordinates& kc) {
  const std::size_t r = kc.group.rank();
  AbAction out{qd.quotient, kc.group, {}};
  for (int q = 0; q < qd.quotient.order(); ++q) {
    Mat64 m(r, Vec64(r, 0));
    for (std::size_t j = 0; j < r; ++j) {
      Vec64 e(r, 0);
      e[j] = 1;
      int kidx = kc.element_of(e);
      int img = g.conj(qd.section[q], k.members[kidx]);
      const Vec64& c = kc.coords[k.index_of(img)];
      for (std::size_t i = 0; i < r; ++i) m[i][j] = c[i];
    }
    out.matrices.push_back(std::move(m));
  }
  return out;
}

}  // namespace gerbeforge
