#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

namespace gerbeforge::kernels {

using Residue = std::int64_t;

enum class Execution { serial, parallel };

inline Residue mod(Residue a, Residue m) {
  Residue r = a % m;
  return r < 0 ? r + m : r;
}

inline Residue mulmod(Residue a, Residue b, Residue m) {
  return static_cast<Residue>((static_cast<__int128>(a) * b) % m);
}

/// Inverse of a unit modulo m (gcd(a, m) must be 1).
Residue invmod(Residue a, Residue m);

/// Extended gcd on non-negative integers: returns g and sets s, t with s*a + t*b = g.
Residue xgcd(Residue a, Residue b, Residue& s, Residue& t);

/// Dense row-major matrix over Z/modulus.
class ModMatrix {
 public:
  ModMatrix() = default;
  ModMatrix(std::size_t rows, std::size_t cols, Residue modulus)
      : rows_(rows), cols_(cols), modulus_(modulus), data_(rows * cols, 0) {}

  static ModMatrix identity(std::size_t n, Residue modulus);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Residue modulus() const { return modulus_; }

  Residue& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Residue at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Residue* row(std::size_t r) { return data_.data() + r * cols_; }
  const Residue* row(std::size_t r) const { return data_.data() + r * cols_; }

  /// Adds v (reduced) into entry (r, c).
  void add(std::size_t r, std::size_t c, Residue v) {
    Residue& x = at(r, c);
    x = mod(x + v, modulus_);
  }

  ModMatrix operator*(const ModMatrix& other) const;
  std::vector<Residue> apply(std::span<const Residue> x) const;
  bool operator==(const ModMatrix& other) const = default;

  const std::vector<Residue>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Residue modulus_ = 1;
  std::vector<Residue> data_;
};

struct SmithRequest {
  bool left = false;
  bool left_inverse = false;
  bool right = false;
  bool right_inverse = false;
};

/// Smith form over the principal ideal ring Z/M: left * A * right = diag(diagonal).
/// Diagonal entries are divisors of M (M itself stands for a zero entry), in
/// pivot order; no divisibility chain is enforced.
struct ModSmith {
  std::vector<Residue> diagonal;
  std::size_t rank = 0;  // number of diagonal entries different from M
  ModMatrix left, left_inverse, right, right_inverse;
};

ModSmith smith_mod(ModMatrix a, SmithRequest want, Execution exec = Execution::parallel);

}  // namespace gerbeforge::kernels
