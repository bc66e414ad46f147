/** @file abelian.hpp
 *  Finite abelian groups, exact integer Smith normal form, kernels/cokernels, duals.
 */
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "gerbeforge/group.hpp"

namespace gerbeforge {

using Integer = mpz_class;
using Vec64 = std::vector<std::int64_t>;
using Mat64 = std::vector<Vec64>;  // row-major, rows x cols

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static IntMatrix identity(std::size_t n);
  static IntMatrix from(const Mat64& m, std::size_t cols_if_empty = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix operator*(const IntMatrix& o) const;
  bool operator==(const IntMatrix& o) const;
  bool is_zero() const;
  Integer determinant() const;  // fraction-free elimination; square only

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Integer> data_;
};

struct SmithDecomposition {
  IntMatrix original, U, V, D;   // U * original * V = D
  IntMatrix U_inverse, V_inverse;
  std::vector<Integer> diagonal() const;  // min(rows, cols) entries, non-negative
};

SmithDecomposition smith_normal_form(const IntMatrix& m);

/// Sparse integer matrix given by (row, col, value) triples.
struct SparseIntMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<std::map<std::size_t, Integer>> row_entries;
  SparseIntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), row_entries(r) {}
  void add(std::size_t r, std::size_t c, const Integer& v);
};

/// Nonzero invariant factors (including 1s) of an integer matrix; unit pivots are
/// eliminated sparsely, the remaining core goes through the dense Smith form.
std::vector<Integer> invariant_factors(SparseIntMatrix m);

class FinAbGroup {
 public:
  FinAbGroup() = default;
  /// Factors must form a divisibility chain of integers >= 2.
  explicit FinAbGroup(Vec64 invariant_factors);

  const Vec64& factors() const { return factors_; }
  std::size_t rank() const { return factors_.size(); }
  std::int64_t order() const;
  std::int64_t exponent() const { return factors_.empty() ? 1 : factors_.back(); }
  bool trivial() const { return factors_.empty(); }

  Vec64 reduce(Vec64 x) const;
  Vec64 add(const Vec64& x, const Vec64& y) const;
  Vec64 neg(const Vec64& x) const;
  Vec64 scale(const Vec64& x, std::int64_t k) const;
  bool is_zero(const Vec64& x) const;
  Vec64 zero() const { return Vec64(rank(), 0); }

  /// All elements in mixed-radix order (first coordinate fastest).
  std::vector<Vec64> elements() const;
  std::int64_t index_of(const Vec64& x) const;
  Vec64 element_at(std::int64_t index) const;

  std::string to_string() const;  // e.g. "Z/2 x Z/4", "0"
  bool operator==(const FinAbGroup& o) const = default;

 private:
  Vec64 factors_;
};

/// A direct sum of cyclic groups of the given orders, brought to invariant-factor form.
struct CyclicNormalization {
  FinAbGroup group;
  Mat64 to_group;    // rank x orders.size(): cyclic coordinates -> invariant coordinates
  Mat64 from_group;  // orders.size() x rank
};

CyclicNormalization normalize_cyclic(const Vec64& orders);

struct AbHom {
  FinAbGroup source, target;
  Mat64 matrix;  // target.rank() x source.rank()

  Vec64 apply(const Vec64& x) const;
  bool is_well_defined() const;
};

AbHom compose(const AbHom& second, const AbHom& first);

/// Subgroup of an ambient group generated by explicit vectors, with a canonical presentation.
class SubgroupPresentation {
 public:
  SubgroupPresentation(const FinAbGroup& ambient, std::vector<Vec64> generators);

  const FinAbGroup& structure() const { return structure_; }
  const FinAbGroup& ambient() const { return ambient_; }
  /// Ambient element of the canonical basis vector i.
  const std::vector<Vec64>& basis() const { return basis_; }
  /// Coordinates of an ambient element lying in the subgroup; throws otherwise.
  Vec64 coordinates(const Vec64& y) const;
  bool contains(const Vec64& y) const;
  /// Integer combination of the original generators realizing given coordinates.
  Vec64 combination(const Vec64& coords) const;
  std::int64_t order() const { return structure_.order(); }

 private:
  bool solve(const Vec64& y, Vec64& c) const;

  FinAbGroup ambient_, structure_;
  std::vector<Vec64> generators_, basis_;
  std::size_t k_ = 0;
  SmithDecomposition solver_;                 // of [G | diag(a)]
  IntMatrix coord_map_, coord_inverse_;       // from generator combinations to structure
  std::vector<std::size_t> kept_;             // indices of nontrivial structure factors
};

struct HomStructure {
  FinAbGroup kernel;
  std::vector<Vec64> kernel_basis;  // source elements, one per kernel factor
  FinAbGroup cokernel;
  Mat64 projection;                 // cokernel.rank() x target.rank()
  FinAbGroup image;
  std::vector<Vec64> image_basis;   // target elements

  Vec64 project(const Vec64& y) const;
};

HomStructure hom_structure(const AbHom& m);

/// A finite group acting on a finite abelian group by automorphisms.
struct AbAction {
  FiniteGroup group;
  FinAbGroup module;
  std::vector<Mat64> matrices;  // per group element, rank x rank

  static AbAction trivial(const FiniteGroup& g, const FinAbGroup& a);
  Vec64 act(int g, const Vec64& a) const;
  bool is_trivial() const;
  /// Homomorphism into Aut(module), checked exhaustively.
  bool is_valid() const;
};

struct DualGroup {
  FinAbGroup group;   // same invariant factors
  std::int64_t modulus = 1;  // pairing lands in Z/modulus
  AbAction left_action;      // (q.chi)(a) = chi(q^-1 a)
  std::vector<Mat64> right_matrices;  // chi^q = right_matrices[q] * chi, where chi^q(a) = chi(q a)
  std::int64_t pair(const Vec64& chi, const Vec64& a) const;
};

DualGroup dual_group(const FinAbGroup& a);
DualGroup dual_group(const AbAction& band);

/// Pullback of characters along an endomorphism given by matrix m: chi -> chi o m.
Mat64 character_pullback(const FinAbGroup& a, const Mat64& m);

/// Abelian finite group (as a table) identified with its invariant-factor model.
struct AbelianCoordinates {
  FinAbGroup group;
  std::vector<Vec64> coords;                 // per element
  std::map<Vec64, int> element;              // inverse
  int element_of(const Vec64& x) const { return element.at(group.reduce(x)); }
};

AbelianCoordinates abelian_coordinates(const FiniteGroup& g);

/// The action on K (abelian normal subgroup) induced by conjugation with a section of G/K.
AbAction conjugation_band(const FiniteGroup& g, const SubgroupDatum& k, const QuotientData& qd,
                          const AbelianCoordinates& kc);

}  // namespace gerbeforge
