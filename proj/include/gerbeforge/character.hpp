/** @file character.hpp
 *  Exact character tables (Dixon's method over F_p, lifted to cyclotomic values)
 *  and floating-point irreducible representation matrices.
 */
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <json.hpp>
#include <random>

#include "gerbeforge/group.hpp"

namespace gerbeforge {

using Complex = std::complex<double>;

struct CharacterTable {
  FiniteGroup group;
  int exponent = 1;  // values are sums of exponent-th roots of unity
  std::int64_t prime = 0;
  std::vector<int> class_sizes;
  /// values[chi][cls][k]: multiplicity of zeta_exponent^k as an eigenvalue on the class.
  std::vector<std::vector<std::vector<int>>> values;
  std::vector<int> dims;

  std::size_t size() const { return values.size(); }
  Complex value(std::size_t chi, std::size_t cls) const;
  Complex value_at(std::size_t chi, int element) const { return value(chi, static_cast<std::size_t>(group.class_of(element))); }
  /// Exact first orthogonality relation.
  bool orthogonal() const;
  nlohmann::json to_json() const;
};

/// Smallest prime p = 1 mod exponent with p > 2 sqrt(order).
std::int64_t dixon_prime(int order, int exponent);

CharacterTable character_table(const FiniteGroup& g);

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double unit_double(std::mt19937_64& rng);

struct IrrepMatrices {
  std::vector<std::vector<Eigen::MatrixXcd>> matrices;  // [irrep][element]
  double homomorphism_defect = 0;
  double unitarity_defect = 0;
  double character_defect = 0;
  static constexpr double tolerance = 1e-9;

  const Eigen::MatrixXcd& at(std::size_t irrep, int element) const { return matrices[irrep][static_cast<std::size_t>(element)]; }
  bool within_tolerance() const {
    return homomorphism_defect <= tolerance && unitarity_defect <= tolerance && character_defect <= tolerance;
  }
};

/// Each irrep is cut from the left regular representation by its isotypic projector, then split
/// with a random self-adjoint operator commuting with the group.
IrrepMatrices irrep_matrices(const CharacterTable& table, std::uint64_t seed);

}  // namespace gerbeforge
