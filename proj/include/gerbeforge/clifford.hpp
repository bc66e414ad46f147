/** @file clifford.hpp
 *  Clifford theory for K normal in G: the action of Q = G/K on Irr(K), unit intertwiners
 *  between conjugated irreps, and the stabilizer cocycles they compose to.
 */
#pragma once

#include <array>
#include <json.hpp>
#include <optional>

#include "gerbeforge/character.hpp"
#include "gerbeforge/cohomology.hpp"

namespace gerbeforge {

/// q.[V] = [V o conj_{s(q)^-1}], read off from characters.
GroupAction q_action_on_irreps(const QuotientData& quotient, const SubgroupDatum& k, const CharacterTable& k_table);

struct CliffordOrbit {
  int representative = 0;       // index into Irr(K)
  std::vector<int> points;
  SubgroupDatum stabilizer;     // in Q
  FiniteGroup stabilizer_group;
  Cochain cocycle;              // phi_x on the stabilizer, mu_modulus exponents
  double rounding_error = 0;    // max |phase - nearest root| before snapping
  double scalar_defect = 0;     // how far the composed intertwiners are from scalars
  FinAbGroup h2;
  Vec64 class_coords;
};

struct CliffordDatum {
  FiniteGroup group;
  SubgroupDatum normal;
  QuotientData quotient;
  CharacterTable k_table;
  IrrepMatrices k_irreps;
  GroupAction band;
  /// Unit intertwiner V_{q.i} -> V_i for the K-action twisted by s(q), at index q * |Irr K| + i.
  std::vector<Eigen::MatrixXcd> lines;
  double intertwiner_defect = 0;
  std::vector<CliffordOrbit> orbits;
  nlohmann::json to_json() const;
};

constexpr double phase_tolerance = 1e-6;

CliffordDatum clifford_gerbe_extract(const FiniteGroup& g, const SubgroupDatum& k, std::uint64_t seed = 1);

/// phi(a,b) - phi(b,a) on commuting pairs, as (a, b, value) in the cocycle's modulus.
std::vector<std::array<std::int64_t, 3>> commutator_pairing(const Cochain& phi);

struct FrulesReport {
  std::size_t irreps_of_g = 0;
  std::vector<std::size_t> per_orbit;  // phi_x-regular class counts
  std::size_t total = 0;
  bool counts_match = false;
  /// Per orbit: dims of G-irreps over it, the predicted dims, and whether the prediction was evaluated.
  std::vector<std::vector<int>> observed_dims, predicted_dims;
  std::vector<bool> dims_evaluated;
  bool dims_match = false;
  bool ok() const { return counts_match && dims_match; }
  nlohmann::json to_json() const;
};

/// Dims of the irreducible phi-projective representations of the cocycle's group (via the central extension by mu_M).
std::optional<std::vector<int>> projective_dims(const Cochain& phi);

FrulesReport frules_check(const CliffordDatum& cd);

}  // namespace gerbeforge
