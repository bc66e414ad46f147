/** @file algebra.hpp
 *  Group extensions from 2-cocycles, twisted group algebras, the strongly graded algebra R,
 *  and exact center dimensions.
 */
#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "gerbeforge/groupoid.hpp"

namespace gerbeforge {

// ---- extensions ----

/// A -> G -> Q built from a band (AbAction of Q on A) and eta in Z^2(Q, A).
/// Element (a, q) of the total group has index q * |A| + index(a).
struct ExtensionDatum {
  FiniteGroup quotient;
  AbAction band;
  Cochain eta;
  FiniteGroup total;
  std::vector<int> embed;    // element index of A -> total
  std::vector<int> proj;     // total -> quotient
  std::vector<int> section;  // quotient -> total, s(q) = (0, q)

  SubgroupDatum kernel() const;
  /// Kernel element of a total element lying over the identity.
  Vec64 kernel_coords(int total_element) const;
};

ExtensionDatum build_extension(const FiniteGroup& q, const AbAction& band, const Cochain& eta);

/// Cocycle read back from the total group through quotient_with_section, in the coordinates of Q and A.
Cochain extract_cocycle(const ExtensionDatum& e);

/// Isomorphism of extensions (commuting with embed and proj), by search over g(s(q)) = (b(q), q).
std::optional<std::vector<int>> extension_equivalence(const ExtensionDatum& a, const ExtensionDatum& b);

// ---- algebras with a monomial basis ----

/// Basis products e_i e_j are zero or zeta_N^e times a basis element.
struct MonomialAlgebra {
  struct Product {
    int index = -1;  // -1: zero
    std::int64_t exponent = 0;
  };

  std::size_t dim = 0;
  std::int64_t root_order = 1;
  std::vector<Product> table;  // dim * dim
  std::vector<std::string> labels;
  int unit = -1;  // basis index of the unit when the unit is a basis element

  const Product& product(std::size_t i, std::size_t j) const { return table[i * dim + j]; }
  bool is_associative() const;
  nlohmann::json to_json() const;
};

/// dim {z : z x = x z for every basis x}, solved exactly over Q(zeta_N).
std::size_t center_dimension(const MonomialAlgebra& a);

/// C_phi K with u_k u_k' = zeta^{phi(k,k')} u_{kk'}.
struct TwistedGroupAlgebra {
  FiniteGroup base;
  Cochain twist;
  MonomialAlgebra algebra;
};

TwistedGroupAlgebra twisted_group_algebra(const FiniteGroup& k, const Cochain& phi);

/// R = sum_q X_rho(q), X_sigma = sum_i V_sigma(i) (x) V_i^*, twisted by c in Z^2(Q, Maps(X, mu_N)).
/// Basis (q, i, a, b): matrix unit V_i -> V_{q.i}, row a, column b.
struct GradedAlgebraR {
  GroupAction band;
  std::vector<int> dims;
  Cochain cocycle;
  MonomialAlgebra algebra;
  std::vector<std::size_t> grade_start;  // first basis index of each R_q; grade_start[|Q|] = dim

  std::size_t grade_dim(int q) const { return grade_start[static_cast<std::size_t>(q) + 1] - grade_start[static_cast<std::size_t>(q)]; }
  /// dim R_q R_q' (rank of the span of the products) equals dim R_qq' for all q, q'.
  bool is_strongly_graded() const;
};

GradedAlgebraR build_graded_algebra(const GroupAction& band, const std::vector<int>& dims, const Cochain& c);

/// Groupoid class of the twist of R.
GerbeDatum extension_to_gerbe(const GradedAlgebraR& r, Execution exec = Execution::parallel);
/// R built from a representative of the groupoid class (dims default to 1).
GradedAlgebraR gerbe_to_extension(const GerbeDatum& g, std::vector<int> dims = {}, Execution exec = Execution::parallel);

}  // namespace gerbeforge
