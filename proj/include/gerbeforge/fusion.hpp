/** @file fusion.hpp
 *  Pointed fusion data Vec_G^omega: pentagon checks, trivializations on subgroups, the
 *  duality 3-cocycle of an abelian extension, conjugation twists, and the explicit
 *  (ell, c) model of graded extensions of Rep(A).
 */
#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "gerbeforge/algebra.hpp"
#include "gerbeforge/cohomology.hpp"
#include "gerbeforge/relative.hpp"

namespace gerbeforge {

struct Grading {
  SubgroupDatum identity_component;
  QuotientData quotient;
};

struct PointedFusionDatum {
  FiniteGroup group;
  Cochain omega;  // scalar 3-cochain, mu_N exponents
  std::optional<Grading> grading;
  nlohmann::json to_json() const;
};

PointedFusionDatum pointed_datum(const FiniteGroup& g, const Cochain& omega);
/// Graded by G/K; K must be normal.
PointedFusionDatum graded_datum(const FiniteGroup& g, const Cochain& omega, const SubgroupDatum& k);

struct PentagonReport {
  bool holds = true;
  std::vector<int> witness;  // first failing 4-tuple in lexicographic order
};

/// d omega = 0 evaluated on every 4-tuple of group elements.
PentagonReport pentagon_check(const PointedFusionDatum& d, Execution exec = Execution::parallel);
PentagonReport pentagon_check_reference(const PointedFusionDatum& d);

struct EmbeddingDatum {
  SubgroupDatum subgroup;
  FiniteGroup subgroup_group;
  Cochain restricted;  // omega|_K at the modulus of eta
  Cochain eta;         // d eta = restricted
  bool identity_holds() const { return differential(eta) == restricted; }
};

struct EmbeddingResult {
  std::optional<EmbeddingDatum> embedding;
  FinAbGroup h3;       // H^3(K, C^x)
  Vec64 obstruction;   // class of omega|_K; zero iff an embedding exists
};

EmbeddingResult embed_vec_k(const PointedFusionDatum& d, const SubgroupDatum& k);

/// phi_f(x1,x2,x3) = <chi_1, q_1 . f(q_2, q_3)> on Q x| A*, scaled to mu_N with N = lcm(|Q||A|, exp A).
PointedFusionDatum phi_f_construct(const AbAction& band, const Cochain& f);
PointedFusionDatum phi_f_construct(const ExtensionDatum& ext);

struct AlphaReport {
  FinAbGroup h2_k;                 // H^2(K, C^x)
  std::vector<Vec64> classes;      // per quotient element
  std::vector<Cochain> cochains;   // c_{s(q)^-1} on K
  bool cocycles = false;
  bool derivation = false;
  std::vector<bool> twisted;       // component q is Rep^{phi(q)}(K) with phi(q) != 0
  nlohmann::json to_json() const;
};

/// c_g(h,h') = omega(g,h,h') + omega(ghg^-1, gh'g^-1, g) - omega(ghg^-1, g, h'), corrected by the
/// trivialization of omega|_K, for g = s(q)^-1, so that phi(qq') = phi(q) + q.phi(q').
AlphaReport conjugation_cocycle_alpha(const PointedFusionDatum& d);
/// The same with a chosen eta on K, d eta = omega|_K; a relative class (omega, eta) fixes it.
AlphaReport conjugation_cocycle_alpha(const PointedFusionDatum& d, const Cochain& trivialization);

/// The middle row H^2(K)/im -> H^3(G;K) -> H^3_K(G) with alpha evaluated on every relative class.
/// A relative class (omega, eta) carries its own trivialization, so alpha lands in Der(Q, H^2(K));
/// its image modulo principal derivations depends only on omega.
struct AlphaColumnReport {
  MiddleRowReport row;
  FinAbGroup h2_k;
  std::vector<std::vector<Vec64>> alpha;  // per element of H^3(G;K), per quotient element
  std::size_t principal = 0;              // |{q -> q.beta - beta}|
  bool derivations = false;               // every alpha(x) is a derivation
  bool well_defined = false;              // alpha(x) unchanged by cone coboundaries
  bool additive = false;                  // alpha(x + y) = alpha(x) + alpha(y)
  bool left_square = false;               // alpha(iota(beta)) = q.beta - beta
  bool right_square = false;              // alpha(x) - alpha_omega(pi(x)) is principal
  bool all() const { return row.all() && derivations && well_defined && additive && left_square && right_square; }
  nlohmann::json to_json() const;
};

AlphaColumnReport alpha_column(const FiniteGroup& g, const SubgroupDatum& k, std::uint64_t seed = 0);

// ---- the (ell, c) model over an abelian extension G_eta of Q by A ----

struct RepExtensionDatum {
  ExtensionDatum base;        // G_eta
  DualGroup dual;             // A* with its Q-action
  Cochain ell;                // Z^2(Q, A*)
  Cochain c;                  // C^3(Q, mu_N)
  ExtensionDatum dual_base;   // G_ell, extension of Q by A*
  PointedFusionDatum primal;  // omega(x1,x2,x3) = <ell(q1,q2), q1 q2 a3> + c(q1,q2,q3) on G_eta
  PointedFusionDatum dual_datum;  // omega(x1,x2,x3) = <chi1, q1 eta(q2,q3)> + c(q1,q2,q3) on G_ell
  nlohmann::json to_json() const;
};

struct RepExtensionResult {
  std::optional<RepExtensionDatum> datum;
  std::string failed_stage;   // "objects", "scalars", "primal scalars", or a duality failure
  std::vector<int> witness;   // simple-object triple or group 4-tuple
};

/// Builds the product (chi,q)(chi',q') = (chi + q.chi' + ell(q,q'), qq') and checks associativity
/// of objects and of the associator.
RepExtensionResult build_rep_extension(const ExtensionDatum& ext, const Cochain& ell, const Cochain& c);

/// The cup pairing <ell(q1,q2), q1 q2 eta(q3,q4)> as a mu_m 4-cochain (m = pairing modulus).
Cochain cup_pairing(const DualGroup& dual, const Cochain& ell, const Cochain& eta);

/// A c with dc = cup_pairing(ell, eta), or nothing when the class in H^4(Q, C^x) is nonzero.
std::optional<Cochain> solve_associator(const ExtensionDatum& ext, const DualGroup& dual, const Cochain& ell);

/// Swaps the roles: base G_ell with cocycle eta read in A** = A, and the c whose primal side is
/// cohomologous to the dual side of d.
RepExtensionResult dual_rep_extension(const RepExtensionDatum& d);

/// Canonical a -> (chi -> chi(a)) from A to the dual of dual.
std::vector<Vec64> double_dual_map(const FinAbGroup& a, const DualGroup& dual, const DualGroup& double_dual);

struct RepExtensionCount {
  std::size_t candidates = 0;          // normalized ell tried
  std::size_t associative_objects = 0; // cocycles ell
  std::size_t unobstructed = 0;        // cup class vanishes
  std::size_t classes = 0;             // distinct [omega] in H^3(G_eta, C^x)
  std::size_t kernel_h2 = 0;           // |ker H^2(Q,A*) -> H^4(Q)|
  std::size_t cokernel_h1 = 0;         // |coker H^1(Q,A*) -> H^3(Q)|
  bool matches() const { return classes == kernel_h2 * cokernel_h1; }
  nlohmann::json to_json() const;
};

/// Enumerates every normalized ell: Q x Q -> A* and every c class, counting distinct pointed data,
/// next to the count predicted from cup products.
RepExtensionCount count_rep_extensions(const ExtensionDatum& ext);

// ---- O(A + A*, q) with q(a, chi) = chi(a) ----

struct OrthogonalFormGroup {
  FinAbGroup a;
  DualGroup dual;
  FiniteGroup group;
  std::vector<std::vector<int>> maps;  // element i acts as maps[i] on indices a + |A| chi
  SubgroupDatum lower_triangular;      // preserves 0 + A*
  SubgroupDatum block_diagonal;        // preserves A + 0 and 0 + A*
  nlohmann::json to_json() const;
};

OrthogonalFormGroup orthogonal_form_group(const FinAbGroup& a);

}  // namespace gerbeforge
