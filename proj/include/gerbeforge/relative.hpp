/** @file relative.hpp
 *  Relative cohomology H^n(G;K) as the cohomology of the mapping cone of restriction
 *  C^n(G) -> C^n(K): cochains (alpha, beta) with d(alpha, beta) = (d alpha, res alpha - d beta).
 */
#pragma once

#include "gerbeforge/cohomology.hpp"

namespace gerbeforge {

class RelativeComplex {
 public:
  RelativeComplex(FiniteGroup g, SubgroupDatum k);

  const FiniteGroup& group() const { return g_; }
  const FiniteGroup& subgroup() const { return k_group_; }
  const SubgroupDatum& subgroup_datum() const { return k_; }

  /// Coordinates of degree n: first the G-part (|G|-1)^n, then the K-part (|K|-1)^(n-1).
  std::size_t g_part(int n) const;
  std::size_t k_part(int n) const;
  std::size_t dimension(int n) const { return g_part(n) + k_part(n); }

  /// Cone differential C^n -> C^{n+1} over Z/modulus (scalar coefficients).
  ModMatrix differential(int n, std::int64_t modulus, Execution exec = Execution::parallel) const;
  ScalarFamily family(int n, Execution exec = Execution::parallel) const;

  /// Restriction matrix C^n(G) -> C^n(K).
  ModMatrix restriction(int n, std::int64_t modulus) const;

  Vec64 join(const Cochain& alpha, const Cochain& beta) const;
  Cochain alpha_part(const Vec64& x, int n, std::int64_t modulus) const;
  Cochain beta_part(const Vec64& x, int n, std::int64_t modulus) const;

 private:
  FiniteGroup g_;
  SubgroupDatum k_;
  FiniteGroup k_group_;
};

/// H^n(G;K; C^x) with representatives at |G||K| and the same headroom.
class RelativeCohomology {
 public:
  RelativeCohomology(const RelativeComplex& cx, int degree, Execution exec = Execution::parallel);

  const FinAbGroup& group() const { return cx_.group(); }
  const DivisibleCohomology& divisible() const { return cx_; }
  std::int64_t modulus() const { return cx_.modulus(); }
  int degree() const { return degree_; }

 private:
  int degree_;
  DivisibleCohomology cx_;
};

struct MiddleRowReport {
  FinAbGroup h2_g, h2_k, h3_rel, h3_g, h3_k;
  FinAbGroup coker_res2;   // H^2(K) / im H^2(G)
  FinAbGroup ker_res3;     // H^3_K(G)
  AbHom res2, iota, pi, res3;
  bool iota_after_res2_zero = false;
  bool pi_after_iota_zero = false;
  bool res3_after_pi_zero = false;
  bool exact_at_h2k = false;     // ker iota = im res2
  bool exact_at_rel = false;     // ker pi = im iota
  bool onto_ker_res3 = false;    // im pi = ker res3
  bool cardinality = false;      // |H^3(G;K)| = |coker res2| |ker res3|
  bool all() const {
    return iota_after_res2_zero && pi_after_iota_zero && res3_after_pi_zero && exact_at_h2k && exact_at_rel &&
           onto_ker_res3 && cardinality;
  }
};

/// The row H^2(G) -> H^2(K) -> H^3(G;K) -> H^3(G) -> H^3(K) of C^x cohomology, with its checks.
MiddleRowReport relative_der_complex(const FiniteGroup& g, const SubgroupDatum& k, Execution exec = Execution::parallel);

}  // namespace gerbeforge
