/** @file symmetry.hpp
 *  Actions of Q on Vec_K fixing simple objects, against actions of K on Vec_Q: mixed
 *  cochains omega(q; k, k') and eta(k; q, q') with
 *      d_K omega = 0,  d_Q omega = d_K eta,  d_Q eta = 0,
 *  modulo b(q, k) acting by (omega, eta) -> (omega + d_K b, eta + d_Q b), with C^x coefficients.
 */
#pragma once

#include <json.hpp>

#include "gerbeforge/cohomology.hpp"

namespace gerbeforge {

struct MixedCocyclePair {
  FiniteGroup q, k;
  std::int64_t modulus = 1;
  /// omega over (q; k1, k2) and eta over (k; q1, q2), first argument slowest, normalized tuples only.
  Vec64 omega, eta;

  std::int64_t omega_at(int qq, int k1, int k2) const;
  std::int64_t eta_at(int kk, int q1, int q2) const;
  nlohmann::json to_json() const;
  bool operator==(const MixedCocyclePair& o) const {
    return modulus == o.modulus && q.same_table(o.q) && k.same_table(o.k) && omega == o.omega && eta == o.eta;
  }
};

/// The three conditions, evaluated pointwise on every tuple.
bool satisfies_conditions(const MixedCocyclePair& p);

/// (omega, eta) -> (eta, omega) as a pair for (K, Q).
MixedCocyclePair transpose_pair(const MixedCocyclePair& p);

/// Gauge by b over (q; k), first argument slowest.
MixedCocyclePair gauge(const MixedCocyclePair& p, const Vec64& b);

/// Differentials C^{1,1} -> C^{1,2} + C^{2,1} -> C^{1,3} + C^{2,2} + C^{3,1} over Z/m.
ScalarFamily mixed_family(const FiniteGroup& q, const FiniteGroup& k, Execution exec = Execution::parallel);

class MixedCohomology {
 public:
  /// Representatives at lcm(|Q|, |K|), headroom |Q||K|.
  MixedCohomology(FiniteGroup q, FiniteGroup k, Execution exec = Execution::parallel);

  const FinAbGroup& group() const { return cx_.group(); }
  std::int64_t modulus() const { return cx_.modulus(); }
  MixedCocyclePair representative(const Vec64& coords) const;
  Vec64 classify(const MixedCocyclePair& p) const;
  /// Kernel membership through the assembled differential.
  bool is_cocycle(const MixedCocyclePair& p) const;
  const DivisibleCohomology& divisible() const { return cx_; }

 private:
  Vec64 flatten(const MixedCocyclePair& p) const;
  FiniteGroup q_, k_;
  DivisibleCohomology cx_;
};

/// One canonical pair per class.
std::vector<MixedCocyclePair> solve_mixed_cocycles(const FiniteGroup& q, const FiniteGroup& k);

/// Classes of eta(k; -, -) in H^2(Q, C^x), one per element of K.
std::vector<Vec64> fixed_point_classes(const MixedCocyclePair& p);

/// #simples of (Vec_K)^Q: sum over k of the eta(k)-regular class counts of Q.
std::size_t equivariant_simple_count(const MixedCocyclePair& p);

/// The same number through the gerbe on Q acting trivially on the points of K.
std::size_t equivariant_simple_count_groupoid(const MixedCocyclePair& p);

}  // namespace gerbeforge
