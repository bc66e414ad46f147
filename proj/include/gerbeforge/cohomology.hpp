/** @file cohomology.hpp
 *  Cohomology of finite cochain complexes over Z/M, group cohomology with finite and
 *  C^x coefficients, class identification and induced maps.
 */
#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "gerbeforge/abelian.hpp"
#include "gerbeforge/cochain.hpp"

namespace gerbeforge {

/// Solves d_prev y = x modulo the coordinate orders of x.
class BoundarySolver {
 public:
  BoundarySolver(ModMatrix d_prev, Vec64 orders, Execution exec = Execution::parallel);
  std::optional<Vec64> solve(const Vec64& x) const;
  const ModMatrix& matrix() const { return d_prev_; }

 private:
  ModMatrix d_prev_;
  Vec64 orders_;
  kernels::ModSmith smith_;
};

/// H = ker(d_next) / im(d_prev) at one degree. Coordinate i of a cochain lives in Z/orders[i],
/// every order dividing the common modulus of both matrices.
class CohomologySlice {
 public:
  CohomologySlice(ModMatrix d_prev, ModMatrix d_next, Vec64 orders, Vec64 next_orders,
                  Execution exec = Execution::parallel);

  const FinAbGroup& group() const { return group_; }
  Residue modulus() const { return d_next_.modulus(); }
  std::size_t dimension() const { return orders_.size(); }
  const Vec64& orders() const { return orders_; }

  bool is_cocycle(const Vec64& x) const;
  /// Canonical coordinates of the class of a cocycle; throws CheckFailed otherwise.
  Vec64 classify(const Vec64& x) const;
  Vec64 representative(const Vec64& coords) const;
  const std::vector<Vec64>& generators() const { return generators_; }

  /// y with d_prev y = x, if the cocycle x is a coboundary.
  std::optional<Vec64> solve_boundary(const Vec64& x) const;

  Integer cocycle_count() const;
  Integer coboundary_count() const { return cocycle_count() / Integer(static_cast<long>(group_.order())); }

  const ModMatrix& d_prev() const { return d_prev_; }
  const ModMatrix& d_next() const { return d_next_; }

 private:
  Vec64 reduce(Vec64 x) const;

  ModMatrix d_prev_, d_next_;
  Vec64 orders_, next_orders_;
  Execution exec_;
  // cocycles: x = V y with y_j in (M/g_j)Z
  ModMatrix right_, right_inverse_;
  Vec64 kernel_orders_;
  // classes: cokernel of [boundaries | diag(kernel_orders)]
  ModMatrix class_left_, class_left_inverse_;
  Vec64 class_orders_;
  std::vector<std::size_t> class_kept_;
  CyclicNormalization normal_;
  FinAbGroup group_;
  std::vector<Vec64> generators_;
  struct Lazy;
  std::shared_ptr<Lazy> lazy_;
};

/// H^n(G, A) for a finite coefficient module via the normalized bar complex.
class GroupCohomology {
 public:
  GroupCohomology(FiniteGroup g, AbAction coeff, int degree, Execution exec = Execution::parallel);

  const FinAbGroup& group() const { return slice_.group(); }
  const FiniteGroup& base() const { return base_; }
  const AbAction& coeff() const { return coeff_; }
  int degree() const { return degree_; }
  const CohomologySlice& slice() const { return slice_; }

  std::vector<Cochain> generators() const;
  Cochain representative(const Vec64& coords) const;
  Vec64 classify(const Cochain& c) const;
  std::optional<Cochain> coboundary_witness(const Cochain& c) const;

 private:
  Cochain wrap(Vec64 v) const;

  FiniteGroup base_;
  AbAction coeff_;
  int degree_;
  CohomologySlice slice_;
};

/// d_prev and d_next of a complex of free Z/m-modules, as a function of m.
struct ScalarComplex {
  ModMatrix d_prev, d_next;
};
using ScalarFamily = std::function<ScalarComplex(std::int64_t modulus)>;

/// Cohomology with C^x coefficients of a complex defined over Z, modeled on mu_M.
/// Classes are represented by mu_M cocycles; two of them agree in C^x iff their images
/// under mu_M -> mu_{M E} (x -> E x) differ by a mu_{M E} coboundary, where E kills the
/// previous C^x cohomology.
class DivisibleCohomology {
 public:
  DivisibleCohomology(const ScalarFamily& family, std::int64_t rep_modulus, std::int64_t headroom,
                      Execution exec = Execution::parallel);

  const FinAbGroup& group() const { return sub_->structure(); }
  std::int64_t modulus() const { return rep_modulus_; }
  std::int64_t headroom() const { return headroom_; }
  std::size_t dimension() const { return fine_->dimension(); }

  /// Generators at the representative modulus, one per invariant factor.
  const std::vector<Vec64>& generators() const { return generators_; }
  Vec64 representative(const Vec64& coords) const;
  /// Class of a mu_m cocycle, m dividing the representative modulus.
  Vec64 classify(const Vec64& x, std::int64_t m) const;
  bool is_cocycle(const Vec64& x, std::int64_t m) const;
  bool is_trivial(const Vec64& x, std::int64_t m) const;
  /// C^x-valued primitive at modulus m * headroom when x is trivial.
  std::optional<Vec64> trivialize(const Vec64& x, std::int64_t m) const;

  const CohomologySlice& fine() const { return *fine_; }
  const CohomologySlice& ambient() const { return *ambient_; }

 private:
  Vec64 embed(const Vec64& x, std::int64_t m) const;

  std::int64_t rep_modulus_, headroom_;
  std::shared_ptr<CohomologySlice> fine_, ambient_;
  std::shared_ptr<SubgroupPresentation> sub_;
  std::vector<Vec64> generators_;
};

/// H^n(G, C^x) with mu_{|G|} representatives.
class CxCohomology {
 public:
  CxCohomology(FiniteGroup g, int degree, Execution exec = Execution::parallel);
  /// Explicit representative modulus (a multiple of |G|).
  CxCohomology(FiniteGroup g, int degree, std::int64_t rep_modulus, Execution exec = Execution::parallel);

  const FinAbGroup& group() const { return cx_.group(); }
  const FiniteGroup& base() const { return base_; }
  int degree() const { return degree_; }
  std::int64_t modulus() const { return cx_.modulus(); }
  const DivisibleCohomology& divisible() const { return cx_; }

  std::vector<Cochain> generators() const;
  Cochain representative(const Vec64& coords) const;
  Vec64 classify(const Cochain& c) const;
  bool is_trivial(const Cochain& c) const;
  bool same_class(const Cochain& a, const Cochain& b) const;

 private:
  FiniteGroup base_;
  int degree_;
  DivisibleCohomology cx_;
};

ScalarFamily bar_family(const FiniteGroup& g, int degree, Execution exec = Execution::parallel);

/// Invariant factors > 1 of the integral bar differential C^n -> C^{n+1}, i.e. H^{n+1}(G, Z),
/// which is H^n(G, C^x) for n >= 1.
std::vector<Integer> integral_cohomology_factors(const FiniteGroup& g, int n);

struct CohomologousResult {
  bool cohomologous = false;
  std::optional<Cochain> witness;  // d(witness) = a - b
};

CohomologousResult is_cohomologous(const Cochain& a, const Cochain& b, Execution exec = Execution::parallel);

/// AbHom between computed cohomology groups given the class of the image of each source generator.
AbHom induced_from_images(const FinAbGroup& source, const FinAbGroup& target, const std::vector<Vec64>& images);

AbHom induced_map_along(const GroupCohomology& source, const GroupCohomology& target, const GroupHom& hom);
AbHom induced_map_along(const CxCohomology& source, const CxCohomology& target, const GroupHom& hom);
/// Map induced by an equivariant coefficient homomorphism over the same group.
AbHom induced_map_coefficient(const GroupCohomology& source, const GroupCohomology& target, const AbHom& coeff_map);

/// Restriction along a subgroup inclusion and inflation along a quotient projection.
GroupHom inclusion_hom(const SubgroupDatum& k);
GroupHom projection_hom(const QuotientData& qd);

}  // namespace gerbeforge
