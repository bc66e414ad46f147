/** @file groupoid.hpp
 *  Action groupoids Q x| X, their C^x cohomology, transport from induced coefficients,
 *  and the split of a gerbe into central extensions of the stabilizers.
 */
#pragma once

#include <json.hpp>

#include "gerbeforge/cohomology.hpp"

namespace gerbeforge {

/// Arrows are pairs (q, x): x -> q.x. Composition (q', q.x) o (q, x) = (q'q, x).
struct ActionGroupoid {
  FiniteGroup group;
  GroupAction action;

  int points() const { return action.set_size; }
  std::size_t arrow_count() const { return static_cast<std::size_t>(group.order()) * points(); }
  int target(int q, int x) const { return action.act(q, x); }
  std::vector<Orbit> components() const { return act_orbits(action); }
  bool connected() const { return components().size() == 1; }
};

ActionGroupoid build_action_groupoid(const FiniteGroup& q, const GroupAction& a);

/// Normalized mu_N cochain on strings x -q_n-> ... -q_1-> of non-identity arrows;
/// stored at index x * (|Q|-1)^n + tuple(q_1..q_n).
class GroupoidCochain {
 public:
  GroupoidCochain(ActionGroupoid g, int degree, std::int64_t modulus);

  const ActionGroupoid& groupoid() const { return g_; }
  int degree() const { return degree_; }
  std::int64_t modulus() const { return modulus_; }
  std::size_t tuple_count() const { return tuples_; }
  std::size_t size() const { return values_.size(); }

  /// Value on the string starting at x; zero when some arrow is an identity.
  std::int64_t at(int x, std::span<const int> arrows) const;
  void set(int x, std::span<const int> arrows, std::int64_t v);
  const Vec64& values() const { return values_; }
  void assign(Vec64 v);

  GroupoidCochain operator+(const GroupoidCochain& o) const;
  GroupoidCochain operator-(const GroupoidCochain& o) const;
  bool operator==(const GroupoidCochain& o) const { return degree_ == o.degree_ && values_ == o.values_; }
  bool is_zero() const;
  nlohmann::json to_json() const;

 private:
  long long index(int x, std::span<const int> arrows) const;

  ActionGroupoid g_;
  int degree_;
  std::int64_t modulus_;
  std::size_t tuples_;
  Vec64 values_;
};

ModMatrix nerve_differential_matrix(const ActionGroupoid& g, int n, std::int64_t modulus,
                                    Execution exec = Execution::parallel);
/// Straight face-by-face evaluation, kept as the oracle for the assembled matrix.
GroupoidCochain nerve_differential_reference(const GroupoidCochain& c);
GroupoidCochain differential(const GroupoidCochain& c, Execution exec = Execution::parallel);

ScalarFamily nerve_family(const ActionGroupoid& g, int degree, Execution exec = Execution::parallel);
/// Bar complex of Q with coefficients Maps(X, mu_m), as a scalar family.
ScalarFamily induced_family(const GroupAction& a, int degree, Execution exec = Execution::parallel);

/// H^n(Q x| X, C^x), n >= 1, with mu_{|Q|} representatives.
class GroupoidCohomology {
 public:
  GroupoidCohomology(ActionGroupoid g, int degree, Execution exec = Execution::parallel);
  /// Explicit representative modulus (a multiple of |Q|).
  GroupoidCohomology(ActionGroupoid g, int degree, std::int64_t rep_modulus, Execution exec = Execution::parallel);

  const FinAbGroup& group() const { return cx_.group(); }
  const ActionGroupoid& groupoid() const { return g_; }
  int degree() const { return degree_; }
  std::int64_t modulus() const { return cx_.modulus(); }
  const DivisibleCohomology& divisible() const { return cx_; }

  std::vector<GroupoidCochain> generators() const;
  GroupoidCochain representative(const Vec64& coords) const;
  Vec64 classify(const GroupoidCochain& c) const;

 private:
  ActionGroupoid g_;
  int degree_;
  DivisibleCohomology cx_;
};

/// H^n(Q, Maps(X, C^x)) with mu_{|Q|} representatives.
DivisibleCohomology induced_cohomology(const GroupAction& a, int degree, Execution exec = Execution::parallel);

/// T(c)(x; q_1..q_n) = c(q_1..q_n) evaluated at the target q_1...q_n.x.
/// The coefficient module must be Maps(X, mu_N) with (q.f)(x) = f(q^-1 x).
GroupoidCochain transport(const Cochain& c, const ActionGroupoid& g);
Cochain transport_inverse(const GroupoidCochain& c);

/// Loops at x: the cochain on the stabilizer of x (in subgroup numbering).
Cochain restrict_to_point(const GroupoidCochain& c, int x, const SubgroupDatum& stabilizer);

struct OrbitEntry {
  int representative = 0;
  SubgroupDatum stabilizer;
  FiniteGroup stabilizer_group;
  FinAbGroup h2;  // H^2(Q_x, C^x)
  Vec64 coords;   // class in h2
};

struct GerbeDatum {
  ActionGroupoid groupoid;
  std::int64_t rep_modulus = 0;  // coordinates refer to GroupoidCohomology at this modulus
  FinAbGroup h2;
  Vec64 coords;
  std::vector<OrbitEntry> orbit_decomposition;
  nlohmann::json to_json() const;
};

/// Precomputed H^2 of the groupoid and of each stabilizer, for repeated (de)composition.
class GerbeDecomposer {
 public:
  GerbeDecomposer(ActionGroupoid g, Execution exec = Execution::parallel);
  GerbeDecomposer(ActionGroupoid g, std::int64_t rep_modulus, Execution exec = Execution::parallel);

  const GroupoidCohomology& cohomology() const { return *h2_; }
  const std::vector<Orbit>& orbits() const { return orbits_; }
  const CxCohomology& stabilizer_cohomology(std::size_t j) const { return stab_h2_[j]; }

  /// Per-orbit classes of a groupoid class.
  std::vector<Vec64> decompose(const Vec64& coords) const;
  /// Groupoid class pulled back along the retraction onto the representatives.
  Vec64 assemble(const std::vector<Vec64>& orbit_coords) const;
  GerbeDatum datum(const Vec64& coords) const;

  /// Pullback of a stabilizer cocycle along F(q, y) = t_{qy}^-1 q t_y.
  GroupoidCochain spread(std::size_t orbit, const Cochain& cocycle) const;

 private:
  ActionGroupoid g_;
  std::shared_ptr<GroupoidCohomology> h2_;
  std::vector<Orbit> orbits_;
  std::vector<FiniteGroup> stab_groups_;
  std::vector<CxCohomology> stab_h2_;
  std::vector<int> transversal_;  // point y -> t_y with t_y . rep = y
  std::vector<int> orbit_of_;
};

/// Conjugacy classes of g whose members c satisfy phi(c, z) = phi(z, c) for all z commuting with c.
std::size_t regular_class_count(const Cochain& phi);

struct TwistedCount {
  std::vector<std::size_t> per_orbit;
  std::size_t total = 0;
};

TwistedCount twisted_rep_count(const GerbeDecomposer& d, const Vec64& coords);

}  // namespace gerbeforge
