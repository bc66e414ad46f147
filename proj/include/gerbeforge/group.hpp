/** @file group.hpp
 *  Finite groups as multiplication tables, homomorphisms, actions on finite sets.
 */
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace gerbeforge {

class FiniteGroup {
 public:
  FiniteGroup();  // trivial group

  /// Validates associativity, identity at index 0, Latin-square property.
  static FiniteGroup from_table(int order, std::vector<int> mult, std::string name = "table",
                                std::vector<std::string> labels = {});

  int order() const { return n_; }
  int mul(int a, int b) const { return t_->mult[static_cast<std::size_t>(a) * n_ + b]; }
  int inv(int a) const { return t_->inverse[a]; }
  int conj(int g, int h) const { return mul(mul(g, h), inv(g)); }  // g h g^-1
  int power(int g, long long k) const;
  int element_order(int g) const { return t_->element_order[g]; }
  int exponent() const { return t_->exponent; }
  bool is_abelian() const { return t_->abelian; }

  /// Conjugacy classes sorted by least member; each class sorted.
  const std::vector<std::vector<int>>& classes() const { return t_->classes; }
  int class_of(int g) const { return t_->class_of[g]; }

  const std::string& name() const { return t_->name; }
  const std::vector<std::string>& labels() const { return t_->labels; }
  std::string label(int g) const;
  const std::vector<int>& table() const { return t_->mult; }

  bool same_table(const FiniteGroup& other) const { return t_ == other.t_ || t_->mult == other.t_->mult; }

 private:
  struct Tables {
    std::vector<int> mult, inverse, element_order, class_of;
    std::vector<std::vector<int>> classes;
    std::vector<std::string> labels;
    std::string name;
    int exponent = 1;
    bool abelian = true;
  };
  int n_ = 1;
  std::shared_ptr<const Tables> t_;
};

struct GroupHom {
  FiniteGroup source, target;
  std::vector<int> image;

  int operator()(int g) const { return image[g]; }
  bool is_homomorphism() const;
};

struct GroupAction {
  FiniteGroup group;
  int set_size = 1;
  std::vector<int> table;  // table[g * set_size + x] = g.x

  int act(int g, int x) const { return table[static_cast<std::size_t>(g) * set_size + x]; }
  bool is_valid() const;

  static GroupAction trivial(const FiniteGroup& g, int points);
  static GroupAction from_images(const FiniteGroup& g, int points, std::vector<int> table);
};

struct SubgroupDatum {
  FiniteGroup parent;
  std::vector<int> members;  // sorted, members[0] == 0
  bool is_normal = false;

  int order() const { return static_cast<int>(members.size()); }
  bool contains(int g) const;
  /// Index of a parent element inside members, or -1.
  int index_of(int g) const;
};

/// Validates closure and computes normality.
SubgroupDatum make_subgroup(const FiniteGroup& g, std::vector<int> members);
SubgroupDatum generated_subgroup(const FiniteGroup& g, const std::vector<int>& generators);
SubgroupDatum center(const FiniteGroup& g);

/// The subgroup as a standalone group; element i corresponds to members[i].
FiniteGroup subgroup_group(const SubgroupDatum& k);

struct QuotientData {
  FiniteGroup quotient;
  GroupHom proj;
  std::vector<int> section;           // quotient element -> least coset member
  std::vector<std::vector<int>> cosets;
  std::vector<int> cocycle;           // f(q,q') = s(q)s(q')s(qq')^-1, indexed q*|Q|+q', parent elements
  int f(int q, int qq) const { return cocycle[static_cast<std::size_t>(q) * quotient.order() + qq]; }
};

QuotientData quotient_with_section(const FiniteGroup& g, const SubgroupDatum& k);

struct Orbit {
  std::vector<int> points;  // sorted
  int representative = 0;
  SubgroupDatum stabilizer;
};

std::vector<Orbit> act_orbits(const GroupAction& a);

/// Left multiplication on the left cosets gH, numbered in order of least member.
GroupAction coset_action(const FiniteGroup& g, const SubgroupDatum& h);
GroupAction regular_action(const FiniteGroup& g);

/// Action of G/K on the conjugacy classes of K (indexed as in subgroup_group(k).classes()).
GroupAction conj_band(const FiniteGroup& g, const SubgroupDatum& k);

struct AutomorphismGroup {
  FiniteGroup group;
  std::vector<std::vector<int>> maps;  // element i of group acts as maps[i]
};

AutomorphismGroup automorphism_group(const FiniteGroup& g);

/// Brute-force isomorphism test on tiny groups (generator-image backtracking).
std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b);

// Catalog and loading.
FiniteGroup cyclic_group(int n);
FiniteGroup dihedral_group(int n);  // order 2n
FiniteGroup quaternion_group();
FiniteGroup symmetric_group(int n);
FiniteGroup alternating4_group();
FiniteGroup elementary_abelian_group(int p, int k);
FiniteGroup abelian_group(const std::vector<int>& factors);
FiniteGroup heisenberg_group(int p);
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
FiniteGroup from_permutations(int degree, const std::vector<std::vector<int>>& generators);

/// Accepts `catalog:<name> <params>`, a bare catalog name, or a JSON document.
FiniteGroup load_group(const std::string& spec);

/// Stable sorted listing of catalog entry patterns.
std::vector<std::string> catalog_names();

/// Smallest generating set found greedily (deterministic).
std::vector<int> generating_set(const FiniteGroup& g);

}  // namespace gerbeforge
