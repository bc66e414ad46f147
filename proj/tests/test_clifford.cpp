#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "gerbeforge/character.hpp"
#include "gerbeforge/clifford.hpp"
#include "gerbeforge/groupoid.hpp"
#include "gerbeforge/errors.hpp"

using namespace gerbeforge;

namespace {

std::vector<int> sorted_dims(const CharacterTable& t) {
  auto d = t.dims;
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<FiniteGroup> table_battery() {
  return {FiniteGroup(), cyclic_group(2), cyclic_group(5), cyclic_group(12), abelian_group({2, 2}), symmetric_group(3),
          dihedral_group(4), quaternion_group(), alternating4_group(), symmetric_group(4), dihedral_group(6),
          heisenberg_group(3), abelian_group({2, 4}), direct_product(symmetric_group(3), cyclic_group(2)), dihedral_group(12)};
}

}  // namespace

TEST_SUITE("rep-clifford") {
  TEST_CASE("Dixon prime") {
    CHECK(dixon_prime(6, 6) == 7);
    CHECK(dixon_prime(24, 12) == 13);
    CHECK(dixon_prime(1, 1) == 3);
    CHECK(dixon_prime(48, 24) == 73);
  }

  TEST_CASE("character tables: examples and exact orthogonality") {
    CHECK(sorted_dims(character_table(symmetric_group(3))) == std::vector<int>{1, 1, 2});
    CHECK(sorted_dims(character_table(dihedral_group(4))) == std::vector<int>{1, 1, 1, 1, 2});
    CHECK(sorted_dims(character_table(symmetric_group(4))) == std::vector<int>{1, 1, 2, 3, 3});
    CHECK(sorted_dims(character_table(alternating4_group())) == std::vector<int>{1, 1, 1, 3});
    auto z5 = character_table(cyclic_group(5));
    CHECK(z5.size() == 5);
    for (std::size_t chi = 0; chi < 5; ++chi)
      for (int x = 0; x < 5; ++x) CHECK(std::abs(std::pow(z5.value_at(chi, x), 5) - 1.0) < 1e-9);
    for (const auto& g : table_battery()) {
      auto t = character_table(g);
      CAPTURE(g.name());
      CHECK(t.orthogonal());
      CHECK(t.size() == g.classes().size());
      int sum = 0;
      for (int d : t.dims) sum += d * d;
      CHECK(sum == g.order());
      for (std::size_t c = 0; c < g.classes().size(); ++c) CHECK(t.values[0][c][0] == 1);
    }
    CHECK_THROWS_AS(character_table(cyclic_group(60)), CapExceeded);
  }

  TEST_CASE("irrep matrices") {
    for (const auto& g : table_battery()) {
      auto t = character_table(g);
      auto m = irrep_matrices(t, 7);
      CAPTURE(g.name());
      CHECK(m.within_tolerance());
      for (int x = 0; x < g.order(); ++x) CHECK(m.at(0, x).isApprox(Eigen::MatrixXcd::Identity(1, 1)));
    }
    auto s3 = symmetric_group(3);
    auto t = character_table(s3);
    auto m = irrep_matrices(t, 1);
    // sign character: transposition (index 1) maps to -1
    CHECK(std::abs(m.at(1, 1)(0, 0) + 1.0) < 1e-12);
    CHECK(std::abs(m.at(2, 1).trace()) < 1e-9);
    CHECK(std::abs(m.at(2, 3).trace() + 1.0) < 1e-9);
    CHECK(std::abs(m.at(2, 0).trace() - 2.0) < 1e-9);
    // deterministic in the seed
    auto again = irrep_matrices(t, 1);
    for (int x = 0; x < 6; ++x) CHECK(again.at(2, x) == m.at(2, x));
  }
}

namespace {

SubgroupDatum involution_class_subgroup(const FiniteGroup& g, int class_size) {
  std::vector<int> members{0};
  for (const auto& c : g.classes())
    if (static_cast<int>(c.size()) == class_size && g.mul(c.front(), c.front()) == 0) members.insert(members.end(), c.begin(), c.end());
  return make_subgroup(g, members);
}

struct Pair {
  FiniteGroup group;
  SubgroupDatum normal;
};

std::vector<Pair> clifford_battery() {
  auto s3 = symmetric_group(3), d4 = dihedral_group(4), q8 = quaternion_group(), z4 = cyclic_group(4);
  auto a4 = alternating4_group(), s4 = symmetric_group(4);
  std::vector<Pair> out{{s3, make_subgroup(s3, {0, 3, 4})}, {d4, make_subgroup(d4, {0, 1, 2, 3})}, {d4, center(d4)},
                        {q8, center(q8)}, {z4, make_subgroup(z4, {0, 2})}, {a4, involution_class_subgroup(a4, 3)},
                        {s4, involution_class_subgroup(s4, 3)}, {dihedral_group(6), center(dihedral_group(6))}};
  for (auto g : {s3, d4, q8, cyclic_group(6)}) {
    std::vector<int> all(static_cast<std::size_t>(g.order()));
    std::iota(all.begin(), all.end(), 0);
    out.push_back({g, make_subgroup(g, all)});
  }
  return out;
}

bool all_zero(const Vec64& v) {
  return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

}  // namespace

TEST_SUITE("rep-clifford") {
  TEST_CASE("action of the quotient on Irr(K)") {
    auto s3 = symmetric_group(3);
    auto a3 = make_subgroup(s3, {0, 3, 4});
    auto t = character_table(subgroup_group(a3));
    auto qd = quotient_with_section(s3, a3);
    auto band = q_action_on_irreps(qd, a3, t);
    CHECK(act_orbits(band).size() == 2);
    CHECK(band.act(1, 0) == 0);
    CHECK(band.act(1, 1) == 2);

    auto d4 = dihedral_group(4);
    auto z = center(d4);
    auto central = q_action_on_irreps(quotient_with_section(d4, z), z, character_table(subgroup_group(z)));
    CHECK(act_orbits(central).size() == 2);

    auto rot = make_subgroup(d4, {0, 1, 2, 3});
    auto rt = character_table(subgroup_group(rot));
    auto rq = quotient_with_section(d4, rot);
    auto rb = q_action_on_irreps(rq, rot, rt);
    std::vector<std::size_t> sizes;
    for (const auto& o : act_orbits(rb)) sizes.push_back(o.points.size());
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<std::size_t>{1, 1, 2});

    // any other section gives the same action
    for (const auto& p : clifford_battery()) {
      auto kt = character_table(subgroup_group(p.normal));
      auto qd2 = quotient_with_section(p.group, p.normal);
      auto base = q_action_on_irreps(qd2, p.normal, kt);
      for (std::size_t q = 0; q < qd2.section.size(); ++q) qd2.section[q] = qd2.cosets[q].back();
      CHECK(q_action_on_irreps(qd2, p.normal, kt).table == base.table);
    }
  }

  TEST_CASE("stabilizer cocycles: examples") {
    auto s3 = symmetric_group(3);
    auto cs = clifford_gerbe_extract(s3, make_subgroup(s3, {0, 3, 4}));
    for (const auto& o : cs.orbits) CHECK(all_zero(o.class_coords));

    auto z4 = cyclic_group(4);
    auto cz = clifford_gerbe_extract(z4, make_subgroup(z4, {0, 2}));
    CHECK(cz.orbits.size() == 2);
    for (const auto& o : cz.orbits) CHECK(all_zero(o.class_coords));

    // D4 over its center: the sign of Z2 carries the Schur class of V4
    auto d4 = dihedral_group(4);
    auto cd = clifford_gerbe_extract(d4, center(d4));
    REQUIRE(cd.orbits.size() == 2);
    CHECK(all_zero(cd.orbits[0].class_coords));
    CHECK(cd.orbits[1].h2.order() == 2);
    CHECK_FALSE(all_zero(cd.orbits[1].class_coords));
    CHECK(cd.to_json()["orbits"].size() == 2);
  }

  TEST_CASE("cocycles are closed, snapped within tolerance, and seed independent") {
    for (const auto& p : clifford_battery()) {
      auto a = clifford_gerbe_extract(p.group, p.normal, 1);
      auto b = clifford_gerbe_extract(p.group, p.normal, 7);
      CHECK(a.intertwiner_defect < 1e-8);
      REQUIRE(a.orbits.size() == b.orbits.size());
      for (std::size_t j = 0; j < a.orbits.size(); ++j) {
        const auto& o = a.orbits[j];
        CHECK(o.rounding_error <= phase_tolerance);
        CHECK(differential(o.cocycle).is_zero());
        CHECK(o.class_coords == b.orbits[j].class_coords);
        CHECK(commutator_pairing(o.cocycle) == commutator_pairing(b.orbits[j].cocycle));
      }
    }
  }

  TEST_CASE("irreps of G from the orbit data") {
    for (const auto& p : clifford_battery()) {
      CAPTURE(p.group.name());
      auto r = frules_check(clifford_gerbe_extract(p.group, p.normal));
      CHECK(r.counts_match);
      CHECK(r.dims_match);
      CHECK(r.to_json()["total"] == r.irreps_of_g);
    }
    auto q8 = quaternion_group();
    auto r = frules_check(clifford_gerbe_extract(q8, center(q8)));
    CHECK(r.total == 5);
    CHECK(std::all_of(r.dims_evaluated.begin(), r.dims_evaluated.end(), [](bool b) { return b; }));
  }

  TEST_CASE("projective dims") {
    auto v4 = abelian_group({2, 2});
    CHECK(projective_dims(Cochain(v4, roots_of_unity(v4, 2), 2)) == std::vector<int>{1, 1, 1, 1});
    CxCohomology h(v4, 2, 4);
    auto schur = h.representative(Vec64{1});
    CHECK(projective_dims(schur) == std::vector<int>{2});
    CHECK(commutator_pairing(schur).size() == 16);
  }
}
