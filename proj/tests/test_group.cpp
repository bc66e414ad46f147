#include <doctest.h>

#include <set>

#include "gerbeforge/errors.hpp"
#include "gerbeforge/group.hpp"

using namespace gerbeforge;

namespace {

bool full_axioms(const FiniteGroup& g) {
  const int n = g.order();
  for (int a = 0; a < n; ++a) {
    if (g.mul(0, a) != a || g.mul(a, 0) != a) return false;
    if (g.mul(a, g.inv(a)) != 0) return false;
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) return false;
  }
  return true;
}

// conjugacy classes by orbit enumeration, independent of the cached ones
int count_classes(const FiniteGroup& g) {
  std::set<std::set<int>> seen;
  for (int h = 0; h < g.order(); ++h) {
    std::set<int> cls;
    for (int x = 0; x < g.order(); ++x) cls.insert(g.conj(x, h));
    seen.insert(cls);
  }
  return static_cast<int>(seen.size());
}

}  // namespace

TEST_SUITE("group-core") {
  TEST_CASE("catalog groups satisfy the group axioms") {
    for (const char* spec : {"cyclic 1", "cyclic 4", "cyclic 7", "dihedral 3", "dihedral 4", "quaternion8", "sym 3",
                             "sym 4", "alt4", "elementary-abelian 2 3", "heisenberg 3", "abelian 2 4"}) {
      CAPTURE(spec);
      auto g = load_group(spec);
      CHECK(full_axioms(g));
    }
  }

  TEST_CASE("load_group examples") {
    auto c4 = load_group("catalog:cyclic 4");
    REQUIRE(c4.order() == 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) CHECK(c4.mul(i, j) == (i + j) % 4);
    auto s3 = load_group("sym 3");
    CHECK(s3.order() == 6);
    CHECK(count_classes(s3) == 3);
    CHECK(s3.classes().size() == 3);
    CHECK(load_group("dihedral 4").order() == 8);
    CHECK(load_group("heisenberg 3").order() == 27);

    // idempotent non-identity element
    CHECK_THROWS_AS(load_group(R"({"order": 2, "mult": [[0,1],[1,1]]})"), InvalidInput);
    // Latin square that is not associative (order 5 loop)
    CHECK_THROWS_AS(load_group(R"({"order": 5, "mult": [[0,1,2,3,4],[1,0,3,4,2],[2,4,0,1,3],[3,2,4,0,1],[4,3,1,2,0]]})"),
                    InvalidInput);
    auto perm = load_group(R"({"degree": 3, "generators": [[1,0,2],[1,2,0]]})");
    CHECK(perm.order() == 6);
    CHECK(find_isomorphism(perm, s3).has_value());
  }

  TEST_CASE("generator closure respects the order cap") {
    // S5 has order 120 > 96
    CHECK_THROWS_AS(load_group(R"({"degree": 5, "generators": [[1,0,2,3,4],[1,2,3,4,0]]})"), CapExceeded);
  }

  TEST_CASE("quotient_with_section examples") {
    auto z4 = cyclic_group(4);
    auto qd = quotient_with_section(z4, make_subgroup(z4, {0, 2}));
    REQUIRE(qd.quotient.order() == 2);
    CHECK(qd.f(1, 1) == 2);
    CHECK(qd.f(0, 1) == 0);

    auto v4 = abelian_group({2, 2});
    auto first = make_subgroup(v4, {0, 1});
    auto qv = quotient_with_section(v4, first);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) CHECK(qv.f(a, b) == 0);

    auto s3 = symmetric_group(3);
    auto a3 = generated_subgroup(s3, {3});
    REQUIRE(a3.order() == 3);
    auto qs = quotient_with_section(s3, a3);
    const int s = qs.section[1];
    for (int k : a3.members)
      if (k != 0) CHECK(s3.conj(s, k) == s3.inv(k));

    CHECK_THROWS_AS(quotient_with_section(s3, generated_subgroup(s3, {1})), InvalidInput);
  }

  TEST_CASE("section identity and coset ordering") {
    for (const char* spec : {"dihedral 4", "quaternion8", "alt4", "sym 4"}) {
      auto g = load_group(spec);
      auto z = center(g);
      auto qd = quotient_with_section(g, z);
      const int nq = qd.quotient.order();
      CHECK(qd.section[0] == 0);
      for (int q = 0; q < nq; ++q) {
        CHECK(qd.proj(qd.section[q]) == q);
        for (int r = 0; r < nq; ++r)
          CHECK(g.mul(g.mul(qd.section[q], qd.section[r]), g.inv(qd.section[qd.quotient.mul(q, r)])) == qd.f(q, r));
      }
      for (int q = 1; q < nq; ++q) CHECK(qd.cosets[q - 1][0] < qd.cosets[q][0]);
    }
  }

  TEST_CASE("act_orbits examples and orbit-stabilizer") {
    auto s3 = symmetric_group(3);
    std::vector<int> table;
    // natural action read off the permutation labels: element index -> permutation in lexicographic order
    const std::vector<std::vector<int>> perms = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (const auto& p : perms)
      for (int x = 0; x < 3; ++x) table.push_back(p[x]);
    auto nat = GroupAction::from_images(s3, 3, table);
    auto orbits = act_orbits(nat);
    REQUIRE(orbits.size() == 1);
    CHECK(orbits[0].stabilizer.order() == 2);

    auto triv = act_orbits(GroupAction::trivial(s3, 1));
    REQUIRE(triv.size() == 1);
    CHECK(triv[0].stabilizer.order() == 6);

    auto z2 = cyclic_group(2);
    auto swap = GroupAction::from_images(z2, 3, {0, 1, 2, 1, 0, 2});
    auto so = act_orbits(swap);
    REQUIRE(so.size() == 2);
    CHECK(so[0].points == std::vector<int>{0, 1});
    CHECK(so[0].stabilizer.order() == 1);
    CHECK(so[1].points == std::vector<int>{2});
    CHECK(so[1].stabilizer.order() == 2);

    for (const auto& o : so) CHECK(static_cast<int>(o.points.size()) * o.stabilizer.order() == 2);
  }

  TEST_CASE("coset and regular actions") {
    for (const auto& g : {symmetric_group(3), dihedral_group(4), alternating4_group()}) {
      CAPTURE(g.name());
      auto reg = regular_action(g);
      CHECK(reg.is_valid());
      CHECK(reg.set_size == g.order());
      REQUIRE(act_orbits(reg).size() == 1);
      CHECK(act_orbits(reg)[0].stabilizer.order() == 1);
      for (int i = 0; i < g.order(); ++i) {
        auto h = generated_subgroup(g, {i});
        auto a = coset_action(g, h);
        CHECK(a.is_valid());
        CHECK(a.set_size * h.order() == g.order());
        auto orbits = act_orbits(a);
        REQUIRE(orbits.size() == 1);
        // the coset containing the identity is point 0, fixed exactly by H
        CHECK(orbits[0].representative == 0);
        CHECK(orbits[0].stabilizer.members == h.members);
      }
    }
  }

  TEST_CASE("conj_band examples") {
    auto s3 = symmetric_group(3);
    auto a3 = generated_subgroup(s3, {3});
    auto band = conj_band(s3, a3);
    REQUIRE(band.set_size == 3);
    CHECK(band.act(1, 0) == 0);
    CHECK(band.act(1, 1) == 2);
    CHECK(band.act(1, 2) == 1);

    auto d4 = dihedral_group(4);
    auto zb = conj_band(d4, center(d4));
    for (int q = 0; q < zb.group.order(); ++q)
      for (int x = 0; x < zb.set_size; ++x) CHECK(zb.act(q, x) == x);

    // S4 permutes the three nontrivial classes of V4
    auto s4 = symmetric_group(4);
    auto v = make_subgroup(s4, {0, 7, 16, 23});
    REQUIRE(v.is_normal);
    auto vb = conj_band(s4, v);
    CHECK(vb.is_valid());
    CHECK(act_orbits(vb).size() == 2);
  }

  TEST_CASE("automorphism_group examples") {
    CHECK(automorphism_group(cyclic_group(4)).group.order() == 2);
    auto av = automorphism_group(abelian_group({2, 2}));
    CHECK(av.group.order() == 6);
    CHECK(find_isomorphism(av.group, symmetric_group(3)).has_value());
    CHECK(automorphism_group(FiniteGroup()).group.order() == 1);
    CHECK(automorphism_group(dihedral_group(4)).group.order() == 8);
    CHECK(automorphism_group(symmetric_group(4)).group.order() == 24);
    CHECK_THROWS_AS(automorphism_group(cyclic_group(30)), CapExceeded);
  }
}
