#include <doctest.h>

#include <functional>
#include <numeric>
#include <random>

#include "gerbeforge/errors.hpp"
#include "gerbeforge/groupoid.hpp"

using namespace gerbeforge;

namespace {

GroupAction make_action(const FiniteGroup& g, int points, const std::function<int(int, int)>& f) {
  std::vector<int> table;
  for (int q = 0; q < g.order(); ++q)
    for (int x = 0; x < points; ++x) table.push_back(f(q, x));
  return GroupAction::from_images(g, points, std::move(table));
}

GroupAction s3_natural() {
  auto s3 = symmetric_group(3);
  const std::vector<std::vector<int>> perms = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  return make_action(s3, 3, [&](int q, int x) { return perms[q][x]; });
}

GroupAction regular(const FiniteGroup& g) {
  return make_action(g, g.order(), [&](int q, int x) { return g.mul(q, x); });
}

GroupAction d4_vertices() {
  auto d4 = dihedral_group(4);
  return make_action(d4, 4, [](int q, int v) {
    const int i = q % 4, j = q / 4;
    return ((i + (j ? -v : v)) % 4 + 4) % 4;
  });
}

GroupAction z4_swap() {
  return make_action(cyclic_group(4), 2, [](int q, int x) { return (x + q) % 2; });
}

struct Case {
  const char* label;
  GroupAction action;
};

std::vector<Case> battery() {
  auto v4 = abelian_group({2, 2});
  return {{"S3 natural", s3_natural()},
          {"V4 regular", regular(v4)},
          {"D4 vertices", d4_vertices()},
          {"Z4 swapped pair", z4_swap()},
          {"V4 on a point", GroupAction::trivial(v4, 1)},
          {"S3 on two points trivially", GroupAction::trivial(symmetric_group(3), 2)}};
}

// every action of Z/m on {0..points-1}: powers of a permutation of order dividing m
std::vector<GroupAction> cyclic_actions(int m, int points) {
  std::vector<GroupAction> out;
  std::vector<int> sigma(points);
  std::iota(sigma.begin(), sigma.end(), 0);
  auto g = cyclic_group(m);
  do {
    std::vector<int> table;
    std::vector<int> cur(points);
    std::iota(cur.begin(), cur.end(), 0);
    for (int k = 0; k < m; ++k) {
      table.insert(table.end(), cur.begin(), cur.end());
      for (auto& c : cur) c = sigma[c];
    }
    bool closes = true;
    for (int x = 0; x < points; ++x) closes = closes && cur[x] == x;
    if (closes) out.push_back(GroupAction::from_images(g, points, table));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

std::vector<Vec64> all_classes(const FinAbGroup& a) { return a.elements(); }

}  // namespace

TEST_SUITE("groupoid-gerbes") {
  TEST_CASE("action groupoid examples") {
    auto v4 = abelian_group({2, 2});
    auto one = build_action_groupoid(v4, GroupAction::trivial(v4, 1));
    CHECK(one.arrow_count() == 4);
    CHECK(one.connected());
    auto disc = build_action_groupoid(FiniteGroup(), GroupAction::trivial(FiniteGroup(), 3));
    CHECK(disc.components().size() == 3);
    auto s3 = build_action_groupoid(symmetric_group(3), s3_natural());
    CHECK(s3.arrow_count() == 18);
    CHECK(s3.connected());
    CHECK_THROWS_AS(build_action_groupoid(cyclic_group(2), s3_natural()), InvalidInput);
  }

  TEST_CASE("nerve kernel matches face-by-face reference") {
    std::mt19937_64 rng(21);
    for (const auto& c : battery()) {
      auto g = build_action_groupoid(c.action.group, c.action);
      for (int n = 0; n <= 2; ++n) {
        GroupoidCochain x(g, n, 12);
        Vec64 v(x.size());
        for (auto& e : v) e = uniform_below(rng, 12);
        x.assign(v);
        CAPTURE(c.label);
        CHECK(differential(x, Execution::serial) == nerve_differential_reference(x));
        CHECK(differential(x, Execution::parallel) == nerve_differential_reference(x));
        CHECK(differential(differential(x)).is_zero());
      }
    }
  }

  TEST_CASE("transport commutes with differentials and inverts") {
    std::mt19937_64 rng(4);
    for (const auto& c : battery()) {
      auto g = build_action_groupoid(c.action.group, c.action);
      auto coeff = point_functions(c.action, 12);
      for (int n = 0; n <= 2; ++n) {
        auto x = random_cochain(g.group, coeff, n, rng);
        CAPTURE(c.label);
        CAPTURE(n);
        CHECK(transport(differential(x), g) == differential(transport(x, g)));
        CHECK(transport_inverse(transport(x, g)) == x);
      }
    }
    // degree 0: a function on X becomes the same function on objects
    auto g = build_action_groupoid(symmetric_group(3), s3_natural());
    Cochain f(g.group, point_functions(g.action, 5), 0);
    f.set(std::vector<int>{}, Vec64{1, 2, 3});
    auto t = transport(f, g);
    for (int x = 0; x < 3; ++x) CHECK(t.at(x, std::vector<int>{}) == x + 1);
    CHECK_THROWS_AS(transport(Cochain(g.group, roots_of_unity(g.group, 5), 1), g), InvalidInput);
  }

  TEST_CASE("groupoid H^2 examples") {
    for (int m = 2; m <= 4; ++m)
      for (int pts = 1; pts <= 3; ++pts)
        for (const auto& a : cyclic_actions(m, pts)) {
          GroupoidCohomology h(build_action_groupoid(a.group, a), 2);
          CHECK(h.group().trivial());
        }
    auto v4 = abelian_group({2, 2});
    CHECK(GroupoidCohomology(build_action_groupoid(v4, GroupAction::trivial(v4, 1)), 2).group() == FinAbGroup({2}));
    CHECK(GroupoidCohomology(build_action_groupoid(symmetric_group(3), s3_natural()), 2).group().trivial());
  }

  TEST_CASE("three computations of H^2 agree") {
    for (const auto& c : battery()) {
      CAPTURE(c.label);
      auto g = build_action_groupoid(c.action.group, c.action);
      GroupoidCohomology h(g, 2);
      auto induced = induced_cohomology(c.action, 2);
      std::int64_t product = 1;
      for (const auto& o : g.components()) product *= CxCohomology(subgroup_group(o.stabilizer), 2).group().order();
      CHECK(h.group() == induced.group());
      CHECK(h.group().order() == product);
      // transported induced generators classify to a generating set of the same size
      for (const auto& v : induced.generators()) {
        Cochain x(g.group, point_functions(c.action, induced.modulus()), 2);
        x.assign(v);
        auto t = transport(x, g);
        CHECK(h.divisible().is_cocycle(t.values(), t.modulus()));
      }
    }
  }

  TEST_CASE("decomposition and assembly are inverse bijections") {
    for (const auto& c : battery()) {
      CAPTURE(c.label);
      GerbeDecomposer d(build_action_groupoid(c.action.group, c.action));
      for (const auto& cls : all_classes(d.cohomology().group())) {
        auto parts = d.decompose(cls);
        CHECK(parts.size() == d.orbits().size());
        CHECK(d.assemble(parts) == d.cohomology().group().reduce(cls));
      }
      // all tuples of orbit classes
      std::vector<std::vector<Vec64>> tuples = {{}};
      for (std::size_t j = 0; j < d.orbits().size(); ++j) {
        std::vector<std::vector<Vec64>> next;
        for (const auto& t : tuples)
          for (const auto& e : d.stabilizer_cohomology(j).group().elements()) {
            auto u = t;
            u.push_back(e);
            next.push_back(u);
          }
        tuples = next;
      }
      for (const auto& t : tuples) CHECK(d.decompose(d.assemble(t)) == t);
      auto zero = Vec64(d.cohomology().group().rank(), 0);
      for (const auto& p : d.decompose(zero)) CHECK(std::all_of(p.begin(), p.end(), [](auto v) { return v == 0; }));
    }
  }

  TEST_CASE("V4 on a point carries the Schur class") {
    auto v4 = abelian_group({2, 2});
    GerbeDecomposer d(build_action_groupoid(v4, GroupAction::trivial(v4, 1)));
    auto datum = d.datum({1});
    REQUIRE(datum.orbit_decomposition.size() == 1);
    CHECK(datum.orbit_decomposition[0].coords == Vec64{1});
    auto j = datum.to_json();
    CHECK(j["decomposition"].size() == 1);
    CHECK(j["h2"] == nlohmann::json::array({2}));
  }

  TEST_CASE("other orbit representatives give conjugate, cohomologous restrictions") {
    for (const auto& c : battery()) {
      CAPTURE(c.label);
      auto g = build_action_groupoid(c.action.group, c.action);
      GerbeDecomposer d(g);
      const auto& q = g.group;
      for (const auto& cls : all_classes(d.cohomology().group())) {
        auto rep = d.cohomology().representative(cls);
        for (std::size_t j = 0; j < d.orbits().size(); ++j) {
          const auto& orb = d.orbits()[j];
          const int x = orb.representative;
          auto at_x = restrict_to_point(rep, x, orb.stabilizer);
          const auto& hx = d.stabilizer_cohomology(j);
          for (int t = 0; t < q.order(); ++t) {
            const int y = g.target(t, x);
            std::vector<int> members;
            for (int s : orb.stabilizer.members) members.push_back(q.conj(t, s));
            std::sort(members.begin(), members.end());
            auto stab_y = make_subgroup(q, members);
            auto at_y = restrict_to_point(rep, y, stab_y);
            // pull the y-restriction back to Q_x along s -> t s t^-1
            auto gy = subgroup_group(stab_y);
            GroupHom conj{subgroup_group(orb.stabilizer), gy, {}};
            for (int s : orb.stabilizer.members) conj.image.push_back(stab_y.index_of(q.conj(t, s)));
            REQUIRE(conj.is_homomorphism());
            auto pulled = pullback(at_y, conj, roots_of_unity(conj.source, at_y.coeff().module.factors()[0]));
            CHECK(hx.same_class(pulled, at_x));
          }
        }
      }
    }
  }

  TEST_CASE("twisted representation counts") {
    for (const auto& c : battery()) {
      GerbeDecomposer d(build_action_groupoid(c.action.group, c.action));
      auto zero = Vec64(d.cohomology().group().rank(), 0);
      auto count = twisted_rep_count(d, zero);
      std::size_t classes = 0;
      for (const auto& o : d.orbits()) classes += subgroup_group(o.stabilizer).classes().size();
      CHECK(count.total == classes);
    }
    auto v4 = abelian_group({2, 2});
    GerbeDecomposer d(build_action_groupoid(v4, GroupAction::trivial(v4, 1)));
    CHECK(twisted_rep_count(d, {1}).total == 1);
    // the count does not depend on the cocycle representative
    auto phi = d.stabilizer_cohomology(0).representative({1});
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 10; ++trial) {
      auto b = random_cochain(phi.group(), phi.coeff(), 1, rng);
      CHECK(regular_class_count(phi + differential(b)) == 1);
    }
    for (int m = 2; m <= 6; ++m) {
      auto z = cyclic_group(m);
      GerbeDecomposer dz(build_action_groupoid(z, regular(z)));
      CHECK(dz.cohomology().group().trivial());
      CHECK(twisted_rep_count(dz, {}).total == 1);
    }
  }

  TEST_CASE("caps and degree checks") {
    auto g = build_action_groupoid(symmetric_group(3), s3_natural());
    CHECK_THROWS_AS(GroupoidCohomology(g, 0), InvalidInput);
    CHECK_THROWS_AS(GroupoidCohomology(g, 9), CapExceeded);
    auto big = cyclic_group(60);
    CHECK_THROWS_AS(GroupoidCohomology(build_action_groupoid(big, regular(big)), 2), CapExceeded);
  }
}
