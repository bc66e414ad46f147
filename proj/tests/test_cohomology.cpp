#include <doctest.h>

#include <random>
#include <set>

#include "gerbeforge/cohomology.hpp"
#include "gerbeforge/errors.hpp"

using namespace gerbeforge;

namespace {

// Visits every normalized cochain of the given degree, by mixed-radix enumeration.
template <class F>
void for_each_cochain(const FiniteGroup& g, const AbAction& coeff, int n, F&& visit) {
  Cochain c(g, coeff, n);
  const std::size_t len = c.values().size();
  const Vec64 orders = c.component_orders();
  Vec64 digits(len, 0);
  while (true) {
    c.assign(digits);
    visit(c);
    std::size_t i = 0;
    while (i < len && ++digits[i] == orders[i]) digits[i++] = 0;
    if (i == len) break;
  }
}

struct BruteCounts {
  std::size_t cocycles = 0, coboundaries = 0;
  std::set<Vec64> boundary_set;
};

BruteCounts brute_force(const FiniteGroup& g, const AbAction& coeff, int n) {
  BruteCounts out;
  for_each_cochain(g, coeff, n, [&](const Cochain& c) {
    if (differential(c).is_zero()) ++out.cocycles;
  });
  if (n == 0) {
    out.boundary_set.insert(Cochain(g, coeff, 0).values());
  } else {
    for_each_cochain(g, coeff, n - 1, [&](const Cochain& b) { out.boundary_set.insert(differential(b).values()); });
  }
  out.coboundaries = out.boundary_set.size();
  return out;
}

std::size_t order_of(const FinAbGroup& a) { return static_cast<std::size_t>(a.order()); }

}  // namespace

TEST_SUITE("cohomology-engine") {
  TEST_CASE("differential examples") {
    auto z2 = cyclic_group(2);
    auto mu = roots_of_unity(z2, 8);
    Cochain zero(z2, mu, 1);
    CHECK(differential(zero).is_zero());
    Cochain c(z2, mu, 1);
    c.set({1}, {3});
    // (dc)(g,g) = a + a - c(1) = 2a
    CHECK(differential(c).at({1, 1}) == Vec64{6});
  }

  TEST_CASE("d^2 = 0 on random cochains") {
    std::mt19937_64 rng(1);
    auto z2 = cyclic_group(2);
    auto s3 = symmetric_group(3);
    const std::vector<AbAction> modules = {
        roots_of_unity(cyclic_group(4), 4),
        roots_of_unity(s3, 6),
        AbAction{z2, FinAbGroup({3}), {{{1}}, {{2}}}},
        AbAction{z2, FinAbGroup({2, 4}), {{{1, 0}, {0, 1}}, {{1, 0}, {2, 1}}}},
        point_functions(GroupAction::from_images(z2, 3, {0, 1, 2, 1, 0, 2}), 4),
    };
    for (const auto& m : modules)
      for (int n = 0; n <= 2; ++n)
        for (int trial = 0; trial < 100; ++trial) {
          auto c = random_cochain(m.group, m, n, rng);
          CHECK(differential(differential(c)).is_zero());
        }
  }

  TEST_CASE("H^n(G, mu_N) agrees with brute-force enumeration") {
    struct Case {
      FiniteGroup g;
      std::int64_t modulus;
      int n;
      std::int64_t expected;  // |H| from the enumeration below, kept as a literal for readability
    };
    // |H^2(Z/n, mu_N)| = gcd(n, N) for trivial action; |H^1(S3, mu_6)| = 2; |H^2(V4, mu_2)| = 8
    const std::vector<Case> cases = {
        {cyclic_group(2), 2, 2, 2},      {cyclic_group(3), 3, 2, 3},      {cyclic_group(4), 4, 2, 4},
        {cyclic_group(4), 2, 2, 2},      {abelian_group({2, 2}), 2, 2, 8}, {symmetric_group(3), 6, 1, 2},
        {abelian_group({2, 2}), 2, 1, 4}, {cyclic_group(3), 3, 1, 3},
    };
    for (const auto& cs : cases) {
      CAPTURE(cs.g.name());
      CAPTURE(cs.n);
      auto mu = roots_of_unity(cs.g, cs.modulus);
      auto brute = brute_force(cs.g, mu, cs.n);
      REQUIRE(brute.cocycles % brute.coboundaries == 0);
      CHECK(brute.cocycles / brute.coboundaries == static_cast<std::size_t>(cs.expected));
      GroupCohomology h(cs.g, mu, cs.n, Execution::serial);
      CHECK(order_of(h.group()) == brute.cocycles / brute.coboundaries);
      CHECK(h.slice().cocycle_count() == static_cast<long>(brute.cocycles));
      CHECK(h.slice().coboundary_count() == static_cast<long>(brute.coboundaries));
    }
    GroupCohomology s3(symmetric_group(3), roots_of_unity(symmetric_group(3), 6), 1);
    CHECK(s3.group() == FinAbGroup({2}));
  }

  TEST_CASE("|Z^n| = |H^n| |B^n| on all small groups with mu_2 and twisted coefficients") {
    auto z2 = cyclic_group(2);
    std::vector<AbAction> modules;
    for (auto g : {cyclic_group(2), cyclic_group(3), cyclic_group(4), abelian_group({2, 2})})
      modules.push_back(roots_of_unity(g, 2));
    modules.push_back(AbAction{z2, FinAbGroup({3}), {{{1}}, {{2}}}});
    modules.push_back(point_functions(GroupAction::from_images(z2, 2, {0, 1, 1, 0}), 2));
    for (const auto& m : modules)
      for (int n = 0; n <= 2; ++n) {
        auto brute = brute_force(m.group, m, n);
        GroupCohomology h(m.group, m, n);
        CHECK(h.slice().cocycle_count() == static_cast<long>(brute.cocycles));
        CHECK(static_cast<std::size_t>(h.group().order()) * brute.coboundaries == brute.cocycles);
        // classification is constant exactly on cosets of the brute-force boundaries
        std::mt19937_64 rng(n);
        for (int t = 0; t < 10; ++t) {
          auto c = random_cochain(m.group, m, n, rng);
          if (!differential(c).is_zero()) continue;
          auto rep = h.representative(h.classify(c));
          CHECK(brute.boundary_set.count((c - rep).values()) == 1);
        }
      }
  }

  TEST_CASE("generators are cocycles of the stated orders") {
    auto d4 = dihedral_group(4);
    GroupCohomology h(d4, roots_of_unity(d4, 2), 2);
    CHECK(h.group() == FinAbGroup({2, 2, 2}));
    auto gens = h.generators();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      CHECK(differential(gens[i]).is_zero());
      Vec64 e(gens.size(), 0);
      e[i] = 1;
      CHECK(h.classify(gens[i]) == e);
      CHECK_FALSE(h.coboundary_witness(gens[i]).has_value());
    }
  }

  TEST_CASE("twisted coefficients: H^1 and H^2 of Z/2 acting by inversion on Z/3") {
    auto z2 = cyclic_group(2);
    AbAction inv{z2, FinAbGroup({3}), {{{1}}, {{2}}}};
    for (int n = 0; n <= 3; ++n) CHECK(GroupCohomology(z2, inv, n).group().trivial());
    // Z/2 acting by inversion on Z/4: H^1 = Z/2, H^2 = Z/2
    AbAction inv4{z2, FinAbGroup({4}), {{{1}}, {{3}}}};
    CHECK(GroupCohomology(z2, inv4, 1).group() == FinAbGroup({2}));
    CHECK(GroupCohomology(z2, inv4, 2).group() == FinAbGroup({2}));
  }

  TEST_CASE("H^n(G, C^x) examples") {
    auto v4 = abelian_group({2, 2});
    CHECK(CxCohomology(v4, 2).group() == FinAbGroup({2}));
    CHECK(integral_cohomology_factors(v4, 2) == std::vector<Integer>{2});
    for (int n : {2, 3, 4}) {
      auto z = cyclic_group(n);
      CHECK(CxCohomology(z, 3).group() == FinAbGroup({n}));
      CHECK(integral_cohomology_factors(z, 3) == std::vector<Integer>{n});
      CHECK(CxCohomology(z, 2).group().trivial());
      CHECK(integral_cohomology_factors(z, 2).empty());
    }
    // Schur multiplier of V4 by enumeration: mu_2 cocycles modulo boundaries of mu_8-valued 1-cochains
    // (mu_{2|G|} suffices for C^x primitives of mu_2 cocycles)
    auto brute = brute_force(v4, roots_of_unity(v4, 2), 2);
    std::set<Vec64> cx_boundaries;
    for_each_cochain(v4, roots_of_unity(v4, 8), 1, [&](const Cochain& y) {
      auto dy = differential(y).values();
      bool in_mu2 = true;
      for (auto& v : dy) {
        in_mu2 = in_mu2 && v % 4 == 0;
        v /= 4;
      }
      if (in_mu2) cx_boundaries.insert(dy);
    });
    CHECK(brute.cocycles / cx_boundaries.size() == 2);
  }

  TEST_CASE("C^x cohomology: integral route and mu_|G| route agree up to order 8, degree 3") {
    for (const char* spec : {"trivial", "cyclic 2", "cyclic 3", "cyclic 4", "cyclic 5", "cyclic 6", "sym 3", "cyclic 7",
                             "cyclic 8", "abelian 2 2", "abelian 2 4", "elementary-abelian 2 3", "dihedral 4",
                             "quaternion8"}) {
      auto g = load_group(spec);
      for (int n = 1; n <= 3; ++n) {
        CAPTURE(spec);
        CAPTURE(n);
        CxCohomology cx(g, n);
        Integer integral = 1;
        for (const auto& f : integral_cohomology_factors(g, n)) integral *= f;
        CHECK(Integer(static_cast<long>(cx.group().order())) == integral);
        for (const auto& gen : cx.generators()) CHECK(differential(gen).is_zero());
      }
    }
  }

  TEST_CASE("C^x classification is invariant under C^x coboundaries") {
    auto q8 = quaternion_group();
    CxCohomology cx(q8, 3);
    REQUIRE(cx.group() == FinAbGroup({8}));
    std::mt19937_64 rng(4);
    auto gen = cx.generators()[0];
    for (int t = 0; t < 5; ++t) {
      auto b = random_cochain(q8, roots_of_unity(q8, 8), 2, rng);
      auto shifted = gen + differential(b);
      CHECK(cx.classify(shifted) == Vec64{1});
      CHECK(cx.classify(shifted.scaled(3)) == Vec64{3});
    }
    CHECK(cx.is_trivial(gen.scaled(8)));
    CHECK_FALSE(cx.is_trivial(gen.scaled(4)));
  }

  TEST_CASE("is_cohomologous examples") {
    auto z2 = cyclic_group(2);
    auto mu = roots_of_unity(z2, 2);
    Cochain one(z2, mu, 2);
    one.set({1, 1}, {1});
    auto self = is_cohomologous(one, one);
    CHECK(self.cohomologous);
    REQUIRE(self.witness.has_value());
    CHECK(self.witness->is_zero());
    CHECK_FALSE(is_cohomologous(one, Cochain(z2, mu, 2)).cohomologous);

    std::mt19937_64 rng(8);
    auto d4 = dihedral_group(4);
    auto mu4 = roots_of_unity(d4, 4);
    GroupCohomology h(d4, mu4, 2);
    for (int t = 0; t < 5; ++t) {
      auto c = h.representative(h.group().element_at(static_cast<std::int64_t>(rng() % h.group().order())));
      auto b = random_cochain(d4, mu4, 1, rng);
      auto c2 = c + differential(b);
      auto r = is_cohomologous(c2, c);
      CHECK(r.cohomologous);
      REQUIRE(r.witness.has_value());
      CHECK(differential(*r.witness) == c2 - c);
    }
    Cochain f(z2, roots_of_unity(z2, 4), 1);
    f.set({1}, {1});
    CHECK_THROWS_AS(is_cohomologous(f, f), InvalidInput);
    CHECK_THROWS_AS(is_cohomologous(one, Cochain(cyclic_group(3), roots_of_unity(cyclic_group(3), 2), 2)), InvalidInput);
  }

  TEST_CASE("induced maps") {
    auto z4 = cyclic_group(4);
    auto k = make_subgroup(z4, {0, 2});
    auto qd = quotient_with_section(z4, k);
    auto z2 = qd.quotient;

    // restriction H^2(Z/4) -> H^2(Z/2) in C^x: zero map between trivial groups
    CxCohomology hz4(z4, 2), hk(subgroup_group(k), 2, 4);
    auto res = induced_map_along(hz4, hk, inclusion_hom(k));
    CHECK(res.source.trivial());
    CHECK(res.target.trivial());

    // inflation H^2(Z/2, mu_2) -> H^2(Z/4, mu_2): the pulled back generator is a boundary
    GroupCohomology h2(z2, roots_of_unity(z2, 2), 2), h4(z4, roots_of_unity(z4, 2), 2);
    auto inf = induced_map_along(h2, h4, projection_hom(qd));
    REQUIRE(inf.source == FinAbGroup({2}));
    CHECK(inf.matrix == Mat64{{0}});
    auto brute = brute_force(z4, roots_of_unity(z4, 2), 2);
    auto pulled = pullback(h2.generators()[0], projection_hom(qd), roots_of_unity(z4, 2));
    CHECK(brute.boundary_set.count(pulled.values()) == 1);

    // restriction H^2(V4) -> H^2(Z/2) kills the Schur class, with an explicit primitive
    auto v4 = abelian_group({2, 2});
    auto first = make_subgroup(v4, {0, 1});
    CxCohomology hv(v4, 2), hf(subgroup_group(first), 2, 4);
    auto schur = hv.generators()[0];
    auto restricted = pullback(schur, inclusion_hom(first), roots_of_unity(subgroup_group(first), 4));
    CHECK(hf.is_trivial(restricted));
    CHECK(induced_map_along(hv, hf, inclusion_hom(first)).target.trivial());
  }

  TEST_CASE("functoriality: restriction after inflation equals the composite") {
    for (const char* spec : {"cyclic 4", "dihedral 4", "quaternion8"}) {
      CAPTURE(spec);
      auto g = load_group(spec);
      auto z = center(g);
      auto qd = quotient_with_section(g, z);
      const FiniteGroup k = subgroup_group(z);
      for (std::int64_t m : {2, 4}) {
        GroupCohomology hq(qd.quotient, roots_of_unity(qd.quotient, m), 2);
        GroupCohomology hg(g, roots_of_unity(g, m), 2);
        GroupCohomology hk(k, roots_of_unity(k, m), 2);
        auto inf = induced_map_along(hq, hg, projection_hom(qd));
        auto res = induced_map_along(hg, hk, inclusion_hom(z));
        GroupHom composite{k, qd.quotient, {}};
        for (int x : z.members) composite.image.push_back(qd.proj(x));
        auto direct = induced_map_along(hq, hk, composite);
        CHECK(compose(res, inf).matrix == direct.matrix);
      }
    }
  }

  TEST_CASE("coefficient maps") {
    auto s3 = symmetric_group(3);
    GroupCohomology h6(s3, roots_of_unity(s3, 6), 2), h3(s3, roots_of_unity(s3, 3), 2);
    AbHom red{FinAbGroup({6}), FinAbGroup({3}), {{1}}};
    auto m = induced_map_coefficient(h6, h3, red);
    CHECK(m.is_well_defined());
    auto z2 = cyclic_group(2);
    AbAction inv{z2, FinAbGroup({4}), {{{1}}, {{3}}}};
    GroupCohomology a(z2, inv, 2), b(z2, roots_of_unity(z2, 4), 2);
    CHECK_THROWS_AS(induced_map_coefficient(a, b, AbHom{FinAbGroup({4}), FinAbGroup({4}), {{1}}}), InvalidInput);
  }

  TEST_CASE("size and degree caps") {
    CHECK_THROWS_AS(GroupCohomology(cyclic_group(2), roots_of_unity(cyclic_group(2), 2), 5), CapExceeded);
    CHECK_THROWS_AS(CxCohomology(symmetric_group(4), 4), CapExceeded);
  }
}
