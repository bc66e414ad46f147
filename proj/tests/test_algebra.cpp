#include <doctest.h>

#include <functional>
#include <random>

#include "gerbeforge/algebra.hpp"
#include "gerbeforge/cyclotomic.hpp"
#include "gerbeforge/errors.hpp"
#include "gerbeforge/limits.hpp"

using namespace gerbeforge;

namespace {

GroupAction make_action(const FiniteGroup& g, int points, const std::function<int(int, int)>& f) {
  std::vector<int> table;
  for (int q = 0; q < g.order(); ++q)
    for (int x = 0; x < points; ++x) table.push_back(f(q, x));
  return GroupAction::from_images(g, points, std::move(table));
}

// Z/2 acting on A by the given automorphism matrix
AbAction z2_band(const FinAbGroup& a, const Mat64& flip) {
  Mat64 id(a.rank(), Vec64(a.rank(), 0));
  for (std::size_t i = 0; i < a.rank(); ++i) id[i][i] = 1;
  return AbAction{cyclic_group(2), a, {id, flip}};
}

std::vector<AbAction> extension_battery() {
  auto z4 = cyclic_group(4);
  auto v4 = abelian_group({2, 2});
  auto z3 = cyclic_group(3);
  return {AbAction::trivial(cyclic_group(2), FinAbGroup({2})),
          AbAction::trivial(cyclic_group(2), FinAbGroup({4})),
          z2_band(FinAbGroup({4}), {{3}}),
          z2_band(FinAbGroup({3}), {{2}}),
          z2_band(FinAbGroup({2, 2}), {{0, 1}, {1, 0}}),
          AbAction::trivial(z4, FinAbGroup({2})),
          AbAction::trivial(v4, FinAbGroup({2})),
          AbAction::trivial(z3, FinAbGroup({3})),
          AbAction::trivial(z4, FinAbGroup({4}))};
}

Cochain random_twisted_cocycle(const GroupAction& band, std::mt19937_64& rng) {
  auto h = induced_cohomology(band, 2);
  Vec64 coords;
  for (auto f : h.group().factors()) coords.push_back(uniform_below(rng, f));
  Cochain c(band.group, point_functions(band, h.modulus()), 2);
  c.assign(h.representative(coords));
  return c + differential(random_cochain(band.group, c.coeff(), 1, rng));
}

std::size_t regular_total(const GerbeDatum& g) {
  std::size_t total = 0;
  for (const auto& e : g.orbit_decomposition) {
    CxCohomology h(e.stabilizer_group, 2, g.rep_modulus);
    total += regular_class_count(h.representative(e.coords));
  }
  return total;
}

}  // namespace

TEST_SUITE("extension-algebras") {
  TEST_CASE("cyclotomic arithmetic") {
    CHECK(cyclotomic_polynomial(1) == std::vector<long long>{-1, 1});
    CHECK(cyclotomic_polynomial(12) == std::vector<long long>{1, 0, -1, 0, 1});
    CHECK(cyclotomic_polynomial(15).size() == 9);
    for (int n : {1, 2, 3, 4, 6, 8, 12, 24}) {
      CyclotomicField f(n);
      CHECK(f.root(n) == f.one());
      CHECK(f.mul(f.root(1), f.root(n - 1)) == f.one());
      auto x = f.add(f.root(1), f.from_rational(mpq_class(2, 3)));
      CHECK(f.mul(x, f.inv(x)) == f.one());
      // sum of all n-th roots vanishes for n > 1
      auto s = f.zero();
      for (int k = 0; k < n; ++k) s = f.add(s, f.root(k));
      CHECK(f.is_zero(s) == (n > 1));
    }
  }

  TEST_CASE("extension examples") {
    auto z2 = cyclic_group(2);
    auto triv = AbAction::trivial(z2, FinAbGroup({2}));
    Cochain eta(z2, triv, 2);
    eta.set(std::vector<int>{1, 1}, Vec64{1});
    auto e = build_extension(z2, triv, eta);
    CHECK(find_isomorphism(e.total, cyclic_group(4)).has_value());
    auto split = build_extension(z2, triv, Cochain(z2, triv, 2));
    CHECK(find_isomorphism(split.total, abelian_group({2, 2})).has_value());
    auto inv = z2_band(FinAbGroup({3}), {{2}});
    auto s3 = build_extension(z2, inv, Cochain(z2, inv, 2));
    CHECK(find_isomorphism(s3.total, symmetric_group(3)).has_value());
    CHECK(s3.kernel().is_normal);
    Cochain bad(z2, inv, 2);
    bad.set(std::vector<int>{1, 1}, Vec64{1});
    CHECK_THROWS_AS(build_extension(z2, inv, bad), InvalidInput);
  }

  TEST_CASE("extensions biject with H^2(Q, A)") {
    std::mt19937_64 rng(12);
    for (const auto& band : extension_battery()) {
      GroupCohomology h(band.group, band, 2);
      std::vector<ExtensionDatum> built;
      for (const auto& cls : h.group().elements()) {
        auto eta = h.representative(cls) + differential(random_cochain(band.group, band, 1, rng));
        auto e = build_extension(band.group, band, eta);
        auto back = extract_cocycle(e);
        CHECK(is_cohomologous(back, eta).cohomologous);
        CHECK(h.classify(back) == cls);
        built.push_back(std::move(e));
      }
      for (std::size_t i = 0; i < built.size(); ++i)
        for (std::size_t j = 0; j < built.size(); ++j)
          CHECK(extension_equivalence(built[i], built[j]).has_value() == (i == j));
    }
  }

  TEST_CASE("twisted group algebras") {
    auto s3 = symmetric_group(3);
    auto c3 = twisted_group_algebra(s3, Cochain(s3, roots_of_unity(s3, 2), 2));
    CHECK(center_dimension(c3.algebra) == 3);
    auto z4 = cyclic_group(4);
    CHECK(center_dimension(twisted_group_algebra(z4, Cochain(z4, roots_of_unity(z4, 2), 2)).algebra) == 4);

    auto v4 = abelian_group({2, 2});
    CxCohomology hv(v4, 2);
    auto schur = twisted_group_algebra(v4, hv.representative({1}));
    CHECK(schur.algebra.is_associative());
    CHECK(center_dimension(schur.algebra) == 1);

    // every twist of a cyclic group is a coboundary
    std::mt19937_64 rng(3);
    for (int n : {2, 3, 4, 6}) {
      auto z = cyclic_group(n);
      GroupCohomology mu(z, roots_of_unity(z, n), 2);
      for (const auto& cls : mu.group().elements()) {
        auto phi = mu.representative(cls);
        CxCohomology cx(z, 2);
        CHECK(cx.is_trivial(phi));
        CHECK(center_dimension(twisted_group_algebra(z, phi).algebra) == static_cast<std::size_t>(n));
      }
    }
  }

  TEST_CASE("center dimension equals regular class count") {
    std::mt19937_64 rng(17);
    for (const auto& g : {abelian_group({2, 2}), dihedral_group(4), quaternion_group(), abelian_group({2, 4}),
                          symmetric_group(3), abelian_group({3, 3})}) {
      CxCohomology h(g, 2);
      for (const auto& cls : h.group().elements()) {
        auto phi = h.representative(cls) + differential(random_cochain(g, roots_of_unity(g, h.modulus()), 1, rng));
        auto alg = twisted_group_algebra(g, phi);
        CAPTURE(g.name());
        CHECK(alg.algebra.is_associative());
        CHECK(center_dimension(alg.algebra) == regular_class_count(phi));
      }
    }
  }

  TEST_CASE("graded algebra examples") {
    // Q = 1: R = S is a sum of matrix blocks
    FiniteGroup one;
    auto band1 = GroupAction::trivial(one, 3);
    auto r1 = build_graded_algebra(band1, {1, 2, 3}, Cochain(one, point_functions(band1, 2), 2));
    CHECK(r1.algebra.dim == 14);
    CHECK(center_dimension(r1.algebra) == 3);
    CHECK(r1.algebra.is_associative());

    for (int p : {2, 3}) {
      auto zp = cyclic_group(p);
      // regular band: R is the full matrix algebra M_p
      auto reg = make_action(zp, p, [&](int q, int x) { return zp.mul(q, x); });
      auto rr = build_graded_algebra(reg, std::vector<int>(static_cast<std::size_t>(p), 1), Cochain(zp, point_functions(reg, 2), 2));
      CHECK(rr.algebra.dim == static_cast<std::size_t>(p * p));
      CHECK(center_dimension(rr.algebra) == 1);
      // trivial band: R is p copies of C[Z/p]
      auto tb = GroupAction::trivial(zp, p);
      auto rt = build_graded_algebra(tb, std::vector<int>(static_cast<std::size_t>(p), 1), Cochain(zp, point_functions(tb, 2), 2));
      CHECK(rt.algebra.dim == static_cast<std::size_t>(p * p));
      CHECK(center_dimension(rt.algebra) == static_cast<std::size_t>(p * p));
    }

    auto v4 = abelian_group({2, 2});
    auto pt = GroupAction::trivial(v4, 1);
    CxCohomology hv(v4, 2);
    auto phi = hv.representative({1});
    Cochain c(v4, point_functions(pt, phi.modulus()), 2);
    c.assign(phi.values());
    auto rs = build_graded_algebra(pt, {1}, c);
    CHECK(rs.algebra.table.size() == twisted_group_algebra(v4, phi).algebra.table.size());
    CHECK(center_dimension(rs.algebra) == 1);
    CHECK_THROWS_AS(build_graded_algebra(pt, {0}, c), InvalidInput);
  }

  TEST_CASE("graded algebras: grading, associativity and the counting identity") {
    std::mt19937_64 rng(29);
    auto s3 = symmetric_group(3);
    const std::vector<std::vector<int>> perms = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    auto v4 = abelian_group({2, 2});
    const std::vector<std::pair<GroupAction, std::vector<int>>> cases = {
        {make_action(s3, 3, [&](int q, int x) { return perms[q][x]; }), {1, 1, 1}},
        {make_action(s3, 3, [&](int q, int x) { return perms[q][x]; }), {2, 2, 2}},
        {make_action(cyclic_group(2), 3, [](int q, int x) { return q && x < 2 ? 1 - x : x; }), {1, 2, 1}},
        {GroupAction::trivial(v4, 1), {1}},
        {GroupAction::trivial(v4, 2), {2, 1}},
        {make_action(v4, 2, [](int q, int x) { return q % 2 ? 1 - x : x; }), {1, 1}},
        {make_action(dihedral_group(4), 2, [](int q, int x) { return (q / 4) ? 1 - x : x; }), {1, 1}},
    };
    for (const auto& [band, dims] : cases) {
      for (int trial = 0; trial < 3; ++trial) {
        auto c = random_twisted_cocycle(band, rng);
        auto r = build_graded_algebra(band, dims, c);
        CHECK(r.is_strongly_graded());
        if (r.algebra.dim <= 40) CHECK(r.algebra.is_associative());
        auto gerbe = extension_to_gerbe(r);
        CHECK(center_dimension(r.algebra) == regular_total(gerbe));
      }
    }
  }

  TEST_CASE("extension and gerbe round trips") {
    std::mt19937_64 rng(31);
    auto swap = make_action(cyclic_group(2), 3, [](int q, int x) { return q && x < 2 ? 1 - x : x; });
    auto v4 = abelian_group({2, 2});
    for (const auto& band : {swap, GroupAction::trivial(v4, 1), make_action(v4, 2, [](int q, int x) { return q % 2 ? 1 - x : x; })}) {
      auto g = build_action_groupoid(band.group, band);
      GerbeDecomposer d(g);
      for (const auto& cls : d.cohomology().group().elements()) {
        auto datum = d.datum(cls);
        auto r = gerbe_to_extension(datum);
        auto back = extension_to_gerbe(r);
        CHECK(back.coords == datum.coords);
        auto r2 = gerbe_to_extension(back, std::vector<int>(static_cast<std::size_t>(band.set_size), 2));
        CHECK(is_cohomologous(r.cocycle, r2.cocycle).cohomologous);
        CHECK(center_dimension(r.algebra) == center_dimension(r2.algebra));
      }
      // forward then backward lands in the class of the original cocycle
      auto c = random_twisted_cocycle(band, rng);
      auto r = build_graded_algebra(band, std::vector<int>(static_cast<std::size_t>(band.set_size), 1), c);
      auto again = gerbe_to_extension(extension_to_gerbe(r));
      GroupoidCohomology h(g, 2, again.cocycle.modulus());
      CHECK(h.classify(transport(c, g)) == h.classify(transport(again.cocycle, g)));
    }
    // trivial cocycle goes to the trivial gerbe; cyclic Q always does
    for (int m : {2, 3, 4}) {
      auto z = cyclic_group(m);
      auto band = m == 3 ? GroupAction::trivial(z, 2) : make_action(z, 2, [](int q, int x) { return (x + q) % 2; });
      auto c = random_twisted_cocycle(band, rng);
      auto datum = extension_to_gerbe(build_graded_algebra(band, {1, 1}, c));
      CHECK(datum.h2.trivial());
    }
    CHECK_THROWS_AS(gerbe_to_extension(extension_to_gerbe(build_graded_algebra(swap, {1, 1, 1}, random_twisted_cocycle(swap, rng))), {1, 1}),
                    InvalidInput);
  }

  TEST_CASE("algebra JSON and caps") {
    auto v4 = abelian_group({2, 2});
    auto alg = twisted_group_algebra(v4, CxCohomology(v4, 2).representative({1})).algebra;
    auto j = alg.to_json();
    CHECK(j["dimension"] == 4);
    CHECK(j["products"].size() == 16);
    MonomialAlgebra big;
    big.dim = limits().max_algebra_dim + 1;
    CHECK_THROWS_AS(center_dimension(big), CapExceeded);
  }
}
