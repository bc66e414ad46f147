#include <doctest.h>

#include <random>
#include <set>

#include "gerbeforge/errors.hpp"
#include "gerbeforge/symmetry.hpp"

using namespace gerbeforge;

namespace {

std::vector<std::pair<FiniteGroup, FiniteGroup>> battery() {
  auto z2 = cyclic_group(2), z3 = cyclic_group(3), z4 = cyclic_group(4), v4 = abelian_group({2, 2});
  return {{z2, z2}, {z2, z4}, {z4, z2}, {z2, v4}, {v4, z2}, {z3, z3}, {z2, symmetric_group(3)}};
}

/// |H^3(Q x K)| / (|H^3(Q)| |H^3(K)|), the mixed part of the Kunneth decomposition.
std::int64_t kunneth_mixed(const FiniteGroup& q, const FiniteGroup& k) {
  auto order3 = [](const FiniteGroup& g) { return g.order() == 1 ? std::int64_t{1} : CxCohomology(g, 3).group().order(); };
  return order3(direct_product(q, k)) / (order3(q) * order3(k));
}

}  // namespace

TEST_SUITE("double-symmetry") {
  TEST_CASE("examples") {
    auto z2 = cyclic_group(2);
    auto pairs = solve_mixed_cocycles(z2, z2);
    CHECK(pairs.size() == 2);
    for (const auto& p : pairs) {
      CHECK(satisfies_conditions(p));
      CHECK(transpose_pair(transpose_pair(p)) == p);
    }
    CHECK(pairs[1].to_json()["modulus"] == 2);

    CHECK(solve_mixed_cocycles(FiniteGroup(), cyclic_group(4)).size() == 1);
    CHECK(solve_mixed_cocycles(cyclic_group(4), z2).size() == solve_mixed_cocycles(z2, cyclic_group(4)).size());
    CHECK(solve_mixed_cocycles(cyclic_group(4), z2).size() == 2);
    CHECK(GroupCohomology(cyclic_group(4), AbAction::trivial(cyclic_group(4), FinAbGroup({2})), 2).group().order() == 2);
    CHECK(GroupCohomology(z2, AbAction::trivial(z2, FinAbGroup({4})), 2).group().order() == 2);
    CHECK_THROWS_AS(MixedCohomology(cyclic_group(8), cyclic_group(9)), CapExceeded);
  }

  TEST_CASE("class counts against the Kunneth mixed part") {
    for (const auto& [q, k] : battery()) {
      CAPTURE(q.name());
      CAPTURE(k.name());
      MixedCohomology h(q, k);
      CHECK(h.group().order() == kunneth_mixed(q, k));
    }
  }

  TEST_CASE("transpose is a bijection on classes") {
    for (const auto& [q, k] : battery()) {
      MixedCohomology here(q, k), there(k, q);
      REQUIRE(here.group().order() == there.group().order());
      std::set<Vec64> images;
      for (const auto& cls : here.group().elements()) {
        auto t = transpose_pair(here.representative(cls));
        CHECK(satisfies_conditions(t));
        images.insert(there.classify(t));
        CHECK(here.classify(transpose_pair(t)) == cls);
      }
      CHECK(static_cast<std::int64_t>(images.size()) == there.group().order());
    }
  }

  TEST_CASE("gauge preserves the conditions and the class") {
    std::mt19937_64 rng(23);
    for (const auto& [q, k] : battery()) {
      MixedCohomology h(q, k);
      for (const auto& cls : h.group().elements()) {
        auto p = h.representative(cls);
        Vec64 b(static_cast<std::size_t>((q.order() - 1) * (k.order() - 1)));
        for (auto& x : b) x = uniform_below(rng, p.modulus);
        auto moved = gauge(p, b);
        CHECK(satisfies_conditions(moved));
        CHECK(h.classify(moved) == cls);
      }
      // pointwise conditions agree with the assembled differential on random perturbations
      bool saw_broken = false;
      for (int trial = 0; trial < 12; ++trial) {
        auto p = h.representative(h.group().zero());
        auto& flat = trial % 2 ? p.eta : p.omega;
        if (flat.empty()) continue;
        auto& entry = flat[uniform_below(rng, static_cast<std::int64_t>(flat.size()))];
        entry = (entry + 1 + uniform_below(rng, p.modulus - 1)) % p.modulus;
        const bool ok = satisfies_conditions(p);
        CHECK(ok == h.is_cocycle(p));
        saw_broken = saw_broken || !ok;
      }
      if (q.order() * k.order() > 4) CHECK(saw_broken);  // over Z/2 x Z/2 every mod-2 cochain closes
    }
  }

  TEST_CASE("cyclic pairs: counts equal H^2(Q, K*) and H^2(K, Q*)") {
    for (int m = 1; m <= 6; ++m)
      for (int n = 1; n <= 6; ++n) {
        CAPTURE(m);
        CAPTURE(n);
        auto q = cyclic_group(m), k = cyclic_group(n);
        const auto count = static_cast<std::int64_t>(solve_mixed_cocycles(q, k).size());
        CHECK(count == std::gcd(m, n));
        if (m == 1 || n == 1) continue;
        CHECK(count == GroupCohomology(q, AbAction::trivial(q, FinAbGroup({n})), 2).group().order());
        CHECK(count == GroupCohomology(k, AbAction::trivial(k, FinAbGroup({m})), 2).group().order());
      }
  }

  TEST_CASE("equivariant simples: per-k regular classes against the groupoid gerbe") {
    for (const auto& [q, k] : battery())
      for (const auto& p : solve_mixed_cocycles(q, k)) {
        CHECK(equivariant_simple_count(p) == equivariant_simple_count_groupoid(p));
        CHECK(fixed_point_classes(p).size() == static_cast<std::size_t>(k.order()));
      }
    // Q = Z/2 x Z/2 over K = Z/2: some pair twists the nontrivial component by the Schur class
    bool twisted = false;
    for (const auto& p : solve_mixed_cocycles(abelian_group({2, 2}), cyclic_group(2))) {
      auto classes = fixed_point_classes(p);
      if (classes[1] != Vec64{0}) {
        twisted = true;
        CHECK(equivariant_simple_count(p) == 4 + 1);
      }
    }
    CHECK(twisted);
  }
}
