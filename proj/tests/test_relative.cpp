#include <doctest.h>

#include "gerbeforge/errors.hpp"
#include "gerbeforge/relative.hpp"

using namespace gerbeforge;

namespace {

bool is_zero(const ModMatrix& m) {
  for (auto v : m.data())
    if (v != 0) return false;
  return true;
}

struct Pair {
  const char* label;
  FiniteGroup g;
  SubgroupDatum k;
};

std::vector<Pair> battery() {
  auto z4 = cyclic_group(4);
  auto v4 = abelian_group({2, 2});
  auto d4 = dihedral_group(4);
  auto s3 = symmetric_group(3);
  return {
      {"Z4 > Z2", z4, make_subgroup(z4, {0, 2})},
      {"V4 > Z2", v4, make_subgroup(v4, {0, 1})},
      {"D4 > rotations", d4, make_subgroup(d4, {0, 1, 2, 3})},
      {"D4 > center", d4, center(d4)},
      {"S3 > A3", s3, make_subgroup(s3, {0, 3, 4})},
  };
}

}  // namespace

TEST_SUITE("relative") {
  TEST_CASE("cone differential squares to zero") {
    for (const auto& p : battery()) {
      RelativeComplex cx(p.g, p.k);
      for (int n = 0; n <= 2; ++n) {
        CAPTURE(p.label);
        CAPTURE(n);
        auto d0 = cx.differential(n, 24, Execution::serial);
        auto d1 = cx.differential(n + 1, 24, Execution::serial);
        CHECK(d0.rows() == cx.dimension(n + 1));
        CHECK(is_zero(d1 * d0));
        CHECK(d0 == cx.differential(n, 24, Execution::parallel));
      }
    }
  }

  TEST_CASE("middle row is exact on the battery") {
    for (const auto& p : battery()) {
      CAPTURE(p.label);
      auto r = relative_der_complex(p.g, p.k);
      CHECK(r.iota_after_res2_zero);
      CHECK(r.pi_after_iota_zero);
      CHECK(r.res3_after_pi_zero);
      CHECK(r.exact_at_h2k);
      CHECK(r.exact_at_rel);
      CHECK(r.onto_ker_res3);
      CHECK(r.cardinality);
    }
  }

  TEST_CASE("middle row values") {
    auto z4 = cyclic_group(4);
    auto r = relative_der_complex(z4, make_subgroup(z4, {0, 2}));
    CHECK(r.h3_g == FinAbGroup({4}));
    CHECK(r.h3_k == FinAbGroup({2}));
    CHECK(r.h2_g.trivial());
    CHECK(r.h3_rel == FinAbGroup({2}));

    auto v4 = abelian_group({2, 2});
    auto rv = relative_der_complex(v4, make_subgroup(v4, {0, 1}));
    CHECK(rv.h2_g == FinAbGroup({2}));
    CHECK(rv.h3_g == FinAbGroup({2, 2, 2}));
    CHECK(rv.h3_rel.order() == rv.ker_res3.order());
  }

  TEST_CASE("trivial subgroup and the whole group") {
    for (const auto& g : {cyclic_group(4), abelian_group({2, 2}), symmetric_group(3)}) {
      auto one = relative_der_complex(g, make_subgroup(g, {0}));
      CHECK(one.all());
      CHECK(one.h3_rel == one.h3_g);
      std::vector<int> all(g.order());
      for (int i = 0; i < g.order(); ++i) all[i] = i;
      auto whole = relative_der_complex(g, make_subgroup(g, all));
      CHECK(whole.all());
      CHECK(whole.h3_rel.trivial());
    }
  }

  TEST_CASE("non-normal subgroup is rejected") {
    auto s3 = symmetric_group(3);
    CHECK_THROWS_AS(relative_der_complex(s3, make_subgroup(s3, {0, 1})), InvalidInput);
  }
}
