#include <doctest.h>

#include <random>
#include <set>

#include "gerbeforge/abelian.hpp"
#include "gerbeforge/errors.hpp"

using namespace gerbeforge;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = d(rng);
  return m;
}

bool is_diagonal_chain(const IntMatrix& d) {
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && d.at(i, j) != 0) return false;
  const std::size_t n = std::min(d.rows(), d.cols());
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (d.at(i, i) < 0) return false;
    if (d.at(i, i) == 0) {
      if (d.at(i + 1, i + 1) != 0) return false;
    } else if (d.at(i + 1, i + 1) % d.at(i, i) != 0) {
      return false;
    }
  }
  return true;
}

// exhaustive kernel and image of a hom
std::pair<std::size_t, std::size_t> brute_kernel_image(const AbHom& h) {
  std::size_t ker = 0;
  std::set<Vec64> img;
  for (const auto& x : h.source.elements()) {
    auto y = h.apply(x);
    if (h.target.is_zero(y)) ++ker;
    img.insert(y);
  }
  return {ker, img.size()};
}

}  // namespace

TEST_SUITE("abelian-linalg") {
  TEST_CASE("smith_normal_form examples") {
    auto d = smith_normal_form(IntMatrix::from({{2, 0}, {0, 3}})).diagonal();
    CHECK(d == std::vector<Integer>{1, 6});
    auto z = smith_normal_form(IntMatrix(3, 2)).diagonal();
    CHECK(z == std::vector<Integer>{0, 0});
    auto id = smith_normal_form(IntMatrix::identity(2)).diagonal();
    CHECK(id == std::vector<Integer>{1, 1});
  }

  TEST_CASE("smith_normal_form round trip on random matrices") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 12; ++trial) {
      const std::size_t r = 1 + rng() % 50, c = 1 + rng() % 50;
      auto m = random_matrix(rng, r, c, -9, 9);
      auto s = smith_normal_form(m);
      CHECK(s.U * m * s.V == s.D);
      CHECK(is_diagonal_chain(s.D));
      CHECK(s.U * s.U_inverse == IntMatrix::identity(r));
      CHECK(s.V * s.V_inverse == IntMatrix::identity(c));
      auto du = s.U.determinant(), dv = s.V.determinant();
      CHECK(abs(du) == 1);
      CHECK(abs(dv) == 1);
    }
    // a 50 x 50 case explicitly
    auto m = random_matrix(rng, 50, 50, -9, 9);
    auto s = smith_normal_form(m);
    CHECK(s.U * m * s.V == s.D);
  }

  TEST_CASE("sparse invariant factors agree with the dense Smith form") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t r = 1 + rng() % 12, c = 1 + rng() % 12;
      auto m = random_matrix(rng, r, c, -2, 2);
      SparseIntMatrix sp(r, c);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
          if (m.at(i, j) != 0) sp.add(i, j, m.at(i, j));
      std::vector<Integer> dense;
      for (auto& x : smith_normal_form(m).diagonal())
        if (x != 0) dense.push_back(x);
      std::sort(dense.begin(), dense.end());
      CHECK(invariant_factors(sp) == dense);
    }
  }

  TEST_CASE("hom_structure examples") {
    FinAbGroup z4({4}), z6({6}), z2({2}), v({2, 2});
    auto h1 = hom_structure(AbHom{z4, z4, {{2}}});
    CHECK(h1.kernel == z2);
    CHECK(h1.cokernel == z2);
    auto h2 = hom_structure(AbHom{z6, z6, {{1}}});
    CHECK(h2.kernel.trivial());
    CHECK(h2.cokernel.trivial());
    auto h3 = hom_structure(AbHom{v, z2, {{1, 1}}});
    CHECK(h3.kernel == z2);
    CHECK(h3.cokernel.trivial());
    CHECK(h3.kernel_basis.size() == 1);
    CHECK(h3.kernel_basis[0] == Vec64{1, 1});
    CHECK_THROWS_AS(hom_structure(AbHom{z2, z4, {{1}}}), InvalidInput);
  }

  TEST_CASE("kernel times image equals source, exhaustively") {
    const std::vector<FinAbGroup> groups = {FinAbGroup({2}), FinAbGroup({4}), FinAbGroup({2, 2}), FinAbGroup({2, 4}),
                                            FinAbGroup({3}), FinAbGroup({6}), FinAbGroup({2, 2, 2}), FinAbGroup({4, 4})};
    std::mt19937_64 rng(3);
    int tested = 0;
    for (const auto& s : groups)
      for (const auto& t : groups) {
        if (s.order() > 64) continue;
        for (int trial = 0; trial < 4; ++trial) {
          // random well-defined matrix: column j must be killed by factor j
          Mat64 m(t.rank(), Vec64(s.rank()));
          for (std::size_t i = 0; i < t.rank(); ++i)
            for (std::size_t j = 0; j < s.rank(); ++j) {
              const std::int64_t ti = t.factors()[i];
              const std::int64_t g = std::gcd(ti, s.factors()[j]);
              m[i][j] = static_cast<std::int64_t>(rng() % g) * (ti / g);
            }
          AbHom h{s, t, m};
          REQUIRE(h.is_well_defined());
          auto hs = hom_structure(h);
          auto [ker, img] = brute_kernel_image(h);
          CHECK(static_cast<std::size_t>(hs.kernel.order()) == ker);
          CHECK(static_cast<std::size_t>(hs.image.order()) == img);
          CHECK(hs.kernel.order() * hs.image.order() == s.order());
          CHECK(hs.cokernel.order() * hs.image.order() == t.order());
          for (const auto& k : hs.kernel_basis) CHECK(t.is_zero(h.apply(k)));
          ++tested;
        }
      }
    CHECK(tested > 100);
  }

  TEST_CASE("cokernel projection kills exactly the image") {
    FinAbGroup src({2, 4}), tgt({4, 8});
    AbHom h{src, tgt, {{2, 1}, {0, 4}}};
    REQUIRE(h.is_well_defined());
    auto hs = hom_structure(h);
    std::set<Vec64> img;
    for (const auto& x : src.elements()) img.insert(h.apply(x));
    for (const auto& y : tgt.elements()) {
      bool zero = hs.cokernel.is_zero(hs.project(y));
      CHECK(zero == (img.count(y) == 1));
    }
  }

  TEST_CASE("subgroup presentation round trip") {
    FinAbGroup amb({2, 4, 8});
    SubgroupPresentation sp(amb, {{1, 2, 2}, {0, 2, 4}, {1, 0, 6}});
    std::set<Vec64> span;
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 8; ++b)
        for (int c = 0; c < 8; ++c)
          span.insert(amb.reduce({a + c, 2 * a + 2 * b, 2 * a + 4 * b + 6 * c}));
    CHECK(static_cast<std::size_t>(sp.order()) == span.size());
    for (const auto& y : amb.elements()) CHECK(sp.contains(y) == (span.count(y) == 1));
    for (std::size_t i = 0; i < sp.basis().size(); ++i) {
      Vec64 e(sp.structure().rank(), 0);
      e[i] = 1;
      CHECK(sp.coordinates(sp.basis()[i]) == e);
    }
  }

  TEST_CASE("normalize_cyclic") {
    auto n = normalize_cyclic({2, 3, 4});
    CHECK(n.group == FinAbGroup({2, 12}));
    auto t = normalize_cyclic({1, 1});
    CHECK(t.group.trivial());
  }

  TEST_CASE("dual_group examples") {
    auto d4 = dual_group(FinAbGroup({4}));
    CHECK(d4.group == FinAbGroup({4}));
    CHECK(d4.pair({1}, {1}) == 1);

    auto z2 = cyclic_group(2);
    AbAction swap{z2, FinAbGroup({2, 2}), {{{1, 0}, {0, 1}}, {{0, 1}, {1, 0}}}};
    auto ds = dual_group(swap);
    CHECK(ds.left_action.matrices[1] == Mat64{{0, 1}, {1, 0}});

    AbAction inv{z2, FinAbGroup({3}), {{{1}}, {{2}}}};
    auto di = dual_group(inv);
    CHECK(di.left_action.matrices[1] == Mat64{{2}});

    AbAction bad{z2, FinAbGroup({4}), {{{1}}, {{2}}}};
    CHECK_THROWS_AS(dual_group(bad), InvalidInput);
  }

  TEST_CASE("contragredient pairing and double dual") {
    // a transvection of order 2 on Z/2 x Z/2
    auto z2 = cyclic_group(2);
    AbAction swap{z2, FinAbGroup({2, 2}), {{{1, 0}, {0, 1}}, {{1, 1}, {0, 1}}}};
    REQUIRE(swap.is_valid());
    auto d = dual_group(swap);
    for (int q = 0; q < 2; ++q)
      for (const auto& chi : d.group.elements())
        for (const auto& a : swap.module.elements())
          CHECK(d.pair(d.left_action.act(q, chi), a) == d.pair(chi, swap.act(z2.inv(q), a)));
    auto dd = dual_group(d.left_action);
    CHECK(dd.group == swap.module);
    // the evaluation identification on generators: (q.a)(chi) = a(q^-1 chi)
    for (int q = 0; q < 2; ++q)
      for (const auto& a : swap.module.elements())
        for (const auto& chi : d.group.elements())
          CHECK(dd.pair(dd.left_action.act(q, a), chi) == d.pair(d.left_action.act(z2.inv(q), chi), a));
  }
}
