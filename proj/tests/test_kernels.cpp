#include <doctest.h>

#include <random>

#include "gerbeforge/cochain.hpp"
#include "gerbeforge/kernels/bar.hpp"
#include "gerbeforge/kernels/modmatrix.hpp"

using namespace gerbeforge;
using kernels::smith_mod;
using kernels::SmithRequest;

namespace {

ModMatrix random_mod(std::mt19937_64& rng, std::size_t r, std::size_t c, Residue m, int sparsity) {
  ModMatrix a(r, c, m);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (static_cast<int>(rng() % sparsity) == 0) a.at(i, j) = static_cast<Residue>(rng() % m);
  return a;
}

ModMatrix diag_matrix(const std::vector<Residue>& d, std::size_t r, std::size_t c, Residue m) {
  ModMatrix out(r, c, m);
  for (std::size_t i = 0; i < d.size(); ++i) out.at(i, i) = d[i] % m;
  return out;
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("modular Smith form reconstructs the input") {
    std::mt19937_64 rng(5);
    for (Residue m : {2, 4, 12, 36, 64, 360}) {
      for (int trial = 0; trial < 6; ++trial) {
        const std::size_t r = 1 + rng() % 25, c = 1 + rng() % 25;
        auto a = random_mod(rng, r, c, m, 1 + trial % 3);
        auto s = smith_mod(a, SmithRequest{true, true, true, true}, Execution::serial);
        CAPTURE(m);
        CHECK(s.left * a * s.right == diag_matrix(s.diagonal, r, c, m));
        CHECK(s.left * s.left_inverse == ModMatrix::identity(r, m));
        CHECK(s.right * s.right_inverse == ModMatrix::identity(c, m));
        for (auto d : s.diagonal) CHECK(m % d == 0);
      }
    }
  }

  TEST_CASE("modular Smith form: serial and parallel are bit-identical") {
    std::mt19937_64 rng(9);
    for (Residue m : {6, 16, 4096}) {
      auto a = random_mod(rng, 70, 45, m, 3);
      auto s = smith_mod(a, SmithRequest{true, true, true, true}, Execution::serial);
      auto p = smith_mod(a, SmithRequest{true, true, true, true}, Execution::parallel);
      CHECK(s.diagonal == p.diagonal);
      CHECK(s.left == p.left);
      CHECK(s.left_inverse == p.left_inverse);
      CHECK(s.right == p.right);
      CHECK(s.right_inverse == p.right_inverse);
    }
  }

  TEST_CASE("bar differential: kernel assembly matches the reference") {
    auto z2 = cyclic_group(2);
    auto s3 = symmetric_group(3);
    const std::vector<std::pair<FiniteGroup, AbAction>> cases = {
        {cyclic_group(4), roots_of_unity(cyclic_group(4), 4)},
        {s3, roots_of_unity(s3, 6)},
        {z2, AbAction{z2, FinAbGroup({3}), {{{1}}, {{2}}}}},
        {z2, AbAction{z2, FinAbGroup({2, 4}), {{{1, 0}, {0, 1}}, {{1, 0}, {2, 1}}}}},
        {abelian_group({2, 2}), roots_of_unity(abelian_group({2, 2}), 2)},
    };
    for (const auto& [g, coeff] : cases) {
      REQUIRE(coeff.is_valid());
      for (int n = 0; n <= 2; ++n) {
        auto ref = bar_differential_matrix_reference(g, coeff, n);
        auto ser = bar_differential_matrix(g, coeff, n, Execution::serial);
        auto par = bar_differential_matrix(g, coeff, n, Execution::parallel);
        CHECK(ser == par);
        REQUIRE(ser.rows() == ref.rows());
        REQUIRE(ser.cols() == ref.cols());
        const std::size_t r = coeff.module.rank();
        bool same = true;
        for (std::size_t i = 0; i < ser.rows(); ++i)
          for (std::size_t j = 0; j < ser.cols(); ++j)
            same = same && kernels::mod(ser.at(i, j) - ref.at(i, j), coeff.module.factors()[i % r]) == 0;
        CHECK(same);
      }
    }
  }

  TEST_CASE("nerve differential: serial and parallel agree and square to zero") {
    auto s3 = symmetric_group(3);
    const std::vector<std::vector<int>> perms = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    std::vector<int> act;
    for (const auto& p : perms) act.insert(act.end(), p.begin(), p.end());
    for (int n = 0; n <= 2; ++n) {
      auto a = kernels::assemble_nerve_differential(6, s3.table().data(), 3, act.data(), n, 12, Execution::serial);
      auto b = kernels::assemble_nerve_differential(6, s3.table().data(), 3, act.data(), n, 12, Execution::parallel);
      CHECK(a == b);
      auto c = kernels::assemble_nerve_differential(6, s3.table().data(), 3, act.data(), n + 1, 12, Execution::serial);
      auto cc = c * a;
      bool zero = true;
      for (auto v : cc.data()) zero = zero && v == 0;
      CHECK(zero);
    }
  }
}
