// Parallel kernels against their serial paths and single-threaded references.
// Argument 0 = serial, 1 = parallel, 2 = reference (where one exists).

#include <benchmark/benchmark.h>

#include <random>

#include "gerbeforge/fusion.hpp"
#include "gerbeforge/groupoid.hpp"

using namespace gerbeforge;

namespace {

Execution mode(const benchmark::State& s) { return s.range(0) == 0 ? Execution::serial : Execution::parallel; }

ModMatrix random_matrix(std::size_t side, Residue modulus) {
  std::mt19937_64 rng(7);
  ModMatrix a(side, side, modulus);
  for (std::size_t r = 0; r < side; ++r)
    for (std::size_t c = 0; c < side; ++c) a.at(r, c) = uniform_below(rng, modulus);
  return a;
}

void smith(benchmark::State& s) {
  const auto a = random_matrix(static_cast<std::size_t>(s.range(1)), 12);
  for (auto _ : s) benchmark::DoNotOptimize(kernels::smith_mod(a, {true, false, true, false}, mode(s)).rank);
}
BENCHMARK(smith)->ArgsProduct({{0, 1}, {64, 160}})->Unit(benchmark::kMillisecond);

void bar_matrix(benchmark::State& s) {
  const auto g = symmetric_group(3);
  const auto coeff = roots_of_unity(g, 6);
  for (auto _ : s) {
    if (s.range(0) == 2) benchmark::DoNotOptimize(bar_differential_matrix_reference(g, coeff, 3).rows());
    else benchmark::DoNotOptimize(bar_differential_matrix(g, coeff, 3, mode(s)).rows());
  }
}
BENCHMARK(bar_matrix)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void nerve_matrix(benchmark::State& s) {
  const auto g = dihedral_group(4);
  const auto groupoid = build_action_groupoid(g, coset_action(g, center(g)));
  for (auto _ : s) benchmark::DoNotOptimize(nerve_differential_matrix(groupoid, 2, 8, mode(s)).rows());
}
BENCHMARK(nerve_matrix)->DenseRange(0, 1)->Unit(benchmark::kMillisecond);

void pentagon(benchmark::State& s) {
  const auto g = dihedral_group(4);
  CxCohomology h(g, 3);
  Vec64 cls(h.group().rank(), 1);
  const auto d = pointed_datum(g, h.representative(h.group().reduce(cls)));
  for (auto _ : s) {
    if (s.range(0) == 2) benchmark::DoNotOptimize(pentagon_check_reference(d).holds);
    else benchmark::DoNotOptimize(pentagon_check(d, mode(s)).holds);
  }
}
BENCHMARK(pentagon)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
