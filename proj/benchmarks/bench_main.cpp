#include <benchmark/benchmark.h>

#include "amalgam/classify.hpp"
#include "amalgam/corpus.hpp"
#include "amalgam/density.hpp"
#include "amalgam/feasibility.hpp"
#include "amalgam/numlab.hpp"
#include "amalgam/structure.hpp"

namespace {

using namespace amalgam;

AmalgamInstance abelian(IntMatrix mu1, IntMatrix mu2) {
  const std::size_t l0 = mu1.cols();
  std::vector<Int> a1(mu1.rows()), a2(mu2.rows());
  for (std::size_t i = 0; i < mu1.rows(); ++i)
    for (std::size_t j = 0; j < l0; ++j) a1[i] += mu1(i, j);
  for (std::size_t i = 0; i < mu2.rows(); ++i)
    for (std::size_t j = 0; j < l0; ++j) a2[i] += mu2(i, j);
  return {BlockAlgebra(std::vector<Int>(l0, 1)), BlockAlgebra(a1), BlockAlgebra(a2), std::move(mu1), std::move(mu2)};
}

void BM_RfdDecideFeasible(benchmark::State& state) {
  const auto inst = abelian({{3, 1, 2}, {1, 2, 0}, {0, 1, 3}}, {{2, 2, 1}, {1, 0, 3}, {2, 1, 1}});
  for (auto _ : state) benchmark::DoNotOptimize(rfd_decide(inst));
}
BENCHMARK(BM_RfdDecideFeasible);

void BM_RfdDecideInfeasible(benchmark::State& state) {
  const auto inst = abelian({{1, 1, 1}, {1, 1, 1}}, {{1, 2, 3}, {3, 2, 1}, {1, 3, 2}});
  for (auto _ : state) benchmark::DoNotOptimize(rfd_decide(inst));
}
BENCHMARK(BM_RfdDecideInfeasible);

// A path of l0 base blocks whose consecutive pairs share a row only on alternating sides, shuffled.
void BM_LpOrderSearch(benchmark::State& state) {
  const auto l0 = static_cast<std::size_t>(state.range(0));
  const std::size_t r1 = (l0 + 1) / 2, r2 = l0 / 2 + 1;
  IntMatrix mu1(r1, l0), mu2(r2, l0);
  std::vector<std::size_t> pos(l0);
  for (std::size_t k = 0; k < l0; ++k) pos[k] = (k * 7 + 3) % l0;  // l0 coprime to 7 in the ranges below
  for (std::size_t k = 0; k < l0; ++k) {
    mu1(k / 2, pos[k]) = 1;
    mu2((k + 1) / 2, pos[k]) = 1;
  }
  const auto inst = abelian(mu1, mu2);
  for (auto _ : state) benchmark::DoNotOptimize(lp_order_search(inst));
}
BENCHMARK(BM_LpOrderSearch)->Arg(6)->Arg(10)->Arg(13)->Arg(16);

void BM_ProfileEnumeration(benchmark::State& state) {
  const auto N = static_cast<Int>(state.range(0));
  const DensityScene scene{N, {1, 1, N - 2}, {1, 1, 1}, {1, N - 1}, {1, 1}};
  for (auto _ : state) {
    std::size_t count = 0;
    for (std::size_t l = 2; l <= static_cast<std::size_t>(N); ++l)
      for_each_profile(scene, l, [&](const SubalgebraProfile&) { ++count; });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_ProfileEnumeration)->Arg(6)->Arg(8)->Arg(10);

void BM_ExhaustiveVerification(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_general_position_exhaustive(state.range(0), 3, 1));
}
BENCHMARK(BM_ExhaustiveVerification)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_IntersectionDimension(benchmark::State& state) {
  const auto& inst = find_corpus_entry("m4_c2_m4")->instance;
  const auto k = state.range(0);
  const RepSpec rep{inst, {k}, {k}};
  const auto mats = build_rep_matrices(rep);
  const auto u = sample_base_unitary(mats.d, SamplingMode::Haar, 0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(intersection_dimension(mats, u));
}
BENCHMARK(BM_IntersectionDimension)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_ClassifyCorpus(benchmark::State& state) {
  for (auto _ : state)
    for (const auto& e : corpus()) benchmark::DoNotOptimize(classify(e.instance));
}
BENCHMARK(BM_ClassifyCorpus)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
