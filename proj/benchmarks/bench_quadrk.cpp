#include <benchmark/benchmark.h>

#include "quadrk/classify.hpp"
#include "quadrk/fuzz.hpp"
#include "quadrk/triangularize.hpp"

using namespace quadrk;

namespace {

FieldSpec field_for(std::int64_t p) { return p ? FieldSpec::prime(static_cast<std::uint32_t>(p)) : FieldSpec::rationals(); }

std::vector<DegOneMatrix> scrambled(FieldSpec f, NormalFormTag tag, std::size_t n, std::size_t count) {
  fuzz::Rng rng(1);
  std::vector<DegOneMatrix> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(fuzz::scramble(fuzz::random_normal_form(f, tag, n, n, 3, rng), rng));
  return out;
}

void BM_RankSymbolic(benchmark::State& state) {
  const auto f = field_for(state.range(0));
  const auto ms = scrambled(f, NormalFormTag::R2_Hook, static_cast<std::size_t>(state.range(1)), 16);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(rank_symbolic(ms[i++ % ms.size()]));
}
BENCHMARK(BM_RankSymbolic)->ArgsProduct({{0, 5}, {3, 5, 8}});

void BM_Classify(benchmark::State& state) {
  const auto f = field_for(state.range(0));
  const auto ms = scrambled(f, NormalFormTag::R2_TwoRows, static_cast<std::size_t>(state.range(1)), 16);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(classify(ms[i++ % ms.size()]).rank);
}
BENCHMARK(BM_Classify)->ArgsProduct({{0, 3}, {3, 5, 8}});

void BM_Triangularize(benchmark::State& state) {
  const auto f = field_for(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  fuzz::Rng rng(2);
  std::vector<QuadMap> maps;
  for (int t = 0; t < 16; ++t) {
    maps.push_back(fuzz::conjugate_map(
        fuzz::random_strict_triangular(f, n, static_cast<fuzz::TriangularFamily>(t % 4), rng), rng));
  }
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(triangularize_rank_le2(maps[i++ % maps.size()]).U);
}
BENCHMARK(BM_Triangularize)->ArgsProduct({{0, 3}, {3, 6}});

void BM_NilpotentByMinors(benchmark::State& state) {
  const auto f = field_for(state.range(0));
  const auto nc = fuzz::nconj_matrix(f, Poly::variable(f, 2, 0), Poly::variable(f, 2, 1));
  for (auto _ : state) benchmark::DoNotOptimize(is_nilpotent_by_minors(nc));
}
BENCHMARK(BM_NilpotentByMinors)->Arg(0)->Arg(5);

}  // namespace

BENCHMARK_MAIN();
