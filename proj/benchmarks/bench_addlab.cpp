#include <benchmark/benchmark.h>

#include "addlab/counting.hpp"
#include "addlab/dense_model.hpp"
#include "addlab/energy.hpp"
#include "addlab/rng.hpp"
#include "addlab/set.hpp"
#include "addlab/spectral.hpp"

using namespace addlab;

namespace {

Dfn random_dfn(const GroupPtr& g, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Complex> v(g->order());
  for (auto& x : v) x = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
  return Dfn(g, Tag::Complex, v);
}

GroupPtr cyclic(std::int64_t m) { return make_group(GroupCtx::cyclic(static_cast<std::uint64_t>(m))); }

void BM_FourierFast(benchmark::State& state) {
  const Dfn h = random_dfn(cyclic(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(fourier(h));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FourierFast)->Arg(256)->Arg(1000)->Arg(1024)->Arg(1021)->Arg(4096)->Arg(65536);

void BM_FourierDirect(benchmark::State& state) {
  const Dfn h = random_dfn(cyclic(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(fourier_direct(h));
}
BENCHMARK(BM_FourierDirect)->Arg(256)->Arg(1024);

void BM_FourierVectorSpace(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const Dfn h = random_dfn(make_group(GroupCtx::vector_space(FieldCtx::prime(3), n)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(fourier(h));
}
BENCHMARK(BM_FourierVectorSpace)->DenseRange(4, 8, 2);

void BM_Convolve(benchmark::State& state) {
  const GroupPtr g = cyclic(state.range(0));
  const Dfn f = random_dfn(g, 3);
  const Dfn h = random_dfn(g, 4);
  const auto method = state.range(1) ? ConvMethod::Fast : ConvMethod::Direct;
  for (auto _ : state) benchmark::DoNotOptimize(convolve(f, h, method));
}
BENCHMARK(BM_Convolve)->ArgsProduct({{256, 1024}, {0, 1}});

void BM_FreenessCheck(benchmark::State& state) {
  const auto s = static_cast<int>(state.range(1));
  const SetA a = construct::greedy_kst_free(s, 3, static_cast<std::uint64_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(find_kst_grid(a, s, 3));
  state.counters["|A|"] = static_cast<double>(a.size());
}
BENCHMARK(BM_FreenessCheck)->ArgsProduct({{256, 1024}, {2, 3}});

void BM_EnergyExact(benchmark::State& state) {
  const SetA a = construct::erdos_turan_sidon(static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(energy_exact(a, 3));
}
BENCHMARK(BM_EnergyExact)->Arg(31)->Arg(61);

void BM_CountT(benchmark::State& state) {
  const EquationSpec eq({1, 1, 1, -1, -2});
  const SetA a = construct::erdos_turan_sidon(11);
  const SetA wide = a.reembedded(cyclic(static_cast<std::int64_t>(required_modulus(eq, a.interval_length()))));
  const std::vector<Dfn> hs(eq.k(), wide.indicator());
  const auto method = state.range(0) ? CountMethod::Fourier : CountMethod::Brute;
  for (auto _ : state) benchmark::DoNotOptimize(count_T(eq, hs, method, Ambient::IntegerModel));
}
BENCHMARK(BM_CountT)->Arg(0)->Arg(1);

void BM_DenseModel(benchmark::State& state) {
  const SetA a = construct::erdos_turan_sidon(static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_dense_model(a, 2, 2, Rational(1, 8), ModelMode::IntegerModel));
}
BENCHMARK(BM_DenseModel)->Arg(11)->Arg(31);

}  // namespace

BENCHMARK_MAIN();
