// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <vector>

#include "cubekit/kernels.hpp"
#include "cubekit/testing.hpp"

using namespace cubekit;
namespace k = cubekit::kernels;

namespace {

template <void (*Wht)(std::span<double>)>
void BM_WalshHadamard(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BoolFn f = random_fn(n, RandomMode::bounded, 1);
  std::vector<double> buf(f.size());
  for (auto _ : state) {
    std::copy(f.values().begin(), f.values().end(), buf.begin());
    Wht(buf);
    benchmark::DoNotOptimize(buf.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.size()));
}

template <double (*Uniformity)(const BoolFn&, int)>
void BM_Uniformity(benchmark::State& state) {
  const BoolFn f = random_fn(static_cast<int>(state.range(0)), RandomMode::sign, 2);
  for (auto _ : state) benchmark::DoNotOptimize(Uniformity(f, 3));
}

template <double (*Ip)(std::span<const BoolFn>, int)>
void BM_InnerProduct(benchmark::State& state) {
  std::vector<BoolFn> entries;
  for (int s = 0; s < 8; ++s) entries.push_back(random_fn(static_cast<int>(state.range(0)), RandomMode::sign, 10 + s));
  for (auto _ : state) benchmark::DoNotOptimize(Ip(entries, 3));
}

template <k::McEstimate (*Mc)(std::uint64_t, std::uint64_t, const k::Draw&)>
void BM_MonteCarlo(benchmark::State& state) {
  const Hypergraph h = Hypergraph::complete(3, 3);
  const BoolFn f = make_block_and(6, 3);
  const LongCodeInputs in = LongCodeInputs::uniform(h, f);
  const auto samples = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Mc(samples, 7, [&](Rng& rng) { return noisy_h_test_round(h, 0.05, in, rng) ? 1.0 : 0.0; }));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(samples));
}

template <k::PatternHistogram (*Hist)(const BoolFn&, int, std::span<const Mask>)>
void BM_EdgeHistogram(benchmark::State& state) {
  const Hypergraph h = Hypergraph::complete(3, 3);
  const BoolFn f = random_fn(static_cast<int>(state.range(0)), RandomMode::sign, 3);
  for (auto _ : state) benchmark::DoNotOptimize(Hist(f, 3, h.edge_masks()));
}

}  // namespace

BENCHMARK(BM_WalshHadamard<k::serial::walsh_hadamard>)->Name("wht/serial")->Arg(16)->Arg(20);
BENCHMARK(BM_WalshHadamard<k::omp::walsh_hadamard>)->Name("wht/omp")->Arg(16)->Arg(20);
BENCHMARK(BM_Uniformity<k::serial::uniformity>)->Name("u3/serial")->Arg(6)->Arg(8);
BENCHMARK(BM_Uniformity<k::omp::uniformity>)->Name("u3/omp")->Arg(6)->Arg(8);
BENCHMARK(BM_InnerProduct<k::serial::inner_product_spectral>)->Name("ip3/serial")->Arg(5)->Arg(7);
BENCHMARK(BM_InnerProduct<k::omp::inner_product_spectral>)->Name("ip3/omp")->Arg(5)->Arg(7);
BENCHMARK(BM_MonteCarlo<k::serial::monte_carlo>)->Name("mc_noisy_h/serial")->Arg(1 << 16);
BENCHMARK(BM_MonteCarlo<k::omp::monte_carlo>)->Name("mc_noisy_h/omp")->Arg(1 << 16);
BENCHMARK(BM_EdgeHistogram<k::serial::edge_pattern_histogram>)->Name("h_hist/serial")->Arg(5)->Arg(7);
BENCHMARK(BM_EdgeHistogram<k::omp::edge_pattern_histogram>)->Name("h_hist/omp")->Arg(5)->Arg(7);

BENCHMARK_MAIN();
