#pragma once

// Hot loops in two builds: `omp` is what the library calls, `serial` is the
// straightforward reference kept for tests and benchmarks. Both variants
// reduce partial results in the same fixed order, so for equal inputs they
// return bitwise-identical values regardless of the thread count.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cubekit/bool_fn.hpp"
#include "cubekit/rng.hpp"

namespace cubekit::kernels {

/// Rounds per random substream in Monte Carlo loops.
inline constexpr std::uint64_t kChunk = 4096;

struct McEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::uint64_t samples = 0;
};

/// One Monte Carlo round: draws from the generator, returns the observed value.
using Draw = std::function<double(Rng&)>;

/// Per-sign-pattern counts for the H-test: entry p counts tuples
/// (x^1..x^t) where edge e's equation fails exactly for the set bits of p.
using PatternHistogram = std::vector<std::uint64_t>;

namespace serial {
/// In-place unnormalized Walsh-Hadamard butterfly; length must be a power of two.
void walsh_hadamard(std::span<double> a);
/// Exact U^d(f), d >= 1, via derivatives down to the sum-of-fourth-powers base.
double uniformity(const BoolFn& f, int d);
/// Gowers inner product of 2^d functions (entries indexed by subset masks of [d]).
double inner_product_spectral(std::span<const BoolFn> entries, int d);
McEstimate monte_carlo(std::uint64_t samples, std::uint64_t seed, const Draw& draw);
PatternHistogram edge_pattern_histogram(const BoolFn& f, int t, std::span<const Mask> edges);
}  // namespace serial

namespace omp {
void walsh_hadamard(std::span<double> a);
double uniformity(const BoolFn& f, int d);
double inner_product_spectral(std::span<const BoolFn> entries, int d);
McEstimate monte_carlo(std::uint64_t samples, std::uint64_t seed, const Draw& draw);
PatternHistogram edge_pattern_histogram(const BoolFn& f, int t, std::span<const Mask> edges);
}  // namespace omp

/// Worker count for the omp kernels (no-op without OpenMP).
void set_threads(int threads);
int max_threads();

}  // namespace cubekit::kernels
