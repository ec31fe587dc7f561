#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cubekit/kernels.hpp"
#include "kernels_common.hpp"

namespace cubekit::kernels {

void set_threads(int threads) {
#ifdef _OPENMP
  omp_set_num_threads(std::max(1, threads));
#else
  (void)threads;
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace omp {

namespace {
// Below this length the butterfly is not worth a parallel region.
constexpr std::size_t kParallelButterfly = std::size_t{1} << 14;
}  // namespace

void walsh_hadamard(std::span<double> a) {
  detail::require_power_of_two(a.size());
  const std::ptrdiff_t len = static_cast<std::ptrdiff_t>(a.size());
  if (a.size() < kParallelButterfly) {
    detail::butterfly(a);
    return;
  }
  double* data = a.data();
  for (std::ptrdiff_t h = 1; h < len; h <<= 1) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < len / 2; ++k) {
      const std::ptrdiff_t j = (k / h) * (h << 1) + (k % h);
      const double u = data[j];
      const double v = data[j + h];
      data[j] = u + v;
      data[j + h] = u - v;
    }
  }
}

double uniformity(const BoolFn& f, int d) {
  if (d <= 2) return detail::uniformity_table(f.values(), d);
  const std::ptrdiff_t size = static_cast<std::ptrdiff_t>(f.size());
  std::vector<double> per_direction(f.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t y = 0; y < size; ++y) {
    per_direction[y] =
        detail::uniformity_table(detail::derivative_table(f.values(), static_cast<Mask>(y)), d - 1);
  }
  return detail::neumaier_sum(per_direction) / static_cast<double>(f.size());
}

double inner_product_spectral(std::span<const BoolFn> entries, int d) {
  if (d == 1) return entries[0].mean() * entries[1].mean();
  const int n = entries[0].arity();
  const std::int64_t tuples = std::int64_t{1} << (n * (d - 2));
  std::vector<double> terms(static_cast<std::size_t>(tuples));
#pragma omp parallel
  {
    std::vector<Mask> dirs(static_cast<std::size_t>(d - 2));
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t idx = 0; idx < tuples; ++idx) {
      detail::unpack_points(static_cast<std::uint64_t>(idx), n, dirs);
      terms[idx] = detail::four_spectra_term(entries, d, dirs);
    }
  }
  return detail::neumaier_sum(terms) / static_cast<double>(tuples);
}

McEstimate monte_carlo(std::uint64_t samples, std::uint64_t seed, const Draw& draw) {
  detail::require_samples(samples);
  const std::int64_t chunks = static_cast<std::int64_t>((samples + kChunk - 1) / kChunk);
  std::vector<double> sums(static_cast<std::size_t>(chunks)), squares(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t c = 0; c < chunks; ++c) {
    Rng rng = substream(seed, static_cast<std::uint64_t>(c));
    const std::uint64_t begin = static_cast<std::uint64_t>(c) * kChunk;
    const std::uint64_t end = std::min(samples, begin + kChunk);
    double s = 0.0, q = 0.0;
    for (std::uint64_t r = begin; r < end; ++r) {
      const double v = draw(rng);
      s += v;
      q += v * v;
    }
    sums[c] = s;
    squares[c] = q;
  }
  McEstimate est;
  est.samples = samples;
  if (samples == 0) return est;
  const double n = static_cast<double>(samples);
  est.mean = detail::neumaier_sum(sums) / n;
  if (samples > 1) {
    const double var = (detail::neumaier_sum(squares) - n * est.mean * est.mean) / (n - 1.0);
    est.stderr_ = var > 0.0 ? std::sqrt(var / n) : 0.0;
  }
  return est;
}

PatternHistogram edge_pattern_histogram(const BoolFn& f, int t, std::span<const Mask> edges) {
  const std::size_t patterns = std::size_t{1} << edges.size();
  PatternHistogram hist(patterns, 0);
  const int n = f.arity();
  // Outer loop over the first vertex point; the rest is enumerated inside.
  const std::int64_t outer = std::int64_t{1} << n;
  const std::uint64_t inner = std::uint64_t{1} << (n * (t - 1));
#pragma omp parallel
  {
    PatternHistogram local(patterns, 0);
    std::vector<Mask> points(static_cast<std::size_t>(t));
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t first = 0; first < outer; ++first) {
      points[0] = static_cast<Mask>(first);
      for (std::uint64_t idx = 0; idx < inner; ++idx) {
        detail::unpack_points(idx, n, std::span<Mask>(points).subspan(1));
        ++local[detail::edge_pattern(f, points, edges)];
      }
    }
#pragma omp critical
    for (std::size_t p = 0; p < patterns; ++p) hist[p] += local[p];
  }
  return hist;
}

}  // namespace omp
}  // namespace cubekit::kernels
