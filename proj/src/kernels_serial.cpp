#include <cmath>

#include "cubekit/kernels.hpp"
#include "kernels_common.hpp"

namespace cubekit::kernels::serial {

void walsh_hadamard(std::span<double> a) {
  detail::require_power_of_two(a.size());
  detail::butterfly(a);
}

double uniformity(const BoolFn& f, int d) {
  if (d <= 2) return detail::uniformity_table(f.values(), d);
  std::vector<double> per_direction(f.size());
  for (Mask y = 0; y < f.size(); ++y) {
    per_direction[y] = detail::uniformity_table(detail::derivative_table(f.values(), y), d - 1);
  }
  return detail::neumaier_sum(per_direction) / static_cast<double>(f.size());
}

double inner_product_spectral(std::span<const BoolFn> entries, int d) {
  if (d == 1) return entries[0].mean() * entries[1].mean();
  const int n = entries[0].arity();
  const std::uint64_t tuples = std::uint64_t{1} << (n * (d - 2));
  std::vector<double> terms(tuples);
  std::vector<Mask> dirs(static_cast<std::size_t>(d - 2));
  for (std::uint64_t idx = 0; idx < tuples; ++idx) {
    detail::unpack_points(idx, n, dirs);
    terms[idx] = detail::four_spectra_term(entries, d, dirs);
  }
  return detail::neumaier_sum(terms) / static_cast<double>(tuples);
}

McEstimate monte_carlo(std::uint64_t samples, std::uint64_t seed, const Draw& draw) {
  detail::require_samples(samples);
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<double> sums(chunks), squares(chunks);
  for (std::uint64_t c = 0; c < chunks; ++c) {
    Rng rng = substream(seed, c);
    const std::uint64_t end = std::min(samples, (c + 1) * kChunk);
    double s = 0.0, q = 0.0;
    for (std::uint64_t r = c * kChunk; r < end; ++r) {
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
  PatternHistogram hist(std::size_t{1} << edges.size(), 0);
  const int n = f.arity();
  const std::uint64_t tuples = std::uint64_t{1} << (n * t);
  std::vector<Mask> points(static_cast<std::size_t>(t));
  for (std::uint64_t idx = 0; idx < tuples; ++idx) {
    detail::unpack_points(idx, n, points);
    ++hist[detail::edge_pattern(f, points, edges)];
  }
  return hist;
}

}  // namespace cubekit::kernels::serial
