#pragma once

// Building blocks shared by the serial and OpenMP kernel files.

#include <bit>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "cubekit/bool_fn.hpp"

namespace cubekit::kernels::detail {

inline void require_power_of_two(std::size_t len) {
  if (len == 0 || (len & (len - 1)) != 0) throw std::invalid_argument("transform length must be a power of two");
}

inline void require_samples(std::uint64_t samples) {
  if (samples == 0) throw std::invalid_argument("at least one sample is required");
}

inline void butterfly(std::span<double> a) {
  const std::size_t len = a.size();
  for (std::size_t h = 1; h < len; h <<= 1) {
    for (std::size_t i = 0; i < len; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double u = a[j];
        const double v = a[j + h];
        a[j] = u + v;
        a[j + h] = u - v;
      }
    }
  }
}

/// Normalized Fourier coefficients of a raw table.
inline std::vector<double> spectrum_of(std::span<const double> values) {
  std::vector<double> c(values.begin(), values.end());
  butterfly(c);
  const double scale = 1.0 / static_cast<double>(c.size());
  for (auto& x : c) x *= scale;
  return c;
}

/// x -> f(x) f(x + y).
inline std::vector<double> derivative_table(std::span<const double> f, Mask y) {
  std::vector<double> out(f.size());
  for (Mask x = 0; x < f.size(); ++x) out[x] = f[x] * f[x ^ y];
  return out;
}

inline double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

/// U^d of a raw table, fully serial; d >= 1.
inline double uniformity_table(std::span<const double> f, int d) {
  if (d == 1) {
    const double m = mean_of(f);
    return m * m;
  }
  if (d == 2) {
    double s = 0.0;
    for (double c : spectrum_of(f)) s += (c * c) * (c * c);
    return s;
  }
  double s = 0.0;
  for (Mask y = 0; y < f.size(); ++y) s += uniformity_table(derivative_table(f, y), d - 1);
  return s / static_cast<double>(f.size());
}

/// Products A, B, C, D over the outer cube for one tuple of outer directions,
/// then the sum over alpha of their four spectra.
inline double four_spectra_term(std::span<const BoolFn> entries, int d, std::span<const Mask> dirs) {
  const std::size_t size = entries[0].size();
  const int k = d - 2;
  const Mask extra_bits[4] = {0, Mask{1} << k, Mask{1} << (k + 1), (Mask{1} << k) | (Mask{1} << (k + 1))};
  std::vector<double> spectra[4];
  for (int slot = 0; slot < 4; ++slot) {
    std::vector<double> prod(size, 1.0);
    for (Mask s = 0; s < (Mask{1} << k); ++s) {
      Mask shift = 0;
      for (int i = 0; i < k; ++i) {
        if (s >> i & 1) shift ^= dirs[i];
      }
      const BoolFn& g = entries[s | extra_bits[slot]];
      for (Mask x = 0; x < size; ++x) prod[x] *= g[x ^ shift];
    }
    spectra[slot] = spectrum_of(prod);
  }
  double sum = 0.0;
  for (std::size_t a = 0; a < size; ++a) {
    sum += spectra[0][a] * spectra[1][a] * spectra[2][a] * spectra[3][a];
  }
  return sum;
}

/// Decodes a flat index into `count` points of {0,1}^n.
inline void unpack_points(std::uint64_t index, int n, std::span<Mask> out) {
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  for (auto& p : out) {
    p = static_cast<Mask>(index & mask);
    index >>= n;
  }
}

/// Order-fixed compensated sum.
inline double neumaier_sum(std::span<const double> v) {
  double sum = 0.0;
  double comp = 0.0;
  for (double x : v) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

/// Sign-failure pattern of all edges for one tuple of vertex points.
inline std::uint32_t edge_pattern(const BoolFn& f, std::span<const Mask> points, std::span<const Mask> edges) {
  std::uint32_t pattern = 0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    double lhs = 1.0;
    Mask sum = 0;
    for (Mask vs = edges[e]; vs; vs &= vs - 1) {
      const int v = std::countr_zero(vs);
      lhs *= f[points[v]];
      sum ^= points[v];
    }
    if (lhs != f[sum]) pattern |= std::uint32_t{1} << e;
  }
  return pattern;
}

}  // namespace cubekit::kernels::detail
