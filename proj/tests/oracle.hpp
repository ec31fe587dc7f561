#pragma once
// Brute-force reference computations. They touch only raw tables and never
// call the library's transforms or kernels.

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

using Table = std::vector<double>;

inline int popcount(std::uint32_t x) { return std::popcount(x); }

inline double chi(std::uint32_t s, std::uint32_t x) { return (popcount(s & x) & 1) ? -1.0 : 1.0; }

/// f^(S) = 2^-n sum_x f(x) chi_S(x), computed term by term.
inline Table fourier(const Table& f) {
  Table c(f.size(), 0.0);
  for (std::uint32_t s = 0; s < f.size(); ++s) {
    double acc = 0.0;
    for (std::uint32_t x = 0; x < f.size(); ++x) acc += f[x] * chi(s, x);
    c[s] = acc / static_cast<double>(f.size());
  }
  return c;
}

inline double influence(const Table& f, int i) {
  double acc = 0.0;
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    const double diff = f[x] - f[x ^ (1u << i)];
    acc += diff * diff;
  }
  return acc / (4.0 * static_cast<double>(f.size()));
}

/// Walks every (x, x_1..x_d) and multiplies the 2^d cube values.
inline double gowers_ip(const std::vector<Table>& entries, int d) {
  const std::uint32_t size = static_cast<std::uint32_t>(entries.front().size());
  std::vector<std::uint32_t> dirs(static_cast<std::size_t>(d) + 1, 0);  // dirs[d] is x
  double total = 0.0;
  std::uint64_t count = 0;
  for (;;) {
    double p = 1.0;
    for (std::uint32_t s = 0; s < (1u << d); ++s) {
      std::uint32_t point = dirs[d];
      for (int i = 0; i < d; ++i) {
        if ((s >> i) & 1u) point ^= dirs[i];
      }
      p *= entries[s][point];
    }
    total += p;
    ++count;
    std::size_t i = 0;
    while (i < dirs.size() && ++dirs[i] == size) dirs[i++] = 0;
    if (i == dirs.size()) break;
  }
  return total / static_cast<double>(count);
}

inline double gowers_u(const Table& f, int d) { return gowers_ip(std::vector<Table>(1u << d, f), d); }

inline double linear_gowers_ip(const std::vector<Table>& entries, int d) {
  const std::uint32_t size = static_cast<std::uint32_t>(entries.front().size());
  std::vector<std::uint32_t> dirs(static_cast<std::size_t>(d), 0);
  double total = 0.0;
  std::uint64_t count = 0;
  for (;;) {
    double p = 1.0;
    for (std::uint32_t s = 0; s < (1u << d); ++s) {
      std::uint32_t point = 0;
      for (int i = 0; i < d; ++i) {
        if ((s >> i) & 1u) point ^= dirs[i];
      }
      p *= entries[s][point];
    }
    total += p;
    ++count;
    std::size_t i = 0;
    while (i < dirs.size() && ++dirs[i] == size) dirs[i++] = 0;
    if (i == dirs.size()) break;
  }
  return total / static_cast<double>(count);
}

/// Pr over (x, y) that f(x) f(y) = f(x + y).
inline double blr(const Table& f) {
  double hits = 0.0;
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    for (std::uint32_t y = 0; y < f.size(); ++y) hits += (f[x] * f[y] == f[x ^ y]) ? 1.0 : 0.0;
  }
  return hits / static_cast<double>(f.size() * f.size());
}

/// Pr over x^1..x^t that every edge equation prod_{i in e} f(x^i) = f(sum x^i) holds.
inline double h_test(const Table& f, int t, const std::vector<std::vector<int>>& edges) {
  const std::uint32_t size = static_cast<std::uint32_t>(f.size());
  std::vector<std::uint32_t> x(static_cast<std::size_t>(t), 0);
  double hits = 0.0, count = 0.0;
  for (;;) {
    bool ok = true;
    for (const auto& e : edges) {
      double p = 1.0;
      std::uint32_t sum = 0;
      for (int v : e) {
        p *= f[x[v]];
        sum ^= x[v];
      }
      if (p != f[sum]) ok = false;
    }
    hits += ok;
    count += 1;
    std::size_t i = 0;
    while (i < x.size() && ++x[i] == size) x[i++] = 0;
    if (i == x.size()) break;
  }
  return hits / count;
}

/// Exact acceptance of the noisy H-test by summing over every noise pattern
/// (one per vertex and one per edge) weighted by its mu_gamma probability.
/// slots: t vertex tables then one table per edge.
inline double noisy_h_test(const std::vector<Table>& slots, int t, const std::vector<std::vector<int>>& edges,
                           double gamma) {
  const std::uint32_t size = static_cast<std::uint32_t>(slots.front().size());
  const int n = std::countr_zero(size);
  const std::size_t vars = static_cast<std::size_t>(2 * t) + edges.size();
  std::vector<std::uint32_t> v(vars, 0);  // x^1..x^t, eta^1..eta^t, eta^e
  auto weight = [&](std::uint32_t eta) {
    const int k = popcount(eta);
    return std::pow(gamma, k) * std::pow(1.0 - gamma, n - k);
  };
  double total = 0.0;
  for (;;) {
    double w = 1.0;
    for (std::size_t j = static_cast<std::size_t>(t); j < vars; ++j) w *= weight(v[j]);
    if (w > 0.0) {
      bool ok = true;
      for (std::size_t e = 0; e < edges.size(); ++e) {
        double p = 1.0;
        std::uint32_t sum = 0;
        for (int i : edges[e]) {
          p *= slots[i][v[i] ^ v[static_cast<std::size_t>(t + i)]];
          sum ^= v[i];
        }
        if (p != slots[static_cast<std::size_t>(t) + e][sum ^ v[static_cast<std::size_t>(2 * t) + e]]) ok = false;
      }
      if (ok) total += w;
    }
    std::size_t i = 0;
    while (i < v.size() && ++v[i] == size) v[i++] = 0;
    if (i == v.size()) break;
  }
  return total / std::pow(static_cast<double>(size), t);
}

/// Probability that d uniform vectors of GF(2)^d are linearly independent, by counting.
inline double p_indep(int d) {
  const std::uint32_t size = 1u << d;
  std::vector<std::uint32_t> v(static_cast<std::size_t>(d), 0);
  double hits = 0.0, count = 0.0;
  for (;;) {
    // Independent iff no nonempty subset sums to zero.
    bool indep = true;
    for (std::uint32_t s = 1; s < size && indep; ++s) {
      std::uint32_t sum = 0;
      for (int i = 0; i < d; ++i) {
        if ((s >> i) & 1u) sum ^= v[i];
      }
      if (sum == 0) indep = false;
    }
    hits += indep;
    count += 1;
    std::size_t i = 0;
    while (i < v.size() && ++v[i] == size) v[i++] = 0;
    if (i == v.size()) break;
  }
  return hits / count;
}

/// Best strong and weak values of a game by plain recursion over assignments.
struct GameOracle {
  int sigma;
  int vars;
  std::vector<std::vector<int>> cvars;
  std::vector<std::vector<std::vector<int>>> cperms;

  std::pair<double, double> solve() const {
    std::vector<int> a(static_cast<std::size_t>(vars), 0);
    std::pair<int, int> best{0, 0};
    std::function<void(int)> rec = [&](int v) {
      if (v == vars) {
        int strong = 0, weak = 0;
        for (std::size_t c = 0; c < cvars.size(); ++c) {
          std::vector<int> img;
          for (std::size_t j = 0; j < cvars[c].size(); ++j) img.push_back(cperms[c][j][a[cvars[c][j]]]);
          bool all_eq = true, any_eq = false;
          for (std::size_t j = 0; j < img.size(); ++j) {
            for (std::size_t k = j + 1; k < img.size(); ++k) {
              if (img[j] == img[k]) any_eq = true;
              else all_eq = false;
            }
          }
          strong += all_eq;
          weak += any_eq;
        }
        best.first = std::max(best.first, strong);
        best.second = std::max(best.second, weak);
        return;
      }
      for (int l = 0; l < sigma; ++l) {
        a[v] = l;
        rec(v + 1);
      }
    };
    rec(0);
    const double m = static_cast<double>(cvars.size());
    return {best.first / m, best.second / m};
  }
};

/// Group Gowers inner product, computing x + y digit by digit.
inline std::complex<double> group_ip(const std::vector<std::vector<std::complex<double>>>& entries,
                                     const std::vector<int>& moduli, int d) {
  std::size_t order = 1;
  for (int m : moduli) order *= static_cast<std::size_t>(m);
  auto add = [&](std::size_t a, std::size_t b) {
    std::size_t out = 0, stride = 1;
    for (int m : moduli) {
      const std::size_t mm = static_cast<std::size_t>(m);
      out += ((a % mm + b % mm) % mm) * stride;
      a /= mm;
      b /= mm;
      stride *= mm;
    }
    return out;
  };
  std::vector<std::size_t> v(static_cast<std::size_t>(d) + 1, 0);
  std::complex<double> total = 0.0;
  double count = 0.0;
  for (;;) {
    std::complex<double> p = 1.0;
    for (std::uint32_t s = 0; s < (1u << d); ++s) {
      std::size_t point = v[d];
      for (int i = 0; i < d; ++i) {
        if ((s >> i) & 1u) point = add(point, v[i]);
      }
      const auto z = entries[s][point];
      p *= (popcount(s) & 1) ? std::conj(z) : z;
    }
    total += p;
    count += 1;
    std::size_t i = 0;
    while (i < v.size() && ++v[i] == order) v[i++] = 0;
    if (i == v.size()) break;
  }
  return total / count;
}

}  // namespace oracle
