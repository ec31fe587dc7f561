#include "cubekit/bool_fn.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cubekit/kernels.hpp"

namespace cubekit {

namespace {

constexpr double kRangeSlack = 1e-9;

void check_arity(int n) {
  if (n < 1 || n > kMaxArity) {
    throw std::invalid_argument("arity must be in [1, " + std::to_string(kMaxArity) +
                                "], got " + std::to_string(n));
  }
}

double noise_factor(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 0.5)) {
    throw std::invalid_argument("noise rate must lie in [0, 1/2]");
  }
  return 1.0 - 2.0 * gamma;
}

}  // namespace

BoolFn::BoolFn(int n, std::vector<double> values) : n_(n), values_(std::move(values)) {
  check_arity(n);
  if (values_.size() != (std::size_t{1} << n)) {
    throw std::invalid_argument("table length " + std::to_string(values_.size()) +
                                " does not match 2^" + std::to_string(n));
  }
  is_sign_ = true;
  for (double& v : values_) {
    if (!std::isfinite(v) || std::abs(v) > 1.0 + kRangeSlack) {
      throw std::invalid_argument("function value outside [-1, 1]");
    }
    v = std::clamp(v, -1.0, 1.0);
    if (v != 1.0 && v != -1.0) is_sign_ = false;
  }
}

BoolFn BoolFn::constant(int n, double c) {
  check_arity(n);
  return BoolFn(n, std::vector<double>(std::size_t{1} << n, c));
}

double BoolFn::mean() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(size());
}

Gf2Matrix Gf2Matrix::identity(int n) {
  Gf2Matrix m{n, std::vector<Mask>(static_cast<std::size_t>(n))};
  for (int r = 0; r < n; ++r) m.rows[r] = Mask{1} << r;
  return m;
}

Mask Gf2Matrix::apply(Mask x) const {
  Mask y = 0;
  for (int r = 0; r < n; ++r) {
    y |= static_cast<Mask>(std::popcount(rows[r] & x) & 1) << r;
  }
  return y;
}

int Gf2Matrix::rank() const {
  std::vector<Mask> m = rows;
  int rank = 0;
  for (int col = 0; col < n && rank < n; ++col) {
    const Mask bit = Mask{1} << col;
    auto pivot = std::find_if(m.begin() + rank, m.end(), [&](Mask r) { return r & bit; });
    if (pivot == m.end()) continue;
    std::iter_swap(m.begin() + rank, pivot);
    for (int r = 0; r < n; ++r) {
      if (r != rank && (m[r] & bit)) m[r] ^= m[rank];
    }
    ++rank;
  }
  return rank;
}

Gf2Matrix random_gf2_matrix(int n, Rng& rng) {
  Gf2Matrix m{n, std::vector<Mask>(static_cast<std::size_t>(n))};
  const Mask full = (Mask{1} << n) - 1;
  for (auto& r : m.rows) r = static_cast<Mask>(rng()) & full;
  return m;
}

Gf2Matrix random_invertible_gf2_matrix(int n, Rng& rng) {
  for (;;) {
    Gf2Matrix m = random_gf2_matrix(n, rng);
    if (m.invertible()) return m;
  }
}

BoolFn make_chi(int n, Mask s) {
  check_arity(n);
  if (s >> n) throw std::invalid_argument("subset mask has bits above the arity");
  std::vector<double> v(std::size_t{1} << n);
  for (Mask x = 0; x < v.size(); ++x) v[x] = (std::popcount(x & s) & 1) ? -1.0 : 1.0;
  return BoolFn(n, std::move(v));
}

BoolFn make_long_code(int n, int coordinate) {
  check_arity(n);
  if (coordinate < 0 || coordinate >= n) {
    throw std::invalid_argument("long-code coordinate out of range");
  }
  return make_chi(n, Mask{1} << coordinate);
}

BoolFn make_quadratic_phase(int n) {
  if (n % 2 != 0) throw std::invalid_argument("quadratic phase needs an even arity");
  return make_block_and(n, 2);
}

BoolFn make_block_and(int n, int block) {
  check_arity(n);
  if (block < 1 || n % block != 0) {
    throw std::invalid_argument("block size must divide the arity");
  }
  const Mask block_mask = (Mask{1} << block) - 1;
  std::vector<double> v(std::size_t{1} << n);
  for (Mask x = 0; x < v.size(); ++x) {
    int parity = 0;
    for (int start = 0; start < n; start += block) {
      parity ^= ((x >> start) & block_mask) == block_mask;
    }
    v[x] = parity ? -1.0 : 1.0;
  }
  return BoolFn(n, std::move(v));
}

BoolFn random_fn(int n, RandomMode mode, std::uint64_t seed) {
  check_arity(n);
  Rng rng = seeded(seed);
  std::vector<double> v(std::size_t{1} << n);
  if (mode == RandomMode::sign) {
    for (auto& x : v) x = (rng() & 1) ? -1.0 : 1.0;
  } else {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& x : v) x = u(rng);
  }
  return BoolFn(n, std::move(v));
}

Spectrum fourier(const BoolFn& f) {
  Spectrum s{f.arity(), std::vector<double>(f.values().begin(), f.values().end())};
  kernels::omp::walsh_hadamard(s.coeffs);
  // Dividing by a power of two is exact.
  const double scale = std::ldexp(1.0, -f.arity());
  for (auto& c : s.coeffs) c *= scale;
  return s;
}

BoolFn inverse_fourier(const Spectrum& s) {
  std::vector<double> v = s.coeffs;
  kernels::omp::walsh_hadamard(v);
  return BoolFn(s.n, std::move(v));
}

BoolFn multiply(const BoolFn& f, const BoolFn& g) {
  if (f.arity() != g.arity()) throw std::invalid_argument("arity mismatch");
  std::vector<double> v(f.size());
  for (Mask x = 0; x < v.size(); ++x) v[x] = f[x] * g[x];
  return BoolFn(f.arity(), std::move(v));
}

BoolFn apply_noise(const BoolFn& f, double gamma) {
  const double rho = noise_factor(gamma);
  if (gamma == 0.0) return f;
  Spectrum s = fourier(f);
  std::vector<double> power(static_cast<std::size_t>(f.arity()) + 1, 1.0);
  for (std::size_t k = 1; k < power.size(); ++k) power[k] = power[k - 1] * rho;
  for (Mask m = 0; m < s.coeffs.size(); ++m) s.coeffs[m] *= power[std::popcount(m)];
  return inverse_fourier(s);
}

Mask sample_mu_gamma(int n, double gamma, Rng& rng) {
  noise_factor(gamma);
  if (gamma == 0.0) return 0;
  std::bernoulli_distribution coin(gamma);
  Mask eta = 0;
  for (int i = 0; i < n; ++i) eta |= static_cast<Mask>(coin(rng)) << i;
  return eta;
}

BoolFn fold(const BoolFn& f) {
  if (!f.is_sign()) throw std::invalid_argument("folding is defined for sign-valued functions");
  const Mask full = f.full_mask();
  std::vector<double> v(f.size());
  for (Mask x = 0; x < v.size(); ++x) v[x] = (x & 1) ? -f[x ^ full] : f[x];
  return BoolFn(f.arity(), std::move(v));
}

BoolFn permute(const BoolFn& f, std::span<const int> pi) {
  const int n = f.arity();
  if (static_cast<int>(pi.size()) != n) throw std::invalid_argument("permutation size mismatch");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int p : pi) {
    if (p < 0 || p >= n || seen[p]) throw std::invalid_argument("not a permutation");
    seen[p] = true;
  }
  std::vector<double> v(f.size());
  for (Mask x = 0; x < v.size(); ++x) {
    Mask y = 0;
    for (int j = 0; j < n; ++j) y |= ((x >> pi[j]) & 1u) << j;
    v[x] = f[y];
  }
  return BoolFn(n, std::move(v));
}

BoolFn apply_linear_transform(const BoolFn& f, const Gf2Matrix& a) {
  if (a.n != f.arity() || static_cast<int>(a.rows.size()) != a.n) {
    throw std::invalid_argument("matrix dimension does not match the arity");
  }
  std::vector<double> v(f.size());
  for (Mask x = 0; x < v.size(); ++x) v[x] = f[a.apply(x)];
  return BoolFn(f.arity(), std::move(v));
}

}  // namespace cubekit
