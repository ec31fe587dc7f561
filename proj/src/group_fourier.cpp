#include "cubekit/group_fourier.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cubekit/rng.hpp"

namespace cubekit {

namespace {

constexpr double kRangeSlack = 1e-9;

void require_same_spec(const GroupSpec& a, const GroupSpec& b) {
  if (!(a == b)) throw std::invalid_argument("functions live on different groups");
}

/// Per-axis DFT with kernel exp(sign * 2 pi i g x / m), optionally divided by m.
std::vector<Complex> transform_axes(const GroupSpec& spec, std::vector<Complex> data, int sign, bool normalize) {
  const auto& moduli = spec.moduli();
  const auto& strides = spec.strides();
  std::vector<Complex> line;
  std::vector<Complex> out;
  for (std::size_t axis = 0; axis < moduli.size(); ++axis) {
    const int m = moduli[axis];
    const std::size_t stride = strides[axis];
    std::vector<Complex> roots(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
      roots[k] = std::polar(1.0, sign * 2.0 * std::numbers::pi * k / m);
    }
    line.resize(static_cast<std::size_t>(m));
    out.resize(static_cast<std::size_t>(m));
    for (std::size_t base = 0; base < data.size(); ++base) {
      if ((base / stride) % static_cast<std::size_t>(m) != 0) continue;
      for (int x = 0; x < m; ++x) line[x] = data[base + x * stride];
      for (int g = 0; g < m; ++g) {
        Complex acc = 0.0;
        for (int x = 0; x < m; ++x) acc += line[x] * roots[(g * x) % m];
        out[g] = normalize ? acc / static_cast<double>(m) : acc;
      }
      for (int g = 0; g < m; ++g) data[base + g * stride] = out[g];
    }
  }
  return data;
}

int log2_ceil(std::size_t v) { return static_cast<int>(std::bit_width(v - 1)); }

std::vector<Complex> complex_derivative(std::span<const Complex> f, const GroupSpec& spec, std::size_t y) {
  std::vector<Complex> out(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) out[x] = f[x] * std::conj(f[spec.add(x, y)]);
  return out;
}

double uniformity_rec(std::span<const Complex> f, const GroupSpec& spec, int d, GroupUniformityBase base) {
  if (d == 1) {
    Complex m = 0.0;
    for (auto v : f) m += v;
    return std::norm(m / static_cast<double>(f.size()));
  }
  if (d == 2 && base == GroupUniformityBase::fourth_powers) {
    const auto c = transform_axes(spec, {f.begin(), f.end()}, -1, true);
    double s = 0.0;
    for (auto v : c) s += std::norm(v) * std::norm(v);
    return s;
  }
  double s = 0.0;
  for (std::size_t y = 0; y < f.size(); ++y) {
    s += uniformity_rec(complex_derivative(f, spec, y), spec, d - 1, base);
  }
  return s / static_cast<double>(f.size());
}

}  // namespace

GroupSpec::GroupSpec(std::vector<std::vector<int>> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw std::invalid_argument("a group needs at least one coordinate block");
  for (const auto& block : blocks_) {
    if (block.empty()) throw std::invalid_argument("empty coordinate block");
    first_factor_.push_back(static_cast<int>(moduli_.size()));
    for (int m : block) {
      if (m < 2) throw std::invalid_argument("cyclic moduli must be at least 2");
      strides_.push_back(order_);
      moduli_.push_back(m);
      order_ *= static_cast<std::size_t>(m);
      if (order_ > kMaxOrder) throw std::invalid_argument("group order exceeds 2^20");
    }
  }
  first_factor_.push_back(static_cast<int>(moduli_.size()));
}

GroupSpec GroupSpec::boolean_cube(int n) { return GroupSpec(std::vector<std::vector<int>>(n, {2})); }

std::size_t GroupSpec::block_order(int block) const {
  std::size_t o = 1;
  for (int m : blocks_.at(static_cast<std::size_t>(block))) o *= static_cast<std::size_t>(m);
  return o;
}

std::vector<int> GroupSpec::decode(std::size_t index) const {
  std::vector<int> digits(moduli_.size());
  for (std::size_t j = 0; j < moduli_.size(); ++j) {
    digits[j] = static_cast<int>(index % static_cast<std::size_t>(moduli_[j]));
    index /= static_cast<std::size_t>(moduli_[j]);
  }
  return digits;
}

std::size_t GroupSpec::encode(std::span<const int> digits) const {
  if (digits.size() != moduli_.size()) throw std::invalid_argument("wrong number of digits");
  std::size_t index = 0;
  for (std::size_t j = 0; j < moduli_.size(); ++j) {
    if (digits[j] < 0 || digits[j] >= moduli_[j]) throw std::invalid_argument("digit out of range");
    index += static_cast<std::size_t>(digits[j]) * strides_[j];
  }
  return index;
}

std::size_t GroupSpec::add(std::size_t a, std::size_t b) const {
  std::size_t sum = 0;
  for (std::size_t j = 0; j < moduli_.size(); ++j) {
    const std::size_t m = static_cast<std::size_t>(moduli_[j]);
    sum += ((a / strides_[j] + b / strides_[j]) % m) * strides_[j];
  }
  return sum;
}

std::size_t GroupSpec::block_digit(std::size_t index, int block) const {
  const int lo = first_factor_.at(static_cast<std::size_t>(block));
  const int hi = first_factor_[static_cast<std::size_t>(block) + 1];
  const std::size_t stride = strides_[lo];
  const std::size_t span = hi < static_cast<int>(moduli_.size()) ? strides_[hi] : order_;
  return (index % span) / stride;
}

bool GroupSpec::touches_block(std::size_t index, int block) const { return block_digit(index, block) != 0; }

GroupFn::GroupFn(GroupSpec s, std::vector<Complex> v) : spec(std::move(s)), values(std::move(v)) {
  if (values.size() != spec.order()) throw std::invalid_argument("table length does not match |G|");
  for (auto& z : values) {
    const double r = std::abs(z);
    if (!std::isfinite(r) || r > 1.0 + kRangeSlack) throw std::invalid_argument("|f(x)| exceeds 1");
    if (r > 1.0) z /= r;
  }
}

Complex GroupFn::mean() const {
  Complex s = 0.0;
  for (auto v : values) s += v;
  return s / static_cast<double>(values.size());
}

GroupFn group_character(const GroupSpec& spec, std::size_t g) {
  if (g >= spec.order()) throw std::invalid_argument("character label outside the group");
  const auto gd = spec.decode(g);
  const auto& moduli = spec.moduli();
  std::vector<Complex> v(spec.order());
  for (std::size_t x = 0; x < v.size(); ++x) {
    const auto xd = spec.decode(x);
    double phase = 0.0;
    for (std::size_t j = 0; j < moduli.size(); ++j) {
      phase += static_cast<double>((gd[j] * xd[j]) % moduli[j]) / moduli[j];
    }
    v[x] = std::polar(1.0, 2.0 * std::numbers::pi * phase);
  }
  return GroupFn(spec, std::move(v));
}

GroupFn random_group_fn(const GroupSpec& spec, std::uint64_t seed) {
  Rng rng = seeded(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Complex> v(spec.order());
  for (auto& z : v) {
    const double r = std::sqrt(u(rng));
    z = std::polar(r, 2.0 * std::numbers::pi * u(rng));
  }
  return GroupFn(spec, std::move(v));
}

GroupFn multiply(const GroupFn& f, const GroupFn& g) {
  require_same_spec(f.spec, g.spec);
  std::vector<Complex> v(f.values.size());
  for (std::size_t x = 0; x < v.size(); ++x) v[x] = f.values[x] * g.values[x];
  return GroupFn(f.spec, std::move(v));
}

GroupSpectrum group_fourier(const GroupFn& f) {
  return {f.spec, transform_axes(f.spec, f.values, -1, true)};
}

GroupFn inverse_group_fourier(const GroupSpectrum& s) {
  return GroupFn(s.spec, transform_axes(s.spec, s.coeffs, +1, false));
}

double variance(const GroupFn& f) {
  const Complex m = f.mean();
  double s = 0.0;
  for (auto v : f.values) s += std::norm(v - m);
  return s / static_cast<double>(f.values.size());
}

double group_influence(const GroupFn& f, int block) {
  const GroupSpec& spec = f.spec;
  if (block < 0 || block >= spec.block_count()) throw std::invalid_argument("block out of range");
  // Elements of G_i are the indices with all other digits zero.
  std::vector<std::size_t> fiber;
  for (std::size_t x = 0; x < spec.order(); ++x) {
    bool inside = true;
    for (int b = 0; b < spec.block_count() && inside; ++b) {
      if (b != block && spec.touches_block(x, b)) inside = false;
    }
    if (inside) fiber.push_back(x);
  }
  double total = 0.0;
  for (std::size_t base = 0; base < spec.order(); ++base) {
    if (spec.touches_block(base, block)) continue;
    Complex m = 0.0;
    for (auto e : fiber) m += f.values[base + e];
    m /= static_cast<double>(fiber.size());
    double var = 0.0;
    for (auto e : fiber) var += std::norm(f.values[base + e] - m);
    total += var / static_cast<double>(fiber.size());
  }
  return total * static_cast<double>(fiber.size()) / static_cast<double>(spec.order());
}

double group_influence_fourier(const GroupSpectrum& s, int block) {
  if (block < 0 || block >= s.spec.block_count()) throw std::invalid_argument("block out of range");
  double mass = 0.0;
  for (std::size_t g = 0; g < s.coeffs.size(); ++g) {
    if (s.spec.touches_block(g, block)) mass += std::norm(s.coeffs[g]);
  }
  return mass;
}

double group_gowers_u(const GroupFn& f, int d, Guard guard, GroupUniformityBase base) {
  if (d < 1 || d > 6) throw std::invalid_argument("dimension must lie in [1, 6]");
  check_budget(log2_ceil(f.spec.order()) * d, guard, "group_gowers_u");
  return uniformity_rec(f.values, f.spec, d, base);
}

Complex group_gowers_ip(std::span<const GroupFn> collection, int d, Guard guard) {
  if (d < 1 || d > 6) throw std::invalid_argument("dimension must lie in [1, 6]");
  if (collection.size() != (std::size_t{1} << d)) {
    throw std::invalid_argument("a dimension-d collection needs exactly 2^d functions");
  }
  const GroupSpec& spec = collection.front().spec;
  for (const auto& f : collection) require_same_spec(spec, f.spec);
  const std::size_t order = spec.order();
  check_budget(log2_ceil(order) * (d + 1), guard, "group_gowers_ip");

  const std::size_t cube = std::size_t{1} << d;
  std::vector<std::size_t> dirs(static_cast<std::size_t>(d), 0);
  std::vector<std::size_t> points(cube);
  Complex total = 0.0;
  std::uint64_t count = 0;
  for (;;) {
    for (std::size_t x = 0; x < order; ++x) {
      points[0] = x;
      for (std::size_t s = 1; s < cube; ++s) {
        const std::size_t low = s & (~s + 1);
        points[s] = spec.add(points[s ^ low], dirs[std::countr_zero(low)]);
      }
      Complex p = 1.0;
      for (std::size_t s = 0; s < cube; ++s) {
        const Complex v = collection[s].values[points[s]];
        p *= (std::popcount(s) & 1) ? std::conj(v) : v;
      }
      total += p;
      ++count;
    }
    std::size_t i = 0;
    while (i < dirs.size() && ++dirs[i] == order) dirs[i++] = 0;
    if (i == dirs.size()) break;
  }
  return total / static_cast<double>(count);
}

}  // namespace cubekit
