#include "cubekit/gowers.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "cubekit/influence.hpp"
#include "cubekit/kernels.hpp"
#include "cubekit/rng.hpp"
#include "kernels_common.hpp"

namespace cubekit {

namespace {

constexpr int kMaxDimension = 6;

void check_dimension(int d) {
  if (d < 1 || d > kMaxDimension) {
    throw std::invalid_argument("dimension must lie in [1, " + std::to_string(kMaxDimension) + "]");
  }
}

/// Cube points x + sum_{i in S} dirs[i] for every S, filled by lowest-bit recurrence.
void cube_points(Mask base, std::span<const Mask> dirs, std::span<Mask> out) {
  out[0] = base;
  for (Mask s = 1; s < out.size(); ++s) {
    const Mask low = s & (~s + 1);
    out[s] = out[s ^ low] ^ dirs[std::countr_zero(low)];
  }
}

double cube_product(const FnCollection& c, std::span<const Mask> points) {
  double p = 1.0;
  for (Mask s = 0; s < points.size(); ++s) p *= c[s][points[s]];
  return p;
}

double uniformity_via_means(std::span<const double> f, int d) {
  if (d == 1) {
    const double m = kernels::detail::mean_of(f);
    return m * m;
  }
  double s = 0.0;
  for (Mask y = 0; y < f.size(); ++y) {
    s += uniformity_via_means(kernels::detail::derivative_table(f, y), d - 1);
  }
  return s / static_cast<double>(f.size());
}

}  // namespace

FnCollection::FnCollection(int d, std::vector<BoolFn> entries) : d_(d), entries_(std::move(entries)) {
  check_dimension(d);
  if (entries_.size() != (std::size_t{1} << d)) {
    throw std::invalid_argument("a dimension-d collection needs exactly 2^d functions");
  }
  for (const auto& f : entries_) {
    if (f.arity() != entries_.front().arity()) {
      throw std::invalid_argument("collection entries do not share an arity");
    }
  }
}

FnCollection FnCollection::uniform(int d, const BoolFn& f) {
  check_dimension(d);
  return FnCollection(d, std::vector<BoolFn>(std::size_t{1} << d, f));
}

std::string subset_key(Mask s) {
  std::string key;
  for (int i = 0; s >> i; ++i) {
    if (s >> i & 1) key += static_cast<char>('1' + i);
  }
  return key;
}

Mask parse_subset_key(const std::string& key, int d) {
  Mask s = 0;
  int last = 0;
  for (char ch : key) {
    const int digit = ch - '0';
    if (digit < 1 || digit > d || digit <= last) {
      throw std::invalid_argument("malformed subset key \"" + key + "\"");
    }
    last = digit;
    s |= Mask{1} << (digit - 1);
  }
  return s;
}

BoolFn derivative(const BoolFn& f, Mask y) {
  if (y > f.full_mask()) throw std::invalid_argument("shift outside the cube");
  return BoolFn(f.arity(), kernels::detail::derivative_table(f.values(), y));
}

GowersResult gowers_u(const BoolFn& f, int d, Guard guard, UniformityBase base) {
  check_dimension(d);
  check_budget(f.arity() * d, guard, "gowers_u");
  GowersResult r;
  r.value = base == UniformityBase::fourth_powers ? kernels::omp::uniformity(f, d)
                                                  : uniformity_via_means(f.values(), d);
  return r;
}

GowersResult gowers_u_mc(const BoolFn& f, int d, std::uint64_t samples, std::uint64_t seed) {
  return gowers_ip_mc(FnCollection::uniform(d, f), samples, seed);
}

GowersResult gowers_ip(const FnCollection& c, InnerProductRoute route, Guard guard) {
  const int d = c.dimension();
  const int n = c.arity();
  GowersResult r;
  if (route == InnerProductRoute::four_spectra) {
    check_budget(n * std::max(d - 1, 1), guard, "gowers_ip");
    r.value = kernels::omp::inner_product_spectral(c.entries(), d);
    return r;
  }
  check_budget(n * (d + 1), guard, "gowers_ip");
  const std::int64_t outer = std::int64_t{1} << n;
  const std::uint64_t inner = std::uint64_t{1} << (n * d);
  std::vector<double> partial(static_cast<std::size_t>(outer));
#pragma omp parallel
  {
    std::vector<Mask> dirs(static_cast<std::size_t>(d));
    std::vector<Mask> points(std::size_t{1} << d);
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t x = 0; x < outer; ++x) {
      double s = 0.0;
      for (std::uint64_t idx = 0; idx < inner; ++idx) {
        kernels::detail::unpack_points(idx, n, dirs);
        cube_points(static_cast<Mask>(x), dirs, points);
        s += cube_product(c, points);
      }
      partial[x] = s;
    }
  }
  r.value = kernels::detail::neumaier_sum(partial) / static_cast<double>(outer) / static_cast<double>(inner);
  return r;
}

GowersResult gowers_ip_mc(const FnCollection& c, std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("at least one sample is required");
  const int d = c.dimension();
  const Mask full = c[0].full_mask();
  const auto est = kernels::omp::monte_carlo(samples, seed, [&](Rng& rng) {
    Mask dirs[kMaxDimension];
    Mask points[1 << kMaxDimension];
    const Mask x = static_cast<Mask>(rng()) & full;
    for (int i = 0; i < d; ++i) dirs[i] = static_cast<Mask>(rng()) & full;
    cube_points(x, std::span<const Mask>(dirs, static_cast<std::size_t>(d)),
                std::span<Mask>(points, std::size_t{1} << d));
    return cube_product(c, std::span<const Mask>(points, std::size_t{1} << d));
  });
  return {est.mean, Method::monte_carlo, est.samples, est.stderr_};
}

GowersResult linear_gowers_ip(const FnCollection& c, Guard guard) {
  const int d = c.dimension();
  const int n = c.arity();
  check_budget(n * d, guard, "linear_gowers_ip");
  const std::uint64_t tuples = std::uint64_t{1} << (n * d);
  std::vector<Mask> dirs(static_cast<std::size_t>(d));
  std::vector<Mask> points(std::size_t{1} << d);
  double s = 0.0;
  for (std::uint64_t idx = 0; idx < tuples; ++idx) {
    kernels::detail::unpack_points(idx, n, dirs);
    cube_points(0, dirs, points);
    s += cube_product(c, points);
  }
  GowersResult r;
  r.value = s / static_cast<double>(tuples);
  return r;
}

FnCollection lift_linear_to_gowers(const FnCollection& c) {
  const int d = c.dimension();
  const Mask top = Mask{1} << (d - 1);
  std::vector<BoolFn> lifted;
  lifted.reserve(c.entries().size());
  for (Mask t = 0; t < (Mask{1} << d); ++t) lifted.push_back(c[t | top]);
  return FnCollection(d, std::move(lifted));
}

InfluentialVariable find_influential_variable(const FnCollection& c, int t) {
  const InfluenceReport r = cross_influences(c.entries(), t);
  return {r.argmax, r.max_value};
}

}  // namespace cubekit
