#include "doctest.h"

#include <cmath>

#include "cubekit/gowers.hpp"
#include "cubekit/influence.hpp"
#include "support.hpp"

using namespace cubekit;

namespace {

FnCollection random_collection(int d, int n, RandomMode mode, std::uint64_t seed) {
  std::vector<BoolFn> e;
  for (int s = 0; s < (1 << d); ++s) e.push_back(random_fn(n, mode, seed + static_cast<std::uint64_t>(s)));
  return FnCollection(d, std::move(e));
}

}  // namespace

TEST_CASE("collections") {
  CHECK_THROWS_AS(FnCollection(2, std::vector<BoolFn>(3, make_chi(2, 0))), std::invalid_argument);
  CHECK_THROWS_AS(FnCollection(1, {make_chi(2, 0), make_chi(3, 0)}), std::invalid_argument);
  CHECK_THROWS_AS(FnCollection(0, {make_chi(2, 0)}), std::invalid_argument);
  CHECK(subset_key(0) == "");
  CHECK(subset_key(0b101) == "13");
  CHECK(parse_subset_key("13", 3) == 0b101u);
  CHECK_THROWS_AS(parse_subset_key("31", 3), std::invalid_argument);
  CHECK_THROWS_AS(parse_subset_key("4", 3), std::invalid_argument);
  CHECK_THROWS_AS(parse_subset_key("11", 3), std::invalid_argument);
  CHECK_THROWS_AS(parse_subset_key("a", 3), std::invalid_argument);
}

TEST_CASE("derivatives") {
  const BoolFn chi = make_chi(4, 0b0110);
  for (Mask y = 0; y < 16; ++y) {
    const BoolFn d = derivative(chi, y);
    for (double v : d.values()) CHECK(v == chi[y]);
  }
  const BoolFn f = random_fn(4, RandomMode::bounded, 2);
  const BoolFn sq = derivative(f, 0);
  for (Mask x = 0; x < 16; ++x) CHECK(sq[x] == f[x] * f[x]);
  // Derivatives of the quadratic phase are signed characters.
  const BoolFn q = make_quadratic_phase(2);
  for (Mask y = 0; y < 4; ++y) {
    const Spectrum s = fourier(derivative(q, y));
    int ones = 0;
    for (double c : s.coeffs) ones += std::abs(c) == 1.0;
    CHECK(ones == 1);
  }
}

TEST_CASE("uniformity of structured functions") {
  for (Mask s = 0; s < 8; ++s) {
    CHECK(gowers_u(make_chi(3, s), 1).value == (s == 0 ? 1.0 : 0.0));
    for (int d = 2; d <= 4; ++d) CHECK(gowers_u(make_chi(3, s), d).value == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(gowers_u(make_quadratic_phase(2), 2).value == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(gowers_u(make_quadratic_phase(2), 3).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(gowers_u(make_block_and(4, 2), 3).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(gowers_u(make_block_and(3, 3), 3).value == doctest::Approx(11.0 / 32).epsilon(1e-12));
  CHECK(gowers_u(make_block_and(6, 3), 3).value == doctest::Approx(std::pow(11.0 / 32, 2)).epsilon(1e-12));
  CHECK_THROWS_AS(gowers_u(make_chi(2, 0), 0), std::invalid_argument);
  CHECK_THROWS_AS(gowers_u(make_chi(2, 0), 7), std::invalid_argument);
}

TEST_CASE("uniformity matches enumeration") {
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + trial % 3;
    const BoolFn f = random_fn(n, trial % 2 ? RandomMode::bounded : RandomMode::sign, 70 + trial);
    for (int d = 1; d <= 4; ++d) {
      if (n * (d + 1) > 16) continue;
      const double ref = oracle::gowers_u(table(f), d);
      CHECK(std::abs(gowers_u(f, d).value - ref) <= 1e-12);
      CHECK(std::abs(gowers_u(f, d, Guard::enforce, UniformityBase::squared_mean).value - ref) <= 1e-12);
    }
  }
}

TEST_CASE("uniformity closed forms and properties") {
  for (int trial = 0; trial < 20; ++trial) {
    const BoolFn f = random_fn(6, RandomMode::sign, 300 + trial);
    const Spectrum s = fourier(f);
    double fourth = 0.0;
    for (double c : s.coeffs) fourth += std::pow(c, 4);
    CHECK(std::abs(gowers_u(f, 1).value - f.mean() * f.mean()) <= kTol);
    CHECK(std::abs(gowers_u(f, 2).value - fourth) <= kTol);
    double prev = gowers_u(f, 1).value;
    const double u1 = prev, mi = influences(f).max_value;
    for (int d = 2; d <= 4; ++d) {
      const double u = gowers_u(f, d).value;
      CHECK(u >= -kTol);
      CHECK(prev <= std::sqrt(u) + kTol);
      CHECK(u <= u1 + (std::ldexp(1.0, d - 1) - 1) * mi + kTol);
      prev = u;
    }
    const BoolFn g = random_fn(6, RandomMode::bounded, 400 + trial);
    for (int d = 2; d <= 4; ++d) {
      CHECK(gowers_u(g, d).value <= gowers_u(g, 1).value + std::pow(4.0, d) * influences(g).max_value + kTol);
    }
  }
}

TEST_CASE("tightness of the influence bound") {
  for (int d = 3; d <= 4; ++d) {
    const int b = d - 1;
    const BoolFn f = make_block_and(2 * b, b);
    CHECK(gowers_u(f, d).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(influences(f).max_value == std::ldexp(1.0, -(d - 2)));
  }
  const BoolFn f = make_block_and(8, 2);
  CHECK(gowers_u(f, 1).value == doctest::Approx(1.0 / 256).epsilon(1e-12));
}

TEST_CASE("invariance under invertible linear maps") {
  Rng rng = seeded(17);
  for (int trial = 0; trial < 20; ++trial) {
    const BoolFn f = random_fn(5, RandomMode::sign, 800 + trial);
    const BoolFn fa = apply_linear_transform(f, random_invertible_gf2_matrix(5, rng));
    for (int d = 2; d <= 3; ++d) CHECK(std::abs(gowers_u(fa, d).value - gowers_u(f, d).value) <= kTol);
  }
}

TEST_CASE("guards") {
  const BoolFn f = random_fn(12, RandomMode::sign, 1);
  CHECK_THROWS_AS(gowers_u(f, 3), ResourceLimitError);
  const FnCollection c = FnCollection::uniform(3, random_fn(7, RandomMode::sign, 1));
  CHECK_THROWS_AS(gowers_ip(c, InnerProductRoute::enumeration), ResourceLimitError);
  CHECK_NOTHROW(gowers_ip(c, InnerProductRoute::four_spectra));
  const FnCollection big = FnCollection::uniform(3, random_fn(9, RandomMode::sign, 1));
  CHECK_THROWS_AS(linear_gowers_ip(big), ResourceLimitError);
}

TEST_CASE("inner products") {
  for (int trial = 0; trial < 10; ++trial) {
    for (int d = 1; d <= 3; ++d) {
      const int n = d == 3 ? 3 : 4;
      const FnCollection c = random_collection(d, n, trial % 2 ? RandomMode::bounded : RandomMode::sign, 50 * trial);
      const double ref = oracle::gowers_ip(tables(c.entries()), d);
      CHECK(std::abs(gowers_ip(c).value - ref) <= 1e-12);
      CHECK(std::abs(gowers_ip(c, InnerProductRoute::enumeration).value - ref) <= 1e-12);
      CHECK(std::abs(linear_gowers_ip(c).value - oracle::linear_gowers_ip(tables(c.entries()), d)) <= 1e-12);
      CHECK(gowers_ip(c).stderr_ == 0.0);
    }
  }
  const BoolFn f = random_fn(5, RandomMode::sign, 5);
  CHECK(std::abs(gowers_ip(FnCollection::uniform(3, f)).value - gowers_u(f, 3).value) <= kTol);
  CHECK(gowers_ip(FnCollection::uniform(2, BoolFn::constant(4, 1.0))).value == 1.0);
  CHECK(gowers_ip(FnCollection(1, {random_fn(4, RandomMode::sign, 3), make_chi(4, 2)})).value == 0.0);
}

TEST_CASE("linear inner product") {
  const BoolFn chi = make_chi(3, 0b101);
  CHECK(linear_gowers_ip(FnCollection(1, {random_fn(3, RandomMode::sign, 1), make_chi(3, 1)})).value == 0.0);
  CHECK(linear_gowers_ip(FnCollection::uniform(2, chi)).value == 1.0);
  BoolFn neg(3, std::vector<double>(chi.values().begin(), chi.values().end()));
  std::vector<double> flipped(neg.values().begin(), neg.values().end());
  for (auto& v : flipped) v = -v;
  CHECK(linear_gowers_ip(FnCollection(2, {chi, chi, chi, BoolFn(3, flipped)})).value == -1.0);

  const BoolFn a = random_fn(3, RandomMode::sign, 1), b = random_fn(3, RandomMode::sign, 2);
  const FnCollection lifted = lift_linear_to_gowers(FnCollection(1, {a, b}));
  CHECK(lifted[0] == b);
  CHECK(lifted[1] == b);
  CHECK(gowers_ip(lift_linear_to_gowers(FnCollection::uniform(2, chi))).value == doctest::Approx(1.0));

  for (int trial = 0; trial < 50; ++trial) {
    for (int d = 2; d <= 3; ++d) {
      const FnCollection c = random_collection(d, 5, RandomMode::sign, 7000 + 10 * trial);
      const double ip = gowers_ip(lift_linear_to_gowers(c)).value;
      CHECK(std::abs(linear_gowers_ip(c).value) <= std::sqrt(std::max(0.0, ip)) + kTol);
    }
  }
}

TEST_CASE("gowers cauchy schwarz and four-function bound") {
  for (int trial = 0; trial < 30; ++trial) {
    for (int d = 2; d <= 3; ++d) {
      const FnCollection c = random_collection(d, 4, trial % 2 ? RandomMode::bounded : RandomMode::sign, 90 * trial);
      double bound = 1.0;
      for (const auto& f : c.entries()) bound *= std::pow(std::max(0.0, gowers_u(f, d).value), 1.0 / (1 << d));
      CHECK(std::abs(gowers_ip(c).value) <= bound + kTol);
    }
    std::vector<Spectrum> s;
    for (int j = 0; j < 4; ++j) s.push_back(fourier(random_fn(8, RandomMode::bounded, 11000 + 4 * trial + j)));
    double sum = 0.0, eps = 0.0;
    for (std::size_t a = 0; a < s[0].coeffs.size(); ++a) {
      sum += s[0][a] * s[1][a] * s[2][a] * s[3][a];
      eps = std::max(eps, std::min({std::abs(s[0][a]), std::abs(s[1][a]), std::abs(s[2][a]), std::abs(s[3][a])}));
    }
    CHECK(std::abs(sum) <= 4 * eps + kTol);
  }
}

TEST_CASE("monte carlo estimators") {
  const GowersResult one = gowers_u_mc(BoolFn::constant(5, 1.0), 3, 1000, 1);
  CHECK(one.value == 1.0);
  CHECK(one.stderr_ == 0.0);
  CHECK(one.method == Method::monte_carlo);
  const BoolFn f = random_fn(6, RandomMode::sign, 2);
  CHECK(gowers_u_mc(f, 3, 5000, 9).value == gowers_u_mc(f, 3, 5000, 9).value);
  for (int trial = 0; trial < 20; ++trial) {
    const BoolFn g = random_fn(8, RandomMode::sign, 1200 + trial);
    const GowersResult mc = gowers_u_mc(g, 3, 100000, trial);
    CHECK(std::abs(mc.value - gowers_u(g, 3).value) <= 4 * mc.stderr_ + 1e-12);
  }
  const FnCollection c = random_collection(2, 5, RandomMode::sign, 4);
  const GowersResult mc = gowers_ip_mc(c, 100000, 5);
  CHECK(std::abs(mc.value - gowers_ip(c).value) <= 4 * mc.stderr_);
  CHECK_THROWS_AS(gowers_u_mc(f, 2, 0, 1), std::invalid_argument);
}

TEST_CASE("influential variable finder") {
  const auto dict = find_influential_variable(FnCollection::uniform(2, make_long_code(4, 2)), 2);
  CHECK(dict.coordinate == 2);
  CHECK(dict.value == 1.0);
  CHECK(find_influential_variable(FnCollection::uniform(2, BoolFn::constant(4, 1.0)), 2).value == 0.0);

  std::vector<BoolFn> planted;
  for (int s = 0; s < 4; ++s) {
    // chi_{x2} times a function of the other coordinates.
    const BoolFn r = random_fn(5, RandomMode::sign, 60 + s);
    std::vector<double> v(32);
    for (Mask x = 0; x < 32; ++x) v[x] = r[x & ~2u] * make_long_code(5, 1)[x];
    planted.emplace_back(5, std::move(v));
  }
  const auto w = find_influential_variable(FnCollection(2, planted), 2);
  CHECK(w.coordinate == 1);
  CHECK(w.value == 1.0);
  CHECK_THROWS_AS(find_influential_variable(FnCollection(2, planted), 1), std::invalid_argument);
}
