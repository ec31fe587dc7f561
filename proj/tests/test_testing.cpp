#include "doctest.h"

#include <cmath>

#include "cubekit/gowers.hpp"
#include "cubekit/testing.hpp"
#include "support.hpp"

using namespace cubekit;

namespace {

double term_sum(const AcceptanceReport& r) {
  double s = 0.0;
  for (const auto& [mask, v] : *r.terms) s += v;
  return s;
}

}  // namespace

TEST_CASE("hypergraphs") {
  const Hypergraph h(3, {{1, 0}, {0, 2}, {2, 1, 0}});
  CHECK(h.edges()[0] == std::vector<int>{0, 1});
  CHECK(h.edge_mask(2) == 7u);
  CHECK(h.query_count() == 6);
  CHECK(h.max_edge_size() == 3);
  CHECK_THROWS_AS(Hypergraph(3, {{0}}), std::invalid_argument);
  CHECK_THROWS_AS(Hypergraph(3, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Hypergraph(3, {{0, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(Hypergraph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
  const Hypergraph c = Hypergraph::complete(3, 3);
  CHECK(c.edges() == std::vector<std::vector<int>>{{0, 1}, {0, 2}, {1, 2}, {0, 1, 2}});
  // Complete hypergraph queries: sum_{i=1}^{d} C(k, i).
  CHECK(Hypergraph::complete(4, 3).query_count() == 4 + 6 + 4);
}

TEST_CASE("BLR") {
  CHECK(exact_blr(make_chi(5, 9)).probability == 1.0);
  CHECK(exact_blr(BoolFn::constant(4, 1.0)).probability == 1.0);
  CHECK(exact_blr(make_quadratic_phase(2)).probability == 0.625);
  CHECK(exact_blr(make_quadratic_phase(2), BlrRoute::enumeration).probability == 0.625);
  CHECK_THROWS_AS(exact_blr(random_fn(3, RandomMode::bounded, 1)), std::invalid_argument);
  for (int trial = 0; trial < 20; ++trial) {
    const BoolFn f = random_fn(6, RandomMode::sign, 10 + trial);
    const double ref = oracle::blr(table(f));
    CHECK(std::abs(exact_blr(f).probability - ref) <= kTol);
    CHECK(std::abs(exact_blr(f, BlrRoute::enumeration).probability - ref) <= kTol);
  }
}

TEST_CASE("three-function BLR") {
  const BoolFn chi = make_chi(4, 5);
  CHECK(exact_3fn_blr(chi, chi, chi).probability == 1.0);
  CHECK(exact_3fn_blr(make_chi(4, 1), make_chi(4, 2), make_chi(4, 4)).probability == 0.5);
  CHECK(exact_3fn_blr(make_chi(4, 1), make_chi(4, 1), make_chi(4, 4)).probability == 0.5);
  const BoolFn lc = make_long_code(4, 2);
  CHECK(exact_3fn_blr(lc, lc, lc, 0.05).probability == doctest::Approx(0.8645).epsilon(1e-12));
  CHECK_THROWS_AS(exact_3fn_blr(chi, chi, make_chi(3, 1)), std::invalid_argument);
  CHECK_THROWS_AS(exact_3fn_blr(chi, chi, chi, 0.7), std::invalid_argument);
  const AcceptanceReport mc = run_3fn_blr_mc(lc, lc, lc, 0.05, 100000, 3);
  CHECK(std::abs(mc.probability - 0.8645) <= 4 * mc.stderr_);
}

TEST_CASE("H-test exact values") {
  const Hypergraph edge(2, {{0, 1}});
  CHECK(exact_h_test(edge, make_quadratic_phase(2)).probability == 0.625);
  const Hypergraph c3 = Hypergraph::complete(3, 3);
  CHECK(exact_h_test(c3, make_chi(4, 6)).probability == 1.0);
  const AcceptanceReport r = exact_h_test(c3, make_block_and(6, 3));
  CHECK(r.probability == 0.205322265625);
  CHECK(r.probability >= 0.0625);
  CHECK(r.terms->size() == 16);
  CHECK(std::abs(r.probability - term_sum(r) / 16.0) <= 1e-15);
  CHECK_THROWS_AS(exact_h_test(c3, random_fn(9, RandomMode::sign, 1)), ResourceLimitError);
  CHECK_THROWS_AS(exact_h_test(c3, random_fn(3, RandomMode::bounded, 1)), std::invalid_argument);
  for (int trial = 0; trial < 6; ++trial) {
    const BoolFn f = random_fn(3, RandomMode::sign, 20 + trial);
    CHECK(std::abs(exact_h_test(c3, f).probability - oracle::h_test(table(f), 3, c3.edges())) <= 1e-12);
  }
}

TEST_CASE("block-AND uniformity formula") {
  // U^d(block_and with blocks of size d) = (1 - 2 p_indep(d))^m.
  for (int d = 2; d <= 3; ++d) {
    const double base = 1.0 - 2.0 * oracle::p_indep(d);
    for (int m = 1; m <= 2; ++m) {
      const BoolFn f = make_block_and(d * m, d);
      CHECK(std::abs(gowers_u(f, d).value - std::pow(base, m)) <= 1e-12);
      CHECK(std::abs(oracle::gowers_u(table(f), d) - std::pow(base, m)) <= 1e-12);
    }
  }
  CHECK(oracle::p_indep(2) == 0.375);
  CHECK(oracle::p_indep(3) == 21.0 / 64);
}

TEST_CASE("even covers") {
  CHECK(even_cover_count(Hypergraph(3, {}), 2).count == 1);
  CHECK(even_cover_count(Hypergraph(2, {{0, 1}}), 2).count == 1);
  const EvenCoverCount c3 = even_cover_count(Hypergraph::complete(3, 3), 3);
  CHECK(c3.count == 1);
  CHECK(c3.span_dimension == 4);

  // Edges larger than d allow nontrivial covers; each of them gives a term of 1
  // for the block-AND function with blocks of size d.
  const Hypergraph h = Hypergraph::complete(4, 4);
  for (int d = 2; d <= 3; ++d) {
    const EvenCoverCount ec = even_cover_count(h, d);
    CHECK(ec.count > 1);
    CHECK(static_cast<double>(ec.count) >= ec.lower_bound);
    CHECK(ec.span_dimension == h.edge_count());
    const AcceptanceReport r = exact_h_test(h, make_block_and(2 * d > 6 ? d : 2 * d, d));
    for (Mask cover : ec.covers) {
      const auto it = std::find_if(r.terms->begin(), r.terms->end(), [&](const auto& p) { return p.first == cover; });
      REQUIRE(it != r.terms->end());
      CHECK(std::abs(it->second - 1.0) <= 1e-12);
    }
    // Every term is nonnegative for the block-AND function, so the floor holds.
    for (const auto& [mask, v] : *r.terms) CHECK(v >= -1e-12);
    CHECK(r.probability >= std::ldexp(1.0, -h.edge_count()) - 1e-15);
  }
  CHECK_THROWS_AS(even_cover_count(h, 0), std::invalid_argument);
}

TEST_CASE("noisy H-test") {
  const Hypergraph edge(2, {{0, 1}});
  const BoolFn lc = make_long_code(3, 1);
  CHECK(exact_noisy_h_test(edge, 0.0, LongCodeInputs::uniform(edge, lc)).probability == 1.0);
  const double p = exact_noisy_h_test(edge, 0.05, LongCodeInputs::uniform(edge, lc)).probability;
  CHECK(p == doctest::Approx(0.8645).epsilon(1e-12));
  CHECK(p >= 1.0 - 3 * 0.05);

  const BoolFn l2 = make_long_code(2, 0);
  CHECK(std::abs(p - oracle::noisy_h_test({table(l2), table(l2), table(l2)}, 2, edge.edges(), 0.05)) <= 1e-12);

  // Mixed slots against the full integral over noise patterns.
  const Hypergraph path(3, {{0, 1}, {1, 2}});
  std::vector<BoolFn> slots;
  for (int j = 0; j < 5; ++j) slots.push_back(random_fn(1, RandomMode::sign, 300 + j));
  const LongCodeInputs in(path, slots);
  std::vector<oracle::Table> ts;
  for (const auto& s : slots) ts.push_back(table(s));
  for (double gamma : {0.0, 0.1, 0.3}) {
    CHECK(std::abs(exact_noisy_h_test(path, gamma, in).probability - oracle::noisy_h_test(ts, 3, path.edges(), gamma)) <=
          1e-12);
  }
  std::vector<BoolFn> slots2;
  for (int j = 0; j < 3; ++j) slots2.push_back(random_fn(2, RandomMode::sign, 400 + j));
  std::vector<oracle::Table> ts2;
  for (const auto& s : slots2) ts2.push_back(table(s));
  CHECK(std::abs(exact_noisy_h_test(edge, 0.15, LongCodeInputs(edge, slots2)).probability -
                 oracle::noisy_h_test(ts2, 2, edge.edges(), 0.15)) <= 1e-12);

  CHECK_THROWS_AS(LongCodeInputs(edge, {lc, lc}), std::invalid_argument);
  CHECK_THROWS_AS(LongCodeInputs(edge, {lc, lc, random_fn(3, RandomMode::bounded, 1)}), std::invalid_argument);
}

TEST_CASE("random inputs sit near the soundness floor") {
  const Hypergraph edge(2, {{0, 1}});
  int inside = 0;
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<BoolFn> slots;
    for (int j = 0; j < 3; ++j) slots.push_back(random_fn(8, RandomMode::sign, 5000 + 3 * trial + j));
    const LongCodeInputs in(edge, slots);
    const double exact = exact_noisy_h_test(edge, 0.2, in).probability;
    const AcceptanceReport mc = run_noisy_h_test_mc(edge, 0.2, in, 20000, trial);
    CHECK(std::abs(mc.probability - exact) <= 4 * mc.stderr_);
    inside += std::abs(mc.probability - 0.5) <= 4 * mc.stderr_;
  }
  CHECK(inside >= 28);
}

TEST_CASE("monte carlo agrees with exact routes") {
  const Hypergraph c3 = Hypergraph::complete(3, 3);
  const BoolFn q = make_quadratic_phase(4);
  const BoolFn b = make_block_and(6, 3);
  const AcceptanceReport blr = run_blr_mc(q, 100000, 1);
  CHECK(std::abs(blr.probability - exact_blr(q).probability) <= 4 * blr.stderr_);
  const AcceptanceReport h = run_h_test_mc(c3, b, 100000, 2);
  CHECK(std::abs(h.probability - exact_h_test(c3, b).probability) <= 4 * h.stderr_);
  CHECK(run_h_test_mc(c3, b, 5000, 2).probability == run_h_test_mc(c3, b, 5000, 2).probability);
  CHECK(run_h_test_mc(c3, make_chi(6, 3), 5000, 2).probability == 1.0);
}
