#include "cubekit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cubekit/bool_fn.hpp"
#include "cubekit/gowers.hpp"
#include "cubekit/group_fourier.hpp"
#include "cubekit/influence.hpp"
#include "cubekit/testing.hpp"

namespace cubekit {

namespace {

class Recorder {
 public:
  void check(const std::string& lemma, const std::string& descriptor, double lhs, double rhs) {
    VerifyRecord r;
    r.lemma = lemma;
    r.instance = next_[lemma]++;
    r.descriptor = descriptor;
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = rhs - lhs;
    r.pass = r.margin >= -kVerifyTolerance;
    records_.push_back(std::move(r));
  }
  void equal(const std::string& lemma, const std::string& descriptor, double a, double b) {
    check(lemma, descriptor, std::abs(a - b), 0.0);
  }
  VerifyReport finish(const std::string& suite) {
    VerifyReport rep;
    rep.suite = suite;
    rep.records = std::move(records_);
    std::stable_sort(rep.records.begin(), rep.records.end(), [](const VerifyRecord& a, const VerifyRecord& b) {
      return a.lemma != b.lemma ? a.lemma < b.lemma : a.instance < b.instance;
    });
    for (const auto& r : rep.records) (r.pass ? rep.passed : rep.failed)++;
    return rep;
  }

 private:
  std::vector<VerifyRecord> records_;
  std::map<std::string, int> next_;
};

/// Seeds for trial k of check family `tag`.
class Seeds {
 public:
  Seeds(std::uint64_t seed, std::uint64_t tag) : rng_(substream(seed, tag)) {}
  std::uint64_t next() { return rng_(); }
  Rng& rng() { return rng_; }

 private:
  Rng rng_;
};

std::string desc(std::initializer_list<std::pair<const char*, double>> fields) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, v] : fields) {
    out << (first ? "" : " ") << k << '=' << v;
    first = false;
  }
  return out.str();
}

double max_abs_nonempty_sq(const Spectrum& s) {
  double m = 0.0;
  for (std::size_t a = 1; a < s.coeffs.size(); ++a) m = std::max(m, s.coeffs[a] * s.coeffs[a]);
  return m;
}

BoolFn product(const std::vector<BoolFn>& fs) {
  BoolFn p = fs.front();
  for (std::size_t j = 1; j < fs.size(); ++j) p = multiply(p, fs[j]);
  return p;
}

// ---------------------------------------------------------------- influence

void influence_products(Recorder& rec, const VerifyOptions& o) {
  const int n = std::clamp(o.n, 1, 8);
  for (int mode = 0; mode < 2; ++mode) {
    const RandomMode rm = mode == 0 ? RandomMode::sign : RandomMode::bounded;
    const std::string lemma = mode == 0 ? "influence_product_sign" : "influence_product_bounded";
    Seeds seeds(o.seed, 10 + mode);
    for (int trial = 0; trial < o.trials; ++trial) {
      const int k = 2 + static_cast<int>(seeds.next() % 4);
      std::vector<BoolFn> fs;
      for (int j = 0; j < k; ++j) fs.push_back(random_fn(n, rm, seeds.next()));
      const BoolFn p = product(fs);
      double worst_lhs = 0.0, worst_rhs = 0.0, worst = INFINITY;
      for (int i = 0; i < n; ++i) {
        double sum = 0.0;
        for (const auto& f : fs) sum += influence(f, i);
        const double lhs = influence(p, i);
        const double rhs = (mode == 0 ? 1.0 : k) * sum;
        if (rhs - lhs < worst) { worst = rhs - lhs; worst_lhs = lhs; worst_rhs = rhs; }
      }
      rec.check(lemma, desc({{"n", n}, {"k", k}}), worst_lhs, worst_rhs);
    }
  }

  Seeds hybrid(o.seed, 12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < o.trials; ++trial) {
    const int k = 2 + static_cast<int>(hybrid.next() % 7);
    double pa = 1.0, pb = 1.0, sum = 0.0;
    for (int j = 0; j < k; ++j) {
      const double a = u(hybrid.rng()), b = u(hybrid.rng());
      pa *= a;
      pb *= b;
      sum += std::abs(a - b);
    }
    rec.check("product_telescoping", desc({{"k", k}}), std::abs(pa - pb), sum);
  }

  Seeds lower(o.seed, 13);
  for (int trial = 0; trial < o.trials; ++trial) {
    const BoolFn f = random_fn(n, trial % 2 ? RandomMode::bounded : RandomMode::sign, lower.next());
    rec.check("influence_fourier_lower_bound", desc({{"n", n}}), max_abs_nonempty_sq(fourier(f)),
              influences(f).max_value);
  }

  Seeds budget(o.seed, 14);
  const int d = std::min(3, n);
  for (int trial = 0; trial < o.trials; ++trial) {
    const BoolFn f = random_fn(n, RandomMode::bounded, budget.next());
    const auto r = degree_influences(f, d);
    rec.check("degree_influence_total", desc({{"n", n}, {"d", d}}),
              std::accumulate(r.values.begin(), r.values.end(), 0.0), static_cast<double>(d));
  }

  Seeds routes(o.seed, 15);
  for (int trial = 0; trial < o.trials; ++trial) {
    const BoolFn f = random_fn(n, RandomMode::sign, routes.next());
    const Spectrum s = fourier(f);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      worst = std::max({worst, std::abs(flip_probability(f, i) - influence_fourier(s, i)),
                        std::abs(influence(f, i) - influence_fourier(s, i))});
    }
    rec.check("influence_routes", desc({{"n", n}}), worst, 0.0);
  }

  // Single-coordinate functions near 1: the bounded product bound is nearly tight.
  const int k = 4;
  const double eps = 1e-3;
  const BoolFn f(1, {1.0 - eps, 1.0});
  std::vector<BoolFn> fs(k, f);
  const double ratio = influence(product(fs), 0) / (k * influence(f, 0));
  rec.check("influence_product_bounded_tightness", desc({{"k", k}, {"eps", eps}}), 0.9 * k, ratio);
}

// ---------------------------------------------------------------- uniformity

std::vector<std::pair<std::string, BoolFn>> adversarial_family(int n) {
  std::vector<std::pair<std::string, BoolFn>> fam;
  fam.emplace_back("chi_full", make_chi(n, static_cast<Mask>((1u << n) - 1)));
  fam.emplace_back("chi_1", make_chi(n, 1));
  fam.emplace_back("constant", BoolFn::constant(n, 1.0));
  if (n % 2 == 0) fam.emplace_back("quadratic_phase", make_quadratic_phase(n));
  for (int b = 2; b <= n; ++b) {
    if (n % b == 0) fam.emplace_back("block_and_b" + std::to_string(b), make_block_and(n, b));
  }
  return fam;
}

void uniformity_bounds(Recorder& rec, const VerifyOptions& o) {
  const int n = std::clamp(o.n, 2, 6);
  const int dmax = std::min(4, 26 / n);
  Seeds seeds(o.seed, 20);
  for (int trial = 0; trial < o.trials; ++trial) {
    const BoolFn f = random_fn(n, RandomMode::sign, seeds.next());
    const BoolFn g = random_fn(n, RandomMode::bounded, seeds.next());
    const double mf = f.mean();
    const double u1f = gowers_u(f, 1).value, u1g = gowers_u(g, 1).value;
    const double maxf = influences(f).max_value, maxg = influences(g).max_value;
    rec.equal("u1_squared_mean", desc({{"n", n}}), u1f, mf * mf);
    double prev_f = u1f;
    for (int d = 2; d <= dmax; ++d) {
      const double uf = gowers_u(f, d).value;
      const double ug = gowers_u(g, d).value;
      const auto dn = desc({{"n", n}, {"d", d}});
      rec.equal("uniformity_base_routes", dn, uf, gowers_u(f, d, Guard::enforce, UniformityBase::squared_mean).value);
      rec.check("uniformity_nonnegative", dn, 0.0, uf);
      rec.check("uniformity_nonnegative", dn, 0.0, ug);
      rec.check("uniformity_influence_sign", dn, uf, u1f + (std::ldexp(1.0, d - 1) - 1.0) * maxf);
      rec.check("uniformity_influence_bounded", dn, ug, u1g + std::pow(4.0, d) * maxg);
      rec.check("uniformity_norm_monotone", dn, prev_f, std::sqrt(uf));
      prev_f = uf;
    }
    const Spectrum s = fourier(f);
    double fourth = 0.0;
    for (double c : s.coeffs) fourth += c * c * c * c;
    rec.equal("u2_fourth_powers", desc({{"n", n}}), gowers_u(f, 2).value, fourth);
  }

  for (const auto& [name, f] : adversarial_family(n)) {
    const double u1 = gowers_u(f, 1).value;
    const double mi = influences(f).max_value;
    for (int d = 2; d <= dmax; ++d) {
      rec.check("uniformity_influence_sign", name + " n=" + std::to_string(n) + " d=" + std::to_string(d),
                gowers_u(f, d).value, u1 + (std::ldexp(1.0, d - 1) - 1.0) * mi);
    }
  }

  // Block-AND with blocks of size d-1: U^d = 1 and max influence 2^{-(d-2)}.
  for (int d = 3; d <= 4; ++d) {
    const int b = d - 1;
    const int nb = b * std::max(1, 6 / b);
    const BoolFn f = make_block_and(nb, b);
    const auto dn = desc({{"n", nb}, {"b", b}, {"d", d}});
    rec.equal("uniformity_tightness_value", dn, gowers_u(f, d).value, 1.0);
    rec.equal("uniformity_tightness_influence", dn, influences(f).max_value, std::ldexp(1.0, -(d - 2)));
  }

  Seeds mats(o.seed, 21);
  const int nm = std::min(n, 5);
  for (int trial = 0; trial < o.trials; ++trial) {
    const BoolFn f = random_fn(nm, RandomMode::sign, mats.next());
    const Gf2Matrix a = random_invertible_gf2_matrix(nm, mats.rng());
    const BoolFn fa = apply_linear_transform(f, a);
    for (int d = 2; d <= 3; ++d) {
      rec.equal("uniformity_matrix_invariance", desc({{"n", nm}, {"d", d}}), gowers_u(fa, d).value,
                gowers_u(f, d).value);
    }
  }
}

// ---------------------------------------------------------------- inner products

FnCollection random_collection(int d, int n, RandomMode mode, Seeds& seeds) {
  std::vector<BoolFn> entries;
  for (int s = 0; s < (1 << d); ++s) entries.push_back(random_fn(n, mode, seeds.next()));
  return FnCollection(d, std::move(entries));
}

void inner_product_bounds(Recorder& rec, const VerifyOptions& o) {
  const int n = std::clamp(o.n, 1, 5);
  Seeds seeds(o.seed, 30);
  for (int trial = 0; trial < o.trials; ++trial) {
    const RandomMode mode = trial % 2 ? RandomMode::bounded : RandomMode::sign;
    for (int d = 2; d <= 3; ++d) {
      const FnCollection c = random_collection(d, n, mode, seeds);
      const auto dn = desc({{"n", n}, {"d", d}});
      const double ip = gowers_ip(c).value;
      rec.equal("inner_product_routes", dn, ip, gowers_ip(c, InnerProductRoute::enumeration).value);

      double bound = 1.0;
      for (const auto& f : c.entries()) bound *= std::pow(std::max(0.0, gowers_u(f, d).value), 1.0 / (1 << d));
      rec.check("gowers_cauchy_schwarz", dn, std::abs(ip), bound);

      const double lifted = gowers_ip(lift_linear_to_gowers(c)).value;
      rec.check("linear_ip_lift", dn, std::abs(linear_gowers_ip(c).value), std::sqrt(std::max(0.0, lifted)));

      const FnCollection same = FnCollection::uniform(d, c[0]);
      rec.equal("inner_product_diagonal", dn, gowers_ip(same).value, gowers_u(c[0], d).value);
    }
  }

  const int n4 = std::clamp(o.n, 1, 8);
  Seeds four(o.seed, 31);
  for (int trial = 0; trial < o.trials; ++trial) {
    std::vector<Spectrum> s;
    for (int j = 0; j < 4; ++j) s.push_back(fourier(random_fn(n4, RandomMode::bounded, four.next())));
    // Correlate the four spectra some of the time so the bound is not trivially slack.
    if (trial % 2) s[1] = s[0];
    double sum = 0.0, eps = 0.0;
    for (std::size_t a = 0; a < s[0].coeffs.size(); ++a) {
      sum += s[0][a] * s[1][a] * s[2][a] * s[3][a];
      eps = std::max(eps, std::min({std::abs(s[0][a]), std::abs(s[1][a]), std::abs(s[2][a]), std::abs(s[3][a])}));
    }
    rec.check("four_function_bound", desc({{"n", n4}}), std::abs(sum), 4.0 * eps);
  }
}

// ---------------------------------------------------------------- complex

const std::vector<std::vector<std::vector<int>>>& small_groups() {
  static const std::vector<std::vector<std::vector<int>>> groups = {
      {{3}, {3}}, {{3}, {3}, {3}, {3}}, {{2, 2}, {3}}, {{4}, {5}}, {{9}, {9}}, {{2}, {2}, {2}, {3}}};
  return groups;
}

std::string group_name(const GroupSpec& g) {
  std::string s;
  for (const auto& block : g.blocks()) {
    s += "(";
    for (std::size_t j = 0; j < block.size(); ++j) s += (j ? "x" : "") + std::to_string(block[j]);
    s += ")";
  }
  return s;
}

void complex_bounds(Recorder& rec, const VerifyOptions& o) {
  Seeds seeds(o.seed, 40);
  const auto& groups = small_groups();
  const double kfold_exp = std::log2(3.0);
  for (int trial = 0; trial < o.trials; ++trial) {
    const GroupSpec spec(groups[static_cast<std::size_t>(trial) % groups.size()]);
    const std::string gname = group_name(spec);
    const GroupFn f = random_group_fn(spec, seeds.next());
    const GroupFn g = random_group_fn(spec, seeds.next());
    const GroupFn fg = multiply(f, g);
    rec.check("complex_variance_product", gname, variance(fg), 3.0 * (variance(f) + variance(g)));

    const int k = 2 + trial % 3;
    std::vector<GroupFn> fs;
    for (int j = 0; j < k; ++j) fs.push_back(random_group_fn(spec, seeds.next()));
    GroupFn prod = fs[0];
    for (int j = 1; j < k; ++j) prod = multiply(prod, fs[j]);

    const GroupSpectrum sf = group_fourier(f);
    for (int i = 0; i < spec.block_count(); ++i) {
      const std::string di = gname + " block=" + std::to_string(i + 1);
      rec.check("complex_influence_product", di, group_influence(fg, i),
                3.0 * (group_influence(f, i) + group_influence(g, i)));
      double sum = 0.0;
      for (const auto& h : fs) sum += group_influence(h, i);
      rec.check("complex_influence_product_kfold", di + " k=" + std::to_string(k), group_influence(prod, i),
                3.0 * std::pow(k, kfold_exp) * sum);
      rec.equal("complex_influence_routes", di, group_influence(f, i), group_influence_fourier(sf, i));
    }

    double mass = 0.0, energy = 0.0, fourth = 0.0;
    for (auto c : sf.coeffs) {
      mass += std::norm(c);
      fourth += std::norm(c) * std::norm(c);
    }
    for (auto v : f.values) energy += std::norm(v);
    energy /= static_cast<double>(f.values.size());
    rec.equal("complex_parseval", gname, mass, energy);
    rec.equal("complex_u1_mean", gname, group_gowers_u(f, 1), std::norm(f.mean()));
    rec.equal("complex_u2_fourth_powers", gname, group_gowers_u(f, 2), fourth);
    rec.equal("complex_uniformity_base_routes", gname, group_gowers_u(f, 2),
              group_gowers_u(f, 2, Guard::enforce, GroupUniformityBase::squared_modulus));
    if (spec.order() <= 16) {
      rec.check("complex_uniformity_nonnegative", gname + " d=3", 0.0, group_gowers_u(f, 3));
    }
  }

  // Constant functions: U^d(c) = |c|^{2^d}.
  const GroupSpec z3(std::vector<std::vector<int>>{{3}, {3}});
  const Complex c = std::polar(0.7, 1.1);
  const GroupFn constant(z3, std::vector<Complex>(z3.order(), c));
  for (int d = 1; d <= 3; ++d) {
    rec.equal("complex_constant_uniformity", "(3)(3) d=" + std::to_string(d), group_gowers_u(constant, d),
              std::pow(std::abs(c), 1 << d));
  }
}

// ---------------------------------------------------------------- test identities

void test_identities(Recorder& rec, const VerifyOptions& o) {
  const int n = std::clamp(o.n, 1, 8);
  Seeds seeds(o.seed, 50);
  const Hypergraph edge(2, {{0, 1}});
  const Hypergraph triangle(3, {{0, 1}, {0, 2}, {1, 2}});
  const int nh = std::min(n, 26 / 3);
  for (int trial = 0; trial < o.trials; ++trial) {
    const BoolFn f = random_fn(n, RandomMode::sign, seeds.next());
    const auto dn = desc({{"n", n}});
    const double blr = exact_blr(f).probability;
    rec.equal("blr_routes", dn, blr, exact_blr(f, BlrRoute::enumeration).probability);
    rec.equal("blr_three_function_diagonal", dn, exact_3fn_blr(f, f, f).probability, blr);
    rec.equal("h_test_single_edge", dn, exact_h_test(edge, f).probability, blr);

    const Spectrum s = fourier(f);
    double mass = 0.0, energy = 0.0;
    for (double c : s.coeffs) mass += c * c;
    for (double v : f.values()) energy += v * v;
    rec.equal("parseval", dn, mass, energy / static_cast<double>(f.size()));

    const BoolFn g = random_fn(nh, RandomMode::sign, seeds.next());
    const auto dh = desc({{"n", nh}, {"t", 3}});
    const AcceptanceReport h = exact_h_test(triangle, g);
    double total = 0.0;
    for (const auto& [mask, term] : *h.terms) total += term;
    rec.equal("h_test_xor_expansion", dh, h.probability, total / 8.0);
    rec.equal("noisy_h_test_noiseless", dh,
              exact_noisy_h_test(triangle, 0.0, LongCodeInputs::uniform(triangle, g)).probability, h.probability);
  }

  // The block-AND function never falls below the 2^{-|E|} floor.
  const Hypergraph complete3 = Hypergraph::complete(3, 3);
  for (int m = 1; m <= 2; ++m) {
    const BoolFn f = make_block_and(3 * m, 3);
    rec.check("h_test_block_and_floor", desc({{"n", 3 * m}, {"b", 3}}),
              std::ldexp(1.0, -complete3.edge_count()), exact_h_test(complete3, f).probability);
  }
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = {"influence_products", "uniformity_bounds", "inner_product_bounds",
                                                 "complex_bounds", "test_identities"};
  return names;
}

VerifyReport verify_suite(const std::string& suite, const VerifyOptions& options) {
  if (options.trials < 1) throw std::invalid_argument("trials must be positive");
  Recorder rec;
  if (suite == "influence_products") influence_products(rec, options);
  else if (suite == "uniformity_bounds") uniformity_bounds(rec, options);
  else if (suite == "inner_product_bounds") inner_product_bounds(rec, options);
  else if (suite == "complex_bounds") complex_bounds(rec, options);
  else if (suite == "test_identities") test_identities(rec, options);
  else throw std::invalid_argument("unknown suite: " + suite);
  return rec.finish(suite);
}

}  // namespace cubekit
