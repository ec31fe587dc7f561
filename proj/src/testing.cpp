#include "cubekit/testing.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "cubekit/kernels.hpp"
#include "kernels_common.hpp"

namespace cubekit {

namespace {

constexpr int kMaxEdges = 20;

void require_sign(const BoolFn& f, const char* what) {
  if (!f.is_sign()) throw std::invalid_argument(std::string(what) + " needs sign-valued functions");
}

void require_same_arity(const BoolFn& f, const BoolFn& g) {
  if (f.arity() != g.arity()) throw std::invalid_argument("arity mismatch");
}

AcceptanceReport from_estimate(const kernels::McEstimate& est) {
  AcceptanceReport r;
  r.probability = est.mean;
  r.method = Method::monte_carlo;
  r.samples = est.samples;
  r.stderr_ = est.stderr_;
  return r;
}

Mask random_point(const BoolFn& f, Rng& rng) { return static_cast<Mask>(rng()) & f.full_mask(); }

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

int gf2_rank(std::vector<std::uint64_t> rows) {
  int rank = 0;
  for (int bit = 0; bit < 64; ++bit) {
    const std::uint64_t b = std::uint64_t{1} << bit;
    auto pivot = std::find_if(rows.begin() + rank, rows.end(), [&](std::uint64_t r) { return r & b; });
    if (pivot == rows.end()) continue;
    std::iter_swap(rows.begin() + rank, pivot);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (static_cast<int>(r) != rank && (rows[r] & b)) rows[r] ^= rows[rank];
    }
    ++rank;
  }
  return rank;
}

/// Vertices of odd degree in the edge subset.
Mask odd_vertices(const Hypergraph& h, Mask subset) {
  Mask odd = 0;
  for (Mask s = subset; s; s &= s - 1) odd ^= h.edge_mask(std::countr_zero(s));
  return odd;
}

}  // namespace

Hypergraph::Hypergraph(int t, std::vector<std::vector<int>> edges) : t_(t), edges_(std::move(edges)) {
  if (t < 1 || t > 16) throw std::invalid_argument("vertex count must lie in [1, 16]");
  if (static_cast<int>(edges_.size()) > kMaxEdges) {
    throw std::invalid_argument("at most " + std::to_string(kMaxEdges) + " edges are supported");
  }
  for (auto& e : edges_) {
    std::sort(e.begin(), e.end());
    if (e.size() < 2) throw std::invalid_argument("edges need at least two vertices");
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) throw std::invalid_argument("repeated vertex in an edge");
    Mask m = 0;
    for (int v : e) {
      if (v < 0 || v >= t) throw std::invalid_argument("edge vertex out of range");
      m |= Mask{1} << v;
    }
    if (std::find(masks_.begin(), masks_.end(), m) != masks_.end()) {
      throw std::invalid_argument("duplicate edge");
    }
    masks_.push_back(m);
  }
}

Hypergraph Hypergraph::complete(int k, int max_edge) {
  std::vector<std::vector<int>> edges;
  for (int size = 2; size <= max_edge; ++size) {
    for (Mask m = 0; m < (Mask{1} << k); ++m) {
      if (std::popcount(m) != size) continue;
      std::vector<int> e;
      for (int v = 0; v < k; ++v) {
        if (m >> v & 1) e.push_back(v);
      }
      edges.push_back(std::move(e));
    }
  }
  // Within one size, masks in increasing order are not lexicographic; sort explicitly.
  std::stable_sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return Hypergraph(k, std::move(edges));
}

int Hypergraph::max_edge_size() const {
  int m = 0;
  for (const auto& e : edges_) m = std::max(m, static_cast<int>(e.size()));
  return m;
}

AcceptanceReport exact_blr(const BoolFn& f, BlrRoute route) {
  require_sign(f, "the BLR test");
  AcceptanceReport r;
  if (route == BlrRoute::fourier) {
    const Spectrum s = fourier(f);
    double cubes = 0.0;
    for (double c : s.coeffs) cubes += c * c * c;
    r.probability = 0.5 + 0.5 * cubes;
    return r;
  }
  std::uint64_t accepted = 0;
  for (Mask x = 0; x < f.size(); ++x) {
    for (Mask y = 0; y < f.size(); ++y) accepted += f[x] * f[y] == f[x ^ y];
  }
  r.probability = static_cast<double>(accepted) / (static_cast<double>(f.size()) * static_cast<double>(f.size()));
  return r;
}

AcceptanceReport run_blr_mc(const BoolFn& f, std::uint64_t samples, std::uint64_t seed) {
  require_sign(f, "the BLR test");
  return from_estimate(kernels::omp::monte_carlo(samples, seed, [&](Rng& rng) {
    const Mask x = random_point(f, rng);
    const Mask y = random_point(f, rng);
    return f[x] * f[y] == f[x ^ y] ? 1.0 : 0.0;
  }));
}

AcceptanceReport exact_3fn_blr(const BoolFn& f, const BoolFn& g, const BoolFn& h, double delta) {
  require_same_arity(f, g);
  require_same_arity(f, h);
  for (const BoolFn* p : {&f, &g, &h}) require_sign(*p, "the 3-function BLR test");
  const Spectrum sf = fourier(apply_noise(f, delta));
  const Spectrum sg = fourier(apply_noise(g, delta));
  const Spectrum sh = fourier(apply_noise(h, delta));
  double corr = 0.0;
  for (Mask m = 0; m < sf.coeffs.size(); ++m) corr += sf[m] * sg[m] * sh[m];
  AcceptanceReport r;
  r.probability = 0.5 + 0.5 * corr;
  return r;
}

AcceptanceReport run_3fn_blr_mc(const BoolFn& f, const BoolFn& g, const BoolFn& h, double delta,
                                std::uint64_t samples, std::uint64_t seed) {
  require_same_arity(f, g);
  require_same_arity(f, h);
  for (const BoolFn* p : {&f, &g, &h}) require_sign(*p, "the 3-function BLR test");
  const int n = f.arity();
  if (!(delta >= 0.0 && delta <= 0.5)) throw std::invalid_argument("noise rate must lie in [0, 1/2]");
  return from_estimate(kernels::omp::monte_carlo(samples, seed, [&](Rng& rng) {
    const Mask x = random_point(f, rng);
    const Mask y = random_point(f, rng);
    const Mask e1 = sample_mu_gamma(n, delta, rng);
    const Mask e2 = sample_mu_gamma(n, delta, rng);
    const Mask e3 = sample_mu_gamma(n, delta, rng);
    return f[x ^ e1] * g[y ^ e2] == h[x ^ y ^ e3] ? 1.0 : 0.0;
  }));
}

AcceptanceReport exact_h_test(const Hypergraph& h, const BoolFn& f, Guard guard) {
  require_sign(f, "the H-test");
  check_budget(f.arity() * h.vertex_count(), guard, "exact_h_test");
  const auto hist = kernels::omp::edge_pattern_histogram(f, h.vertex_count(), h.edge_masks());
  const double total = std::ldexp(1.0, f.arity() * h.vertex_count());

  // term(E') = E prod_{e in E'} z_e = sum_p hist[p] (-1)^{|p & E'|} / total.
  std::vector<double> transform(hist.begin(), hist.end());
  kernels::omp::walsh_hadamard(transform);

  AcceptanceReport r;
  r.probability = static_cast<double>(hist[0]) / total;
  std::vector<std::pair<Mask, double>> terms;
  terms.reserve(transform.size());
  for (Mask s = 0; s < transform.size(); ++s) terms.emplace_back(s, transform[s] / total);
  r.terms = std::move(terms);
  return r;
}

AcceptanceReport run_h_test_mc(const Hypergraph& h, const BoolFn& f, std::uint64_t samples, std::uint64_t seed) {
  require_sign(f, "the H-test");
  const int t = h.vertex_count();
  return from_estimate(kernels::omp::monte_carlo(samples, seed, [&](Rng& rng) {
    Mask points[16];
    for (int i = 0; i < t; ++i) points[i] = random_point(f, rng);
    return kernels::detail::edge_pattern(f, std::span<const Mask>(points, static_cast<std::size_t>(t)),
                                         h.edge_masks()) == 0
               ? 1.0
               : 0.0;
  }));
}

EvenCoverCount even_cover_count(const Hypergraph& h, int d) {
  const int t = h.vertex_count();
  const int edges = h.edge_count();
  if (d < 1) throw std::invalid_argument("cover size bound must be positive");

  // u_T over coordinates F_1..F_q: vertices 0..t-1, then edges.
  std::vector<std::uint64_t> generators;
  for (int e = 0; e < edges; ++e) {
    generators.push_back(static_cast<std::uint64_t>(h.edge_mask(e)) | (std::uint64_t{1} << (t + e)));
  }
  EvenCoverCount out;
  out.span_dimension = gf2_rank(generators);
  double small_sets = 0.0;
  for (int i = 2; i <= d; ++i) small_sets += binomial(t, i);
  out.lower_bound = std::max(1.0, std::ldexp(1.0, out.span_dimension) / std::exp2(small_sets));

  std::vector<Mask> small;
  for (Mask s = 1; s < (Mask{1} << t); ++s) {
    if (std::popcount(s) <= d) small.push_back(s);
  }
  // Edge coordinates are distinct, so subsets of E enumerate the span without repetition.
  for (Mask subset = 0; subset < (Mask{1} << edges); ++subset) {
    std::vector<Mask> family;
    for (Mask odd = odd_vertices(h, subset); odd; odd &= odd - 1) family.push_back(odd & (~odd + 1));
    for (Mask s = subset; s; s &= s - 1) family.push_back(h.edge_mask(std::countr_zero(s)));
    const bool even = std::all_of(small.begin(), small.end(), [&](Mask target) {
      int covered = 0;
      for (Mask r : family) covered += (target & r) == target;
      return covered % 2 == 0;
    });
    if (even) out.covers.push_back(subset);
  }
  out.count = out.covers.size();
  return out;
}

LongCodeInputs::LongCodeInputs(const Hypergraph& h, std::vector<BoolFn> slots)
    : vertex_count_(h.vertex_count()), slots_(std::move(slots)) {
  if (static_cast<int>(slots_.size()) != h.query_count()) {
    throw std::invalid_argument("the noisy H-test needs t + |E| functions");
  }
  for (const auto& f : slots_) {
    require_same_arity(slots_.front(), f);
    require_sign(f, "the noisy H-test");
  }
}

LongCodeInputs LongCodeInputs::uniform(const Hypergraph& h, const BoolFn& f) {
  return LongCodeInputs(h, std::vector<BoolFn>(static_cast<std::size_t>(h.query_count()), f));
}

AcceptanceReport exact_noisy_h_test(const Hypergraph& h, double gamma, const LongCodeInputs& inputs, Guard guard) {
  const int n = inputs.arity();
  const int t = h.vertex_count();
  check_budget(n * t, guard, "exact_noisy_h_test");
  std::vector<BoolFn> noised;
  noised.reserve(inputs.slots().size());
  for (const auto& g : inputs.slots()) noised.push_back(apply_noise(g, gamma));

  const Mask subsets = Mask{1} << h.edge_count();
  std::vector<std::pair<Mask, double>> terms;
  terms.reserve(subsets);
  double total = 0.0;
  for (Mask subset = 0; subset < subsets; ++subset) {
    const Mask odd = odd_vertices(h, subset);
    Mask used = 0;
    for (Mask s = subset; s; s &= s - 1) used |= h.edge_mask(std::countr_zero(s));
    std::vector<int> vertices;
    for (int v = 0; v < t; ++v) {
      if (used >> v & 1) vertices.push_back(v);
    }
    const std::uint64_t tuples = std::uint64_t{1} << (n * static_cast<int>(vertices.size()));
    std::vector<Mask> compact(vertices.size());
    Mask points[16] = {};
    double sum = 0.0;
    for (std::uint64_t idx = 0; idx < tuples; ++idx) {
      kernels::detail::unpack_points(idx, n, compact);
      for (std::size_t k = 0; k < vertices.size(); ++k) points[vertices[k]] = compact[k];
      double p = 1.0;
      for (Mask o = odd; o; o &= o - 1) {
        const int v = std::countr_zero(o);
        p *= noised[v][points[v]];
      }
      for (Mask s = subset; s; s &= s - 1) {
        const int e = std::countr_zero(s);
        Mask point = 0;
        for (Mask vs = h.edge_mask(e); vs; vs &= vs - 1) point ^= points[std::countr_zero(vs)];
        p *= noised[static_cast<std::size_t>(t + e)][point];
      }
      sum += p;
    }
    const double term = sum / static_cast<double>(tuples);
    terms.emplace_back(subset, term);
    total += term;
  }
  AcceptanceReport r;
  r.probability = total / static_cast<double>(subsets);
  r.terms = std::move(terms);
  return r;
}

bool noisy_h_test_round(const Hypergraph& h, double gamma, const LongCodeInputs& inputs, Rng& rng) {
  const int n = inputs.arity();
  const int t = h.vertex_count();
  const Mask full = inputs.vertex(0).full_mask();
  Mask shifted[16];
  Mask points[16];
  for (int i = 0; i < t; ++i) points[i] = static_cast<Mask>(rng()) & full;
  for (int i = 0; i < t; ++i) shifted[i] = points[i] ^ sample_mu_gamma(n, gamma, rng);
  bool accept = true;
  for (int e = 0; e < h.edge_count(); ++e) {
    const Mask eta = sample_mu_gamma(n, gamma, rng);
    double lhs = 1.0;
    Mask sum = 0;
    for (Mask vs = h.edge_mask(e); vs; vs &= vs - 1) {
      const int v = std::countr_zero(vs);
      lhs *= inputs.vertex(v)[shifted[v]];
      sum ^= points[v];
    }
    if (lhs != inputs.edge(e)[sum ^ eta]) accept = false;
  }
  return accept;
}

AcceptanceReport run_noisy_h_test_mc(const Hypergraph& h, double gamma, const LongCodeInputs& inputs,
                                     std::uint64_t samples, std::uint64_t seed) {
  if (!(gamma >= 0.0 && gamma <= 0.5)) throw std::invalid_argument("noise rate must lie in [0, 1/2]");
  return from_estimate(kernels::omp::monte_carlo(
      samples, seed, [&](Rng& rng) { return noisy_h_test_round(h, gamma, inputs, rng) ? 1.0 : 0.0; }));
}

}  // namespace cubekit
