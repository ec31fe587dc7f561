#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cubekit/bool_fn.hpp"
#include "cubekit/errors.hpp"
#include "cubekit/gowers.hpp"

namespace cubekit {

/// Test topology H = ([t], E). Vertices are 0-based here; files use 1-based labels.
class Hypergraph {
 public:
  /// Edges are sorted internally; each must have at least two distinct
  /// vertices in range and no edge may repeat.
  Hypergraph(int t, std::vector<std::vector<int>> edges);

  /// All subsets of [k] with 2..max_edge vertices, ordered by size then lexicographically.
  static Hypergraph complete(int k, int max_edge);

  int vertex_count() const { return t_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::vector<int>>& edges() const { return edges_; }
  /// Edge e as a bit mask over vertices.
  Mask edge_mask(int e) const { return masks_[e]; }
  const std::vector<Mask>& edge_masks() const { return masks_; }
  int max_edge_size() const;
  /// Queries made by the plain H-test: t + |E|.
  int query_count() const { return t_ + edge_count(); }

 private:
  int t_;
  std::vector<std::vector<int>> edges_;
  std::vector<Mask> masks_;
};

struct AcceptanceReport {
  double probability = 0.0;
  Method method = Method::exact;
  std::uint64_t samples = 0;
  double stderr_ = 0.0;
  /// XOR-expansion terms keyed by edge subset E' (bit e set when edge e is in E').
  std::optional<std::vector<std::pair<Mask, double>>> terms;
};

enum class BlrRoute { fourier, enumeration };

/// BLR test f(x) f(y) = f(x + y). Fourier route: 1/2 + 1/2 sum_S f^(S)^3.
AcceptanceReport exact_blr(const BoolFn& f, BlrRoute route = BlrRoute::fourier);
AcceptanceReport run_blr_mc(const BoolFn& f, std::uint64_t samples, std::uint64_t seed);

/// delta-noisy 3-function BLR test f(x+e1) g(y+e2) = h(x+y+e3); delta = 0 is the plain test.
AcceptanceReport exact_3fn_blr(const BoolFn& f, const BoolFn& g, const BoolFn& h, double delta = 0.0);
AcceptanceReport run_3fn_blr_mc(const BoolFn& f, const BoolFn& g, const BoolFn& h, double delta,
                                std::uint64_t samples, std::uint64_t seed);

/// H-test: sample x^1..x^t, accept iff every edge equation holds. Exact by enumeration,
/// with per-subset XOR-expansion terms.
AcceptanceReport exact_h_test(const Hypergraph& h, const BoolFn& f, Guard guard = Guard::enforce);
AcceptanceReport run_h_test_mc(const Hypergraph& h, const BoolFn& f, std::uint64_t samples,
                               std::uint64_t seed);

struct EvenCoverCount {
  std::uint64_t count = 0;
  int span_dimension = 0;
  /// max{1, 2^{dim - sum_{i=2}^{d} C(t, i)}}.
  double lower_bound = 1.0;
  /// Edge subsets whose reduced vertex/edge family is an even cover.
  std::vector<Mask> covers;
};

/// Counts vectors u in span{u_T} whose family {F_i : u(i) = 1} covers every
/// vertex set of size 1..d an even number of times.
EvenCoverCount even_cover_count(const Hypergraph& h, int d);

/// Functions g^a for the gamma-noisy H-test: t vertex slots, then one slot per edge in edge order.
class LongCodeInputs {
 public:
  LongCodeInputs(const Hypergraph& h, std::vector<BoolFn> slots);
  /// Every slot holds the same function.
  static LongCodeInputs uniform(const Hypergraph& h, const BoolFn& f);

  const BoolFn& vertex(int i) const { return slots_[i]; }
  const BoolFn& edge(int e) const { return slots_[static_cast<std::size_t>(vertex_count_ + e)]; }
  const std::vector<BoolFn>& slots() const { return slots_; }
  int arity() const { return slots_.front().arity(); }

 private:
  int vertex_count_;
  std::vector<BoolFn> slots_;
};

/// Exact acceptance of the gamma-noisy H-test through the odd-degree / noise-operator reduction.
AcceptanceReport exact_noisy_h_test(const Hypergraph& h, double gamma, const LongCodeInputs& inputs,
                                    Guard guard = Guard::enforce);
/// One round of the gamma-noisy H-test.
bool noisy_h_test_round(const Hypergraph& h, double gamma, const LongCodeInputs& inputs, Rng& rng);
AcceptanceReport run_noisy_h_test_mc(const Hypergraph& h, double gamma, const LongCodeInputs& inputs,
                                     std::uint64_t samples, std::uint64_t seed);

}  // namespace cubekit
