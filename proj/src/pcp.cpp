#include "cubekit/pcp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cubekit/influence.hpp"
#include "cubekit/kernels.hpp"

namespace cubekit {

namespace {

constexpr double kMaxAssignments = 1e7;

bool is_permutation_of(const std::vector<int>& p, int sigma) {
  if (static_cast<int>(p.size()) != sigma) return false;
  std::vector<bool> seen(static_cast<std::size_t>(sigma), false);
  for (int a : p) {
    if (a < 0 || a >= sigma || seen[a]) return false;
    seen[a] = true;
  }
  return true;
}

std::vector<int> random_permutation(int sigma, Rng& rng) {
  std::vector<int> p(static_cast<std::size_t>(sigma));
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

struct SearchBest {
  std::uint64_t strong = 0;
  std::uint64_t weak = 0;
  Assignment strong_assignment;
};

}  // namespace

UniqueGame::UniqueGame(int sigma, std::vector<std::string> variables, std::vector<Constraint> constraints)
    : sigma_(sigma), variables_(std::move(variables)), constraints_(std::move(constraints)) {
  if (sigma < 2) throw std::invalid_argument("alphabet needs at least two letters");
  if (variables_.empty()) throw std::invalid_argument("a game needs variables");
  if (constraints_.empty()) throw std::invalid_argument("a game needs constraints");
  const std::size_t q = constraints_.front().vars.size();
  if (q < 2) throw std::invalid_argument("constraints must involve at least two variables");
  for (const auto& c : constraints_) {
    if (c.vars.size() != q || c.perms.size() != q) {
      throw std::invalid_argument("constraints must share one arity and carry one permutation per variable");
    }
    for (int v : c.vars) {
      if (v < 0 || v >= variable_count()) throw std::invalid_argument("constraint variable out of range");
    }
    for (const auto& p : c.perms) {
      if (!is_permutation_of(p, sigma)) throw std::invalid_argument("constraint map is not a permutation");
    }
  }
}

bool strongly_satisfies(const Constraint& c, const Assignment& a) {
  const int first = c.perms[0][a[c.vars[0]]];
  for (std::size_t j = 1; j < c.vars.size(); ++j) {
    if (c.perms[j][a[c.vars[j]]] != first) return false;
  }
  return true;
}

bool weakly_satisfies(const Constraint& c, const Assignment& a) {
  for (std::size_t j = 0; j < c.vars.size(); ++j) {
    for (std::size_t k = j + 1; k < c.vars.size(); ++k) {
      if (c.perms[j][a[c.vars[j]]] == c.perms[k][a[c.vars[k]]]) return true;
    }
  }
  return false;
}

double strong_value(const UniqueGame& g, const Assignment& a) {
  const auto& cs = g.constraints();
  const auto hits = std::count_if(cs.begin(), cs.end(), [&](const Constraint& c) { return strongly_satisfies(c, a); });
  return static_cast<double>(hits) / static_cast<double>(cs.size());
}

double weak_value(const UniqueGame& g, const Assignment& a) {
  const auto& cs = g.constraints();
  const auto hits = std::count_if(cs.begin(), cs.end(), [&](const Constraint& c) { return weakly_satisfies(c, a); });
  return static_cast<double>(hits) / static_cast<double>(cs.size());
}

GameValueReport solve_unique_game(const UniqueGame& g, Guard guard) {
  const int sigma = g.alphabet_size();
  const int vars = g.variable_count();
  if (guard == Guard::enforce && std::pow(static_cast<double>(sigma), vars) > kMaxAssignments) {
    throw ResourceLimitError("solve_unique_game: sigma^|V| exceeds 10^7");
  }
  const auto& cs = g.constraints();

  // Split on the first variable's letter; within a branch, assignments are
  // visited in lexicographic order so the first strict improvement is the
  // smallest maximizer of that branch.
  std::vector<SearchBest> branch(static_cast<std::size_t>(sigma));
#pragma omp parallel for schedule(dynamic, 1)
  for (int first = 0; first < sigma; ++first) {
    SearchBest best;
    Assignment a(static_cast<std::size_t>(vars), 0);
    a[0] = first;
    bool have = false;
    for (;;) {
      std::uint64_t strong = 0, weak = 0;
      for (const auto& c : cs) {
        strong += strongly_satisfies(c, a);
        weak += weakly_satisfies(c, a);
      }
      if (!have || strong > best.strong) {
        best.strong = strong;
        best.strong_assignment = a;
        have = true;
      }
      best.weak = std::max(best.weak, weak);
      int v = vars - 1;
      while (v >= 1 && ++a[v] == sigma) a[v--] = 0;
      if (v < 1) break;
    }
    branch[first] = std::move(best);
  }

  SearchBest best = branch[0];
  for (int first = 1; first < sigma; ++first) {
    if (branch[first].strong > best.strong) {
      best.strong = branch[first].strong;
      best.strong_assignment = branch[first].strong_assignment;
    }
    best.weak = std::max(best.weak, branch[first].weak);
  }
  const double m = static_cast<double>(cs.size());
  return {static_cast<double>(best.strong) / m, static_cast<double>(best.weak) / m,
          std::move(best.strong_assignment)};
}

UniqueGame random_unique_game(int sigma, int variables, int constraints, int arity, bool planted,
                              std::uint64_t seed, Assignment* hidden) {
  if (arity > variables) throw std::invalid_argument("constraint arity exceeds the variable count");
  Rng rng = seeded(seed);
  std::uniform_int_distribution<int> letter(0, sigma - 1);
  Assignment a(static_cast<std::size_t>(variables));
  for (auto& x : a) x = letter(rng);

  std::vector<int> all(static_cast<std::size_t>(variables));
  std::iota(all.begin(), all.end(), 0);
  std::vector<Constraint> cs;
  for (int k = 0; k < constraints; ++k) {
    std::shuffle(all.begin(), all.end(), rng);
    Constraint c;
    c.vars.assign(all.begin(), all.begin() + arity);
    const int common = letter(rng);
    for (int j = 0; j < arity; ++j) {
      auto p = random_permutation(sigma, rng);
      if (planted) {
        const int from = a[c.vars[j]];
        const auto it = std::find(p.begin(), p.end(), common);
        std::iter_swap(it, p.begin() + from);
      }
      c.perms.push_back(std::move(p));
    }
    cs.push_back(std::move(c));
  }
  std::vector<std::string> names;
  for (int v = 0; v < variables; ++v) names.push_back("v" + std::to_string(v + 1));
  if (hidden) *hidden = a;
  return UniqueGame(sigma, std::move(names), std::move(cs));
}

PcpProof honest_proof(const UniqueGame& g, const Assignment& a) {
  if (static_cast<int>(a.size()) != g.variable_count()) throw std::invalid_argument("assignment size mismatch");
  PcpProof proof;
  for (int letter : a) {
    if (letter < 0 || letter >= g.alphabet_size()) throw std::invalid_argument("letter out of range");
    proof.tables.push_back(make_long_code(g.alphabet_size(), letter));
  }
  return proof;
}

PcpProof random_proof(const UniqueGame& g, std::uint64_t seed) {
  PcpProof proof;
  for (int v = 0; v < g.variable_count(); ++v) {
    proof.tables.push_back(random_fn(g.alphabet_size(), RandomMode::sign, seed + static_cast<std::uint64_t>(v)));
  }
  return proof;
}

LongCodeInputs constraint_inputs(const UniqueGame& g, const PcpProof& proof, const Hypergraph& h,
                                 std::size_t constraint) {
  const Constraint& c = g.constraints().at(constraint);
  if (static_cast<int>(c.vars.size()) != h.query_count()) {
    throw std::invalid_argument("constraint arity must equal t + |E|");
  }
  if (static_cast<int>(proof.tables.size()) != g.variable_count()) {
    throw std::invalid_argument("proof must hold one table per variable");
  }
  std::vector<BoolFn> slots;
  for (std::size_t j = 0; j < c.vars.size(); ++j) {
    const BoolFn& table = proof.tables[c.vars[j]];
    if (table.arity() != g.alphabet_size()) throw std::invalid_argument("proof table arity must equal sigma");
    slots.push_back(permute(fold(table), c.perms[j]));
  }
  return LongCodeInputs(h, std::move(slots));
}

bool composed_round(const UniqueGame& g, const PcpProof& proof, const Hypergraph& h, double gamma, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, g.constraints().size() - 1);
  const LongCodeInputs inputs = constraint_inputs(g, proof, h, pick(rng));
  return noisy_h_test_round(h, gamma, inputs, rng);
}

ComposedReport run_composed(const UniqueGame& g, const PcpProof& proof, const Hypergraph& h, double gamma,
                            std::uint64_t rounds, std::uint64_t seed) {
  std::vector<LongCodeInputs> per_constraint;
  double exact = 0.0;
  for (std::size_t k = 0; k < g.constraints().size(); ++k) {
    per_constraint.push_back(constraint_inputs(g, proof, h, k));
    exact += exact_noisy_h_test(h, gamma, per_constraint.back()).probability;
  }
  const auto est = kernels::omp::monte_carlo(rounds, seed, [&](Rng& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, per_constraint.size() - 1);
    return noisy_h_test_round(h, gamma, per_constraint[pick(rng)], rng) ? 1.0 : 0.0;
  });
  ComposedReport r;
  r.acceptance = est.mean;
  r.stderr_ = est.stderr_;
  r.rounds = rounds;
  r.exact_acceptance = exact / static_cast<double>(g.constraints().size());
  r.soundness_floor = std::ldexp(1.0, -h.edge_count());
  r.completeness_bound = 1.0 - (h.vertex_count() + 1) * gamma * h.edge_count();
  return r;
}

DecodeResult decode(const PcpProof& proof, int degree, double tau, std::uint64_t seed) {
  if (!(tau > 0.0 && tau <= 1.0)) throw std::invalid_argument("threshold must lie in (0, 1]");
  Rng rng = seeded(seed);
  DecodeResult out;
  for (const auto& table : proof.tables) {
    const InfluenceReport r = degree_influences(fold(table), degree);
    std::vector<int> candidates;
    for (int i = 0; i < static_cast<int>(r.values.size()); ++i) {
      if (r.values[i] >= tau) candidates.push_back(i);
    }
    // Degree-d influences sum to at most d for a bounded function.
    if (static_cast<double>(candidates.size()) > degree / tau + 1e-9) {
      throw std::logic_error("candidate set exceeds d / tau");
    }
    const int sigma = table.arity();
    if (candidates.empty()) {
      out.assignment.push_back(std::uniform_int_distribution<int>(0, sigma - 1)(rng));
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
      out.assignment.push_back(candidates[pick(rng)]);
    }
    out.candidate_counts.push_back(static_cast<int>(candidates.size()));
  }
  return out;
}

}  // namespace cubekit
