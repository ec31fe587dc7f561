#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cubekit/bool_fn.hpp"
#include "cubekit/errors.hpp"
#include "cubekit/testing.hpp"

namespace cubekit {

/// One q-ary constraint: letters A(v_j) mapped through perms[j] must agree
/// (strong) or must not be all distinct (weak).
struct Constraint {
  std::vector<int> vars;
  std::vector<std::vector<int>> perms;  // perms[j][a] is the image of letter a
};

/// d-ary unique game. A binary constraint y = pi(x) is the 2-ary constraint
/// with perms (pi, id).
class UniqueGame {
 public:
  UniqueGame(int sigma, std::vector<std::string> variables, std::vector<Constraint> constraints);

  int alphabet_size() const { return sigma_; }
  int variable_count() const { return static_cast<int>(variables_.size()); }
  int arity() const { return static_cast<int>(constraints_.front().vars.size()); }
  const std::vector<std::string>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }

 private:
  int sigma_;
  std::vector<std::string> variables_;
  std::vector<Constraint> constraints_;
};

using Assignment = std::vector<int>;

bool strongly_satisfies(const Constraint& c, const Assignment& a);
bool weakly_satisfies(const Constraint& c, const Assignment& a);
double strong_value(const UniqueGame& g, const Assignment& a);
double weak_value(const UniqueGame& g, const Assignment& a);

struct GameValueReport {
  double strong_value = 0.0;
  double weak_value = 0.0;
  /// Lexicographically smallest assignment reaching the strong value.
  Assignment best_assignment;
};

/// Exhaustive search over sigma^|V| assignments (guarded at 10^7).
GameValueReport solve_unique_game(const UniqueGame& g, Guard guard = Guard::enforce);

/// Random q-ary game. With `planted`, a hidden assignment strongly satisfies every constraint.
UniqueGame random_unique_game(int sigma, int variables, int constraints, int arity, bool planted,
                              std::uint64_t seed, Assignment* hidden = nullptr);

/// Long-code table of arity sigma for every variable.
struct PcpProof {
  std::vector<BoolFn> tables;
};

PcpProof honest_proof(const UniqueGame& g, const Assignment& a);
PcpProof random_proof(const UniqueGame& g, std::uint64_t seed);

/// Folded-then-permuted tables for one constraint, in slot order
/// (vertices first, then edges in hypergraph order).
LongCodeInputs constraint_inputs(const UniqueGame& g, const PcpProof& proof, const Hypergraph& h,
                                 std::size_t constraint);

/// One verifier round: uniform constraint, then one round of the gamma-noisy H-test.
bool composed_round(const UniqueGame& g, const PcpProof& proof, const Hypergraph& h, double gamma, Rng& rng);

struct ComposedReport {
  double acceptance = 0.0;
  double stderr_ = 0.0;
  std::uint64_t rounds = 0;
  /// Mean over constraints of the exact noisy H-test acceptance.
  double exact_acceptance = 0.0;
  /// 2^{-|E|}.
  double soundness_floor = 0.0;
  /// 1 - (t+1) gamma |E|.
  double completeness_bound = 0.0;
};

/// Monte Carlo run of the composed verifier plus the exact per-constraint average.
ComposedReport run_composed(const UniqueGame& g, const PcpProof& proof, const Hypergraph& h, double gamma,
                            std::uint64_t rounds, std::uint64_t seed);

struct DecodeResult {
  Assignment assignment;
  std::vector<int> candidate_counts;
};

/// Per variable: fold, collect coordinates with degree-d influence >= tau, pick one
/// uniformly (or a uniform letter if none qualify).
DecodeResult decode(const PcpProof& proof, int degree, double tau, std::uint64_t seed);

}  // namespace cubekit
