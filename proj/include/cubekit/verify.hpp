#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cubekit {

/// One checked inequality lhs <= rhs. Identities are recorded as |a - b| <= 0.
struct VerifyRecord {
  std::string lemma;
  int instance = 0;
  std::string descriptor;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  bool pass = false;    // margin >= -1e-9
};

struct VerifyReport {
  std::string suite;
  std::vector<VerifyRecord> records;  // sorted by lemma id, then instance
  int passed = 0;
  int failed = 0;
  bool all_pass() const { return failed == 0; }
};

struct VerifyOptions {
  int n = 6;
  int trials = 50;
  std::uint64_t seed = 1;
};

inline constexpr double kVerifyTolerance = 1e-9;

const std::vector<std::string>& verify_suite_names();

/// Runs every check of the named suite on seeded random and adversarial families.
/// `n` is capped per check so that exact routes stay within their guards.
VerifyReport verify_suite(const std::string& suite, const VerifyOptions& options);

}  // namespace cubekit
