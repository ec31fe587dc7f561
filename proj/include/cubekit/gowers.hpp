#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cubekit/bool_fn.hpp"
#include "cubekit/errors.hpp"

namespace cubekit {

/// 2^d functions f_S indexed by subset masks S of [d], sharing one arity.
class FnCollection {
 public:
  FnCollection(int d, std::vector<BoolFn> entries);
  /// Every slot holds the same function.
  static FnCollection uniform(int d, const BoolFn& f);

  int dimension() const { return d_; }
  int arity() const { return entries_.front().arity(); }
  const BoolFn& operator[](Mask s) const { return entries_[s]; }
  const std::vector<BoolFn>& entries() const { return entries_; }

 private:
  int d_;
  std::vector<BoolFn> entries_;
};

/// Canonical key of a subset of [d]: sorted 1-based digits, "" for the empty set.
std::string subset_key(Mask s);
/// Inverse of subset_key; throws on malformed or out-of-range keys.
Mask parse_subset_key(const std::string& key, int d);

enum class Method { exact, monte_carlo };

struct GowersResult {
  double value = 0.0;
  Method method = Method::exact;
  std::uint64_t samples = 0;
  double stderr_ = 0.0;
};

/// x -> f(x) f(x + y).
BoolFn derivative(const BoolFn& f, Mask y);

/// Which closed form ends the derivative recursion for U^d.
enum class UniformityBase {
  fourth_powers,  // U^2(f) = sum_S f^(S)^4
  squared_mean,   // U^1(f) = (E f)^2
};

/// Exact U^d(f) by the derivative recursion U^d(f) = E_y U^{d-1}(f(.)f(.+y)).
GowersResult gowers_u(const BoolFn& f, int d, Guard guard = Guard::enforce,
                      UniformityBase base = UniformityBase::fourth_powers);
GowersResult gowers_u_mc(const BoolFn& f, int d, std::uint64_t samples, std::uint64_t seed);

enum class InnerProductRoute {
  enumeration,    // direct sum over (x, x_1..x_d)
  four_spectra,   // outer sum over x_1..x_{d-2}, inner sum of A^ B^ C^ D^
};

/// Exact Gowers inner product E prod_S f_S(x + sum_{i in S} x_i).
GowersResult gowers_ip(const FnCollection& c, InnerProductRoute route = InnerProductRoute::four_spectra,
                       Guard guard = Guard::enforce);
GowersResult gowers_ip_mc(const FnCollection& c, std::uint64_t samples, std::uint64_t seed);

/// Exact linear inner product E_{x_1..x_d} prod_S f_S(sum_{i in S} x_i).
GowersResult linear_gowers_ip(const FnCollection& c, Guard guard = Guard::enforce);

/// g_T := f_{T u {d}}.
FnCollection lift_linear_to_gowers(const FnCollection& c);

struct InfluentialVariable {
  int coordinate = 0;  // 0-based
  double value = 0.0;
};

/// Coordinate maximizing the t-cross-influence of the collection's entries.
InfluentialVariable find_influential_variable(const FnCollection& c, int t);

}  // namespace cubekit
