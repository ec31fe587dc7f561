#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cubekit/rng.hpp"

namespace cubekit {

/// A point of {0,1}^n or a subset of [n]: coordinate x_i is bit (i-1).
using Mask = std::uint32_t;

inline constexpr int kMaxArity = 24;

/// Real-valued function on {0,1}^n stored as a full table of 2^n values in [-1,1].
///
/// Entry m is f(x) for the point whose coordinates are the bits of m, so
/// XOR of indices is addition in Z_2^n. Values are immutable after
/// construction.
class BoolFn {
 public:
  /// Validates arity, table length and range. Values within 1e-9 of the
  /// range are clamped (results of floating-point averaging).
  BoolFn(int n, std::vector<double> values);

  static BoolFn constant(int n, double c);

  int arity() const { return n_; }
  std::size_t size() const { return values_.size(); }
  Mask full_mask() const { return static_cast<Mask>(values_.size() - 1); }
  bool is_sign() const { return is_sign_; }

  double operator[](Mask x) const { return values_[x]; }
  double at(Mask x) const { return values_.at(x); }
  std::span<const double> values() const { return values_; }

  double mean() const;

  friend bool operator==(const BoolFn& a, const BoolFn& b) {
    return a.n_ == b.n_ && a.values_ == b.values_;
  }

 private:
  int n_;
  std::vector<double> values_;
  bool is_sign_;
};

/// Fourier coefficients f^(S), entry m holding the coefficient of chi_S for S = bits of m.
struct Spectrum {
  int n = 0;
  std::vector<double> coeffs;

  double operator[](Mask s) const { return coeffs[s]; }
};

/// n x n matrix over GF(2); row r is a bit mask of its entries.
struct Gf2Matrix {
  int n = 0;
  std::vector<Mask> rows;

  static Gf2Matrix identity(int n);
  Mask apply(Mask x) const;
  int rank() const;
  bool invertible() const { return rank() == n; }
};

Gf2Matrix random_gf2_matrix(int n, Rng& rng);
Gf2Matrix random_invertible_gf2_matrix(int n, Rng& rng);

enum class RandomMode { sign, bounded };

BoolFn make_chi(int n, Mask s);
/// Dictator x -> (-1)^{x_i}; `coordinate` is 0-based.
BoolFn make_long_code(int n, int coordinate);
/// (-1)^{x1x2 + x3x4 + ...}, disjoint pairs; n must be even.
BoolFn make_quadratic_phase(int n);
/// (-1)^{sum over consecutive blocks of size `block` of the AND of the block}.
BoolFn make_block_and(int n, int block);
BoolFn random_fn(int n, RandomMode mode, std::uint64_t seed);

Spectrum fourier(const BoolFn& f);
BoolFn inverse_fourier(const Spectrum& s);

/// Pointwise product.
BoolFn multiply(const BoolFn& f, const BoolFn& g);

/// G(x) = E_eta f(x + eta) with eta ~ mu_gamma, computed exactly in the spectrum.
BoolFn apply_noise(const BoolFn& f, double gamma);
/// Point whose bits are independent Bernoulli(gamma).
Mask sample_mu_gamma(int n, double gamma, Rng& rng);

/// f(0,x2..xn) kept, f(1,x2..xn) := -f(0,1-x2,..,1-xn). Sign functions only.
BoolFn fold(const BoolFn& f);

/// (f o pi)(x_1..x_n) = f(x_{pi(1)}, .., x_{pi(n)}), 0-based images.
/// The long code of a becomes the long code of pi(a).
BoolFn permute(const BoolFn& f, std::span<const int> pi);

/// f_A(x) = f(Ax) over GF(2).
BoolFn apply_linear_transform(const BoolFn& f, const Gf2Matrix& a);

}  // namespace cubekit
