#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "cubekit/errors.hpp"

namespace cubekit {

using Complex = std::complex<double>;

/// G = G_1 x ... x G_n where each coordinate group G_i is a product of cyclic groups.
///
/// Elements are stored as mixed-radix indices over the flattened list of
/// cyclic factors, first block (and first factor within a block) least
/// significant.
class GroupSpec {
 public:
  explicit GroupSpec(std::vector<std::vector<int>> blocks);
  /// Z_2^n, one cyclic factor per block.
  static GroupSpec boolean_cube(int n);

  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  std::size_t order() const { return order_; }
  /// Number of elements of coordinate group G_i.
  std::size_t block_order(int block) const;

  std::vector<int> decode(std::size_t index) const;
  std::size_t encode(std::span<const int> digits) const;
  std::size_t add(std::size_t a, std::size_t b) const;
  /// Digit of coordinate block i (as an index into G_i).
  std::size_t block_digit(std::size_t index, int block) const;
  /// Whether the element has a nonzero component in the block.
  bool touches_block(std::size_t index, int block) const;

  /// Flattened cyclic factors and their mixed-radix strides.
  const std::vector<int>& moduli() const { return moduli_; }
  const std::vector<std::size_t>& strides() const { return strides_; }

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) { return a.blocks_ == b.blocks_; }

  static constexpr std::size_t kMaxOrder = std::size_t{1} << 20;

 private:
  std::vector<std::vector<int>> blocks_;
  std::vector<int> moduli_;
  std::vector<std::size_t> strides_;
  std::vector<int> first_factor_;  // per block, plus a sentinel
  std::size_t order_ = 1;
};

/// Complex-valued function on G with |f(x)| <= 1.
struct GroupFn {
  GroupFn(GroupSpec spec, std::vector<Complex> values);

  GroupSpec spec;
  std::vector<Complex> values;

  Complex mean() const;
};

struct GroupSpectrum {
  GroupSpec spec;
  std::vector<Complex> coeffs;  // indexed by character label g in G
};

GroupFn group_character(const GroupSpec& spec, std::size_t g);
GroupFn random_group_fn(const GroupSpec& spec, std::uint64_t seed);
GroupFn multiply(const GroupFn& f, const GroupFn& g);

/// f^(g) = E_x f(x) conj(chi_g(x)).
GroupSpectrum group_fourier(const GroupFn& f);
GroupFn inverse_group_fourier(const GroupSpectrum& s);

/// E |f - E f|^2 over the whole group.
double variance(const GroupFn& f);
/// I_i(f) = E_{other coordinates} Var_{x_i} f.
double group_influence(const GroupFn& f, int block);
/// Same quantity as sum of |f^(g)|^2 over labels with g_i != 0.
double group_influence_fourier(const GroupSpectrum& s, int block);

enum class GroupUniformityBase { fourth_powers, squared_modulus };

/// U^d with odd-level conjugation, via f_{y}(x) = f(x) conj(f(x + y)).
double group_gowers_u(const GroupFn& f, int d, Guard guard = Guard::enforce,
                      GroupUniformityBase base = GroupUniformityBase::fourth_powers);
/// E prod_{|S| even} f_S(x + sum x_i) prod_{|S| odd} conj(f_S(x + sum x_i)).
Complex group_gowers_ip(std::span<const GroupFn> collection, int d, Guard guard = Guard::enforce);

}  // namespace cubekit
