#pragma once

#include <stdexcept>
#include <string>

namespace cubekit {

/// Raised when an exact computation would exceed the default cost budget.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Whether exponential-cost routines may run past their default budget.
enum class Guard { enforce, override };

/// Default budget: log2 of the number of enumerated terms.
inline constexpr int kDefaultLog2Budget = 26;

inline void check_budget(int log2_cost, Guard guard, const std::string& what) {
  if (guard == Guard::enforce && log2_cost > kDefaultLog2Budget) {
    throw ResourceLimitError(what + ": cost 2^" + std::to_string(log2_cost) +
                             " exceeds the default budget 2^" +
                             std::to_string(kDefaultLog2Budget) +
                             " (use the guard override to run anyway)");
  }
}

}  // namespace cubekit
