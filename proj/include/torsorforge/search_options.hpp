#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "torsorforge/error.hpp"

namespace torsorforge {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// Bounds shared by every exhaustive search in the library.
struct SearchOptions {
  std::uint64_t budget = kDefaultBudget;
  /// Enumerations split the first search level across this many threads.
  /// Output order never depends on it.
  unsigned workers = 1;
};

/// Saturating product, for search-size estimates that may overflow.
inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

inline std::uint64_t saturating_pow(std::uint64_t base, std::size_t exponent) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exponent; ++i) r = saturating_mul(r, base);
  return r;
}

inline void check_budget(std::uint64_t required, const SearchOptions& options,
                         const std::string& what) {
  if (required > options.budget)
    throw CapacityError(what + " needs a search of " + std::to_string(required) +
                            " assignments, budget is " + std::to_string(options.budget),
                        required, options.budget);
}

}  // namespace torsorforge
