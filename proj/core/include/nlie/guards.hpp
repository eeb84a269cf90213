#pragma once

#include <cstdint>
#include <string>

namespace nlie {

/// Enumeration bounds. NLIE_MAX_INSTANCES, when set, overrides every bound.
struct Guards {
  std::uint64_t max_instances = 100'000'000;  ///< identity-check tuples
  std::uint64_t max_projective = 1'000'000;   ///< p^d for exhaustive projective closure
  std::uint64_t max_subspaces = 100'000;      ///< brute-force subspace enumeration

  static Guards from_env();
};

/// Throws GuardExceeded when count > bound.
void enforce_guard(std::uint64_t count, std::uint64_t bound, const std::string& what);

/// Binomial coefficient saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);
/// base^exp saturating at UINT64_MAX.
std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp);
/// a*b saturating at UINT64_MAX.
std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b);

}  // namespace nlie
