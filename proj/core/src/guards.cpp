#include "nlie/guards.hpp"

#include <cstdlib>
#include <limits>

#include "nlie/error.hpp"

namespace nlie {

__extension__ typedef unsigned __int128 uint128;

Guards Guards::from_env() {
  Guards g;
  if (const char* env = std::getenv("NLIE_MAX_INSTANCES")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') {
      g.max_instances = g.max_projective = g.max_subspaces = v;
    }
  }
  return g;
}

void enforce_guard(std::uint64_t count, std::uint64_t bound, const std::string& what) {
  if (count > bound) {
    throw GuardExceeded(what + ": " + std::to_string(count) + " instances exceed the bound " +
                        std::to_string(bound) + " (set NLIE_MAX_INSTANCES to override)");
  }
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  uint128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) r = saturating_mul(r, base);
  return r;
}

}  // namespace nlie
