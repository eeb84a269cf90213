#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "nlie/algebra.hpp"
#include "nlie/guards.hpp"
#include "nlie/structure.hpp"

namespace nlie {

enum class SimplicityKind { Simple, NotSimple, Unknown };
std::string to_string(SimplicityKind kind);

/// How a Simple verdict was obtained.
///   ExhaustiveProjective: the closure of every projective point of F_p^d is
///     the full space (points_checked of them).
///   Norton: a singular element theta = r - lambda*I of the generated
///     operator algebra, rebuilt from seed and attempt, whose one-dimensional
///     kernel generates the space and whose transpose kernel generates the
///     dual.
///   ModPReduction: the reduction mod p is Simple by `inner_method`.
struct SimplicityCertificate {
  std::string method;
  std::uint32_t p = 0;
  std::size_t d = 0;
  std::uint64_t points_checked = 0;
  std::string inner_method;
  std::uint64_t seed = 0;
  std::uint64_t attempt = 0;
  std::uint32_t lambda = 0;
};

/// "ExhaustiveProjective(3,7)", "ModPReduction(5)" and so on.
std::string describe(const SimplicityCertificate& c);

struct SimplicityVerdict {
  SimplicityKind kind = SimplicityKind::Unknown;
  std::optional<SimplicityCertificate> certificate;
  /// Proper nonzero ideal for NotSimple (zero subspace only when d <= 1 and
  /// the bracket vanishes).
  std::optional<SubspaceBasis> witness;
  std::string reason;
  std::uint64_t seed = 0;
};

struct SimplicityOptions {
  std::uint64_t seed = 0;
  /// Over Q, try only this prime.
  std::optional<std::uint32_t> mod_p;
  /// Random elements tried by the Norton test.
  std::size_t norton_attempts = 200;
  /// Seeded random vectors whose closures are probed for proper ideals.
  std::size_t random_probes = 32;
  Guards guards = Guards::from_env();
};

/// Simple means: nonzero bracket and no ideal of the given kind other than 0
/// and the whole space. `product` is needed for Associative and Poisson.
SimplicityVerdict is_simple(const SkewBracketTensor& bracket, const SymProductTensor* product, IdealKind kind,
                            const SimplicityOptions& options = {});
SimplicityVerdict is_simple(const NLieAlgebra& alg, const SimplicityOptions& options = {});
SimplicityVerdict is_simple(const NLiePoissonAlgebra& alg, IdealKind kind = IdealKind::Poisson,
                            const SimplicityOptions& options = {});

/// Re-executes a Simple certificate, or re-checks a NotSimple witness.
/// Unknown verdicts never replay.
bool replay_verdict(const SkewBracketTensor& bracket, const SymProductTensor* product, IdealKind kind,
                    const SimplicityVerdict& verdict, const Guards& guards = Guards::from_env());

/// Reduction of Q structure constants mod p. Throws Error when p divides a
/// denominator.
SkewBracketTensor reduce_mod_p(const SkewBracketTensor& t, std::uint32_t p);
SymProductTensor reduce_mod_p(const SymProductTensor& t, std::uint32_t p);

}  // namespace nlie
