#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nlie/algebra.hpp"
#include "nlie/guards.hpp"
#include "nlie/linalg.hpp"

namespace nlie {

enum class IdealKind { NLie, Associative, Poisson };
std::string to_string(IdealKind kind);

/// Matrix of b -> omega(b, a_2, ..., a_n).
Matrix ad_operator(const NLieAlgebra& alg, std::span<const Vector> tail);

/// Span of omega(s_1, ..., s_n) with s_i running over a basis of slots[i].
SubspaceBasis bracket_span(const NLieAlgebra& alg, std::span<const SubspaceBasis> slots,
                           const Guards& guards = Guards::from_env());

/// omega(S, ..., S).
SubspaceBasis derived_subspace(const NLieAlgebra& alg, const SubspaceBasis& s,
                               const Guards& guards = Guards::from_env());

/// S, S^[1], S^[2], ... ending at the first term equal to its successor; the
/// repeated term is not listed twice.
std::vector<SubspaceBasis> derived_series(const NLieAlgebra& alg, const SubspaceBasis& s,
                                          const Guards& guards = Guards::from_env());

/// {a : omega(a, A, ..., A) = 0}.
SubspaceBasis center(const NLieAlgebra& alg);

/// The linear maps an ideal of the given kind must be stable under: the basis
/// ads b -> omega(b, e_K) for NLie, multiplication by e_i for Associative,
/// both for Poisson. `product` is required unless kind is NLie.
std::vector<Matrix> ideal_generators(const SkewBracketTensor& bracket, const SymProductTensor* product, IdealKind kind);

/// Smallest subspace containing S that is stable under ideal_generators.
SubspaceBasis ideal_closure(const NLieAlgebra& alg, const SubspaceBasis& s, IdealKind kind,
                            const SymProductTensor* product = nullptr);
SubspaceBasis ideal_closure(const NLiePoissonAlgebra& alg, const SubspaceBasis& s, IdealKind kind);

/// Smallest subspace containing S stable under the given maps.
SubspaceBasis closure_under(std::span<const Matrix> maps, const SubspaceBasis& s);
bool is_stable(std::span<const Matrix> maps, const SubspaceBasis& s);

bool is_ideal(const NLieAlgebra& alg, const SubspaceBasis& s);

/// Nilpotent elements of a finite-dimensional commutative associative unital
/// algebra. Over Q: kernel of the trace form tr(L_{ab}). Over F_p: kernel of
/// a power of the Frobenius map v -> v^p, which is F_p-linear there.
SubspaceBasis nilradical(const SymProductTensor& product, const Vector& unit);
/// Elements nilpotent modulo the associative ideal I.
SubspaceBasis radical_of_ideal(const SymProductTensor& product, const Vector& unit, const SubspaceBasis& ideal);

/// Restriction of the bracket to a subalgebra S, in coordinates over the RREF
/// rows of S. Throws PreconditionError if omega(S, ..., S) is not inside S.
NLieAlgebra restrict_algebra(const NLieAlgebra& alg, const SubspaceBasis& s);

struct QuotientAlgebra {
  NLieAlgebra algebra;
  QuotientMap map;
};

/// alg / I on the representatives of quotient_complement. Throws
/// PreconditionError unless I is an ideal.
QuotientAlgebra quotient_algebra(const NLieAlgebra& alg, const SubspaceBasis& ideal);

/// whole / sub for a subalgebra `whole` and an ideal `sub` of it; the map
/// works in ambient coordinates.
QuotientAlgebra subquotient(const NLieAlgebra& alg, const SubspaceBasis& whole, const SubspaceBasis& sub);

/// Every subspace of F_p^d, in a fixed order (by dimension, then by RREF
/// enumeration), that is an n-Lie ideal.
std::vector<SubspaceBasis> brute_force_ideals(const NLieAlgebra& alg, const Guards& guards = Guards::from_env());

/// Calls f on every subspace of F_p^d of the given dimension. Stops early
/// when f returns false.
void for_each_subspace(FieldSpec field, std::size_t d, std::size_t k, const std::function<bool(const SubspaceBasis&)>& f);

/// Number of k-dimensional subspaces of F_p^d (Gaussian binomial), saturating.
std::uint64_t gaussian_binomial(std::uint64_t p, std::size_t d, std::size_t k);

}  // namespace nlie
