#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nlie/algebra.hpp"

namespace nlie {

/// Leibniz rule D(e_i e_j) = D(e_i) e_j + e_i D(e_j) on all basis pairs.
Verdict check_derivation(const SymProductTensor& product, const Matrix& d);
/// D_a D_b == D_b D_a for every pair.
Verdict check_commuting(const std::vector<Matrix>& maps);

/// Pairwise commuting derivations of a unital commutative algebra. Validated
/// on construction; throws PreconditionError naming the failing check.
class DerivationSet {
 public:
  DerivationSet(SymProductTensor product, Vector unit, std::vector<Matrix> maps,
                std::vector<std::string> basis_names = {});

  const SymProductTensor& product() const { return product_; }
  const Vector& unit() const { return unit_; }
  const std::vector<Matrix>& maps() const { return maps_; }
  const std::vector<std::string>& basis_names() const { return names_; }
  std::size_t dim() const { return product_.dim(); }
  FieldSpec field() const { return product_.field(); }

 private:
  SymProductTensor product_;
  Vector unit_;
  std::vector<Matrix> maps_;
  std::vector<std::string> names_;
};

/// The (n+1)-dimensional vector product algebra. The bracket is the formal
/// determinant with the arguments as the first n rows and the basis row last,
/// so omega(e_{i_1}, ..., e_{i_n}) = (-1)^(n+m) e_m where m is the omitted index.
NLieAlgebra vector_product_algebra(std::size_t n, FieldSpec field = FieldSpec::rationals());

/// omega(e_{i_1}, ..., e_{i_n}) = det[D_r(e_{i_s})] with products taken in A.
NLiePoissonAlgebra jacobian_from_derivations(const DerivationSet& ds);

/// Determinant whose first row is the arguments themselves and whose row r+1
/// applies D_r. Needs exactly arity - 1 maps.
NLieAlgebra w_from_derivations(const DerivationSet& ds, std::size_t arity);

/// F_p[x_1..x_k]/(x_1^p, ..., x_k^p) with its k partial derivatives.
struct TruncatedPolynomialAlgebra {
  std::size_t vars;
  std::uint32_t p;
  /// exponents[i] is the exponent vector of basis monomial i.
  std::vector<std::vector<unsigned>> exponents;
  DerivationSet partials;
};

/// Basis monomial x^a has index sum_i a_i p^i, so the basis starts 1, x, x^2, ..., y, x*y, ...
TruncatedPolynomialAlgebra truncated_polynomial_algebra(std::size_t vars, std::uint32_t p,
                                                        const Guards& guards = Guards::from_env());

/// Variable names used for k variables: x, y, z, then x1..xk beyond three.
std::vector<std::string> default_variable_names(std::size_t k);

/// jacobian_from_derivations on the truncated algebra in n variables.
NLiePoissonAlgebra jacobian_truncated(std::size_t n, std::uint32_t p, const Guards& guards = Guards::from_env());
/// w_from_derivations on the truncated algebra in n - 1 variables.
NLieAlgebra w_truncated(std::size_t n, std::uint32_t p, const Guards& guards = Guards::from_env());
/// The truncated algebra in n - 1 variables paired with the W bracket, which
/// is not a Poisson bracket; for demonstrating the Leibniz failure.
std::pair<SymProductTensor, SkewBracketTensor> w_truncated_with_product(std::size_t n, std::uint32_t p,
                                                                        const Guards& guards = Guards::from_env());

NLieAlgebra zero_algebra(FieldSpec field, std::size_t dim, std::size_t arity);

}  // namespace nlie
