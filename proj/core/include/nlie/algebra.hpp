#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nlie/guards.hpp"
#include "nlie/tensor.hpp"

namespace nlie {

/// An n-ary skew bracket on a finite-dimensional space. Satisfying the
/// generalized Jacobi identity is a checked property, not an invariant.
class NLieAlgebra {
 public:
  explicit NLieAlgebra(SkewBracketTensor bracket, std::vector<std::string> basis_names = {});

  const SkewBracketTensor& bracket() const { return bracket_; }
  FieldSpec field() const { return bracket_.field(); }
  std::size_t dim() const { return bracket_.dim(); }
  std::size_t arity() const { return bracket_.arity(); }
  /// Empty, or one name per basis vector.
  const std::vector<std::string>& basis_names() const { return names_; }
  /// Name of e_i: the stored name or "e<i>".
  std::string basis_name(std::size_t i) const;

 private:
  SkewBracketTensor bracket_;
  std::vector<std::string> names_;
};

/// Commutative product, unit and bracket on one carrier. The constructor
/// verifies that `unit` is an identity for the product.
class NLiePoissonAlgebra {
 public:
  NLiePoissonAlgebra(SymProductTensor product, Vector unit, SkewBracketTensor bracket,
                     std::vector<std::string> basis_names = {});

  const SymProductTensor& product() const { return product_; }
  const Vector& unit() const { return unit_; }
  const SkewBracketTensor& bracket() const { return lie_.bracket(); }
  const NLieAlgebra& lie() const { return lie_; }
  FieldSpec field() const { return lie_.field(); }
  std::size_t dim() const { return lie_.dim(); }
  std::size_t arity() const { return lie_.arity(); }

 private:
  SymProductTensor product_;
  Vector unit_;
  NLieAlgebra lie_;
};

/// The failing instance of an identity check: the named basis-index tuples
/// and the two sides that differ.
struct Witness {
  std::vector<std::pair<std::string, std::vector<std::size_t>>> args;
  Vector lhs;
  Vector rhs;
};

struct Verdict {
  std::string check;
  bool pass = true;
  std::uint64_t instances = 0;
  std::optional<Witness> witness;
};

/// omega(omega(x_1..x_n), y_2..y_n) == sum_i omega(x_1..omega(x_i, y_2..y_n)..x_n)
/// on all strictly increasing basis tuples x and y.
Verdict check_generalized_jacobi(const SkewBracketTensor& t, const Guards& guards = Guards::from_env());

/// Associativity on all basis triples, then unit * e_i == e_i.
Verdict check_assoc_comm_unital(const SymProductTensor& p, const std::optional<Vector>& unit,
                                const Guards& guards = Guards::from_env());

/// omega(e_i e_j, e_K) == e_i omega(e_j, e_K) + omega(e_i, e_K) e_j for i <= j
/// and strictly increasing K.
Verdict check_leibniz(const NLiePoissonAlgebra& a, const Guards& guards = Guards::from_env());
/// Same check on a raw product/bracket pair (no unit needed).
Verdict check_leibniz(const SymProductTensor& p, const SkewBracketTensor& t, const Guards& guards = Guards::from_env());

/// omega(ab, c, U) == omega(a, bc, U) + omega(b, ac, U) for a <= b, any c and
/// strictly increasing U.
Verdict check_poisson_identity(const NLiePoissonAlgebra& a, const Guards& guards = Guards::from_env());
Verdict check_poisson_identity(const SymProductTensor& p, const SkewBracketTensor& t,
                               const Guards& guards = Guards::from_env());

/// Matrix of b -> omega(b, e_K) for a strictly increasing (n-1)-tuple K, kept
/// as sparse columns.
std::vector<SparseVector> basis_ad_columns(const SkewBracketTensor& t, const MultiIndex& tail);

}  // namespace nlie
