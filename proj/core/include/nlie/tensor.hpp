#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "nlie/linalg.hpp"

namespace nlie {

/// Arguments of the bracket, as basis indices.
using MultiIndex = std::vector<std::size_t>;

inline constexpr std::size_t kMaxArity = 16;

/// Sorted form of a raw index tuple. sign == 0 marks a repeated index (the
/// bracket vanishes there); otherwise sign is the parity of the sort.
struct CanonicalIndex {
  MultiIndex indices;
  int sign = 0;
  bool is_zero() const { return sign == 0; }
};

/// Throws Error when an index is >= dim.
CanonicalIndex canonicalize_index(std::span<const std::size_t> raw, std::size_t dim);

/// Calls f(tuple) for every strictly increasing k-tuple from [0, dim) in lex order.
/// Stops early when f returns false.
template <class F>
void for_each_increasing(std::size_t dim, std::size_t k, F&& f) {
  if (k > dim) return;
  MultiIndex t(k);
  for (std::size_t i = 0; i < k; ++i) t[i] = i;
  while (true) {
    if (!f(static_cast<const MultiIndex&>(t))) return;
    std::size_t i = k;
    while (i > 0 && t[i - 1] == dim - k + i - 1) --i;
    if (i == 0) return;
    ++t[i - 1];
    for (std::size_t j = i; j < k; ++j) t[j] = t[j - 1] + 1;
  }
}

/// All strictly increasing k-tuples from [0, dim), lex order.
std::vector<MultiIndex> increasing_tuples(std::size_t dim, std::size_t k);

/// Sparse coordinate list: (index, nonzero coefficient), increasing index.
using SparseVector = std::vector<std::pair<std::size_t, Scalar>>;
SparseVector to_sparse(const Vector& v);

/// An alternating n-linear map on F^d, stored on strictly increasing index
/// tuples only. Absent keys mean zero; zero values are never stored.
class SkewBracketTensor {
 public:
  SkewBracketTensor(FieldSpec field, std::size_t dim, std::size_t arity);

  FieldSpec field() const { return field_; }
  std::size_t dim() const { return dim_; }
  std::size_t arity() const { return arity_; }
  std::size_t entry_count() const { return table_.size(); }
  bool is_zero() const { return table_.empty(); }

  /// Sets the bracket of the basis vectors `args` (any order; the sign of the
  /// sort is applied). Repeated indices are rejected unless value is zero.
  void set(std::span<const std::size_t> args, const Vector& value);
  /// Adds to the existing value.
  void add(std::span<const std::size_t> args, const Vector& value);

  /// Value on a canonical strictly increasing key, or nullptr when zero.
  const Vector* find(std::span<const std::size_t> canonical) const;
  /// Bracket of basis vectors in any order; sign is 0 when the result is zero.
  const Vector* lookup(std::span<const std::size_t> raw, int& sign) const;
  /// Bracket of basis vectors as a dense vector.
  Vector basis_bracket(std::span<const std::size_t> raw) const;

  /// Entries in lexicographic key order.
  std::vector<std::pair<MultiIndex, Vector>> entries() const;

  template <class F>
  void for_each_entry(F&& f) const {
    MultiIndex key(arity_);
    for (const auto& [code, value] : table_) {
      decode(code, key);
      f(static_cast<const MultiIndex&>(key), value);
    }
  }

  friend bool operator==(const SkewBracketTensor& a, const SkewBracketTensor& b) {
    return a.field_ == b.field_ && a.dim_ == b.dim_ && a.arity_ == b.arity_ && a.table_ == b.table_;
  }

 private:
  std::uint64_t encode(std::span<const std::size_t> sorted) const;
  void decode(std::uint64_t code, MultiIndex& out) const;
  void check_value(const Vector& value) const;

  FieldSpec field_;
  std::size_t dim_;
  std::size_t arity_;
  std::map<std::uint64_t, Vector> table_;
};

/// Multilinear extension of the table.
Vector bracket_eval(const SkewBracketTensor& t, std::span<const Vector> args);

/// A commutative bilinear product on F^d, stored on unordered index pairs.
class SymProductTensor {
 public:
  SymProductTensor(FieldSpec field, std::size_t dim);

  FieldSpec field() const { return field_; }
  std::size_t dim() const { return dim_; }

  void set(std::size_t i, std::size_t j, const Vector& value);
  /// e_i * e_j, or nullptr when zero.
  const Vector* find(std::size_t i, std::size_t j) const;
  Vector basis_product(std::size_t i, std::size_t j) const;

  /// Entries (i <= j) in lexicographic order.
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, Vector>> entries() const;

  friend bool operator==(const SymProductTensor&, const SymProductTensor&) = default;

 private:
  FieldSpec field_;
  std::size_t dim_;
  std::map<std::pair<std::size_t, std::size_t>, Vector> table_;
};

/// Bilinear extension of the table.
Vector product_eval(const SymProductTensor& p, const Vector& a, const Vector& b);

/// Matrix of left multiplication by a.
Matrix multiplication_operator(const SymProductTensor& p, const Vector& a);

}  // namespace nlie
