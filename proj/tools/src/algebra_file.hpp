#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nlie/algebra.hpp"
#include "nlie/error.hpp"

namespace nlie::cli {

/// Malformed input: bad JSON, unknown fields, out-of-range indices.
class InputError : public Error {
 public:
  using Error::Error;
};

/// One algebra per JSON document.
///
///   {"field": "Q" | {"Fp": p}, "dimension": d, "arity": n,
///    "basis_names": [...],                       optional
///    "product": [{"i": 0, "j": 1, "value": {"1": "2"}}],  optional, needs unit
///    "unit": ["1", "0", ...],                    optional, needs product
///    "bracket": [{"args": [0, 1], "value": {"2": "-1/2"}}]}
///
/// Indices are 0-based; bracket args strictly increasing; coefficients are
/// strings ("a" or "a/b"); omitted entries are zero.
struct AlgebraFile {
  FieldSpec field;
  std::size_t dim = 0;
  std::size_t arity = 0;
  std::vector<std::string> basis_names;
  std::optional<SymProductTensor> product;
  std::optional<Vector> unit;
  SkewBracketTensor bracket{FieldSpec::rationals(), 0, 1};

  bool has_product() const { return product.has_value(); }
  NLieAlgebra lie() const;
  /// Throws InputError when the file has no product and unit.
  NLiePoissonAlgebra poisson() const;
  std::string basis_name(std::size_t i) const;
};

AlgebraFile parse_algebra_file(std::string_view text);
AlgebraFile read_algebra_file(const std::string& path);
std::string write_algebra_file(const AlgebraFile& file);

AlgebraFile from_algebra(const NLieAlgebra& alg);
AlgebraFile from_algebra(const NLiePoissonAlgebra& alg);

/// FNV-1a 64-bit, as 16 hex digits.
std::string digest(std::string_view bytes);

/// Reads the whole file; throws InputError when it cannot be opened.
std::string slurp(const std::string& path);

}  // namespace nlie::cli
