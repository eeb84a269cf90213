#include "nlie/constructions.hpp"

#include <algorithm>
#include <numeric>

#include "nlie/error.hpp"

namespace nlie {

namespace {

int permutation_sign(const std::vector<std::size_t>& perm) {
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t j = i + 1; j < perm.size(); ++j) {
      if (perm[i] > perm[j]) sign = -sign;
    }
  }
  return sign;
}

/// Determinant bracket: rows are the maps applied to the arguments, entries
/// multiplied in the commutative algebra.
SkewBracketTensor determinant_bracket(const SymProductTensor& product, const std::vector<Matrix>& maps) {
  const std::size_t n = maps.size();
  const std::size_t d = product.dim();
  const FieldSpec f = product.field();
  SkewBracketTensor t(f, d, n);
  std::vector<std::vector<Vector>> images(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i < d; ++i) images[r].push_back(maps[r].column(i));
  }
  for_each_increasing(d, n, [&](const MultiIndex& idx) {
    Vector value = zero_vector(f, d);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      Vector term = images[0][idx[perm[0]]];
      for (std::size_t r = 1; r < n && !is_zero(term); ++r) term = product_eval(product, term, images[r][idx[perm[r]]]);
      if (!is_zero(term)) axpy(value, Scalar(f, static_cast<long>(permutation_sign(perm))), term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    t.set(idx, value);
    return true;
  });
  return t;
}

}  // namespace

Verdict check_derivation(const SymProductTensor& product, const Matrix& d) {
  Verdict verdict{"derivation", true, 0, std::nullopt};
  const std::size_t n = product.dim();
  if (d.rows() != n || d.cols() != n || d.field() != product.field()) {
    throw MismatchError("derivation matrix does not match the algebra");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      ++verdict.instances;
      const Vector ei = unit_vector(product.field(), n, i);
      const Vector ej = unit_vector(product.field(), n, j);
      Vector lhs = d.apply(product.basis_product(i, j));
      Vector rhs = product_eval(product, d.column(i), ej) + product_eval(product, ei, d.column(j));
      if (lhs != rhs) {
        verdict.pass = false;
        verdict.witness = Witness{{{"pair", {i, j}}}, std::move(lhs), std::move(rhs)};
        return verdict;
      }
    }
  }
  return verdict;
}

Verdict check_commuting(const std::vector<Matrix>& maps) {
  Verdict verdict{"commuting", true, 0, std::nullopt};
  for (std::size_t a = 0; a < maps.size(); ++a) {
    for (std::size_t b = a + 1; b < maps.size(); ++b) {
      ++verdict.instances;
      const Matrix ab = maps[a] * maps[b];
      const Matrix ba = maps[b] * maps[a];
      if (ab == ba) continue;
      for (std::size_t c = 0; c < ab.cols(); ++c) {
        if (ab.column(c) != ba.column(c)) {
          verdict.pass = false;
          verdict.witness = Witness{{{"maps", {a, b}}, {"column", {c}}}, ab.column(c), ba.column(c)};
          return verdict;
        }
      }
    }
  }
  return verdict;
}

DerivationSet::DerivationSet(SymProductTensor product, Vector unit, std::vector<Matrix> maps,
                             std::vector<std::string> basis_names)
    : product_(std::move(product)), unit_(std::move(unit)), maps_(std::move(maps)), names_(std::move(basis_names)) {
  const auto assoc = check_assoc_comm_unital(product_, unit_);
  if (!assoc.pass) throw PreconditionError("derivation set: the algebra is not associative, commutative and unital");
  for (std::size_t k = 0; k < maps_.size(); ++k) {
    if (!check_derivation(product_, maps_[k]).pass) {
      throw PreconditionError("derivation set: map " + std::to_string(k) + " violates the Leibniz rule");
    }
  }
  if (!check_commuting(maps_).pass) throw PreconditionError("derivation set: maps do not commute");
}

NLieAlgebra vector_product_algebra(std::size_t n, FieldSpec field) {
  if (n < 2) throw Error("vector product algebra needs arity n >= 2");
  const std::size_t d = n + 1;
  SkewBracketTensor t(field, d, n);
  for (std::size_t missing = 0; missing < d; ++missing) {
    MultiIndex idx;
    for (std::size_t i = 0; i < d; ++i) {
      if (i != missing) idx.push_back(i);
    }
    // Cofactor of the basis row (row n+1, column missing+1).
    const long sign = (n + missing) % 2 == 0 ? 1 : -1;
    Vector v = zero_vector(field, d);
    v[missing] = Scalar(field, sign);
    t.set(idx, v);
  }
  return NLieAlgebra(std::move(t));
}

NLiePoissonAlgebra jacobian_from_derivations(const DerivationSet& ds) {
  if (ds.maps().empty()) throw Error("Jacobian bracket needs at least one derivation");
  return NLiePoissonAlgebra(ds.product(), ds.unit(), determinant_bracket(ds.product(), ds.maps()),
                            ds.basis_names());
}

NLieAlgebra w_from_derivations(const DerivationSet& ds, std::size_t arity) {
  if (arity < 2 || ds.maps().size() != arity - 1) {
    throw Error("W bracket of arity " + std::to_string(arity) + " needs exactly " +
                std::to_string(arity < 1 ? 0 : arity - 1) + " derivations, got " + std::to_string(ds.maps().size()));
  }
  std::vector<Matrix> rows;
  rows.push_back(Matrix::identity(ds.field(), ds.dim()));
  rows.insert(rows.end(), ds.maps().begin(), ds.maps().end());
  return NLieAlgebra(determinant_bracket(ds.product(), rows), ds.basis_names());
}

std::vector<std::string> default_variable_names(std::size_t k) {
  if (k <= 3) {
    static const char* names[] = {"x", "y", "z"};
    return {names, names + k};
  }
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= k; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

TruncatedPolynomialAlgebra truncated_polynomial_algebra(std::size_t vars, std::uint32_t p, const Guards& guards) {
  if (vars < 1) throw Error("truncated polynomial algebra needs at least one variable");
  const FieldSpec f = FieldSpec::prime(p);
  const std::uint64_t size = saturating_pow(p, vars);
  enforce_guard(size, std::min<std::uint64_t>(guards.max_instances, 4096), "truncated polynomial algebra dimension");
  const std::size_t d = static_cast<std::size_t>(size);

  std::vector<std::vector<unsigned>> exps(d, std::vector<unsigned>(vars));
  for (std::size_t i = 0; i < d; ++i) {
    std::size_t code = i;
    for (std::size_t v = 0; v < vars; ++v) {
      exps[i][v] = static_cast<unsigned>(code % p);
      code /= p;
    }
  }
  auto index_of = [&](const std::vector<unsigned>& e) {
    std::size_t code = 0;
    for (std::size_t v = vars; v-- > 0;) code = code * p + e[v];
    return code;
  };

  const auto var_names = default_variable_names(vars);
  std::vector<std::string> names;
  for (const auto& e : exps) {
    std::string s;
    for (std::size_t v = 0; v < vars; ++v) {
      if (e[v] == 0) continue;
      if (!s.empty()) s += "*";
      s += var_names[v];
      if (e[v] > 1) s += "^" + std::to_string(e[v]);
    }
    names.push_back(s.empty() ? "1" : s);
  }

  SymProductTensor product(f, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      std::vector<unsigned> e(vars);
      bool vanishes = false;
      for (std::size_t v = 0; v < vars; ++v) {
        e[v] = exps[i][v] + exps[j][v];
        vanishes |= e[v] >= p;
      }
      if (!vanishes) product.set(i, j, unit_vector(f, d, index_of(e)));
    }
  }

  std::vector<Matrix> partials;
  for (std::size_t v = 0; v < vars; ++v) {
    Matrix m(f, d, d);
    for (std::size_t i = 0; i < d; ++i) {
      if (exps[i][v] == 0) continue;
      auto e = exps[i];
      --e[v];
      m(index_of(e), i) = Scalar(f, static_cast<long>(exps[i][v]));
    }
    partials.push_back(std::move(m));
  }
  return TruncatedPolynomialAlgebra{vars, p, std::move(exps),
                                    DerivationSet(std::move(product), unit_vector(f, d, 0), std::move(partials),
                                                  std::move(names))};
}

NLiePoissonAlgebra jacobian_truncated(std::size_t n, std::uint32_t p, const Guards& guards) {
  return jacobian_from_derivations(truncated_polynomial_algebra(n, p, guards).partials);
}

NLieAlgebra w_truncated(std::size_t n, std::uint32_t p, const Guards& guards) {
  if (n < 2) throw Error("W bracket needs arity n >= 2");
  return w_from_derivations(truncated_polynomial_algebra(n - 1, p, guards).partials, n);
}

std::pair<SymProductTensor, SkewBracketTensor> w_truncated_with_product(std::size_t n, std::uint32_t p,
                                                                        const Guards& guards) {
  if (n < 2) throw Error("W bracket needs arity n >= 2");
  const auto tp = truncated_polynomial_algebra(n - 1, p, guards);
  return {tp.partials.product(), w_from_derivations(tp.partials, n).bracket()};
}

NLieAlgebra zero_algebra(FieldSpec field, std::size_t dim, std::size_t arity) {
  return NLieAlgebra(SkewBracketTensor(field, dim, arity));
}

}  // namespace nlie
