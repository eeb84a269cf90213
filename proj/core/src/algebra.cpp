#include "nlie/algebra.hpp"

#include <array>

#include "nlie/error.hpp"

namespace nlie {

NLieAlgebra::NLieAlgebra(SkewBracketTensor bracket, std::vector<std::string> basis_names)
    : bracket_(std::move(bracket)), names_(std::move(basis_names)) {
  if (!names_.empty() && names_.size() != bracket_.dim()) throw Error("basis_names must name every basis vector");
}

std::string NLieAlgebra::basis_name(std::size_t i) const {
  if (i < names_.size()) return names_[i];
  return "e" + std::to_string(i);
}

NLiePoissonAlgebra::NLiePoissonAlgebra(SymProductTensor product, Vector unit, SkewBracketTensor bracket,
                                       std::vector<std::string> basis_names)
    : product_(std::move(product)), unit_(std::move(unit)), lie_(std::move(bracket), std::move(basis_names)) {
  if (product_.dim() != lie_.dim() || product_.field() != lie_.field()) {
    throw MismatchError("product and bracket live on different carriers");
  }
  if (unit_.size() != dim()) throw MismatchError("unit has the wrong length");
  for (std::size_t i = 0; i < dim(); ++i) {
    const Vector e = unit_vector(field(), dim(), i);
    if (product_eval(product_, unit_, e) != e) {
      throw PreconditionError("unit is not an identity for the product (fails on " + lie_.basis_name(i) + ")");
    }
  }
}

std::vector<SparseVector> basis_ad_columns(const SkewBracketTensor& t, const MultiIndex& tail) {
  const std::size_t n = t.arity();
  std::array<std::size_t, kMaxArity> raw{};
  for (std::size_t k = 0; k < tail.size(); ++k) raw[k + 1] = tail[k];
  std::vector<SparseVector> cols(t.dim());
  for (std::size_t i = 0; i < t.dim(); ++i) {
    raw[0] = i;
    int sign = 0;
    const Vector* v = t.lookup(std::span<const std::size_t>(raw.data(), n), sign);
    if (v == nullptr) continue;
    for (std::size_t r = 0; r < v->size(); ++r) {
      if (!(*v)[r].is_zero()) cols[i].emplace_back(r, sign > 0 ? (*v)[r] : -(*v)[r]);
    }
  }
  return cols;
}

namespace {

void add_scaled(Vector& out, const Scalar& c, const SparseVector& v) {
  for (const auto& [r, a] : v) out[r].add_product(c, a);
}

void add_scaled_dense(Vector& out, const Scalar& c, const Vector* v) {
  if (v != nullptr) axpy(out, c, *v);
}

/// omega(v, w, rest...) for arbitrary v, w and basis indices rest.
Vector bracket_two_free(const SkewBracketTensor& t, const SparseVector& v, const SparseVector& w,
                        const MultiIndex& rest) {
  Vector out = zero_vector(t.field(), t.dim());
  std::array<std::size_t, kMaxArity> raw{};
  for (std::size_t k = 0; k < rest.size(); ++k) raw[k + 2] = rest[k];
  for (const auto& [i, ci] : v) {
    for (const auto& [j, cj] : w) {
      raw[0] = i;
      raw[1] = j;
      int sign = 0;
      const Vector* val = t.lookup(std::span<const std::size_t>(raw.data(), t.arity()), sign);
      if (val == nullptr) continue;
      const Scalar c = ci * cj;
      axpy(out, sign > 0 ? c : -c, *val);
    }
  }
  return out;
}

}  // namespace

Verdict check_generalized_jacobi(const SkewBracketTensor& t, const Guards& guards) {
  Verdict verdict{"generalized_jacobi", true, 0, std::nullopt};
  const std::size_t n = t.arity();
  const std::size_t d = t.dim();
  const std::uint64_t count = saturating_mul(binomial(d, n), binomial(d, n - 1));
  enforce_guard(count, guards.max_instances, "generalized Jacobi check");

  const auto tails = increasing_tuples(d, n - 1);
  std::vector<std::vector<SparseVector>> ad;
  ad.reserve(tails.size());
  for (const auto& y : tails) ad.push_back(basis_ad_columns(t, y));

  std::array<std::size_t, kMaxArity> raw{};
  for_each_increasing(d, n, [&](const MultiIndex& x) {
    const Vector* inner = t.find(x);
    const SparseVector v = inner ? to_sparse(*inner) : SparseVector{};
    for (std::size_t y = 0; y < tails.size(); ++y) {
      ++verdict.instances;
      Vector lhs = zero_vector(t.field(), d);
      for (const auto& [i, c] : v) add_scaled(lhs, c, ad[y][i]);
      Vector rhs = zero_vector(t.field(), d);
      for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t k = 0; k < n; ++k) raw[k] = x[k];
        for (const auto& [j, c] : ad[y][x[s]]) {
          raw[s] = j;
          int sign = 0;
          const Vector* val = t.lookup(std::span<const std::size_t>(raw.data(), n), sign);
          if (val != nullptr) axpy(rhs, sign > 0 ? c : -c, *val);
        }
      }
      if (lhs != rhs) {
        verdict.pass = false;
        verdict.witness = Witness{{{"x", x}, {"y", tails[y]}}, std::move(lhs), std::move(rhs)};
        return false;
      }
    }
    return true;
  });
  return verdict;
}

Verdict check_assoc_comm_unital(const SymProductTensor& p, const std::optional<Vector>& unit, const Guards& guards) {
  Verdict verdict{"assoc_comm_unital", true, 0, std::nullopt};
  const std::size_t d = p.dim();
  const FieldSpec f = p.field();
  enforce_guard(saturating_pow(d, 3), guards.max_instances, "associativity check");
  std::vector<std::vector<SparseVector>> prod(d, std::vector<SparseVector>(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (const Vector* v = p.find(i, j)) prod[i][j] = to_sparse(*v);
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) {
        ++verdict.instances;
        Vector lhs = zero_vector(f, d);
        for (const auto& [r, c] : prod[i][j]) add_scaled(lhs, c, prod[r][k]);
        Vector rhs = zero_vector(f, d);
        for (const auto& [r, c] : prod[j][k]) add_scaled(rhs, c, prod[i][r]);
        if (lhs != rhs) {
          verdict.pass = false;
          verdict.witness = Witness{{{"triple", {i, j, k}}}, std::move(lhs), std::move(rhs)};
          return verdict;
        }
      }
    }
  }
  if (!unit) {
    verdict.pass = false;
    verdict.witness = Witness{{{"unit", {}}}, {}, {}};
    return verdict;
  }
  if (unit->size() != d) throw MismatchError("unit has the wrong length");
  for (std::size_t i = 0; i < d; ++i) {
    ++verdict.instances;
    const Vector e = unit_vector(f, d, i);
    Vector lhs = product_eval(p, *unit, e);
    if (lhs != e) {
      verdict.pass = false;
      verdict.witness = Witness{{{"unit", {i}}}, std::move(lhs), e};
      return verdict;
    }
  }
  return verdict;
}

Verdict check_leibniz(const SymProductTensor& p, const SkewBracketTensor& t, const Guards& guards) {
  if (p.dim() != t.dim() || p.field() != t.field()) throw MismatchError("product and bracket carriers differ");
  Verdict verdict{"leibniz", true, 0, std::nullopt};
  const std::size_t d = t.dim();
  const FieldSpec f = t.field();
  const std::uint64_t count = saturating_mul(binomial(d + 1, 2), binomial(d, t.arity() - 1));
  enforce_guard(count, guards.max_instances, "Leibniz check");

  const auto tails = increasing_tuples(d, t.arity() - 1);
  std::vector<std::vector<SparseVector>> ad;
  ad.reserve(tails.size());
  for (const auto& k : tails) ad.push_back(basis_ad_columns(t, k));

  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      const Vector* ij = p.find(i, j);
      const SparseVector prod = ij ? to_sparse(*ij) : SparseVector{};
      for (std::size_t k = 0; k < tails.size(); ++k) {
        ++verdict.instances;
        Vector lhs = zero_vector(f, d);
        for (const auto& [r, c] : prod) add_scaled(lhs, c, ad[k][r]);
        Vector rhs = zero_vector(f, d);
        for (const auto& [r, c] : ad[k][j]) add_scaled_dense(rhs, c, p.find(i, r));
        for (const auto& [r, c] : ad[k][i]) add_scaled_dense(rhs, c, p.find(r, j));
        if (lhs != rhs) {
          verdict.pass = false;
          verdict.witness = Witness{{{"a", {i}}, {"b", {j}}, {"u", tails[k]}}, std::move(lhs), std::move(rhs)};
          return verdict;
        }
      }
    }
  }
  return verdict;
}

Verdict check_leibniz(const NLiePoissonAlgebra& a, const Guards& guards) {
  return check_leibniz(a.product(), a.bracket(), guards);
}

Verdict check_poisson_identity(const SymProductTensor& p, const SkewBracketTensor& t, const Guards& guards) {
  if (p.dim() != t.dim() || p.field() != t.field()) throw MismatchError("product and bracket carriers differ");
  Verdict verdict{"poisson_identity", true, 0, std::nullopt};
  const std::size_t n = t.arity();
  if (n < 2) return verdict;
  const std::size_t d = t.dim();
  const std::uint64_t count = saturating_mul(saturating_mul(binomial(d + 1, 2), d), binomial(d, n - 2));
  enforce_guard(count, guards.max_instances, "Poisson identity check");

  const auto rests = increasing_tuples(d, n - 2);
  auto single = [&](std::size_t i) { return SparseVector{{i, Scalar::one(t.field())}}; };
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a; b < d; ++b) {
      const Vector* ab_ptr = p.find(a, b);
      const SparseVector ab = ab_ptr ? to_sparse(*ab_ptr) : SparseVector{};
      for (std::size_t c = 0; c < d; ++c) {
        const Vector* bc_ptr = p.find(b, c);
        const Vector* ac_ptr = p.find(a, c);
        const SparseVector bc = bc_ptr ? to_sparse(*bc_ptr) : SparseVector{};
        const SparseVector ac = ac_ptr ? to_sparse(*ac_ptr) : SparseVector{};
        for (const auto& rest : rests) {
          ++verdict.instances;
          Vector lhs = bracket_two_free(t, ab, single(c), rest);
          Vector rhs = bracket_two_free(t, single(a), bc, rest) + bracket_two_free(t, single(b), ac, rest);
          if (lhs != rhs) {
            verdict.pass = false;
            verdict.witness =
                Witness{{{"a", {a}}, {"b", {b}}, {"c", {c}}, {"u", rest}}, std::move(lhs), std::move(rhs)};
            return verdict;
          }
        }
      }
    }
  }
  return verdict;
}

Verdict check_poisson_identity(const NLiePoissonAlgebra& a, const Guards& guards) {
  return check_poisson_identity(a.product(), a.bracket(), guards);
}

}  // namespace nlie
