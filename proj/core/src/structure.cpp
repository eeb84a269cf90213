#include "nlie/structure.hpp"

#include <deque>

#include "nlie/error.hpp"

namespace nlie {

std::string to_string(IdealKind kind) {
  switch (kind) {
    case IdealKind::NLie:
      return "nlie";
    case IdealKind::Associative:
      return "associative";
    case IdealKind::Poisson:
      return "poisson";
  }
  return "?";
}

Matrix ad_operator(const NLieAlgebra& alg, std::span<const Vector> tail) {
  const std::size_t d = alg.dim();
  if (tail.size() + 1 != alg.arity()) throw MismatchError("ad_operator: expected arity - 1 arguments");
  for (const auto& a : tail) {
    if (a.size() != d) throw MismatchError("ad_operator: argument has the wrong dimension");
  }
  std::vector<Vector> args(alg.arity());
  std::copy(tail.begin(), tail.end(), args.begin() + 1);
  std::vector<Vector> cols;
  cols.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    args[0] = unit_vector(alg.field(), d, i);
    cols.push_back(bracket_eval(alg.bracket(), args));
  }
  return Matrix::from_columns(alg.field(), d, cols);
}

SubspaceBasis bracket_span(const NLieAlgebra& alg, std::span<const SubspaceBasis> slots, const Guards& guards) {
  const std::size_t n = alg.arity();
  if (slots.size() != n) throw MismatchError("bracket_span: expected one subspace per argument");
  std::uint64_t count = 1;
  for (const auto& s : slots) {
    if (s.ambient_dim() != alg.dim() || s.field() != alg.field()) {
      throw MismatchError("bracket_span: subspace lives in a different space");
    }
    count = saturating_mul(count, s.dim());
  }
  SubspaceBuilder out(alg.field(), alg.dim());
  if (count == 0) return out.build();
  enforce_guard(count, guards.max_instances, "bracket span");

  std::vector<std::size_t> pos(n, 0);
  std::vector<Vector> args(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) args[i] = slots[i].rows()[pos[i]];
    out.insert(bracket_eval(alg.bracket(), args));
    if (out.dim() == alg.dim()) break;
    std::size_t i = n;
    while (i > 0 && pos[i - 1] + 1 == slots[i - 1].dim()) pos[--i] = 0;
    if (i == 0) break;
    ++pos[i - 1];
  }
  return out.build();
}

SubspaceBasis derived_subspace(const NLieAlgebra& alg, const SubspaceBasis& s, const Guards& guards) {
  if (s.ambient_dim() != alg.dim() || s.field() != alg.field()) {
    throw MismatchError("derived_subspace: subspace lives in a different space");
  }
  enforce_guard(binomial(s.dim(), alg.arity()), guards.max_instances, "derived subspace");
  SubspaceBuilder out(alg.field(), alg.dim());
  std::vector<Vector> args(alg.arity());
  for_each_increasing(s.dim(), alg.arity(), [&](const MultiIndex& idx) {
    for (std::size_t i = 0; i < idx.size(); ++i) args[i] = s.rows()[idx[i]];
    out.insert(bracket_eval(alg.bracket(), args));
    return out.dim() < alg.dim();
  });
  return out.build();
}

std::vector<SubspaceBasis> derived_series(const NLieAlgebra& alg, const SubspaceBasis& s, const Guards& guards) {
  std::vector<SubspaceBasis> series{s};
  while (true) {
    SubspaceBasis next = derived_subspace(alg, series.back(), guards);
    if (next == series.back()) return series;
    series.push_back(std::move(next));
  }
}

SubspaceBasis center(const NLieAlgebra& alg) {
  const std::size_t d = alg.dim();
  const FieldSpec f = alg.field();
  // Rows of every stacked ad_K, reduced incrementally to at most d rows.
  SubspaceBuilder rows(f, d);
  for_each_increasing(d, alg.arity() - 1, [&](const MultiIndex& tail) {
    const auto cols = basis_ad_columns(alg.bracket(), tail);
    std::vector<Vector> block(d, zero_vector(f, d));
    std::vector<bool> used(d, false);
    for (std::size_t c = 0; c < d; ++c) {
      for (const auto& [r, value] : cols[c]) {
        block[r][c] = value;
        used[r] = true;
      }
    }
    for (std::size_t r = 0; r < d; ++r) {
      if (used[r]) rows.insert(std::move(block[r]));
    }
    return rows.dim() < d;
  });
  if (rows.dim() == 0) return SubspaceBasis::full(f, d);
  return kernel(rows.current().as_matrix());
}

std::vector<Matrix> ideal_generators(const SkewBracketTensor& bracket, const SymProductTensor* product, IdealKind kind) {
  const std::size_t d = bracket.dim();
  const FieldSpec f = bracket.field();
  std::vector<Matrix> out;
  if (kind != IdealKind::NLie) {
    if (product == nullptr) throw PreconditionError("associative and Poisson ideals need the product");
    if (product->dim() != d || product->field() != f) throw MismatchError("product and bracket live in different spaces");
    for (std::size_t i = 0; i < d; ++i) {
      Matrix m = multiplication_operator(*product, unit_vector(f, d, i));
      if (!m.is_zero()) out.push_back(std::move(m));
    }
  }
  if (kind != IdealKind::Associative) {
    for_each_increasing(d, bracket.arity() - 1, [&](const MultiIndex& tail) {
      const auto cols = basis_ad_columns(bracket, tail);
      Matrix m(f, d, d);
      bool nonzero = false;
      for (std::size_t c = 0; c < d; ++c) {
        for (const auto& [r, value] : cols[c]) {
          m(r, c) = value;
          nonzero = true;
        }
      }
      if (nonzero) out.push_back(std::move(m));
      return true;
    });
  }
  return out;
}

SubspaceBasis closure_under(std::span<const Matrix> maps, const SubspaceBasis& s) {
  SubspaceBuilder builder(s);
  std::deque<Vector> work(s.rows().begin(), s.rows().end());
  while (!work.empty() && builder.dim() < s.ambient_dim()) {
    const Vector v = std::move(work.front());
    work.pop_front();
    for (const auto& m : maps) {
      Vector w = m.apply(v);
      if (builder.insert(w)) work.push_back(std::move(w));
    }
  }
  return builder.build();
}

bool is_stable(std::span<const Matrix> maps, const SubspaceBasis& s) {
  for (const auto& v : s.rows()) {
    for (const auto& m : maps) {
      if (!s.contains(m.apply(v))) return false;
    }
  }
  return true;
}

SubspaceBasis ideal_closure(const NLieAlgebra& alg, const SubspaceBasis& s, IdealKind kind,
                            const SymProductTensor* product) {
  if (s.ambient_dim() != alg.dim() || s.field() != alg.field()) {
    throw MismatchError("ideal_closure: subspace lives in a different space");
  }
  const auto gens = ideal_generators(alg.bracket(), product, kind);
  return closure_under(gens, s);
}

SubspaceBasis ideal_closure(const NLiePoissonAlgebra& alg, const SubspaceBasis& s, IdealKind kind) {
  return ideal_closure(alg.lie(), s, kind, &alg.product());
}

bool is_ideal(const NLieAlgebra& alg, const SubspaceBasis& s) {
  const auto gens = ideal_generators(alg.bracket(), nullptr, IdealKind::NLie);
  return is_stable(gens, s);
}

namespace {

void check_unit(const SymProductTensor& product, const Vector& unit) {
  if (unit.size() != product.dim()) throw MismatchError("unit has the wrong dimension");
  for (std::size_t i = 0; i < product.dim(); ++i) {
    if (product_eval(product, unit, unit_vector(product.field(), product.dim(), i)) !=
        unit_vector(product.field(), product.dim(), i)) {
      throw PreconditionError("unit is not an identity for the product");
    }
  }
}

Vector power(const SymProductTensor& product, const Vector& unit, const Vector& v, std::uint64_t k) {
  Vector result = unit;
  Vector base = v;
  while (k > 0) {
    if (k & 1U) result = product_eval(product, result, base);
    k >>= 1U;
    if (k > 0) base = product_eval(product, base, base);
  }
  return result;
}

}  // namespace

SubspaceBasis nilradical(const SymProductTensor& product, const Vector& unit) {
  check_unit(product, unit);
  const std::size_t d = product.dim();
  const FieldSpec f = product.field();
  if (d == 0) return SubspaceBasis(f, 0);

  if (f.is_rational()) {
    std::vector<Scalar> traces;
    for (std::size_t k = 0; k < d; ++k) {
      Scalar t = Scalar::zero(f);
      for (std::size_t j = 0; j < d; ++j) {
        if (const Vector* v = product.find(k, j)) t += (*v)[j];
      }
      traces.push_back(t);
    }
    Matrix gram(f, d, d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        const Vector* v = product.find(i, j);
        if (v == nullptr) continue;
        Scalar acc = Scalar::zero(f);
        for (std::size_t k = 0; k < d; ++k) acc.add_product((*v)[k], traces[k]);
        gram(i, j) = acc;
      }
    }
    return kernel(gram);
  }

  const std::uint64_t p = f.characteristic();
  std::vector<Vector> cols;
  for (std::size_t i = 0; i < d; ++i) cols.push_back(power(product, unit, unit_vector(f, d, i), p));
  const Matrix frobenius = Matrix::from_columns(f, d, cols);
  unsigned m = 1;
  for (std::uint64_t reach = p; reach < d; reach = saturating_mul(reach, p)) ++m;
  return kernel(frobenius.pow(m));
}

SubspaceBasis radical_of_ideal(const SymProductTensor& product, const Vector& unit, const SubspaceBasis& ideal) {
  check_unit(product, unit);
  const std::size_t d = product.dim();
  const FieldSpec f = product.field();
  if (ideal.ambient_dim() != d || ideal.field() != f) throw MismatchError("ideal lives in a different space");
  std::vector<Matrix> mult;
  for (std::size_t i = 0; i < d; ++i) mult.push_back(multiplication_operator(product, unit_vector(f, d, i)));
  if (!is_stable(mult, ideal)) throw PreconditionError("not an associative ideal");

  const QuotientMap q(SubspaceBasis::full(f, d), ideal);
  const auto& reps = q.representatives();
  SymProductTensor qprod(f, q.dim());
  for (std::size_t i = 0; i < q.dim(); ++i) {
    for (std::size_t j = i; j < q.dim(); ++j) {
      qprod.set(i, j, q.project(product_eval(product, reps[i], reps[j])));
    }
  }
  const SubspaceBasis nil = nilradical(qprod, q.project(unit));
  std::vector<Vector> gens = ideal.rows();
  for (const auto& row : nil.rows()) gens.push_back(q.lift(row));
  return SubspaceBasis::span(f, d, gens);
}

NLieAlgebra restrict_algebra(const NLieAlgebra& alg, const SubspaceBasis& s) {
  const std::size_t k = s.dim();
  SkewBracketTensor t(alg.field(), k, alg.arity());
  std::vector<Vector> args(alg.arity());
  for_each_increasing(k, alg.arity(), [&](const MultiIndex& idx) {
    for (std::size_t i = 0; i < idx.size(); ++i) args[i] = s.rows()[idx[i]];
    const Vector v = bracket_eval(alg.bracket(), args);
    if (!s.contains(v)) throw PreconditionError("subspace is not closed under the bracket");
    Vector coords(k, Scalar::zero(alg.field()));
    for (std::size_t i = 0; i < k; ++i) coords[i] = v[s.pivots()[i]];
    if (!is_zero(coords)) t.set(idx, coords);
    return true;
  });
  return NLieAlgebra(std::move(t));
}

QuotientAlgebra subquotient(const NLieAlgebra& alg, const SubspaceBasis& whole, const SubspaceBasis& sub) {
  if (!whole.contains(sub)) throw PreconditionError("the ideal is not inside the subalgebra");
  if (!whole.contains(derived_subspace(alg, whole))) throw PreconditionError("subspace is not closed under the bracket");
  std::vector<SubspaceBasis> slots(alg.arity(), whole);
  slots[0] = sub;
  if (!sub.contains(bracket_span(alg, slots))) throw PreconditionError("not an ideal");

  QuotientMap map(whole, sub);
  const auto& reps = map.representatives();
  SkewBracketTensor t(alg.field(), map.dim(), alg.arity());
  std::vector<Vector> args(alg.arity());
  for_each_increasing(map.dim(), alg.arity(), [&](const MultiIndex& idx) {
    for (std::size_t i = 0; i < idx.size(); ++i) args[i] = reps[idx[i]];
    const Vector coords = map.project(bracket_eval(alg.bracket(), args));
    if (!is_zero(coords)) t.set(idx, coords);
    return true;
  });
  return QuotientAlgebra{NLieAlgebra(std::move(t)), std::move(map)};
}

QuotientAlgebra quotient_algebra(const NLieAlgebra& alg, const SubspaceBasis& ideal) {
  if (ideal.ambient_dim() != alg.dim() || ideal.field() != alg.field()) {
    throw MismatchError("ideal lives in a different space");
  }
  if (!is_ideal(alg, ideal)) throw PreconditionError("not an ideal");
  return subquotient(alg, SubspaceBasis::full(alg.field(), alg.dim()), ideal);
}

std::uint64_t gaussian_binomial(std::uint64_t p, std::size_t d, std::size_t k) {
  if (k > d) return 0;
  // Row r holds [r choose j]_p for j <= k.
  std::vector<std::uint64_t> row(k + 1, 0);
  row[0] = 1;
  for (std::size_t r = 1; r <= d; ++r) {
    for (std::size_t j = std::min(r, k); j >= 1; --j) {
      const std::uint64_t a = row[j - 1];
      const std::uint64_t b = saturating_mul(saturating_pow(p, j), row[j]);
      row[j] = a > UINT64_MAX - b ? UINT64_MAX : a + b;
    }
  }
  return row[k];
}

void for_each_subspace(FieldSpec field, std::size_t d, std::size_t k,
                       const std::function<bool(const SubspaceBasis&)>& f) {
  if (field.is_rational()) throw PreconditionError("subspace enumeration needs a finite field");
  const std::uint32_t p = field.characteristic();
  for_each_increasing(d, k, [&](const MultiIndex& pivots) {
    // Free positions: right of the row's pivot, outside the pivot columns.
    std::vector<std::pair<std::size_t, std::size_t>> free;
    std::vector<bool> is_pivot(d, false);
    for (auto c : pivots) is_pivot[c] = true;
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = pivots[r] + 1; c < d; ++c) {
        if (!is_pivot[c]) free.emplace_back(r, c);
      }
    }
    std::vector<std::uint32_t> digits(free.size(), 0);
    while (true) {
      std::vector<Vector> rows(k, zero_vector(field, d));
      for (std::size_t r = 0; r < k; ++r) rows[r][pivots[r]] = Scalar::one(field);
      for (std::size_t i = 0; i < free.size(); ++i) {
        rows[free[i].first][free[i].second] = Scalar(field, static_cast<long>(digits[i]));
      }
      if (!f(SubspaceBasis::span(field, d, rows))) {
        return false;
      }
      std::size_t i = free.size();
      while (i > 0 && digits[i - 1] + 1 == p) digits[--i] = 0;
      if (i == 0) break;
      ++digits[i - 1];
    }
    return true;
  });
}

std::vector<SubspaceBasis> brute_force_ideals(const NLieAlgebra& alg, const Guards& guards) {
  const FieldSpec f = alg.field();
  if (f.is_rational()) throw PreconditionError("brute-force ideal enumeration needs a finite field");
  const std::size_t d = alg.dim();
  std::uint64_t total = 0;
  for (std::size_t k = 0; k <= d; ++k) {
    const std::uint64_t g = gaussian_binomial(f.characteristic(), d, k);
    total = total > UINT64_MAX - g ? UINT64_MAX : total + g;
  }
  enforce_guard(total, guards.max_subspaces, "brute-force subspace enumeration");

  const auto gens = ideal_generators(alg.bracket(), nullptr, IdealKind::NLie);
  std::vector<SubspaceBasis> out;
  for (std::size_t k = 0; k <= d; ++k) {
    for_each_subspace(f, d, k, [&](const SubspaceBasis& s) {
      if (is_stable(gens, s)) out.push_back(s);
      return true;
    });
  }
  return out;
}

}  // namespace nlie
