#include "nlie/lemmas.hpp"

#include "nlie/error.hpp"
#include "nlie/structure.hpp"

namespace nlie {

std::string to_string(Lemma l) {
  switch (l) {
    case Lemma::L1:
      return "L1";
    case Lemma::L2:
      return "L2";
    case Lemma::L3:
      return "L3";
    case Lemma::L5:
      return "L5";
    case Lemma::L6_0:
      return "L6_0";
    case Lemma::L6:
      return "L6";
    case Lemma::L7:
      return "L7";
    case Lemma::L8:
      return "L8";
  }
  return "?";
}

const std::vector<Lemma>& all_lemmas() {
  static const std::vector<Lemma> all{Lemma::L1, Lemma::L2, Lemma::L3, Lemma::L5,
                                      Lemma::L6_0, Lemma::L6, Lemma::L7, Lemma::L8};
  return all;
}

Lemma parse_lemma(const std::string& label) {
  std::string norm = label;
  for (auto& c : norm) {
    if (c == '.') c = '_';
    if (c == 'l') c = 'L';
  }
  for (auto l : all_lemmas()) {
    if (to_string(l) == norm) return l;
  }
  throw Error("unknown lemma '" + label + "' (expected L1, L2, L3, L5, L6_0, L6, L7 or L8)");
}

std::string lemma_statement(Lemma l) {
  switch (l) {
    case Lemma::L1:
      return "(A, ., omega) simple => A has no nonzero nilpotent elements";
    case Lemma::L2:
      return "U ideal of A1 => omega(id_A(U^[3]), A, ..., A) in U";
    case Lemma::L3:
      return "(A, ., omega) simple, I nonzero associative ideal, omega(I, A1, ..., A1) in I => I = A";
    case Lemma::L5:
      return "(A, ., omega) simple, ad(a_2, ..., a_n)^m = 0 => ad(a_2, ..., a_n) = 0";
    case Lemma::L6_0:
      return "U abelian ideal of A1 => omega(A, A1, ..., A1, U) = 0";
    case Lemma::L6:
      return "U abelian ideal of A1 => omega(A, ..., A, U) = 0";
    case Lemma::L7:
      return "U ideal of A1, U^[3] = 0 => omega(A, ..., A, U^[1]) = 0";
    case Lemma::L8:
      return "U ideal of A1, U^[3] = 0 => omega(A, ..., A, U) = 0";
  }
  return "";
}

namespace {

bool needs_product(Lemma l) { return l == Lemma::L1 || l == Lemma::L2 || l == Lemma::L3; }

/// Least m >= 1 with v^m = 0, or 0 when v is not nilpotent.
unsigned element_nilpotency(const SymProductTensor& product, const Vector& v) {
  Vector power = v;
  for (unsigned m = 1; m <= product.dim() + 1; ++m) {
    if (is_zero(power)) return m;
    power = product_eval(product, power, v);
  }
  return 0;
}

/// Least m >= 1 with M^m = 0, or 0 when M is not nilpotent.
unsigned matrix_nilpotency(const Matrix& m) {
  Matrix power = m;
  for (unsigned k = 1; k <= m.rows(); ++k) {
    if (power.is_zero()) return k;
    power = power * m;
  }
  return power.is_zero() ? static_cast<unsigned>(m.rows()) + 1 : 0;
}

}  // namespace

ProbeReport probe_lemma(const SkewBracketTensor& bracket, const SymProductTensor* product, const Vector* unit,
                        Lemma which, const ProbeInput& input) {
  if (needs_product(which) && (product == nullptr || unit == nullptr)) {
    throw PreconditionError(to_string(which) + " needs the product and the unit");
  }
  const NLieAlgebra alg(bracket);
  const FieldSpec f = alg.field();
  const std::size_t d = alg.dim();
  const std::size_t n = alg.arity();
  const SubspaceBasis whole = SubspaceBasis::full(f, d);
  const SubspaceBasis a1 = derived_subspace(alg, whole);

  ProbeReport r;
  r.lemma = which;
  r.statement = lemma_statement(which);
  r.outside_char0 = !f.is_rational();
  r.algebra_simplicity = product != nullptr ? is_simple(bracket, product, IdealKind::Poisson, input.simplicity).kind
                                            : is_simple(bracket, nullptr, IdealKind::NLie, input.simplicity).kind;
  const bool simple = r.algebra_simplicity == SimplicityKind::Simple;

  // omega(first, middle, ..., middle, last) with n - 2 middle slots.
  auto sandwich = [&](const SubspaceBasis& first, const SubspaceBasis& middle, const SubspaceBasis& last) {
    if (n < 2) throw PreconditionError(to_string(which) + " needs arity n >= 2");
    std::vector<SubspaceBasis> slots(n, middle);
    slots.front() = first;
    slots.back() = last;
    return bracket_span(alg, slots);
  };
  auto check_space = [&](const SubspaceBasis& s) {
    if (s.ambient_dim() != d || s.field() != f) throw MismatchError("subspace lives in a different space");
  };
  auto ideal_of_a1 = [&]() {
    SubspaceBasis u = input.subspace ? *input.subspace : intersect(a1, center(alg));
    if (!input.subspace) r.notes.push_back("U defaults to A1 cap Z");
    check_space(u);
    if (!u.contains(sandwich(u, a1, a1))) {
      throw PreconditionError("U is not stable under omega(U, A1, ..., A1)");
    }
    r.contained_in_derived = a1.contains(u);
    return u;
  };
  auto conclude_zero = [&](const SubspaceBasis& values) {
    r.conclusion_holds = values.is_zero();
    if (!r.conclusion_holds) r.witness = values;
  };

  switch (which) {
    case Lemma::L1: {
      r.hypotheses_hold = simple;
      const auto nil = nilradical(*product, *unit);
      r.conclusion_holds = nil.is_zero();
      if (!r.conclusion_holds) {
        const Vector& v = nil.rows().front();
        r.witness = SubspaceBasis::span(f, d, {v});
        r.nilpotency_index = element_nilpotency(*product, v);
        r.notes.push_back("nilradical has dimension " + std::to_string(nil.dim()));
      }
      break;
    }
    case Lemma::L2: {
      const auto u = ideal_of_a1();
      r.hypotheses_hold = true;
      const auto series = derived_series(alg, u);
      const SubspaceBasis& u3 = series[std::min<std::size_t>(3, series.size() - 1)];
      const auto i = ideal_closure(alg, u3, IdealKind::Associative, product);
      std::vector<SubspaceBasis> slots(n, whole);
      slots.front() = i;
      const auto values = bracket_span(alg, slots);
      r.conclusion_holds = u.contains(values);
      if (!r.conclusion_holds) r.witness = values;
      break;
    }
    case Lemma::L3: {
      SubspaceBasis i = input.subspace ? *input.subspace : ideal_closure(alg, a1, IdealKind::Associative, product);
      if (!input.subspace) r.notes.push_back("I defaults to id_A(A1)");
      check_space(i);
      std::vector<SubspaceBasis> slots(n, a1);
      slots.front() = i;
      if (!i.contains(bracket_span(alg, slots))) {
        throw PreconditionError("I does not satisfy omega(I, A1, ..., A1) in I");
      }
      const auto mult = ideal_generators(bracket, product, IdealKind::Associative);
      r.hypotheses_hold = simple && !i.is_zero() && is_stable(mult, i);
      r.conclusion_holds = i.is_full();
      if (!r.conclusion_holds) r.witness = i;
      break;
    }
    case Lemma::L5: {
      r.hypotheses_hold = simple;
      r.conclusion_holds = true;
      for_each_increasing(d, n - 1, [&](const MultiIndex& tail) {
        const auto cols = basis_ad_columns(bracket, tail);
        Matrix ad(f, d, d);
        for (std::size_t c = 0; c < d; ++c) {
          for (const auto& [row, value] : cols[c]) ad(row, c) = value;
        }
        if (ad.is_zero()) return true;
        const unsigned m = matrix_nilpotency(ad);
        if (m == 0) return true;
        r.conclusion_holds = false;
        r.ad_tail = tail;
        r.nilpotency_index = m;
        std::vector<Vector> tail_vectors;
        for (auto k : tail) tail_vectors.push_back(unit_vector(f, d, k));
        r.witness = SubspaceBasis::span(f, d, tail_vectors);
        return false;
      });
      break;
    }
    case Lemma::L6_0: {
      const auto u = ideal_of_a1();
      r.hypotheses_hold = derived_subspace(alg, u).is_zero();
      conclude_zero(sandwich(whole, a1, u));
      break;
    }
    case Lemma::L6: {
      const auto u = ideal_of_a1();
      r.hypotheses_hold = derived_subspace(alg, u).is_zero();
      conclude_zero(sandwich(whole, whole, u));
      break;
    }
    case Lemma::L7:
    case Lemma::L8: {
      const auto u = ideal_of_a1();
      const auto series = derived_series(alg, u);
      const SubspaceBasis& u3 = series[std::min<std::size_t>(3, series.size() - 1)];
      r.hypotheses_hold = u3.is_zero();
      const SubspaceBasis& last = which == Lemma::L7 ? series[std::min<std::size_t>(1, series.size() - 1)] : u;
      conclude_zero(sandwich(whole, whole, last));
      break;
    }
  }
  return r;
}

ProbeReport probe_lemma(const NLiePoissonAlgebra& alg, Lemma which, const ProbeInput& input) {
  return probe_lemma(alg.bracket(), &alg.product(), &alg.unit(), which, input);
}

ProbeReport probe_lemma(const NLieAlgebra& alg, Lemma which, const ProbeInput& input) {
  return probe_lemma(alg.bracket(), nullptr, nullptr, which, input);
}

}  // namespace nlie
