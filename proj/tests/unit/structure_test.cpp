#include <set>

#include <gtest/gtest.h>

#include "../support/oracles.hpp"
#include "nlie/constructions.hpp"
#include "nlie/error.hpp"
#include "nlie/structure.hpp"

using namespace nlie;

namespace {

const FieldSpec Q = FieldSpec::rationals();
const FieldSpec F3 = FieldSpec::prime(3);

Vector e(FieldSpec f, std::size_t d, std::size_t i) { return unit_vector(f, d, i); }

SubspaceBasis span_of(FieldSpec f, std::size_t d, std::initializer_list<std::size_t> idx) {
  std::vector<Vector> rows;
  for (auto i : idx) rows.push_back(e(f, d, i));
  return SubspaceBasis::span(f, d, rows);
}

/// Q[x]/(x^k) on the basis 1, x, ..., x^{k-1}.
SymProductTensor truncated_line(std::size_t k) {
  SymProductTensor p(Q, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      if (i + j < k) p.set(i, j, e(Q, k, i + j));
    }
  }
  return p;
}

/// Intersection of all brute-force ideals containing s.
SubspaceBasis smallest_ideal_containing(const std::vector<SubspaceBasis>& ideals, const SubspaceBasis& s) {
  SubspaceBasis out = SubspaceBasis::full(s.field(), s.ambient_dim());
  for (const auto& i : ideals) {
    if (i.contains(s)) out = intersect(out, i);
  }
  return out;
}

}  // namespace

TEST(AdOperator, CrossProductColumns) {
  const auto cross = vector_product_algebra(2);
  const std::vector<Vector> tail{e(Q, 3, 2)};
  const Matrix ad = ad_operator(cross, tail);
  EXPECT_EQ(ad.column(0), Scalar(Q, -1L) * e(Q, 3, 1));
  EXPECT_EQ(ad.column(1), e(Q, 3, 0));
  EXPECT_TRUE(is_zero(ad.column(2)));
  EXPECT_TRUE(ad_operator(zero_algebra(Q, 3, 2), tail).is_zero());
}

TEST(AdOperator, JacobianAdYIsPartialX) {
  const auto j = jacobian_truncated(2, 3);
  const std::vector<Vector> tail{e(F3, 9, 3)};
  const Matrix ad = ad_operator(j.lie(), tail);
  const auto tp = truncated_polynomial_algebra(2, 3);
  EXPECT_EQ(ad, tp.partials.maps()[0]);
  EXPECT_FALSE(ad.pow(2).is_zero());
  EXPECT_TRUE(ad.pow(3).is_zero());
}

TEST(AdOperator, IsADerivationOfTheProduct) {
  const auto j = jacobian_truncated(2, 3);
  for (const auto& tail_idx : increasing_tuples(9, 1)) {
    const std::vector<Vector> tail{e(F3, 9, tail_idx[0])};
    EXPECT_TRUE(check_derivation(j.product(), ad_operator(j.lie(), tail)).pass);
  }
}

TEST(AdOperator, IteratedLeibnizOnSquares) {
  const auto j = jacobian_truncated(2, 3);
  const auto tp = truncated_polynomial_algebra(2, 3);
  std::vector<Matrix> ds = tp.partials.maps();
  ds.push_back(ad_operator(j.lie(), std::vector<Vector>{e(F3, 9, 4)}));
  const Scalar two(F3, 2L);
  for (const auto& d : ds) {
    const Matrix d2 = d * d;
    for (std::size_t i = 0; i < 9; ++i) {
      const Vector b = e(F3, 9, i);
      const Vector lhs = d2.apply(product_eval(j.product(), b, b));
      const Vector db = d.apply(b);
      const Vector rhs = two * product_eval(j.product(), db, db) + two * product_eval(j.product(), b, d2.apply(b));
      EXPECT_EQ(lhs, rhs);
    }
  }
}

TEST(Derived, KnownValues) {
  const auto cross = vector_product_algebra(2);
  EXPECT_TRUE(derived_subspace(cross, SubspaceBasis::full(Q, 3)).is_full());
  const auto z = zero_algebra(Q, 3, 2);
  EXPECT_TRUE(derived_subspace(z, SubspaceBasis::full(Q, 3)).is_zero());

  const auto j = jacobian_truncated(2, 3).lie();
  const auto a1 = derived_subspace(j, SubspaceBasis::full(F3, 9));
  EXPECT_EQ(a1.dim(), 8U);
  EXPECT_FALSE(a1.contains(e(F3, 9, 8)));  // x^2 y^2
}

TEST(Derived, SeriesStopsAtFixpoint) {
  const auto cross = derived_series(vector_product_algebra(2), SubspaceBasis::full(Q, 3));
  ASSERT_EQ(cross.size(), 1U);
  const auto z = derived_series(zero_algebra(Q, 3, 2), SubspaceBasis::full(Q, 3));
  ASSERT_EQ(z.size(), 2U);
  EXPECT_TRUE(z[1].is_zero());
  const auto j = derived_series(jacobian_truncated(2, 3).lie(), SubspaceBasis::full(F3, 9));
  std::vector<std::size_t> dims;
  for (const auto& s : j) dims.push_back(s.dim());
  EXPECT_EQ(dims, (std::vector<std::size_t>{9, 8}));
  EXPECT_EQ(derived_subspace(jacobian_truncated(2, 3).lie(), j.back()), j.back());
}

TEST(Center, KnownValues) {
  EXPECT_TRUE(center(vector_product_algebra(2)).is_zero());
  EXPECT_TRUE(center(zero_algebra(Q, 3, 2)).is_full());
  EXPECT_EQ(center(jacobian_truncated(2, 3).lie()), span_of(F3, 9, {0}));
}

TEST(IdealClosure, KnownValues) {
  const auto cross = vector_product_algebra(2);
  EXPECT_TRUE(ideal_closure(cross, span_of(Q, 3, {0}), IdealKind::NLie).is_full());
  const auto j = jacobian_truncated(2, 3);
  EXPECT_TRUE(ideal_closure(j, span_of(F3, 9, {1}), IdealKind::Poisson).is_full());
  const auto s = span_of(Q, 3, {1});
  EXPECT_EQ(ideal_closure(zero_algebra(Q, 3, 2), s, IdealKind::NLie), s);
  EXPECT_THROW(ideal_closure(cross, s, IdealKind::Associative), Error);
}

TEST(IdealClosure, AssociativeIsOneMultiplicationStep) {
  const auto j = jacobian_truncated(2, 3);
  // id_A(x) = x*A: the monomials divisible by x.
  EXPECT_EQ(ideal_closure(j, span_of(F3, 9, {1}), IdealKind::Associative), span_of(F3, 9, {1, 2, 4, 5, 7, 8}));
}

TEST(IdealClosure, ClosedAndMinimalAgainstBruteForce) {
  for (const auto& entry : oracle::corpus()) {
    SCOPED_TRACE(entry.name);
    const auto& alg = entry.algebra;
    const auto ideals = brute_force_ideals(alg);
    const auto gens = ideal_generators(alg.bracket(), nullptr, IdealKind::NLie);
    for (std::size_t i = 0; i < alg.dim(); ++i) {
      const auto s = span_of(alg.field(), alg.dim(), {i});
      const auto c = ideal_closure(alg, s, IdealKind::NLie);
      EXPECT_TRUE(is_stable(gens, c));
      EXPECT_EQ(closure_under(gens, c), c);
      EXPECT_EQ(c, smallest_ideal_containing(ideals, s));
    }
  }
}

TEST(BruteForceIdeals, AgreeWithDirectDefinition) {
  for (const auto& entry : oracle::corpus()) {
    SCOPED_TRACE(entry.name);
    const auto& alg = entry.algebra;
    const oracle::DenseBracket dense(alg.bracket());
    const auto ideals = brute_force_ideals(alg);
    std::size_t expected = 0;
    for (std::size_t k = 0; k <= alg.dim(); ++k) {
      for_each_subspace(alg.field(), alg.dim(), k, [&](const SubspaceBasis& s) {
        if (oracle::is_ideal(dense, s)) ++expected;
        return true;
      });
    }
    EXPECT_EQ(ideals.size(), expected);
    for (const auto& i : ideals) {
      EXPECT_TRUE(oracle::is_ideal(dense, i));
      EXPECT_TRUE(is_ideal(alg, i));
    }
    EXPECT_TRUE(ideals.front().is_zero());
    EXPECT_TRUE(ideals.back().is_full());
  }
}

TEST(CenterAndDerived, AgreeWithOraclesOnCorpus) {
  for (const auto& entry : oracle::corpus()) {
    SCOPED_TRACE(entry.name);
    const auto& alg = entry.algebra;
    const oracle::DenseBracket dense(alg.bracket());
    EXPECT_EQ(oracle::elements(center(alg)), oracle::center_elements(dense));
    SubspaceBasis s = SubspaceBasis::full(alg.field(), alg.dim());
    const auto series = derived_series(alg, s);
    for (std::size_t k = 0; k + 1 < series.size(); ++k) {
      EXPECT_EQ(series[k + 1], oracle::derived(dense, series[k]));
      EXPECT_TRUE(series[k].contains(series[k + 1]));
    }
    EXPECT_EQ(oracle::derived(dense, series.back()), series.back());
  }
}

TEST(Subspaces, CountsMatchGaussianBinomials) {
  const auto count = [](FieldSpec f, std::size_t d) {
    std::set<std::vector<std::string>> seen;
    std::size_t calls = 0;
    for (std::size_t k = 0; k <= d; ++k) {
      for_each_subspace(f, d, k, [&](const SubspaceBasis& s) {
        EXPECT_EQ(s.dim(), k);
        std::vector<std::string> key;
        for (const auto& r : s.rows()) key.push_back(oracle::key(r));
        seen.insert(key);
        ++calls;
        return true;
      });
    }
    EXPECT_EQ(seen.size(), calls);
    return calls;
  };
  const FieldSpec f2 = FieldSpec::prime(2);
  EXPECT_EQ(count(f2, 2), 5U);
  EXPECT_EQ(count(f2, 3), 16U);
  EXPECT_EQ(count(F3, 3), 28U);
  EXPECT_EQ(count(f2, 4), 67U);
  EXPECT_EQ(count(F3, 4), 212U);
  EXPECT_EQ(gaussian_binomial(3, 4, 2), 130U);
  EXPECT_EQ(gaussian_binomial(5, 3, 1), 31U);
}

TEST(BruteForceIdeals, KnownValues) {
  const FieldSpec f2 = FieldSpec::prime(2);
  EXPECT_EQ(brute_force_ideals(zero_algebra(f2, 2, 2)).size(), 5U);
  const FieldSpec f5 = FieldSpec::prime(5);
  const auto ideals = brute_force_ideals(vector_product_algebra(2, f5));
  ASSERT_EQ(ideals.size(), 2U);
  EXPECT_TRUE(ideals[0].is_zero());
  EXPECT_TRUE(ideals[1].is_full());
  Guards g;
  g.max_subspaces = 10;
  EXPECT_THROW(brute_force_ideals(vector_product_algebra(2, f5), g), GuardExceeded);
}

TEST(Nilradical, KnownValues) {
  const Vector one2 = e(Q, 2, 0);
  EXPECT_EQ(nilradical(truncated_line(2), one2), span_of(Q, 2, {1}));

  SymProductTensor qq(Q, 2);
  qq.set(0, 0, e(Q, 2, 0));
  qq.set(1, 1, e(Q, 2, 1));
  EXPECT_TRUE(nilradical(qq, e(Q, 2, 0) + e(Q, 2, 1)).is_zero());

  const auto line4 = truncated_line(4);
  EXPECT_EQ(radical_of_ideal(line4, e(Q, 4, 0), span_of(Q, 4, {2, 3})), span_of(Q, 4, {1, 2, 3}));
  EXPECT_THROW(radical_of_ideal(line4, e(Q, 4, 0), span_of(Q, 4, {1})), PreconditionError);
}

TEST(Nilradical, PrimeFieldAgreesWithElementwiseNilpotency) {
  for (auto [k, p] : std::vector<std::pair<std::size_t, std::uint32_t>>{{1, 2}, {1, 3}, {2, 2}}) {
    const auto tp = truncated_polynomial_algebra(k, p);
    const auto& prod = tp.partials.product();
    const auto rad = nilradical(prod, tp.partials.unit());
    const std::size_t d = prod.dim();
    std::set<std::string> nilpotent;
    for (const auto& v : oracle::all_vectors(prod.field(), d)) {
      Vector power = v;
      for (std::size_t i = 1; i < d; ++i) power = product_eval(prod, power, v);
      if (is_zero(power)) nilpotent.insert(oracle::key(v));
    }
    EXPECT_EQ(oracle::elements(rad), nilpotent);
    // Everything but the constants.
    EXPECT_EQ(rad.dim(), d - 1);
  }
}

TEST(Quotient, ByZeroAndByWhole) {
  const auto cross = vector_product_algebra(2);
  const auto by_zero = quotient_algebra(cross, SubspaceBasis(Q, 3));
  EXPECT_EQ(by_zero.algebra.bracket(), cross.bracket());
  const auto by_all = quotient_algebra(cross, SubspaceBasis::full(Q, 3));
  EXPECT_EQ(by_all.algebra.dim(), 0U);
  EXPECT_THROW(quotient_algebra(cross, span_of(Q, 3, {0})), PreconditionError);
}

TEST(Quotient, JacobianSubquotientPassesJacobi) {
  const auto j = jacobian_truncated(2, 3).lie();
  const auto a1 = derived_subspace(j, SubspaceBasis::full(F3, 9));
  const auto q = subquotient(j, a1, intersect(a1, center(j)));
  EXPECT_EQ(q.algebra.dim(), 7U);
  EXPECT_TRUE(check_generalized_jacobi(q.algebra.bracket()).pass);
}

TEST(Quotient, ProjectionIsAHomomorphism) {
  const auto w = w_truncated(2, 3);
  const auto ideal = derived_subspace(w, SubspaceBasis::full(F3, 3));
  ASSERT_TRUE(is_ideal(w, ideal));
  const auto q = quotient_algebra(w, ideal);
  for (const auto& a : oracle::all_vectors(F3, 3)) {
    for (const auto& b : oracle::all_vectors(F3, 3)) {
      const std::vector<Vector> args{a, b};
      const std::vector<Vector> proj{q.map.project(a), q.map.project(b)};
      EXPECT_EQ(q.map.project(bracket_eval(w.bracket(), args)), bracket_eval(q.algebra.bracket(), proj));
    }
  }
}

TEST(Restrict, RejectsNonSubalgebra) {
  const auto cross = vector_product_algebra(2);
  EXPECT_THROW(restrict_algebra(cross, span_of(Q, 3, {0, 1})), PreconditionError);
  EXPECT_EQ(restrict_algebra(cross, SubspaceBasis::full(Q, 3)).bracket(), cross.bracket());
}
