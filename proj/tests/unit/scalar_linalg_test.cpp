#include <random>

#include <gtest/gtest.h>

#include "../support/oracles.hpp"
#include "nlie/error.hpp"
#include "nlie/linalg.hpp"

using namespace nlie;

namespace {

const FieldSpec Q = FieldSpec::rationals();

Vector qv(std::initializer_list<long> xs) {
  Vector v;
  for (long x : xs) v.emplace_back(Q, x);
  return v;
}

Vector fv(FieldSpec f, std::initializer_list<long> xs) {
  Vector v;
  for (long x : xs) v.emplace_back(f, x);
  return v;
}

Matrix random_matrix(FieldSpec f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      // Sparse small entries so ranks vary.
      if (rng() % 3 != 0) m(i, j) = Scalar(f, static_cast<long>(rng() % 5) - 2);
    }
  }
  return m;
}

}  // namespace

TEST(FieldSpec, RejectsCompositeAndHugeModuli) {
  EXPECT_THROW(FieldSpec::prime(1), Error);
  EXPECT_THROW(FieldSpec::prime(9), Error);
  EXPECT_THROW(FieldSpec::prime(4294967311ULL), Error);
  EXPECT_EQ(FieldSpec::prime(2147483647).characteristic(), 2147483647U);
  EXPECT_EQ(FieldSpec::prime(7).name(), "F_7");
  EXPECT_EQ(Q.name(), "Q");
}

TEST(Scalar, RationalArithmeticIsExact) {
  const Scalar a = Scalar::parse(Q, "1/3");
  const Scalar b = Scalar::parse(Q, "-2/6");
  EXPECT_TRUE((a + b).is_zero());
  EXPECT_EQ((a * a).to_string(), "1/9");
  EXPECT_EQ((a / Scalar(Q, 2L)).to_string(), "1/6");
  EXPECT_EQ(Scalar::parse(Q, "4/2").to_string(), "2");
  EXPECT_THROW(Scalar(Q).inverse(), Error);
  EXPECT_THROW(Scalar::parse(Q, "1/0"), Error);
  EXPECT_THROW(Scalar::parse(Q, "x"), Error);
}

TEST(Scalar, ResidueArithmetic) {
  const FieldSpec f = FieldSpec::prime(7);
  EXPECT_EQ(Scalar(f, -1L).residue(), 6U);
  EXPECT_EQ(Scalar::parse(f, "1/3").residue(), 5U);  // 3 * 5 = 15 = 1 mod 7
  EXPECT_THROW(Scalar::parse(f, "1/14"), Error);
  for (long a = 1; a < 7; ++a) EXPECT_TRUE((Scalar(f, a) * Scalar(f, a).inverse()).is_one());
  Scalar acc(f);
  acc.add_product(Scalar(f, 3L), Scalar(f, 5L));
  EXPECT_EQ(acc.residue(), 1U);
}

TEST(Scalar, MixingFieldsThrows) {
  EXPECT_THROW(Scalar(Q, 1L) + Scalar(FieldSpec::prime(3), 1L), MismatchError);
}

TEST(Rref, IdentityAndZero) {
  const auto r = rref(Matrix::identity(Q, 3));
  EXPECT_EQ(r.rank, 3U);
  EXPECT_EQ(rank(Matrix(Q, 2, 4)), 0U);
}

TEST(Rref, HandExample) {
  // [[1,2,3],[2,4,6],[1,0,1]] has rank 2.
  const Matrix m = Matrix::from_rows(Q, 3, {qv({1, 2, 3}), qv({2, 4, 6}), qv({1, 0, 1})});
  const auto r = rref(m);
  EXPECT_EQ(r.rank, 2U);
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0, 1}));
  const auto k = kernel(m);
  ASSERT_EQ(k.dim(), 1U);
  EXPECT_TRUE(is_zero(m.apply(k.rows()[0])));
}

TEST(Kernel, RankNullityOnRandomMatrices) {
  std::mt19937_64 rng(42);
  for (FieldSpec f : {Q, FieldSpec::prime(2), FieldSpec::prime(5)}) {
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 6;
      const Matrix m = random_matrix(f, r, c, rng);
      const auto k = kernel(m);
      EXPECT_EQ(rank(m) + k.dim(), c);
      for (const auto& v : k.rows()) EXPECT_TRUE(is_zero(m.apply(v)));
    }
  }
}

TEST(SubspaceBasis, CanonicalForm) {
  const auto a = SubspaceBasis::span(Q, 3, {qv({1, 1, 0}), qv({0, 1, 1})});
  const auto b = SubspaceBasis::span(Q, 3, {qv({1, 2, 1}), qv({1, 0, -1})});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.pivots(), (std::vector<std::size_t>{0, 1}));
  EXPECT_TRUE(a.contains(qv({2, 3, 1})));
  EXPECT_FALSE(a.contains(qv({0, 0, 1})));
}

TEST(SubspaceBuilder, InsertReportsGrowth) {
  SubspaceBuilder b(Q, 3);
  EXPECT_TRUE(b.insert(qv({1, 0, 0})));
  EXPECT_FALSE(b.insert(qv({2, 0, 0})));
  EXPECT_TRUE(b.insert(qv({1, 1, 0})));
  EXPECT_EQ(b.dim(), 2U);
  EXPECT_EQ(b.build(), SubspaceBasis::span(Q, 3, {qv({1, 0, 0}), qv({0, 1, 0})}));
}

TEST(Intersect, MatchesElementwiseIntersectionOverF2) {
  const FieldSpec f = FieldSpec::prime(2);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Vector> ga, gb;
    for (int i = 0; i < 2; ++i) {
      ga.push_back(fv(f, {long(rng() % 2), long(rng() % 2), long(rng() % 2), long(rng() % 2)}));
      gb.push_back(fv(f, {long(rng() % 2), long(rng() % 2), long(rng() % 2), long(rng() % 2)}));
    }
    const auto a = SubspaceBasis::span(f, 4, ga);
    const auto b = SubspaceBasis::span(f, 4, gb);
    const auto ea = oracle::elements(a), eb = oracle::elements(b);
    std::set<std::string> both;
    for (const auto& k : ea) {
      if (eb.count(k)) both.insert(k);
    }
    EXPECT_EQ(oracle::elements(intersect(a, b)), both);
    std::vector<Vector> all = ga;
    all.insert(all.end(), gb.begin(), gb.end());
    EXPECT_EQ(oracle::elements(sum(a, b)), oracle::span_elements(f, 4, all));
  }
}

TEST(QuotientMap, ProjectLiftRoundTrip) {
  const auto whole = SubspaceBasis::full(Q, 3);
  const auto sub = SubspaceBasis::span(Q, 3, {qv({1, 1, 0})});
  const QuotientMap q(whole, sub);
  EXPECT_EQ(q.dim(), 2U);
  for (const auto& v : {qv({1, 0, 0}), qv({3, -2, 5}), qv({1, 1, 0})}) {
    const Vector c = q.project(v);
    EXPECT_TRUE(sub.contains(v - q.lift(c)));
  }
  EXPECT_TRUE(is_zero(q.project(qv({2, 2, 0}))));
}

TEST(QuotientComplement, RejectsNonSubspace) {
  const auto whole = SubspaceBasis::span(Q, 3, {qv({1, 0, 0})});
  const auto sub = SubspaceBasis::span(Q, 3, {qv({0, 1, 0})});
  EXPECT_THROW(quotient_complement(whole, sub), PreconditionError);
}

TEST(Matrix, PowerAndTranspose) {
  // Nilpotent Jordan block.
  Matrix n(Q, 3, 3);
  n(0, 1) = Scalar(Q, 1L);
  n(1, 2) = Scalar(Q, 1L);
  EXPECT_FALSE(n.pow(2).is_zero());
  EXPECT_TRUE(n.pow(3).is_zero());
  EXPECT_EQ(n.transpose().transpose(), n);
  EXPECT_EQ(n.pow(0), Matrix::identity(Q, 3));
}
