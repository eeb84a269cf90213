#include <random>

#include <gtest/gtest.h>

#include "nlie/constructions.hpp"
#include "nlie/poly.hpp"

using namespace nlie;

namespace {

const std::vector<std::string> XY{"x", "y"};
const std::vector<std::string> XYZ{"x", "y", "z"};

Poly P(const std::string& s, const std::vector<std::string>& vars = XY) { return parse_poly(s, vars); }

Poly random_poly(std::size_t vars, unsigned max_degree, std::mt19937_64& rng) {
  Poly p(vars);
  for (const auto& m : monomials_up_to(vars, max_degree)) {
    if (rng() % 3 == 0) p.add_term(m, mpq_class(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 3)));
  }
  return p;
}

}  // namespace

TEST(ParsePoly, LiteralsAndOperators) {
  const Poly p = P("x^2 - 3*y");
  EXPECT_EQ(p.coefficient(Monomial{{2, 0}}), 1);
  EXPECT_EQ(p.coefficient(Monomial{{0, 1}}), -3);
  EXPECT_EQ(p.terms().size(), 2U);
  EXPECT_EQ(P("(x+y)^2"), P("x^2 + 2*x*y + y^2"));
  EXPECT_EQ(P("3/6*x"), P("1/2*x"));
  EXPECT_EQ(P("-x^2"), -P("x^2"));
  EXPECT_EQ(P("2*-x"), P("-2*x"));
  EXPECT_EQ(P("  x   *  y "), P("x*y"));
  EXPECT_TRUE(P("x - x").is_zero());
  EXPECT_EQ(P("0").degree(), -1);
}

TEST(ParsePoly, PowerBindsTighterThanUnaryMinus) {
  EXPECT_EQ(P("-x^2"), P("-(x^2)"));
  EXPECT_EQ(P("(-x)^2"), P("x^2"));
  EXPECT_EQ(P("2^3*x"), P("8*x"));
}

TEST(ParsePoly, Errors) {
  EXPECT_THROW(P("x + z"), ParseError);
  EXPECT_THROW(P("x^-1"), ParseError);
  EXPECT_THROW(P("2x"), ParseError);
  EXPECT_THROW(P("(x + y"), ParseError);
  EXPECT_THROW(P(""), ParseError);
  EXPECT_THROW(P("x +"), ParseError);
  EXPECT_THROW(P("1/0"), ParseError);
  EXPECT_THROW(P("x^100000"), ParseError);
  try {
    P("x + z");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4U);
  }
}

TEST(Poly, RenderingInDisplayOrder) {
  EXPECT_EQ(P("y^2 + 1 + x*y - 3/2*x^2").render(XY), "-3/2*x^2 + x*y + y^2 + 1");
  EXPECT_EQ(P("0").render(XY), "0");
  EXPECT_EQ(P("-1").render(XY), "-1");
}

TEST(Poly, RenderParseRoundTrip) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const Poly p = random_poly(3, 4, rng);
    EXPECT_EQ(parse_poly(p.render(XYZ), XYZ), p) << p.render(XYZ);
  }
}

TEST(Poly, RingOperations) {
  EXPECT_EQ(P("x+y") * P("x-y"), P("x^2 - y^2"));
  EXPECT_EQ(partial(P("x^2*y"), 0), P("2*x*y"));
  EXPECT_TRUE(partial(P("1"), 0).is_zero());
  EXPECT_EQ(P("x+1").pow(3), P("x^3 + 3*x^2 + 3*x + 1"));
  EXPECT_THROW(P("x") + parse_poly("x", XYZ), MismatchError);
}

TEST(Poly, MonomialsUpToOrder) {
  const auto m = monomials_up_to(2, 2);
  ASSERT_EQ(m.size(), 6U);
  EXPECT_EQ(m[0].exponents, (std::vector<unsigned>{0, 0}));
  EXPECT_EQ(m[1].exponents, (std::vector<unsigned>{1, 0}));
  EXPECT_EQ(m[2].exponents, (std::vector<unsigned>{0, 1}));
  EXPECT_EQ(m[3].exponents, (std::vector<unsigned>{2, 0}));
  EXPECT_EQ(m[4].exponents, (std::vector<unsigned>{1, 1}));
  EXPECT_EQ(m[5].exponents, (std::vector<unsigned>{0, 2}));
  EXPECT_EQ(monomials_up_to(3, 4).size(), 35U);
}

TEST(JacBracket, Values) {
  const std::vector<Poly> xy{P("x"), P("y")};
  EXPECT_EQ(jac_bracket(xy), P("1"));
  const std::vector<Poly> a{P("x^2"), P("x*y^2")};
  EXPECT_EQ(jac_bracket(a), P("4*x^2*y"));
  const std::vector<Poly> rep{P("x^2*y"), P("x^2*y")};
  EXPECT_TRUE(jac_bracket(rep).is_zero());
  // One variable, n = 1: the derivative.
  const std::vector<Poly> one{parse_poly("x^3 + x", {"x"})};
  EXPECT_EQ(jac_bracket(one), parse_poly("3*x^2 + 1", {"x"}));
  const std::vector<Poly> wrong{parse_poly("x", XYZ), parse_poly("y", XYZ)};
  EXPECT_THROW(jac_bracket(wrong), MismatchError);
}

TEST(WBracket, Values) {
  const std::vector<std::string> X{"x"};
  const std::vector<Poly> a{parse_poly("x", X), parse_poly("x^2", X)};
  EXPECT_EQ(w_bracket(a), parse_poly("x^2", X));
  const std::vector<Poly> b{parse_poly("1", X), parse_poly("x^3", X)};
  EXPECT_EQ(w_bracket(b), parse_poly("3*x^2", X));
  const std::vector<Poly> c{parse_poly("x + 2", X), parse_poly("x + 2", X)};
  EXPECT_TRUE(w_bracket(c).is_zero());
}

TEST(Brackets, AlternatingMultilinearAndLeibnizOnRandomPolys) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const Poly u = random_poly(2, 3, rng), v = random_poly(2, 3, rng), w = random_poly(2, 3, rng);
    const std::vector<Poly> uv{u, v}, vu{v, u};
    EXPECT_EQ(jac_bracket(uv), -jac_bracket(vu));
    const std::vector<Poly> sum{u + w, v}, wv{w, v};
    EXPECT_EQ(jac_bracket(sum), jac_bracket(uv) + jac_bracket(wv));
    const std::vector<Poly> prod{u * w, v}, w_v{w, v}, u_v{u, v};
    EXPECT_EQ(jac_bracket(prod), u * jac_bracket(w_v) + jac_bracket(u_v) * w);

    const Poly a = random_poly(2, 2, rng), b = random_poly(2, 2, rng), c = random_poly(2, 2, rng);
    const std::vector<Poly> abc{a, b, c}, bac{b, a, c};
    EXPECT_EQ(w_bracket(abc), -w_bracket(bac));
  }
}

TEST(Brackets, AgreeWithTruncatedStructureConstants) {
  // Over Z, Jac on monomials with exponents < p reduces mod p to the
  // structure constants of the truncated algebra (terms of exponent >= p drop).
  const std::uint32_t p = 3;
  const auto alg = jacobian_truncated(2, p);
  const FieldSpec f = alg.field();
  for (std::size_t i = 0; i < 9; ++i) {
    for (std::size_t j = 0; j < 9; ++j) {
      const Monomial mi{{unsigned(i % 3), unsigned(i / 3)}}, mj{{unsigned(j % 3), unsigned(j / 3)}};
      const std::vector<Poly> args{Poly::monomial(mi), Poly::monomial(mj)};
      const Poly value = jac_bracket(args);
      Vector expect = zero_vector(f, 9);
      for (const auto& [m, c] : value.terms()) {
        if (m.exponents[0] < p && m.exponents[1] < p) expect[m.exponents[0] + p * m.exponents[1]] = Scalar(f, c);
      }
      EXPECT_EQ(alg.bracket().basis_bracket(std::vector<std::size_t>{i, j}), expect);
    }
  }
}

TEST(VerifyTruncated, JacobianIdentitiesPass) {
  EXPECT_TRUE(verify_identity_truncated(PolyIdentity::GeneralizedJacobi, PolyBracket::Jac, 2, 3).pass);
  EXPECT_TRUE(verify_identity_truncated(PolyIdentity::Leibniz, PolyBracket::Jac, 2, 3).pass);
  const auto eq2 = verify_identity_truncated(PolyIdentity::Eq2, PolyBracket::Jac, 3, 1);
  EXPECT_TRUE(eq2.pass);
  EXPECT_GT(eq2.instances, 0U);
  EXPECT_EQ(eq2.degree_bound, 1U);
}

TEST(VerifyTruncated, WLeibnizFails) {
  const auto v = verify_identity_truncated(PolyIdentity::Leibniz, PolyBracket::W, 2, 2);
  ASSERT_FALSE(v.pass);
  const std::vector<std::string> X{"x"};
  // Hand instance a = b = u = x differs by x^2.
  const Poly x = parse_poly("x", X);
  const std::vector<Poly> lhs_args{x * x, x}, xx{x, x};
  const Poly diff = w_bracket(lhs_args) - (x * w_bracket(xx) + w_bracket(xx) * x);
  EXPECT_EQ(diff, parse_poly("-x^2", X));
  // First failing monomial tuple: a = b = 1, u = x.
  const auto& w = *v.witness;
  EXPECT_EQ(w.args[0].second, parse_poly("1", X));
  EXPECT_EQ(w.args[1].second, parse_poly("1", X));
  EXPECT_EQ(w.args[2].second, x);
  EXPECT_NE(w.lhs, w.rhs);
}

TEST(VerifyTruncated, WJacobiPasses) {
  EXPECT_TRUE(verify_identity_truncated(PolyIdentity::GeneralizedJacobi, PolyBracket::W, 2, 3).pass);
}

TEST(VerifyTruncated, GuardAndArity) {
  Guards g;
  g.max_instances = 5;
  EXPECT_THROW(verify_identity_truncated(PolyIdentity::GeneralizedJacobi, PolyBracket::Jac, 2, 3, g), GuardExceeded);
  EXPECT_THROW(verify_identity_truncated(PolyIdentity::GeneralizedJacobi, PolyBracket::W, 1, 3), Error);
  EXPECT_THROW(verify_identity_truncated(PolyIdentity::Leibniz, PolyBracket::Jac, 7, 1), Error);
}

TEST(Truncated, DerivedSpanAndCenter) {
  const auto span = truncated_derived_span(PolyBracket::Jac, 2, 3);
  EXPECT_TRUE(span.is_full());
  EXPECT_EQ(span.ambient_dim(), 10U);
  const auto z = truncated_center(PolyBracket::Jac, 2, 3);
  ASSERT_EQ(z.dim(), 1U);
  EXPECT_EQ(poly_from_coordinates(2, 3, z.rows()[0]), P("1"));
  // w(1, x) = 1, so the constant is not central for W.
  EXPECT_TRUE(truncated_center(PolyBracket::W, 2, 0).is_zero());
}
