#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "nlie/error.hpp"
#include "nlie/guards.hpp"
#include "nlie/linalg.hpp"

namespace nlie {

/// Exponent vector of a monomial.
struct Monomial {
  std::vector<unsigned> exponents;

  unsigned degree() const;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Display order: higher total degree first, then lexicographically larger
/// exponent vectors first (x^2 > x*y > y^2).
struct GrlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Multivariate polynomial over Q. Never stores zero coefficients.
class Poly {
 public:
  using Terms = std::map<Monomial, mpq_class, GrlexDescending>;

  explicit Poly(std::size_t vars);

  static Poly constant(std::size_t vars, const mpq_class& c);
  static Poly variable(std::size_t vars, std::size_t index);
  static Poly monomial(const Monomial& m, const mpq_class& c = 1);

  std::size_t vars() const { return vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  mpq_class coefficient(const Monomial& m) const;

  void add_term(const Monomial& m, const mpq_class& c);

  Poly operator-() const;
  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const mpq_class& c, const Poly& p);
  Poly pow(unsigned k) const;

  friend bool operator==(const Poly&, const Poly&) = default;

  /// Canonical rendering in display order, e.g. "x^2 - 3/2*x*y + 1".
  std::string render(std::span<const std::string> names) const;

 private:
  void require_vars(const Poly& other) const;
  std::size_t vars_;
  Terms terms_;
};

/// Formal derivative with respect to variable `index`.
Poly partial(const Poly& p, std::size_t index);

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Grammar: sums and differences of products; factors are integer or a/b
/// literals, declared variables, or parenthesized expressions, each with an
/// optional ^ and a non-negative integer exponent. '*' is mandatory between
/// factors. Whitespace is ignored.
Poly parse_poly(std::string_view src, const std::vector<std::string>& vars);

enum class PolyBracket { Jac, W };
enum class PolyIdentity { GeneralizedJacobi, Leibniz, Eq2 };

std::string to_string(PolyBracket b);
std::string to_string(PolyIdentity i);

/// Number of variables the bracket uses at arity n: n for Jac, n - 1 for W.
std::size_t bracket_vars(PolyBracket b, std::size_t n);

/// det[d_r u_s] over n arguments in n variables (cofactor expansion, n <= 6).
Poly jac_bracket(std::span<const Poly> args);
/// Determinant with first row u_1..u_n and row r+1 equal to d_r u_s; n
/// arguments in n - 1 variables.
Poly w_bracket(std::span<const Poly> args);
Poly poly_bracket(PolyBracket b, std::span<const Poly> args);

/// Monomials of total degree <= max_degree: increasing degree, and within one
/// degree in display order (x^2, x*y, y^2). This is the coordinate order of
/// every truncated subspace below.
std::vector<Monomial> monomials_up_to(std::size_t vars, unsigned max_degree);

struct PolyWitness {
  std::vector<std::pair<std::string, Poly>> args;
  Poly lhs;
  Poly rhs;
};

struct PolyVerdict {
  std::string check;
  bool pass = true;
  std::uint64_t instances = 0;
  unsigned degree_bound = 0;
  std::optional<PolyWitness> witness;
};

/// Exhaustive check of an identity on every tuple of monomials whose
/// arguments each have total degree <= degree_bound. Argument tuples follow
/// the same conventions as the structure-constant checkers.
PolyVerdict verify_identity_truncated(PolyIdentity which, PolyBracket bracket, std::size_t n, unsigned degree_bound,
                                      const Guards& guards = Guards::from_env());

/// Span of bracket values on monomials, intersected with degree <= D,
/// in the coordinates of monomials_up_to(vars, D). Arguments range over
/// monomials of degree <= D + n, which reaches every value of degree <= D.
SubspaceBasis truncated_derived_span(PolyBracket bracket, std::size_t n, unsigned degree_bound,
                                     const Guards& guards = Guards::from_env());

/// {a : deg a <= D, bracket(a, m_2..m_n) = 0 for all monomials m_i of degree <= D + n}.
SubspaceBasis truncated_center(PolyBracket bracket, std::size_t n, unsigned degree_bound,
                               const Guards& guards = Guards::from_env());

/// Poly with the given coordinates over monomials_up_to(vars, D).
Poly poly_from_coordinates(std::size_t vars, unsigned degree_bound, const Vector& coords);

}  // namespace nlie
