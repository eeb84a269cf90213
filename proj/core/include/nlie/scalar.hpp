#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace nlie {

/// The coefficient field: the rationals or a prime field F_p.
class FieldSpec {
 public:
  /// Defaults to the rationals.
  constexpr FieldSpec() = default;

  static constexpr FieldSpec rationals() { return FieldSpec{}; }
  /// Throws Error unless p is prime (trial division) and below 2^31.
  static FieldSpec prime(std::uint64_t p);

  constexpr bool is_rational() const { return modulus_ == 0; }
  constexpr bool is_prime_field() const { return modulus_ != 0; }
  /// 0 for Q, p for F_p.
  constexpr std::uint32_t characteristic() const { return modulus_; }

  /// "Q" or "F_p".
  std::string name() const;

  friend constexpr bool operator==(FieldSpec, FieldSpec) = default;

 private:
  explicit constexpr FieldSpec(std::uint32_t p) : modulus_(p) {}
  std::uint32_t modulus_ = 0;
};

bool is_prime(std::uint64_t n);

/// An exact field element. Rationals are kept reduced with a positive
/// denominator (gmpxx canonicalizes); residues are kept in [0, p).
class Scalar {
 public:
  /// Zero of Q.
  Scalar() : Scalar(FieldSpec::rationals()) {}
  explicit Scalar(FieldSpec field);
  Scalar(FieldSpec field, long value);
  Scalar(FieldSpec field, const mpz_class& value);
  /// Throws Error for a prime field when p divides the denominator.
  Scalar(FieldSpec field, const mpq_class& value);

  static Scalar zero(FieldSpec f) { return Scalar(f); }
  static Scalar one(FieldSpec f) { return Scalar(f, 1L); }

  /// Accepts "a" or "a/b" with optional sign. Residue fields reduce the
  /// value mod p; a denominator divisible by p is an error.
  static Scalar parse(FieldSpec field, std::string_view text);

  FieldSpec field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  /// Only valid over Q.
  const mpq_class& rational() const;
  /// Only valid over F_p.
  std::uint32_t residue() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

  /// Throws Error on zero.
  Scalar inverse() const;

  /// this += a * b, without temporaries on the residue path.
  void add_product(const Scalar& a, const Scalar& b);

  friend bool operator==(const Scalar& a, const Scalar& b);

  /// "a/b", "a", or the residue in decimal.
  std::string to_string() const;

 private:
  void require_same_field(const Scalar& other) const;

  FieldSpec field_;
  std::variant<std::uint32_t, mpq_class> value_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace nlie
