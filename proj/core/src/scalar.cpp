#include "nlie/scalar.hpp"

#include <cctype>
#include <ostream>

#include "nlie/error.hpp"

namespace nlie {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::uint64_t k = 3; k * k <= n; k += 2) {
    if (n % k == 0) return false;
  }
  return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (p >= (1ULL << 31)) throw Error("prime modulus must be below 2^31");
  if (!is_prime(p)) throw Error("field modulus " + std::to_string(p) + " is not prime");
  return FieldSpec(static_cast<std::uint32_t>(p));
}

std::string FieldSpec::name() const {
  return is_rational() ? std::string("Q") : "F_" + std::to_string(modulus_);
}

namespace {

std::uint32_t reduce(const mpz_class& v, std::uint32_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
  return static_cast<std::uint32_t>(r.get_ui());
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  // Extended Euclid on signed 64-bit; a in (0, p).
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

}  // namespace

Scalar::Scalar(FieldSpec field) : field_(field) {
  if (field.is_rational()) {
    value_ = mpq_class(0);
  } else {
    value_ = std::uint32_t{0};
  }
}

Scalar::Scalar(FieldSpec field, long value) : field_(field) {
  if (field.is_rational()) {
    value_ = mpq_class(value);
  } else {
    const auto p = static_cast<long>(field.characteristic());
    long r = value % p;
    if (r < 0) r += p;
    value_ = static_cast<std::uint32_t>(r);
  }
}

Scalar::Scalar(FieldSpec field, const mpz_class& value) : field_(field) {
  if (field.is_rational()) {
    value_ = mpq_class(value);
  } else {
    value_ = reduce(value, field.characteristic());
  }
}

Scalar::Scalar(FieldSpec field, const mpq_class& value) : field_(field) {
  if (field.is_rational()) {
    mpq_class v = value;
    v.canonicalize();
    value_ = std::move(v);
  } else {
    const std::uint32_t p = field.characteristic();
    const std::uint32_t den = reduce(value.get_den(), p);
    if (den == 0) {
      throw Error("denominator of " + value.get_str() + " vanishes mod " + std::to_string(p));
    }
    const std::uint32_t num = reduce(value.get_num(), p);
    value_ = static_cast<std::uint32_t>(std::uint64_t{num} * inverse_mod(den, p) % p);
  }
}

Scalar Scalar::parse(FieldSpec field, std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  auto valid_integer = [](std::string_view t) {
    std::size_t i = 0;
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    }
    return true;
  };
  auto to_mpz = [](std::string t) {
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    return mpz_class(t, 10);
  };
  const auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (!valid_integer(s)) throw Error("malformed coefficient '" + std::string(text) + "'");
    return Scalar(field, to_mpz(s));
  }
  const std::string num = s.substr(0, slash);
  const std::string den = s.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den) || den[0] == '-' || den[0] == '+') {
    throw Error("malformed coefficient '" + std::string(text) + "'");
  }
  const mpz_class d = to_mpz(den);
  if (d == 0) throw Error("zero denominator in '" + std::string(text) + "'");
  return Scalar(field, mpq_class(to_mpz(num), d));
}

bool Scalar::is_zero() const {
  if (const auto* r = std::get_if<std::uint32_t>(&value_)) return *r == 0;
  return sgn(std::get<mpq_class>(value_)) == 0;
}

bool Scalar::is_one() const {
  if (const auto* r = std::get_if<std::uint32_t>(&value_)) return *r == 1;
  return std::get<mpq_class>(value_) == 1;
}

const mpq_class& Scalar::rational() const {
  if (!field_.is_rational()) throw Error("rational() on a residue");
  return std::get<mpq_class>(value_);
}

std::uint32_t Scalar::residue() const {
  if (field_.is_rational()) throw Error("residue() on a rational");
  return std::get<std::uint32_t>(value_);
}

void Scalar::require_same_field(const Scalar& other) const {
  if (field_ != other.field_) {
    throw MismatchError("scalar field mismatch: " + field_.name() + " vs " + other.field_.name());
  }
}

Scalar Scalar::operator-() const {
  Scalar out(field_);
  if (const auto* r = std::get_if<std::uint32_t>(&value_)) {
    out.value_ = *r == 0 ? 0U : field_.characteristic() - *r;
  } else {
    out.value_ = mpq_class(-std::get<mpq_class>(value_));
  }
  return out;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  require_same_field(rhs);
  if (auto* r = std::get_if<std::uint32_t>(&value_)) {
    const std::uint64_t s = std::uint64_t{*r} + std::get<std::uint32_t>(rhs.value_);
    const std::uint32_t p = field_.characteristic();
    *r = static_cast<std::uint32_t>(s >= p ? s - p : s);
  } else {
    std::get<mpq_class>(value_) += std::get<mpq_class>(rhs.value_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  require_same_field(rhs);
  if (auto* r = std::get_if<std::uint32_t>(&value_)) {
    const std::uint32_t b = std::get<std::uint32_t>(rhs.value_);
    *r = *r >= b ? *r - b : static_cast<std::uint32_t>(std::uint64_t{*r} + field_.characteristic() - b);
  } else {
    std::get<mpq_class>(value_) -= std::get<mpq_class>(rhs.value_);
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  require_same_field(rhs);
  if (auto* r = std::get_if<std::uint32_t>(&value_)) {
    *r = static_cast<std::uint32_t>(std::uint64_t{*r} * std::get<std::uint32_t>(rhs.value_) %
                                    field_.characteristic());
  } else {
    std::get<mpq_class>(value_) *= std::get<mpq_class>(rhs.value_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) { return *this *= rhs.inverse(); }

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error("division by zero");
  Scalar out(field_);
  if (const auto* r = std::get_if<std::uint32_t>(&value_)) {
    out.value_ = inverse_mod(*r, field_.characteristic());
  } else {
    out.value_ = mpq_class(1 / std::get<mpq_class>(value_));
  }
  return out;
}

void Scalar::add_product(const Scalar& a, const Scalar& b) {
  require_same_field(a);
  require_same_field(b);
  if (auto* r = std::get_if<std::uint32_t>(&value_)) {
    const std::uint32_t p = field_.characteristic();
    const std::uint64_t prod =
        std::uint64_t{std::get<std::uint32_t>(a.value_)} * std::get<std::uint32_t>(b.value_) % p;
    const std::uint64_t s = *r + prod;
    *r = static_cast<std::uint32_t>(s >= p ? s - p : s);
  } else {
    std::get<mpq_class>(value_) += std::get<mpq_class>(a.value_) * std::get<mpq_class>(b.value_);
  }
}

bool operator==(const Scalar& a, const Scalar& b) {
  return a.field_ == b.field_ && a.value_ == b.value_;
}

std::string Scalar::to_string() const {
  if (const auto* r = std::get_if<std::uint32_t>(&value_)) return std::to_string(*r);
  return std::get<mpq_class>(value_).get_str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace nlie
