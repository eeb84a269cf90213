#include <cctype>

#include "nlie/poly.hpp"

namespace nlie {

namespace {

constexpr unsigned kMaxExponent = 1000;

class Parser {
 public:
  Parser(std::string_view src, const std::vector<std::string>& vars) : src_(src), vars_(vars) {}

  Poly parse() {
    Poly p = expr();
    skip_space();
    if (pos_ != src_.size()) throw ParseError("unexpected '" + std::string(1, src_[pos_]) + "'", pos_);
    return p;
  }

 private:
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool at_digit() const { return pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])); }

  std::string digits() {
    const std::size_t start = pos_;
    while (at_digit()) ++pos_;
    return std::string(src_.substr(start, pos_ - start));
  }

  Poly expr() {
    Poly acc = term();
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = unary();
    while (accept('*')) acc = acc * unary();
    return acc;
  }

  Poly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Poly power() {
    Poly base = primary();
    if (!accept('^')) return base;
    skip_space();
    const std::size_t at = pos_;
    if (pos_ < src_.size() && src_[pos_] == '-') throw ParseError("negative exponent", at);
    if (!at_digit()) throw ParseError("expected exponent", at);
    const std::string e = digits();
    if (e.size() > 4 || std::stoul(e) > kMaxExponent) throw ParseError("exponent too large", at);
    return base.pow(static_cast<unsigned>(std::stoul(e)));
  }

  Poly primary() {
    skip_space();
    const std::size_t at = pos_;
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", at);
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num(digits());
      mpz_class den = 1;
      if (pos_ < src_.size() && src_[pos_] == '/') {
        ++pos_;
        if (!at_digit()) throw ParseError("expected denominator", pos_);
        den = mpz_class(digits());
        if (den == 0) throw ParseError("zero denominator", at);
      }
      mpq_class q(num, den);
      q.canonicalize();
      return Poly::constant(vars_.size(), q);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
      const std::string name(src_.substr(at, pos_ - at));
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (vars_[i] == name) return Poly::variable(vars_.size(), i);
      }
      throw ParseError("unknown variable '" + name + "'", at);
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", at);
  }

  std::string_view src_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view src, const std::vector<std::string>& vars) { return Parser(src, vars).parse(); }

}  // namespace nlie
