#include "nlie/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "nlie/tensor.hpp"

namespace nlie {

unsigned Monomial::degree() const { return std::accumulate(exponents.begin(), exponents.end(), 0U); }

bool GrlexDescending::operator()(const Monomial& a, const Monomial& b) const {
  const unsigned da = a.degree();
  const unsigned db = b.degree();
  if (da != db) return da > db;
  return a.exponents > b.exponents;
}

Poly::Poly(std::size_t vars) : vars_(vars) {}

Poly Poly::constant(std::size_t vars, const mpq_class& c) {
  Poly p(vars);
  p.add_term(Monomial{std::vector<unsigned>(vars, 0)}, c);
  return p;
}

Poly Poly::variable(std::size_t vars, std::size_t index) {
  if (index >= vars) throw Error("variable index out of range");
  Monomial m{std::vector<unsigned>(vars, 0)};
  m.exponents[index] = 1;
  return monomial(m);
}

Poly Poly::monomial(const Monomial& m, const mpq_class& c) {
  Poly p(m.exponents.size());
  p.add_term(m, c);
  return p;
}

int Poly::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(terms_.begin()->first.degree());
}

mpq_class Poly::coefficient(const Monomial& m) const {
  const auto it = terms_.find(m);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

void Poly::add_term(const Monomial& m, const mpq_class& c) {
  if (m.exponents.size() != vars_) throw MismatchError("monomial has the wrong number of variables");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) {
    it->second.canonicalize();
  } else {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

void Poly::require_vars(const Poly& other) const {
  if (vars_ != other.vars_) throw MismatchError("polynomials over different variable sets");
}

Poly Poly::operator-() const {
  Poly out(vars_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

Poly& Poly::operator+=(const Poly& rhs) {
  require_vars(rhs);
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
  require_vars(rhs);
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.require_vars(b);
  Poly out(a.vars_);
  Monomial m{std::vector<unsigned>(a.vars_)};
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      for (std::size_t i = 0; i < a.vars_; ++i) m.exponents[i] = ma.exponents[i] + mb.exponents[i];
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

Poly operator*(const mpq_class& c, const Poly& p) {
  Poly out(p.vars_);
  if (sgn(c) == 0) return out;
  for (const auto& [m, a] : p.terms_) out.terms_.emplace(m, c * a);
  return out;
}

Poly Poly::pow(unsigned k) const {
  Poly out = constant(vars_, 1);
  for (unsigned i = 0; i < k; ++i) out = out * *this;
  return out;
}

std::string Poly::render(std::span<const std::string> names) const {
  if (names.size() != vars_) throw MismatchError("render: wrong number of variable names");
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = sgn(c) < 0;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const mpq_class mag = abs(c);
    std::string mono;
    for (std::size_t i = 0; i < vars_; ++i) {
      if (m.exponents[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += names[i];
      if (m.exponents[i] > 1) mono += "^" + std::to_string(m.exponents[i]);
    }
    if (mono.empty()) {
      os << mag.get_str();
    } else if (mag == 1) {
      os << mono;
    } else {
      os << mag.get_str() << '*' << mono;
    }
  }
  return os.str();
}

Poly partial(const Poly& p, std::size_t index) {
  if (index >= p.vars()) throw Error("partial: variable index out of range");
  Poly out(p.vars());
  for (const auto& [m, c] : p.terms()) {
    const unsigned e = m.exponents[index];
    if (e == 0) continue;
    Monomial dm = m;
    --dm.exponents[index];
    out.add_term(dm, c * e);
  }
  return out;
}

// ------------------------------------------------------------- brackets

std::string to_string(PolyBracket b) { return b == PolyBracket::Jac ? "jac" : "w"; }

std::string to_string(PolyIdentity i) {
  switch (i) {
    case PolyIdentity::GeneralizedJacobi:
      return "generalized_jacobi";
    case PolyIdentity::Leibniz:
      return "leibniz";
    case PolyIdentity::Eq2:
      return "eq2";
  }
  return "?";
}

std::size_t bracket_vars(PolyBracket b, std::size_t n) {
  if (b == PolyBracket::W) {
    if (n < 2) throw Error("W bracket needs arity n >= 2");
    return n - 1;
  }
  if (n < 1) throw Error("Jacobian bracket needs arity n >= 1");
  return n;
}

namespace {

constexpr std::size_t kMaxPolyArity = 6;

/// Laplace expansion along the first remaining row.
Poly cofactor_det(const std::vector<std::vector<Poly>>& m, std::size_t row, std::vector<bool>& used, std::size_t vars) {
  const std::size_t n = m.size();
  if (row == n) return Poly::constant(vars, 1);
  Poly out(vars);
  int sign = 1;
  for (std::size_t c = 0; c < n; ++c) {
    if (used[c]) continue;
    if (!m[row][c].is_zero()) {
      used[c] = true;
      Poly minor = cofactor_det(m, row + 1, used, vars);
      used[c] = false;
      if (!minor.is_zero()) {
        const Poly term = m[row][c] * minor;
        if (sign > 0) {
          out += term;
        } else {
          out -= term;
        }
      }
    }
    sign = -sign;
  }
  return out;
}

void check_args(std::span<const Poly> args, std::size_t vars, const char* what) {
  if (args.size() > kMaxPolyArity) throw Error(std::string(what) + ": arity above the cofactor guard of 6");
  for (const auto& a : args) {
    if (a.vars() != vars) {
      throw MismatchError(std::string(what) + ": expected polynomials in " + std::to_string(vars) + " variables");
    }
  }
}

}  // namespace

Poly jac_bracket(std::span<const Poly> args) {
  const std::size_t n = args.size();
  if (n == 0) throw Error("jac_bracket: no arguments");
  check_args(args, n, "jac_bracket");
  std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n, Poly(n)));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t s = 0; s < n; ++s) m[r][s] = partial(args[s], r);
  }
  std::vector<bool> used(n, false);
  return cofactor_det(m, 0, used, n);
}

Poly w_bracket(std::span<const Poly> args) {
  const std::size_t n = args.size();
  if (n < 2) throw Error("w_bracket: needs at least two arguments");
  check_args(args, n - 1, "w_bracket");
  std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n, Poly(n - 1)));
  for (std::size_t s = 0; s < n; ++s) m[0][s] = args[s];
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t s = 0; s < n; ++s) m[r][s] = partial(args[s], r - 1);
  }
  std::vector<bool> used(n, false);
  return cofactor_det(m, 0, used, n - 1);
}

Poly poly_bracket(PolyBracket b, std::span<const Poly> args) {
  return b == PolyBracket::Jac ? jac_bracket(args) : w_bracket(args);
}

std::vector<Monomial> monomials_up_to(std::size_t vars, unsigned max_degree) {
  std::vector<Monomial> out;
  for (unsigned deg = 0; deg <= max_degree; ++deg) {
    std::vector<Monomial> layer;
    // Compositions of deg into `vars` parts.
    std::vector<unsigned> e(vars, 0);
    auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
      if (vars == 0) return;
      if (i + 1 == vars) {
        e[i] = left;
        layer.push_back(Monomial{e});
        return;
      }
      for (unsigned k = left + 1; k-- > 0;) {
        e[i] = k;
        self(self, i + 1, left - k);
      }
    };
    if (vars == 0) {
      if (deg == 0) out.push_back(Monomial{});
      continue;
    }
    rec(rec, 0, deg);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

Poly poly_from_coordinates(std::size_t vars, unsigned degree_bound, const Vector& coords) {
  const auto monos = monomials_up_to(vars, degree_bound);
  if (coords.size() != monos.size()) throw MismatchError("coordinate vector length does not match the monomial basis");
  Poly p(vars);
  for (std::size_t i = 0; i < monos.size(); ++i) p.add_term(monos[i], coords[i].rational());
  return p;
}

// ------------------------------------------------ truncated verification

PolyVerdict verify_identity_truncated(PolyIdentity which, PolyBracket bracket, std::size_t n, unsigned degree_bound,
                                      const Guards& guards) {
  const std::size_t vars = bracket_vars(bracket, n);
  if (n > kMaxPolyArity) throw Error("arity above the cofactor guard of 6");
  if (degree_bound < 1) throw Error("degree bound must be at least 1");
  const auto monos = monomials_up_to(vars, degree_bound);
  const std::size_t m = monos.size();
  std::vector<Poly> basis;
  for (const auto& mono : monos) basis.push_back(Poly::monomial(mono));

  PolyVerdict verdict{to_string(which), true, 0, degree_bound, std::nullopt};
  auto B = [&](std::vector<Poly> args) { return poly_bracket(bracket, args); };
  auto fail = [&](std::vector<std::pair<std::string, Poly>> args, Poly lhs, Poly rhs) {
    verdict.pass = false;
    verdict.witness = PolyWitness{std::move(args), std::move(lhs), std::move(rhs)};
  };
  auto pick = [&](const MultiIndex& idx) {
    std::vector<Poly> out;
    for (auto i : idx) out.push_back(basis[i]);
    return out;
  };

  switch (which) {
    case PolyIdentity::GeneralizedJacobi: {
      enforce_guard(saturating_mul(binomial(m, n), binomial(m, n - 1)), guards.max_instances,
                    "truncated generalized Jacobi check");
      const auto tails = increasing_tuples(m, n - 1);
      for_each_increasing(m, n, [&](const MultiIndex& x) {
        const auto xs = pick(x);
        const Poly inner = B(xs);
        for (const auto& y : tails) {
          ++verdict.instances;
          const auto ys = pick(y);
          std::vector<Poly> outer{inner};
          outer.insert(outer.end(), ys.begin(), ys.end());
          Poly lhs = B(outer);
          Poly rhs(vars);
          for (std::size_t i = 0; i < n; ++i) {
            std::vector<Poly> slot{xs[i]};
            slot.insert(slot.end(), ys.begin(), ys.end());
            auto args = xs;
            args[i] = B(slot);
            rhs += B(args);
          }
          if (lhs != rhs) {
            std::vector<std::pair<std::string, Poly>> w;
            for (std::size_t i = 0; i < n; ++i) w.emplace_back("x" + std::to_string(i + 1), xs[i]);
            for (std::size_t i = 0; i < ys.size(); ++i) w.emplace_back("y" + std::to_string(i + 2), ys[i]);
            fail(std::move(w), std::move(lhs), std::move(rhs));
            return false;
          }
        }
        return true;
      });
      break;
    }
    case PolyIdentity::Leibniz: {
      enforce_guard(saturating_mul(binomial(m + 1, 2), binomial(m, n - 1)), guards.max_instances,
                    "truncated Leibniz check");
      const auto tails = increasing_tuples(m, n - 1);
      for (std::size_t a = 0; a < m && verdict.pass; ++a) {
        for (std::size_t b = a; b < m && verdict.pass; ++b) {
          const Poly ab = basis[a] * basis[b];
          for (const auto& k : tails) {
            ++verdict.instances;
            const auto ks = pick(k);
            auto with = [&](const Poly& first) {
              std::vector<Poly> args{first};
              args.insert(args.end(), ks.begin(), ks.end());
              return B(args);
            };
            Poly lhs = with(ab);
            Poly rhs = basis[a] * with(basis[b]) + with(basis[a]) * basis[b];
            if (lhs != rhs) {
              std::vector<std::pair<std::string, Poly>> w{{"a", basis[a]}, {"b", basis[b]}};
              for (std::size_t i = 0; i < ks.size(); ++i) w.emplace_back("u" + std::to_string(i + 2), ks[i]);
              fail(std::move(w), std::move(lhs), std::move(rhs));
              break;
            }
          }
        }
      }
      break;
    }
    case PolyIdentity::Eq2: {
      if (n < 2) throw Error("the Poisson identity needs arity n >= 2");
      enforce_guard(saturating_mul(saturating_mul(binomial(m + 1, 2), m), binomial(m, n - 2)), guards.max_instances,
                    "truncated Poisson identity check");
      const auto rests = increasing_tuples(m, n - 2);
      for (std::size_t a = 0; a < m && verdict.pass; ++a) {
        for (std::size_t b = a; b < m && verdict.pass; ++b) {
          for (std::size_t c = 0; c < m && verdict.pass; ++c) {
            for (const auto& r : rests) {
              ++verdict.instances;
              const auto rs = pick(r);
              auto with = [&](const Poly& p, const Poly& q) {
                std::vector<Poly> args{p, q};
                args.insert(args.end(), rs.begin(), rs.end());
                return B(args);
              };
              Poly lhs = with(basis[a] * basis[b], basis[c]);
              Poly rhs = with(basis[a], basis[b] * basis[c]) + with(basis[b], basis[a] * basis[c]);
              if (lhs != rhs) {
                std::vector<std::pair<std::string, Poly>> w{{"a", basis[a]}, {"b", basis[b]}, {"c", basis[c]}};
                for (std::size_t i = 0; i < rs.size(); ++i) w.emplace_back("u" + std::to_string(i + 3), rs[i]);
                fail(std::move(w), std::move(lhs), std::move(rhs));
                break;
              }
            }
          }
        }
      }
      break;
    }
  }
  return verdict;
}

namespace {

/// Coordinates of p over `monos`; every term must appear there.
Vector coordinates(const Poly& p, const std::vector<Monomial>& monos, const std::map<Monomial, std::size_t, GrlexDescending>& index) {
  Vector v = zero_vector(FieldSpec::rationals(), monos.size());
  for (const auto& [m, c] : p.terms()) v[index.at(m)] = Scalar(FieldSpec::rationals(), c);
  return v;
}

}  // namespace

SubspaceBasis truncated_derived_span(PolyBracket bracket, std::size_t n, unsigned degree_bound, const Guards& guards) {
  const std::size_t vars = bracket_vars(bracket, n);
  const FieldSpec q = FieldSpec::rationals();
  const auto args = monomials_up_to(vars, degree_bound + static_cast<unsigned>(n));
  enforce_guard(binomial(args.size(), n), guards.max_instances, "truncated derived span");

  std::vector<Poly> basis;
  for (const auto& m : args) basis.push_back(Poly::monomial(m));
  std::vector<Poly> values;
  unsigned top = degree_bound;
  for_each_increasing(args.size(), n, [&](const MultiIndex& idx) {
    std::vector<Poly> a;
    for (auto i : idx) a.push_back(basis[i]);
    Poly v = poly_bracket(bracket, a);
    if (!v.is_zero()) {
      top = std::max(top, static_cast<unsigned>(v.degree()));
      values.push_back(std::move(v));
    }
    return true;
  });

  const auto ambient = monomials_up_to(vars, top);
  std::map<Monomial, std::size_t, GrlexDescending> index;
  for (std::size_t i = 0; i < ambient.size(); ++i) index.emplace(ambient[i], i);
  std::vector<Vector> coords;
  for (const auto& v : values) coords.push_back(coordinates(v, ambient, index));
  const auto span = SubspaceBasis::span(q, ambient.size(), coords);

  const std::size_t low = monomials_up_to(vars, degree_bound).size();
  std::vector<Vector> low_units;
  for (std::size_t i = 0; i < low; ++i) low_units.push_back(unit_vector(q, ambient.size(), i));
  const auto cut = intersect(span, SubspaceBasis::span(q, ambient.size(), low_units));

  std::vector<Vector> truncated;
  for (const auto& row : cut.rows()) truncated.emplace_back(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(low));
  return SubspaceBasis::span(q, low, truncated);
}

SubspaceBasis truncated_center(PolyBracket bracket, std::size_t n, unsigned degree_bound, const Guards& guards) {
  const std::size_t vars = bracket_vars(bracket, n);
  const FieldSpec q = FieldSpec::rationals();
  const auto inputs = monomials_up_to(vars, degree_bound);
  const auto partners = monomials_up_to(vars, degree_bound + static_cast<unsigned>(n));
  const std::uint64_t tails_count = binomial(partners.size(), n - 1);
  enforce_guard(saturating_mul(tails_count, inputs.size()), guards.max_instances, "truncated center");

  std::vector<Poly> in_basis, partner_basis;
  for (const auto& m : inputs) in_basis.push_back(Poly::monomial(m));
  for (const auto& m : partners) partner_basis.push_back(Poly::monomial(m));

  // One block of rows per tail: the coefficient of each output monomial.
  std::vector<Vector> rows;
  for_each_increasing(partners.size(), n - 1, [&](const MultiIndex& tail) {
    std::map<Monomial, Vector, GrlexDescending> block;
    for (std::size_t i = 0; i < in_basis.size(); ++i) {
      std::vector<Poly> args{in_basis[i]};
      for (auto t : tail) args.push_back(partner_basis[t]);
      const Poly v = poly_bracket(bracket, args);
      for (const auto& [m, c] : v.terms()) {
        auto it = block.try_emplace(m, zero_vector(q, inputs.size())).first;
        it->second[i] = Scalar(q, c);
      }
    }
    for (auto& [m, row] : block) rows.push_back(std::move(row));
    return true;
  });
  if (rows.empty()) return SubspaceBasis::full(q, inputs.size());
  return kernel(Matrix::from_rows(q, inputs.size(), rows));
}

}  // namespace nlie
