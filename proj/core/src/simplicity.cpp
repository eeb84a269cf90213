#include "nlie/simplicity.hpp"

#include <deque>
#include <random>
#include <tuple>

#include "nlie/error.hpp"

namespace nlie {

std::string to_string(SimplicityKind kind) {
  switch (kind) {
    case SimplicityKind::Simple:
      return "Simple";
    case SimplicityKind::NotSimple:
      return "NotSimple";
    case SimplicityKind::Unknown:
      return "Unknown";
  }
  return "?";
}

std::string describe(const SimplicityCertificate& c) {
  if (c.method == "ExhaustiveProjective") {
    return "ExhaustiveProjective(" + std::to_string(c.p) + "," + std::to_string(c.d) + ")";
  }
  if (c.method == "ModPReduction") return "ModPReduction(" + std::to_string(c.p) + ")";
  return c.method + "(" + std::to_string(c.p) + "," + std::to_string(c.d) + ")";
}

SkewBracketTensor reduce_mod_p(const SkewBracketTensor& t, std::uint32_t p) {
  if (!t.field().is_rational()) throw Error("reduce_mod_p: structure constants are not rational");
  const FieldSpec f = FieldSpec::prime(p);
  SkewBracketTensor out(f, t.dim(), t.arity());
  t.for_each_entry([&](const MultiIndex& key, const Vector& value) {
    Vector v;
    for (const auto& s : value) v.emplace_back(f, s.rational());
    if (!is_zero(v)) out.set(key, v);
  });
  return out;
}

SymProductTensor reduce_mod_p(const SymProductTensor& t, std::uint32_t p) {
  if (!t.field().is_rational()) throw Error("reduce_mod_p: structure constants are not rational");
  const FieldSpec f = FieldSpec::prime(p);
  SymProductTensor out(f, t.dim());
  for (const auto& [ij, value] : t.entries()) {
    Vector v;
    for (const auto& s : value) v.emplace_back(f, s.rational());
    if (!is_zero(v)) out.set(ij.first, ij.second, v);
  }
  return out;
}

namespace {

using Row = std::vector<std::uint32_t>;

/// Sparse d x d operator over F_p.
struct FpOp {
  std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> entries;  // (row, col, value)
};

struct FpContext {
  std::uint64_t p;
  std::size_t d;

  std::uint32_t mul(std::uint64_t a, std::uint64_t b) const { return static_cast<std::uint32_t>(a * b % p); }
  std::uint32_t add(std::uint64_t a, std::uint64_t b) const { return static_cast<std::uint32_t>((a + b) % p); }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : static_cast<std::uint32_t>(p - a); }
  std::uint32_t inv(std::uint32_t a) const {
    std::uint64_t result = 1, base = a, e = p - 2;
    while (e > 0) {
      if (e & 1U) result = result * base % p;
      base = base * base % p;
      e >>= 1U;
    }
    return static_cast<std::uint32_t>(result);
  }

  Row apply(const FpOp& op, const Row& v) const {
    Row out(d, 0);
    for (const auto& [r, c, value] : op.entries) {
      if (v[c] != 0) out[r] = add(out[r], mul(value, v[c]));
    }
    return out;
  }
};

/// Incremental echelon basis; each stored row has a 1 at its pivot and zeros
/// at the pivots of earlier rows.
class FpSpan {
 public:
  explicit FpSpan(const FpContext& ctx) : ctx_(ctx) {}

  bool insert(Row v) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const std::uint32_t c = v[pivots_[i]];
      if (c == 0) continue;
      const std::uint32_t m = ctx_.neg(c);
      for (std::size_t j = 0; j < ctx_.d; ++j) {
        if (rows_[i][j] != 0) v[j] = ctx_.add(v[j], ctx_.mul(m, rows_[i][j]));
      }
    }
    std::size_t lead = 0;
    while (lead < ctx_.d && v[lead] == 0) ++lead;
    if (lead == ctx_.d) return false;
    const std::uint32_t s = ctx_.inv(v[lead]);
    for (auto& x : v) x = ctx_.mul(x, s);
    rows_.push_back(std::move(v));
    pivots_.push_back(lead);
    return true;
  }

  std::size_t dim() const { return rows_.size(); }
  const std::vector<Row>& rows() const { return rows_; }

 private:
  const FpContext& ctx_;
  std::vector<Row> rows_;
  std::vector<std::size_t> pivots_;
};

FpSpan fp_closure(const FpContext& ctx, const std::vector<FpOp>& ops, const Row& start) {
  FpSpan span(ctx);
  if (!span.insert(start)) return span;
  std::deque<Row> work{span.rows().back()};
  while (!work.empty() && span.dim() < ctx.d) {
    const Row v = std::move(work.front());
    work.pop_front();
    for (const auto& op : ops) {
      Row w = ctx.apply(op, v);
      if (span.insert(w)) work.push_back(span.rows().back());
      if (span.dim() == ctx.d) break;
    }
  }
  return span;
}

SubspaceBasis to_basis(FieldSpec f, std::size_t d, const std::vector<Row>& rows) {
  std::vector<Vector> vs;
  for (const auto& r : rows) {
    Vector v;
    for (auto x : r) v.emplace_back(f, static_cast<long>(x));
    vs.push_back(std::move(v));
  }
  return SubspaceBasis::span(f, d, vs);
}

FpOp to_fp(const Matrix& m) {
  FpOp op;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (!m(r, c).is_zero()) {
        op.entries.emplace_back(static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c), m(r, c).residue());
      }
    }
  }
  return op;
}

FpOp transposed(const FpOp& op) {
  FpOp t;
  for (const auto& [r, c, v] : op.entries) t.entries.emplace_back(c, r, v);
  return t;
}

bool bracket_vanishes(const SkewBracketTensor& bracket, IdealKind kind) {
  return kind != IdealKind::Associative && bracket.is_zero();
}

/// Dense matrix helpers for the Norton test.
using Dense = std::vector<Row>;

Dense dense(const FpContext& ctx, const FpOp& op) {
  Dense m(ctx.d, Row(ctx.d, 0));
  for (const auto& [r, c, v] : op.entries) m[r][c] = v;
  return m;
}

Dense multiply(const FpContext& ctx, const Dense& a, const Dense& b) {
  Dense out(ctx.d, Row(ctx.d, 0));
  for (std::size_t i = 0; i < ctx.d; ++i) {
    for (std::size_t k = 0; k < ctx.d; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < ctx.d; ++j) {
        if (b[k][j] != 0) out[i][j] = ctx.add(out[i][j], ctx.mul(a[i][k], b[k][j]));
      }
    }
  }
  return out;
}

void add_scaled(const FpContext& ctx, Dense& acc, std::uint32_t c, const Dense& m) {
  for (std::size_t i = 0; i < ctx.d; ++i) {
    for (std::size_t j = 0; j < ctx.d; ++j) {
      if (m[i][j] != 0) acc[i][j] = ctx.add(acc[i][j], ctx.mul(c, m[i][j]));
    }
  }
}

/// Right null space of m.
std::vector<Row> fp_kernel(const FpContext& ctx, Dense m) {
  const std::size_t d = ctx.d;
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < d && row < d; ++col) {
    std::size_t sel = row;
    while (sel < d && m[sel][col] == 0) ++sel;
    if (sel == d) continue;
    std::swap(m[sel], m[row]);
    const std::uint32_t s = ctx.inv(m[row][col]);
    for (auto& x : m[row]) x = ctx.mul(x, s);
    for (std::size_t r = 0; r < d; ++r) {
      if (r == row || m[r][col] == 0) continue;
      const std::uint32_t f = ctx.neg(m[r][col]);
      for (std::size_t j = 0; j < d; ++j) {
        if (m[row][j] != 0) m[r][j] = ctx.add(m[r][j], ctx.mul(f, m[row][j]));
      }
    }
    pivot_cols.push_back(col);
    ++row;
  }
  std::vector<bool> is_pivot(d, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  std::vector<Row> out;
  for (std::size_t free = 0; free < d; ++free) {
    if (is_pivot[free]) continue;
    Row v(d, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) v[pivot_cols[r]] = ctx.neg(m[r][free]);
    out.push_back(std::move(v));
  }
  return out;
}

/// All normalized nonzero combinations of the given vectors.
template <class F>
bool for_each_projective_combination(const FpContext& ctx, const std::vector<Row>& basis, F&& f) {
  const std::size_t k = basis.size();
  for (std::size_t lead = 0; lead < k; ++lead) {
    std::vector<std::uint32_t> digits(k - lead - 1, 0);
    while (true) {
      Row v = basis[lead];
      for (std::size_t i = 0; i < digits.size(); ++i) {
        if (digits[i] == 0) continue;
        for (std::size_t j = 0; j < ctx.d; ++j) v[j] = ctx.add(v[j], ctx.mul(digits[i], basis[lead + 1 + i][j]));
      }
      if (!f(v)) return false;
      std::size_t i = digits.size();
      while (i > 0 && digits[i - 1] + 1 == ctx.p) digits[--i] = 0;
      if (i == 0) break;
      ++digits[i - 1];
    }
  }
  return true;
}

struct FpProblem {
  FieldSpec field;
  FpContext ctx;
  std::vector<FpOp> ops;
};

FpProblem make_problem(const SkewBracketTensor& bracket, const SymProductTensor* product, IdealKind kind) {
  const FieldSpec f = bracket.field();
  FpProblem prob{f, FpContext{f.characteristic(), bracket.dim()}, {}};
  for (const auto& m : ideal_generators(bracket, product, kind)) prob.ops.push_back(to_fp(m));
  return prob;
}

struct ExhaustiveOutcome {
  bool all_full = true;
  std::uint64_t points = 0;
  std::optional<SubspaceBasis> witness;
};

ExhaustiveOutcome exhaustive(const FpProblem& prob) {
  ExhaustiveOutcome out;
  std::vector<Row> basis;
  for (std::size_t i = 0; i < prob.ctx.d; ++i) {
    Row e(prob.ctx.d, 0);
    e[i] = 1;
    basis.push_back(std::move(e));
  }
  for_each_projective_combination(prob.ctx, basis, [&](const Row& v) {
    ++out.points;
    const FpSpan span = fp_closure(prob.ctx, prob.ops, v);
    if (span.dim() < prob.ctx.d) {
      out.all_full = false;
      out.witness = to_basis(prob.field, prob.ctx.d, span.rows());
      return false;
    }
    return true;
  });
  return out;
}

std::uint64_t attempt_seed(std::uint64_t seed, std::uint64_t attempt) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (attempt + 1);
  z = (z ^ (z >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27U)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31U);
}

/// Random element of the operator algebra: a combination of generators plus
/// one product of two and one of three generators.
Dense random_element(const FpProblem& prob, std::uint64_t seed, std::uint64_t attempt) {
  const FpContext& ctx = prob.ctx;
  std::mt19937_64 rng(attempt_seed(seed, attempt));
  auto coef = [&] { return static_cast<std::uint32_t>(rng() % ctx.p); };
  auto pick = [&] { return static_cast<std::size_t>(rng() % prob.ops.size()); };
  Dense theta(ctx.d, Row(ctx.d, 0));
  for (const auto& op : prob.ops) add_scaled(ctx, theta, coef(), dense(ctx, op));
  const Dense a = dense(ctx, prob.ops[pick()]);
  const Dense b = dense(ctx, prob.ops[pick()]);
  const Dense c = dense(ctx, prob.ops[pick()]);
  const Dense ab = multiply(ctx, a, b);
  add_scaled(ctx, theta, coef(), ab);
  add_scaled(ctx, theta, coef(), multiply(ctx, ab, c));
  return theta;
}

constexpr std::uint64_t kMaxKernelPoints = 256;
constexpr std::uint32_t kMaxLambdas = 64;

enum class NortonResult { Irreducible, Reducible, Inconclusive };

struct NortonOutcome {
  NortonResult result = NortonResult::Inconclusive;
  std::optional<SubspaceBasis> witness;
};

/// Norton's criterion for theta - lambda*I.
NortonOutcome norton_step(const FpProblem& prob, const Dense& theta, std::uint32_t lambda) {
  const FpContext& ctx = prob.ctx;
  Dense shifted = theta;
  for (std::size_t i = 0; i < ctx.d; ++i) shifted[i][i] = ctx.add(shifted[i][i], ctx.neg(lambda));
  const auto ker = fp_kernel(ctx, shifted);
  NortonOutcome out;
  if (ker.empty()) return out;
  if (saturating_pow(ctx.p, ker.size()) / ctx.p > kMaxKernelPoints) return out;

  bool every_full = for_each_projective_combination(ctx, ker, [&](const Row& v) {
    const FpSpan span = fp_closure(ctx, prob.ops, v);
    if (span.dim() < ctx.d) {
      out.result = NortonResult::Reducible;
      out.witness = to_basis(prob.field, ctx.d, span.rows());
      return false;
    }
    return true;
  });
  if (!every_full) return out;

  Dense t(ctx.d, Row(ctx.d, 0));
  for (std::size_t i = 0; i < ctx.d; ++i) {
    for (std::size_t j = 0; j < ctx.d; ++j) t[i][j] = shifted[j][i];
  }
  const auto coker = fp_kernel(ctx, t);
  std::vector<FpOp> dual;
  for (const auto& op : prob.ops) dual.push_back(transposed(op));
  const FpSpan span = fp_closure(ctx, dual, coker.front());
  if (span.dim() == ctx.d) {
    out.result = NortonResult::Irreducible;
    return out;
  }
  // The annihilator of a proper invariant subspace of the dual is a proper
  // invariant subspace.
  const SubspaceBasis w = to_basis(prob.field, ctx.d, span.rows());
  out.result = NortonResult::Reducible;
  out.witness = kernel(w.as_matrix());
  return out;
}

std::uint32_t lambda_count(const FpContext& ctx) {
  return static_cast<std::uint32_t>(std::min<std::uint64_t>(ctx.p, kMaxLambdas));
}

SimplicityVerdict not_simple(SubspaceBasis witness, std::string reason, std::uint64_t seed) {
  SimplicityVerdict v;
  v.kind = SimplicityKind::NotSimple;
  v.witness = std::move(witness);
  v.reason = std::move(reason);
  v.seed = seed;
  return v;
}

SimplicityVerdict simple_fp(const SkewBracketTensor& bracket, const SymProductTensor* product, IdealKind kind,
                            const SimplicityOptions& opt) {
  const FpProblem prob = make_problem(bracket, product, kind);
  const std::size_t d = prob.ctx.d;
  const std::uint64_t p = prob.ctx.p;

  if (saturating_pow(p, d) <= opt.guards.max_projective) {
    auto out = exhaustive(prob);
    if (!out.all_full) return not_simple(std::move(*out.witness), "proper closure of a projective point", opt.seed);
    SimplicityVerdict v;
    v.kind = SimplicityKind::Simple;
    v.certificate = SimplicityCertificate{"ExhaustiveProjective", static_cast<std::uint32_t>(p), d, out.points, "", opt.seed, 0, 0};
    v.seed = opt.seed;
    return v;
  }

  // Basis vectors first: cheap and deterministic.
  for (std::size_t i = 0; i < d; ++i) {
    Row e(d, 0);
    e[i] = 1;
    const FpSpan span = fp_closure(prob.ctx, prob.ops, e);
    if (span.dim() < d) {
      return not_simple(to_basis(prob.field, d, span.rows()), "proper closure of a basis vector", opt.seed);
    }
  }

  if (!prob.ops.empty()) {
    for (std::uint64_t attempt = 0; attempt < opt.norton_attempts; ++attempt) {
      const Dense theta = random_element(prob, opt.seed, attempt);
      for (std::uint32_t lambda = 0; lambda < lambda_count(prob.ctx); ++lambda) {
        auto out = norton_step(prob, theta, lambda);
        if (out.result == NortonResult::Inconclusive) continue;
        if (out.result == NortonResult::Reducible) {
          return not_simple(std::move(*out.witness), "proper invariant subspace from a singular element",
                            opt.seed);
        }
        SimplicityVerdict v;
        v.kind = SimplicityKind::Simple;
        v.certificate = SimplicityCertificate{"Norton", static_cast<std::uint32_t>(p), d, 0, "", opt.seed, attempt,
                                              lambda};
        v.seed = opt.seed;
        return v;
      }
    }
  }

  SimplicityVerdict v;
  v.reason = "p^d above the projective guard and no usable singular element found";
  v.seed = opt.seed;
  return v;
}

bool admissible(const SkewBracketTensor& t, const SymProductTensor* product, std::uint32_t p) {
  const mpz_class pz(p);
  auto ok = [&](const Vector& value) {
    for (const auto& s : value) {
      if (mpz_divisible_p(s.rational().get_den_mpz_t(), pz.get_mpz_t()) != 0) return false;
    }
    return true;
  };
  bool good = true;
  t.for_each_entry([&](const MultiIndex&, const Vector& value) { good = good && ok(value); });
  if (product != nullptr) {
    for (const auto& [ij, value] : product->entries()) good = good && ok(value);
  }
  return good;
}

constexpr std::size_t kReductionPrimes = 8;

SimplicityVerdict simple_q(const SkewBracketTensor& bracket, const SymProductTensor* product, IdealKind kind,
                           const SimplicityOptions& opt) {
  const FieldSpec f = bracket.field();
  const std::size_t d = bracket.dim();
  const auto gens = ideal_generators(bracket, product, kind);
  for (std::size_t i = 0; i < d; ++i) {
    auto c = closure_under(gens, SubspaceBasis::span(f, d, {unit_vector(f, d, i)}));
    if (!c.is_full()) return not_simple(std::move(c), "proper closure of a basis vector", opt.seed);
  }

  std::vector<std::uint32_t> primes;
  if (opt.mod_p) {
    primes.push_back(*opt.mod_p);
  } else {
    for (std::uint32_t p = 5; primes.size() < kReductionPrimes; p += 2) {
      if (is_prime(p)) primes.push_back(p);
    }
  }
  for (auto p : primes) {
    if (!is_prime(p)) throw Error("mod-p reduction needs a prime");
    if (!admissible(bracket, product, p)) continue;
    const auto rb = reduce_mod_p(bracket, p);
    std::optional<SymProductTensor> rp;
    if (product != nullptr) rp = reduce_mod_p(*product, p);
    if (bracket_vanishes(rb, kind)) continue;
    const auto inner = simple_fp(rb, rp ? &*rp : nullptr, kind, opt);
    if (inner.kind != SimplicityKind::Simple) continue;
    SimplicityVerdict v;
    v.kind = SimplicityKind::Simple;
    SimplicityCertificate c = *inner.certificate;
    c.inner_method = c.method;
    c.method = "ModPReduction";
    v.certificate = c;
    v.seed = opt.seed;
    return v;
  }

  std::mt19937_64 rng(opt.seed);
  for (std::size_t probe = 0; probe < opt.random_probes; ++probe) {
    Vector v;
    for (std::size_t i = 0; i < d; ++i) v.emplace_back(f, static_cast<long>(rng() % 7) - 3);
    if (is_zero(v)) continue;
    auto c = closure_under(gens, SubspaceBasis::span(f, d, {v}));
    if (!c.is_full()) return not_simple(std::move(c), "proper closure of a random vector", opt.seed);
  }

  SimplicityVerdict v;
  v.reason = "no reduction certified simplicity and probing found no proper ideal";
  v.seed = opt.seed;
  return v;
}

}  // namespace

SimplicityVerdict is_simple(const SkewBracketTensor& bracket, const SymProductTensor* product, IdealKind kind,
                            const SimplicityOptions& options) {
  const FieldSpec f = bracket.field();
  const std::size_t d = bracket.dim();
  if (kind != IdealKind::NLie) {
    if (product == nullptr) throw PreconditionError("associative and Poisson ideals need the product");
    if (product->dim() != d || product->field() != f) throw MismatchError("product and bracket live in different spaces");
  }

  if (bracket_vanishes(bracket, kind)) {
    const auto gens = ideal_generators(bracket, product, kind);
    for (std::size_t i = 0; i < d && d >= 2; ++i) {
      auto c = closure_under(gens, SubspaceBasis::span(f, d, {unit_vector(f, d, i)}));
      if (!c.is_full()) return not_simple(std::move(c), "bracket is zero", options.seed);
    }
    return not_simple(SubspaceBasis(f, d), "bracket is zero", options.seed);
  }
  if (d == 0) return not_simple(SubspaceBasis(f, 0), "zero-dimensional", options.seed);
  return f.is_rational() ? simple_q(bracket, product, kind, options) : simple_fp(bracket, product, kind, options);
}

SimplicityVerdict is_simple(const NLieAlgebra& alg, const SimplicityOptions& options) {
  return is_simple(alg.bracket(), nullptr, IdealKind::NLie, options);
}

SimplicityVerdict is_simple(const NLiePoissonAlgebra& alg, IdealKind kind, const SimplicityOptions& options) {
  return is_simple(alg.bracket(), &alg.product(), kind, options);
}

namespace {

bool replay_fp(const SkewBracketTensor& bracket, const SymProductTensor* product, IdealKind kind,
               const SimplicityCertificate& c, const std::string& method) {
  if (bracket.field().characteristic() != c.p || bracket.dim() != c.d) return false;
  if (bracket_vanishes(bracket, kind)) return false;
  const FpProblem prob = make_problem(bracket, product, kind);
  if (method == "ExhaustiveProjective") {
    const auto out = exhaustive(prob);
    return out.all_full && out.points == c.points_checked;
  }
  if (method == "Norton") {
    if (prob.ops.empty()) return false;
    const Dense theta = random_element(prob, c.seed, c.attempt);
    return norton_step(prob, theta, c.lambda).result == NortonResult::Irreducible;
  }
  return false;
}

}  // namespace

bool replay_verdict(const SkewBracketTensor& bracket, const SymProductTensor* product, IdealKind kind,
                    const SimplicityVerdict& verdict, const Guards& guards) {
  (void)guards;
  switch (verdict.kind) {
    case SimplicityKind::Unknown:
      return false;
    case SimplicityKind::NotSimple: {
      if (!verdict.witness) return false;
      const auto& w = *verdict.witness;
      if (w.ambient_dim() != bracket.dim() || w.field() != bracket.field()) return false;
      const auto gens = ideal_generators(bracket, product, kind);
      if (!is_stable(gens, w)) return false;
      if (!w.is_zero() && !w.is_full()) return true;
      return bracket_vanishes(bracket, kind);
    }
    case SimplicityKind::Simple: {
      if (!verdict.certificate) return false;
      const auto& c = *verdict.certificate;
      if (c.method != "ModPReduction") return replay_fp(bracket, product, kind, c, c.method);
      if (!bracket.field().is_rational() || !admissible(bracket, product, c.p)) return false;
      const auto rb = reduce_mod_p(bracket, c.p);
      std::optional<SymProductTensor> rp;
      if (product != nullptr) rp = reduce_mod_p(*product, c.p);
      return replay_fp(rb, rp ? &*rp : nullptr, kind, c, c.inner_method);
    }
  }
  return false;
}

}  // namespace nlie
