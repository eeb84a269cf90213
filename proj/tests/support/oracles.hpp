#pragma once

// Brute-force reference implementations used to cross-check the library.
// They share only Scalar/Vector with it and recompute everything from the
// definitions: dense tables over all raw index tuples, permutation signs by
// inversion counting, subspaces as explicit sets of vectors.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "nlie/algebra.hpp"
#include "nlie/constructions.hpp"
#include "nlie/structure.hpp"

namespace oracle {

using nlie::FieldSpec;
using nlie::Scalar;
using nlie::Vector;

inline int inversion_sign(const std::vector<std::size_t>& t) {
  int inv = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      if (t[i] == t[j]) return 0;
      if (t[i] > t[j]) ++inv;
    }
  }
  return inv % 2 == 0 ? 1 : -1;
}

/// Every raw index tuple mapped to its bracket value.
class DenseBracket {
 public:
  explicit DenseBracket(const nlie::SkewBracketTensor& t) : field_(t.field()), d_(t.dim()), n_(t.arity()) {
    for (const auto& [key, value] : t.entries()) stored_[key] = value;
  }

  Vector basis(const std::vector<std::size_t>& raw) const {
    const int s = inversion_sign(raw);
    if (s == 0) return nlie::zero_vector(field_, d_);
    std::vector<std::size_t> sorted = raw;
    std::sort(sorted.begin(), sorted.end());
    const auto it = stored_.find(sorted);
    if (it == stored_.end()) return nlie::zero_vector(field_, d_);
    return s > 0 ? it->second : Scalar(field_, -1L) * it->second;
  }

  /// Full expansion over all d^n raw tuples.
  Vector eval(const std::vector<Vector>& args) const {
    Vector out = nlie::zero_vector(field_, d_);
    std::vector<std::size_t> t(n_, 0);
    while (true) {
      Scalar c = Scalar::one(field_);
      for (std::size_t i = 0; i < n_ && !c.is_zero(); ++i) c *= args[i][t[i]];
      if (!c.is_zero()) nlie::axpy(out, c, basis(t));
      std::size_t i = n_;
      while (i > 0 && t[i - 1] + 1 == d_) t[--i] = 0;
      if (i == 0) break;
      ++t[i - 1];
    }
    return out;
  }

  std::size_t dim() const { return d_; }
  std::size_t arity() const { return n_; }
  FieldSpec field() const { return field_; }

 private:
  FieldSpec field_;
  std::size_t d_;
  std::size_t n_;
  std::map<std::vector<std::size_t>, Vector> stored_;
};

/// All raw tuples of length k over [0, d).
inline std::vector<std::vector<std::size_t>> raw_tuples(std::size_t d, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> t(k, 0);
  if (d == 0 && k > 0) return out;
  while (true) {
    out.push_back(t);
    std::size_t i = k;
    while (i > 0 && t[i - 1] + 1 == d) t[--i] = 0;
    if (i == 0) break;
    ++t[i - 1];
  }
  return out;
}

/// Every vector of F_p^d.
inline std::vector<Vector> all_vectors(FieldSpec f, std::size_t d) {
  std::vector<Vector> out;
  const std::uint32_t p = f.characteristic();
  std::vector<std::uint32_t> digits(d, 0);
  while (true) {
    Vector v;
    for (auto x : digits) v.emplace_back(f, static_cast<long>(x));
    out.push_back(std::move(v));
    std::size_t i = d;
    while (i > 0 && digits[i - 1] + 1 == p) digits[--i] = 0;
    if (i == 0) break;
    ++digits[i - 1];
  }
  return out;
}

inline std::string key(const Vector& v) {
  std::string s;
  for (const auto& x : v) s += x.to_string() + ",";
  return s;
}

/// The set of elements of a subspace of F_p^d, as string keys.
inline std::set<std::string> elements(const nlie::SubspaceBasis& s) {
  std::set<std::string> out;
  for (const auto& v : all_vectors(s.field(), s.ambient_dim())) {
    if (s.contains(v)) out.insert(key(v));
  }
  return out;
}

/// Span computed by closing a set of vectors under addition and scaling.
inline std::set<std::string> span_elements(FieldSpec f, std::size_t d, const std::vector<Vector>& gens) {
  std::set<std::string> seen{key(nlie::zero_vector(f, d))};
  std::vector<Vector> all{nlie::zero_vector(f, d)};
  for (const auto& g : gens) {
    std::vector<Vector> next;
    for (const auto& v : all) {
      for (std::uint32_t c = 1; c < f.characteristic(); ++c) {
        Vector w = v;
        nlie::axpy(w, Scalar(f, static_cast<long>(c)), g);
        if (seen.insert(key(w)).second) next.push_back(w);
      }
    }
    all.insert(all.end(), next.begin(), next.end());
  }
  return seen;
}

/// S is an ideal: omega(s, e_t2, ..., e_tn) in S for every basis row s and
/// every raw tuple t.
inline bool is_ideal(const DenseBracket& b, const nlie::SubspaceBasis& s) {
  for (const auto& row : s.rows()) {
    for (const auto& t : raw_tuples(b.dim(), b.arity() - 1)) {
      std::vector<Vector> args{row};
      for (auto k : t) args.push_back(nlie::unit_vector(b.field(), b.dim(), k));
      if (!s.contains(b.eval(args))) return false;
    }
  }
  return true;
}

/// Elements v of F_p^d with omega(v, e_t...) = 0 for all raw t.
inline std::set<std::string> center_elements(const DenseBracket& b) {
  std::set<std::string> out;
  const auto tails = raw_tuples(b.dim(), b.arity() - 1);
  for (const auto& v : all_vectors(b.field(), b.dim())) {
    bool central = true;
    for (const auto& t : tails) {
      std::vector<Vector> args{v};
      for (auto k : t) args.push_back(nlie::unit_vector(b.field(), b.dim(), k));
      if (!nlie::is_zero(b.eval(args))) {
        central = false;
        break;
      }
    }
    if (central) out.insert(key(v));
  }
  return out;
}

/// Span of omega over all raw tuples of basis rows of S.
inline nlie::SubspaceBasis derived(const DenseBracket& b, const nlie::SubspaceBasis& s) {
  std::vector<Vector> values;
  for (const auto& t : raw_tuples(s.dim(), b.arity())) {
    std::vector<Vector> args;
    for (auto k : t) args.push_back(s.rows()[k]);
    values.push_back(b.eval(args));
  }
  return nlie::SubspaceBasis::span(b.field(), b.dim(), values);
}

/// Skew tensor with each increasing-tuple coefficient nonzero with
/// probability about 1/2.
inline nlie::SkewBracketTensor random_tensor(FieldSpec f, std::size_t d, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  nlie::SkewBracketTensor t(f, d, n);
  nlie::for_each_increasing(d, n, [&](const nlie::MultiIndex& idx) {
    Vector v = nlie::zero_vector(f, d);
    for (std::size_t i = 0; i < d; ++i) {
      if (rng() % 2 == 0) v[i] = Scalar(f, static_cast<long>(rng() % f.characteristic()));
    }
    if (!nlie::is_zero(v)) t.set(idx, v);
    return true;
  });
  return t;
}

struct CorpusEntry {
  std::string name;
  nlie::NLieAlgebra algebra;
};

/// Fixed corpus of bracket tensors over F_2 and F_3 with d <= 4.
inline std::vector<CorpusEntry> corpus() {
  using namespace nlie;
  const FieldSpec f2 = FieldSpec::prime(2);
  const FieldSpec f3 = FieldSpec::prime(3);
  std::vector<CorpusEntry> out;
  out.push_back({"cross F2", vector_product_algebra(2, f2)});
  out.push_back({"cross F3", vector_product_algebra(2, f3)});
  out.push_back({"vector product n=3 F2", vector_product_algebra(3, f2)});
  out.push_back({"vector product n=3 F3", vector_product_algebra(3, f3)});
  out.push_back({"zero F2 d2 n2", zero_algebra(f2, 2, 2)});
  out.push_back({"zero F2 d3 n2", zero_algebra(f2, 3, 2)});
  out.push_back({"zero F3 d3 n3", zero_algebra(f3, 3, 3)});
  out.push_back({"zero F3 d4 n2", zero_algebra(f3, 4, 2)});
  out.push_back({"jacobian k=1 p=2", jacobian_truncated(1, 2).lie()});
  out.push_back({"jacobian k=1 p=3", jacobian_truncated(1, 3).lie()});
  out.push_back({"jacobian k=2 p=2", jacobian_truncated(2, 2).lie()});
  out.push_back({"w n=2 p=2", w_truncated(2, 2)});
  out.push_back({"w n=2 p=3", w_truncated(2, 3)});
  {
    const auto j = jacobian_truncated(2, 2).lie();
    const auto a1 = derived_subspace(j, SubspaceBasis::full(f2, 4));
    out.push_back({"jacobian k=2 p=2 A1/(A1 cap Z)", subquotient(j, a1, intersect(a1, center(j))).algebra});
  }
  {
    const auto v = vector_product_algebra(3, f3);
    out.push_back({"vector product n=3 F3 / 0", quotient_algebra(v, SubspaceBasis(f3, 4)).algebra});
  }
  {
    const auto w = w_truncated(2, 3);
    out.push_back({"w n=2 p=3 / A1", quotient_algebra(w, derived_subspace(w, SubspaceBasis::full(f3, 3))).algebra});
  }
  std::uint64_t seed = 1;
  for (auto [f, d, n] : std::vector<std::tuple<FieldSpec, std::size_t, std::size_t>>{
           {f2, 3, 2}, {f2, 4, 2}, {f2, 4, 3}, {f3, 3, 2}, {f3, 4, 2}, {f3, 4, 3}, {f2, 2, 2}, {f3, 2, 2}}) {
    out.push_back({"random " + f.name() + " d" + std::to_string(d) + " n" + std::to_string(n) + " seed " +
                       std::to_string(seed),
                   NLieAlgebra(random_tensor(f, d, n, seed))});
    ++seed;
  }
  return out;
}

}  // namespace oracle
