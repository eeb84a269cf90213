#include "nlie/tensor.hpp"

#include <array>
#include <limits>

#include "nlie/error.hpp"

namespace nlie {

namespace {

/// Sorts in place (insertion sort) and returns the permutation sign, or 0 on a repeat.
int sort_with_sign(std::size_t* a, std::size_t n) {
  int sign = 1;
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = i; j > 0 && a[j - 1] >= a[j]; --j) {
      if (a[j - 1] == a[j]) return 0;
      std::swap(a[j - 1], a[j]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (a[i - 1] == a[i]) return 0;
  }
  return sign;
}

Scalar determinant(std::vector<Scalar> m, std::size_t n, FieldSpec f) {
  Scalar det = Scalar::one(f);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t r = c;
    while (r < n && m[r * n + c].is_zero()) ++r;
    if (r == n) return Scalar(f);
    if (r != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[r * n + j], m[c * n + j]);
      det = -det;
    }
    det *= m[c * n + c];
    const Scalar inv = m[c * n + c].inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i * n + c].is_zero()) continue;
      const Scalar factor = -(m[i * n + c] * inv);
      for (std::size_t j = c; j < n; ++j) m[i * n + j].add_product(factor, m[c * n + j]);
    }
  }
  return det;
}

}  // namespace

CanonicalIndex canonicalize_index(std::span<const std::size_t> raw, std::size_t dim) {
  CanonicalIndex out;
  out.indices.assign(raw.begin(), raw.end());
  for (auto i : out.indices) {
    if (i >= dim) throw Error("basis index " + std::to_string(i) + " out of range [0, " + std::to_string(dim) + ")");
  }
  out.sign = sort_with_sign(out.indices.data(), out.indices.size());
  return out;
}

std::vector<MultiIndex> increasing_tuples(std::size_t dim, std::size_t k) {
  std::vector<MultiIndex> out;
  for_each_increasing(dim, k, [&](const MultiIndex& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

SparseVector to_sparse(const Vector& v) {
  SparseVector out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_zero()) out.emplace_back(i, v[i]);
  }
  return out;
}

// ------------------------------------------------------ SkewBracketTensor

SkewBracketTensor::SkewBracketTensor(FieldSpec field, std::size_t dim, std::size_t arity)
    : field_(field), dim_(dim), arity_(arity) {
  if (arity < 1 || arity > kMaxArity) throw Error("bracket arity must lie in [1, " + std::to_string(kMaxArity) + "]");
  // Keys are base-dim numerals of the sorted tuple.
  std::uint64_t span = 1;
  for (std::size_t i = 0; i < arity; ++i) {
    const std::uint64_t base = std::max<std::size_t>(dim, 1);
    if (span > std::numeric_limits<std::uint64_t>::max() / 2 / base) throw Error("bracket tensor too large to index");
    span *= base;
  }
}

std::uint64_t SkewBracketTensor::encode(std::span<const std::size_t> sorted) const {
  std::uint64_t code = 0;
  for (auto i : sorted) code = code * dim_ + i;
  return code;
}

void SkewBracketTensor::decode(std::uint64_t code, MultiIndex& out) const {
  out.resize(arity_);
  for (std::size_t k = arity_; k-- > 0;) {
    out[k] = code % dim_;
    code /= dim_;
  }
}

void SkewBracketTensor::check_value(const Vector& value) const {
  if (value.size() != dim_) throw MismatchError("bracket value has the wrong length");
  for (const auto& s : value) {
    if (s.field() != field_) throw MismatchError("bracket value lies in the wrong field");
  }
}

void SkewBracketTensor::set(std::span<const std::size_t> args, const Vector& value) {
  if (args.size() != arity_) throw MismatchError("wrong number of bracket arguments");
  check_value(value);
  const auto c = canonicalize_index(args, dim_);
  if (c.is_zero()) {
    if (!nlie::is_zero(value)) throw Error("nonzero bracket value on a repeated index");
    return;
  }
  const auto code = encode(c.indices);
  if (nlie::is_zero(value)) {
    table_.erase(code);
    return;
  }
  table_[code] = c.sign > 0 ? value : -Scalar::one(field_) * value;
}

void SkewBracketTensor::add(std::span<const std::size_t> args, const Vector& value) {
  if (args.size() != arity_) throw MismatchError("wrong number of bracket arguments");
  check_value(value);
  const auto c = canonicalize_index(args, dim_);
  if (c.is_zero()) {
    if (!nlie::is_zero(value)) throw Error("nonzero bracket value on a repeated index");
    return;
  }
  const auto code = encode(c.indices);
  auto it = table_.find(code);
  Vector v = it == table_.end() ? zero_vector(field_, dim_) : it->second;
  axpy(v, c.sign > 0 ? Scalar::one(field_) : -Scalar::one(field_), value);
  if (nlie::is_zero(v)) {
    if (it != table_.end()) table_.erase(it);
  } else {
    table_[code] = std::move(v);
  }
}

const Vector* SkewBracketTensor::find(std::span<const std::size_t> canonical) const {
  const auto it = table_.find(encode(canonical));
  return it == table_.end() ? nullptr : &it->second;
}

const Vector* SkewBracketTensor::lookup(std::span<const std::size_t> raw, int& sign) const {
  std::array<std::size_t, kMaxArity> buf{};
  const std::size_t n = raw.size();
  if (n != arity_) throw MismatchError("wrong number of bracket arguments");
  for (std::size_t i = 0; i < n; ++i) buf[i] = raw[i];
  sign = sort_with_sign(buf.data(), n);
  if (sign == 0) return nullptr;
  const auto* v = find(std::span<const std::size_t>(buf.data(), n));
  if (v == nullptr) sign = 0;
  return v;
}

Vector SkewBracketTensor::basis_bracket(std::span<const std::size_t> raw) const {
  for (auto i : raw) {
    if (i >= dim_) throw Error("basis index out of range");
  }
  int sign = 0;
  const Vector* v = lookup(raw, sign);
  if (v == nullptr) return zero_vector(field_, dim_);
  return sign > 0 ? *v : -Scalar::one(field_) * *v;
}

std::vector<std::pair<MultiIndex, Vector>> SkewBracketTensor::entries() const {
  std::vector<std::pair<MultiIndex, Vector>> out;
  for_each_entry([&](const MultiIndex& k, const Vector& v) { out.emplace_back(k, v); });
  return out;
}

Vector bracket_eval(const SkewBracketTensor& t, std::span<const Vector> args) {
  const std::size_t n = t.arity();
  const std::size_t d = t.dim();
  const FieldSpec f = t.field();
  if (args.size() != n) throw MismatchError("bracket_eval: expected " + std::to_string(n) + " arguments");
  std::vector<SparseVector> supp;
  supp.reserve(n);
  for (const auto& a : args) {
    if (a.size() != d) throw MismatchError("bracket_eval: argument length does not match dimension");
    for (const auto& s : a) {
      if (s.field() != f) throw MismatchError("bracket_eval: argument field mismatch");
    }
    supp.push_back(to_sparse(a));
  }
  Vector out = zero_vector(f, d);
  if (t.is_zero()) return out;

  double expand_cost = 1;
  for (const auto& s : supp) expand_cost *= static_cast<double>(s.size());
  const double det_cost = static_cast<double>(t.entry_count()) * static_cast<double>(n * n * n + d);

  if (expand_cost <= det_cost) {
    std::array<std::size_t, kMaxArity> idx{};
    // Depth-first over one support entry per slot, skipping repeated indices.
    auto recurse = [&](auto&& self, std::size_t slot, const Scalar& coef) -> void {
      if (slot == n) {
        int sign = 0;
        const Vector* v = t.lookup(std::span<const std::size_t>(idx.data(), n), sign);
        if (v != nullptr) axpy(out, sign > 0 ? coef : -coef, *v);
        return;
      }
      for (const auto& [i, c] : supp[slot]) {
        bool repeat = false;
        for (std::size_t s = 0; s < slot; ++s) repeat |= idx[s] == i;
        if (repeat) continue;
        idx[slot] = i;
        self(self, slot + 1, coef * c);
      }
    };
    recurse(recurse, 0, Scalar::one(f));
    return out;
  }

  // Dense arguments: coefficient of each stored key is the n x n minor.
  std::vector<Scalar> minor(n * n, Scalar(f));
  t.for_each_entry([&](const MultiIndex& key, const Vector& value) {
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t c = 0; c < n; ++c) minor[s * n + c] = args[s][key[c]];
    }
    const Scalar det = determinant(minor, n, f);
    if (!det.is_zero()) axpy(out, det, value);
  });
  return out;
}

// ------------------------------------------------------- SymProductTensor

SymProductTensor::SymProductTensor(FieldSpec field, std::size_t dim) : field_(field), dim_(dim) {}

void SymProductTensor::set(std::size_t i, std::size_t j, const Vector& value) {
  if (i >= dim_ || j >= dim_) throw Error("product index out of range");
  if (value.size() != dim_) throw MismatchError("product value has the wrong length");
  for (const auto& s : value) {
    if (s.field() != field_) throw MismatchError("product value lies in the wrong field");
  }
  if (i > j) std::swap(i, j);
  if (nlie::is_zero(value)) {
    table_.erase({i, j});
  } else {
    table_[{i, j}] = value;
  }
}

const Vector* SymProductTensor::find(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  const auto it = table_.find({i, j});
  return it == table_.end() ? nullptr : &it->second;
}

Vector SymProductTensor::basis_product(std::size_t i, std::size_t j) const {
  if (i >= dim_ || j >= dim_) throw Error("product index out of range");
  const Vector* v = find(i, j);
  return v ? *v : zero_vector(field_, dim_);
}

std::vector<std::pair<std::pair<std::size_t, std::size_t>, Vector>> SymProductTensor::entries() const {
  return {table_.begin(), table_.end()};
}

Vector product_eval(const SymProductTensor& p, const Vector& a, const Vector& b) {
  if (a.size() != p.dim() || b.size() != p.dim()) throw MismatchError("product_eval: dimension mismatch");
  for (const auto* v : {&a, &b}) {
    for (const auto& s : *v) {
      if (s.field() != p.field()) throw MismatchError("product_eval: field mismatch");
    }
  }
  Vector out = zero_vector(p.field(), p.dim());
  const auto sa = to_sparse(a);
  const auto sb = to_sparse(b);
  for (const auto& [i, ci] : sa) {
    for (const auto& [j, cj] : sb) {
      if (const Vector* v = p.find(i, j)) axpy(out, ci * cj, *v);
    }
  }
  return out;
}

Matrix multiplication_operator(const SymProductTensor& p, const Vector& a) {
  std::vector<Vector> cols;
  cols.reserve(p.dim());
  for (std::size_t j = 0; j < p.dim(); ++j) cols.push_back(product_eval(p, a, unit_vector(p.field(), p.dim(), j)));
  return Matrix::from_columns(p.field(), p.dim(), cols);
}

}  // namespace nlie
