#include "nlie/linalg.hpp"

#include <algorithm>
#include <sstream>

#include "nlie/error.hpp"

namespace nlie {

Vector zero_vector(FieldSpec field, std::size_t dim) { return Vector(dim, Scalar(field)); }

Vector unit_vector(FieldSpec field, std::size_t dim, std::size_t index) {
  Vector v = zero_vector(field, dim);
  v.at(index) = Scalar::one(field);
  return v;
}

bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

void axpy(Vector& y, const Scalar& a, const Vector& x) {
  if (y.size() != x.size()) throw MismatchError("vector length mismatch");
  if (a.is_zero()) return;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i].is_zero()) y[i].add_product(a, x[i]);
  }
}

Vector operator+(Vector a, const Vector& b) {
  if (a.size() != b.size()) throw MismatchError("vector length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

Vector operator-(Vector a, const Vector& b) {
  if (a.size() != b.size()) throw MismatchError("vector length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

Vector operator*(const Scalar& a, Vector v) {
  for (auto& s : v) s *= a;
  return v;
}

std::string to_string(const Vector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i];
  }
  os << ')';
  return os.str();
}

std::size_t leading_index(const Vector& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_zero()) return i;
  }
  return v.size();
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(FieldSpec field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, Scalar(field)) {}

Matrix Matrix::identity(FieldSpec field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(field);
  return m;
}

Matrix Matrix::from_rows(FieldSpec field, std::size_t cols, const std::vector<Vector>& rows) {
  Matrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw MismatchError("row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::from_columns(FieldSpec field, std::size_t rows, const std::vector<Vector>& cols) {
  Matrix m(field, rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw MismatchError("column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::column(std::size_t c) const {
  Vector v;
  v.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
  return v;
}

Vector Matrix::apply(const Vector& v) const {
  if (v.size() != cols_) throw MismatchError("matrix-vector dimension mismatch");
  Vector out = zero_vector(field_, rows_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (v[c].is_zero()) continue;
    for (std::size_t r = 0; r < rows_; ++r) {
      const Scalar& a = (*this)(r, c);
      if (!a.is_zero()) out[r].add_product(a, v[c]);
    }
  }
  return out;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_ || field_ != rhs.field_) throw MismatchError("matrix product mismatch");
  Matrix out(field_, rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        const Scalar& b = rhs(k, j);
        if (!b.is_zero()) out(i, j).add_product(a, b);
      }
    }
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw MismatchError("matrix shape mismatch");
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
  return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw MismatchError("matrix shape mismatch");
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
  return out;
}

Matrix Matrix::scaled(const Scalar& a) const {
  Matrix out = *this;
  for (auto& s : out.data_) s *= a;
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  }
  return out;
}

Matrix Matrix::pow(unsigned k) const {
  if (rows_ != cols_) throw MismatchError("power of a non-square matrix");
  Matrix out = identity(field_, rows_);
  for (unsigned i = 0; i < k; ++i) out = out * *this;
  return out;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

// ------------------------------------------------------------------ RREF

RrefResult rref(const Matrix& m) {
  Matrix a = m;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t sel = r;
    while (sel < a.rows() && a(sel, c).is_zero()) ++sel;
    if (sel == a.rows()) continue;
    if (sel != r) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(sel, j), a(r, j));
    }
    const Scalar inv = a(r, c).inverse();
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      const Scalar f = -a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) {
        if (!a(r, j).is_zero()) a(i, j).add_product(f, a(r, j));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), r, std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

// --------------------------------------------------------- SubspaceBasis

SubspaceBasis::SubspaceBasis(FieldSpec field, std::size_t ambient_dim) : field_(field), ambient_(ambient_dim) {}

SubspaceBasis SubspaceBasis::full(FieldSpec field, std::size_t ambient_dim) {
  SubspaceBasis s(field, ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i) {
    s.rows_.push_back(unit_vector(field, ambient_dim, i));
    s.pivots_.push_back(i);
  }
  return s;
}

SubspaceBasis SubspaceBasis::span(FieldSpec field, std::size_t ambient_dim, const std::vector<Vector>& vectors) {
  SubspaceBuilder b(field, ambient_dim);
  for (const auto& v : vectors) b.insert(v);
  return b.build();
}

Vector SubspaceBasis::reduce(Vector v) const {
  if (v.size() != ambient_) throw MismatchError("vector length does not match ambient dimension");
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Scalar& c = v[pivots_[k]];
    if (c.is_zero()) continue;
    axpy(v, -c, rows_[k]);
  }
  return v;
}

bool SubspaceBasis::contains(const Vector& v) const { return nlie::is_zero(reduce(v)); }

bool SubspaceBasis::contains(const SubspaceBasis& other) const {
  require_same_space(*this, other);
  return std::all_of(other.rows_.begin(), other.rows_.end(), [this](const Vector& v) { return contains(v); });
}

Matrix SubspaceBasis::as_matrix() const { return Matrix::from_rows(field_, ambient_, rows_); }

bool operator==(const SubspaceBasis& a, const SubspaceBasis& b) {
  return a.field_ == b.field_ && a.ambient_ == b.ambient_ && a.rows_ == b.rows_;
}

void require_same_space(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (a.field() != b.field() || a.ambient_dim() != b.ambient_dim()) {
    throw MismatchError("subspaces live in different spaces (" + a.field().name() + "^" +
                        std::to_string(a.ambient_dim()) + " vs " + b.field().name() + "^" +
                        std::to_string(b.ambient_dim()) + ")");
  }
}

// ------------------------------------------------------ SubspaceBuilder

SubspaceBuilder::SubspaceBuilder(FieldSpec field, std::size_t ambient_dim) : basis_(field, ambient_dim) {}

SubspaceBuilder::SubspaceBuilder(const SubspaceBasis& start) : basis_(start) {}

bool SubspaceBuilder::insert(Vector v) {
  for (const auto& s : v) {
    if (s.field() != basis_.field_) throw MismatchError("vector field does not match subspace field");
  }
  v = basis_.reduce(std::move(v));
  const std::size_t lead = leading_index(v);
  if (lead == v.size()) return false;
  const Scalar inv = v[lead].inverse();
  for (auto& s : v) {
    if (!s.is_zero()) s *= inv;
  }
  for (auto& row : basis_.rows_) {
    if (!row[lead].is_zero()) axpy(row, -row[lead], v);
  }
  const auto pos = std::lower_bound(basis_.pivots_.begin(), basis_.pivots_.end(), lead);
  const auto offset = pos - basis_.pivots_.begin();
  basis_.pivots_.insert(pos, lead);
  basis_.rows_.insert(basis_.rows_.begin() + offset, std::move(v));
  return true;
}

bool SubspaceBuilder::contains(const Vector& v) const { return basis_.contains(v); }

// ------------------------------------------------------ lattice operations

SubspaceBasis kernel(const Matrix& m) {
  const auto r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v = unit_vector(m.field(), m.cols(), f);
    for (std::size_t k = 0; k < r.pivots.size(); ++k) v[r.pivots[k]] = -r.form(k, f);
    basis.push_back(std::move(v));
  }
  return SubspaceBasis::span(m.field(), m.cols(), basis);
}

SubspaceBasis sum(const SubspaceBasis& a, const SubspaceBasis& b) {
  require_same_space(a, b);
  SubspaceBuilder builder(a);
  for (const auto& v : b.rows()) builder.insert(v);
  return builder.build();
}

SubspaceBasis intersect(const SubspaceBasis& a, const SubspaceBasis& b) {
  require_same_space(a, b);
  const FieldSpec f = a.field();
  const std::size_t d = a.ambient_dim();
  if (a.is_zero() || b.is_zero()) return SubspaceBasis(f, d);
  // Columns a_1..a_k, -b_1..-b_l; a kernel vector (x, y) gives sum x_i a_i in both.
  std::vector<Vector> cols = a.rows();
  for (const auto& v : b.rows()) cols.push_back(-Scalar::one(f) * v);
  const auto ker = kernel(Matrix::from_columns(f, d, cols));
  std::vector<Vector> out;
  for (const auto& k : ker.rows()) {
    Vector v = zero_vector(f, d);
    for (std::size_t i = 0; i < a.dim(); ++i) axpy(v, k[i], a.rows()[i]);
    out.push_back(std::move(v));
  }
  return SubspaceBasis::span(f, d, out);
}

std::vector<Vector> quotient_complement(const SubspaceBasis& whole, const SubspaceBasis& sub) {
  require_same_space(whole, sub);
  if (!whole.contains(sub)) throw PreconditionError("quotient_complement: sub is not contained in whole");
  std::vector<Vector> reps;
  const auto& sp = sub.pivots();
  for (std::size_t k = 0; k < whole.dim(); ++k) {
    if (!std::binary_search(sp.begin(), sp.end(), whole.pivots()[k])) reps.push_back(whole.rows()[k]);
  }
  return reps;
}

QuotientMap::QuotientMap(SubspaceBasis whole, SubspaceBasis sub)
    : whole_(std::move(whole)), sub_(std::move(sub)), reps_(quotient_complement(whole_, sub_)) {
  for (const auto& r : reps_) rep_pivots_.push_back(leading_index(r));
}

Vector QuotientMap::project(const Vector& v) const {
  if (!whole_.contains(v)) throw PreconditionError("QuotientMap::project: vector outside the ambient subspace");
  const Vector r = sub_.reduce(v);
  Vector coords;
  coords.reserve(rep_pivots_.size());
  for (auto p : rep_pivots_) coords.push_back(r[p]);
  return coords;
}

Vector QuotientMap::lift(const Vector& coords) const {
  if (coords.size() != reps_.size()) throw MismatchError("quotient coordinate length mismatch");
  Vector v = zero_vector(whole_.field(), whole_.ambient_dim());
  for (std::size_t k = 0; k < reps_.size(); ++k) axpy(v, coords[k], reps_[k]);
  return v;
}

}  // namespace nlie
