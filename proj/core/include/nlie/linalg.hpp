#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nlie/scalar.hpp"

namespace nlie {

/// Dense coordinate vector. All entries share one field.
using Vector = std::vector<Scalar>;

Vector zero_vector(FieldSpec field, std::size_t dim);
Vector unit_vector(FieldSpec field, std::size_t dim, std::size_t index);
bool is_zero(const Vector& v);
/// y += a * x
void axpy(Vector& y, const Scalar& a, const Vector& x);
Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector operator*(const Scalar& a, Vector v);
/// "(1, 0, -1/2)"
std::string to_string(const Vector& v);
/// Index of the first nonzero entry, or v.size().
std::size_t leading_index(const Vector& v);

class Matrix {
 public:
  Matrix(FieldSpec field, std::size_t rows, std::size_t cols);

  static Matrix identity(FieldSpec field, std::size_t n);
  static Matrix from_rows(FieldSpec field, std::size_t cols, const std::vector<Vector>& rows);
  static Matrix from_columns(FieldSpec field, std::size_t rows, const std::vector<Vector>& cols);

  FieldSpec field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;

  Vector apply(const Vector& v) const;
  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix scaled(const Scalar& a) const;
  Matrix transpose() const;
  Matrix pow(unsigned k) const;
  bool is_zero() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  FieldSpec field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> data_;
};

struct RrefResult {
  Matrix form;
  std::size_t rank;
  std::vector<std::size_t> pivots;
};

/// Gauss-Jordan elimination; the pivot of each step is the first nonzero
/// entry in the leftmost remaining column.
RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);

/// A subspace of F^d kept in reduced row echelon form: pivots strictly
/// increase, pivot entries are 1 and pivot columns are otherwise zero.
/// Equal subspaces have identical representations.
class SubspaceBasis {
 public:
  /// The zero subspace of F^ambient_dim.
  SubspaceBasis(FieldSpec field, std::size_t ambient_dim);

  static SubspaceBasis full(FieldSpec field, std::size_t ambient_dim);
  static SubspaceBasis span(FieldSpec field, std::size_t ambient_dim, const std::vector<Vector>& vectors);

  FieldSpec field() const { return field_; }
  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }
  bool is_zero() const { return rows_.empty(); }
  bool is_full() const { return rows_.size() == ambient_; }
  const std::vector<Vector>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// v minus its component along the pivot columns; zero iff v is in the span.
  Vector reduce(Vector v) const;
  bool contains(const Vector& v) const;
  /// other is a subspace of *this.
  bool contains(const SubspaceBasis& other) const;

  Matrix as_matrix() const;

  friend bool operator==(const SubspaceBasis& a, const SubspaceBasis& b);

 private:
  friend class SubspaceBuilder;
  FieldSpec field_;
  std::size_t ambient_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

/// Incremental RREF used by fixpoint computations.
class SubspaceBuilder {
 public:
  SubspaceBuilder(FieldSpec field, std::size_t ambient_dim);
  explicit SubspaceBuilder(const SubspaceBasis& start);

  /// Returns true when v was not already in the span.
  bool insert(Vector v);
  bool contains(const Vector& v) const;
  std::size_t dim() const { return basis_.dim(); }
  std::size_t ambient_dim() const { return basis_.ambient_dim(); }
  const SubspaceBasis& current() const { return basis_; }
  SubspaceBasis build() const { return basis_; }

 private:
  SubspaceBasis basis_;
};

/// Right null space.
SubspaceBasis kernel(const Matrix& m);
SubspaceBasis sum(const SubspaceBasis& a, const SubspaceBasis& b);
/// Computed from the kernel of the stacked bases.
SubspaceBasis intersect(const SubspaceBasis& a, const SubspaceBasis& b);
/// Rows of `whole` whose pivots are not pivots of `sub`; their classes form a
/// basis of whole/sub. Throws PreconditionError unless sub is inside whole.
std::vector<Vector> quotient_complement(const SubspaceBasis& whole, const SubspaceBasis& sub);

/// Coordinates for whole/sub on the representatives of quotient_complement.
class QuotientMap {
 public:
  QuotientMap(SubspaceBasis whole, SubspaceBasis sub);

  const SubspaceBasis& whole() const { return whole_; }
  const SubspaceBasis& sub() const { return sub_; }
  std::size_t dim() const { return reps_.size(); }
  const std::vector<Vector>& representatives() const { return reps_; }

  /// Coordinates of the class of v; v must lie in whole.
  Vector project(const Vector& v) const;
  /// The representative combination with the given coordinates.
  Vector lift(const Vector& coords) const;

 private:
  SubspaceBasis whole_;
  SubspaceBasis sub_;
  std::vector<Vector> reps_;
  std::vector<std::size_t> rep_pivots_;
};

void require_same_space(const SubspaceBasis& a, const SubspaceBasis& b);

}  // namespace nlie
