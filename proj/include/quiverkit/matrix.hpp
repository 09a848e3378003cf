#pragma once

#include <optional>
#include <vector>

#include "quiverkit/field.hpp"

namespace quiverkit {

using Vec = std::vector<Scalar>;

/// Dense matrix over an exact field. Row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr f, std::size_t rows, std::size_t cols);
  static Matrix identity(const FieldPtr& f, std::size_t n);
  static Matrix from_rows(const FieldPtr& f, const std::vector<Vec>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const FieldPtr& field() const { return field_; }

  Scalar& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  bool operator==(const Matrix& o) const;
  Vec apply(const Vec& v) const;       // column-vector action
  Vec apply_row(const Vec& v) const;   // row-vector action: v * M
  Matrix transpose() const;
  bool is_zero() const;
  Vec row(std::size_t i) const;
  std::size_t rank() const;
  /// Inverse of a square matrix, if invertible.
  std::optional<Matrix> inverse() const;

 private:
  FieldPtr field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> e_;
};

struct RrefResult {
  Matrix reduced;
  std::size_t rank;
  std::vector<std::size_t> pivot_columns;
};

/// Unique reduced row-echelon form. Pivoting: leftmost nonzero column, first
/// nonzero row, so results are deterministic and reproducible.
RrefResult rref(const Matrix& m);

struct LinearSolution {
  Vec particular;
  std::vector<Vec> kernel_basis;
};

/// Solves a x = b. Returns nullopt iff b is outside the column space.
/// Throws DimensionMismatch when row counts disagree.
std::optional<LinearSolution> solve_linear(const Matrix& a, const Vec& b);

/// Basis of the null space of a.
std::vector<Vec> kernel_basis(const Matrix& a);

/// Incrementally maintained row space in reduced echelon form. The workhorse
/// for span, quotient-basis, and ideal-membership computations.
class RowSpan {
 public:
  RowSpan(FieldPtr f, std::size_t width) : field_(std::move(f)), width_(width) {}

  /// Reduces v against the current rows and inserts the residue if nonzero.
  /// Returns true when the rank grew.
  bool add(Vec v);
  /// Canonical residue of v modulo the span.
  Vec reduce(Vec v) const;
  bool contains(const Vec& v) const;
  std::size_t rank() const { return rows_.size(); }
  std::size_t width() const { return width_; }
  const std::vector<Vec>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  /// Coordinates of v in the row basis, if v lies in the span.
  std::optional<Vec> coordinates(const Vec& v) const;

 private:
  FieldPtr field_;
  std::size_t width_;
  std::vector<Vec> rows_;             // reduced, pivot-normalized, pivot-sorted
  std::vector<std::size_t> pivots_;
};

// Small Vec helpers shared across modules.
Vec vec_zero(const FieldPtr& f, std::size_t n);
Vec vec_unit(const FieldPtr& f, std::size_t n, std::size_t i);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Vec& a, const Scalar& c);
bool vec_is_zero(const Vec& a);

}  // namespace quiverkit
