#include "quiverkit/matrix.hpp"

#include <algorithm>

namespace quiverkit {

Matrix::Matrix(FieldPtr f, std::size_t rows, std::size_t cols)
    : field_(std::move(f)), rows_(rows), cols_(cols), e_(rows * cols, Scalar::zero(field_)) {}

Matrix Matrix::identity(const FieldPtr& f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
  return m;
}

Matrix Matrix::from_rows(const FieldPtr& f, const std::vector<Vec>& rows, std::size_t cols) {
  Matrix m(f, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) fail(errc::dimension_mismatch, "row width mismatch");
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) fail(errc::dimension_mismatch, "matrix product shape mismatch");
  Matrix r(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& x = at(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        if (o.at(k, j).is_zero()) continue;
        r.at(i, j) += x * o.at(k, j);
      }
    }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(errc::dimension_mismatch, "matrix sum shape mismatch");
  Matrix r = *this;
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(errc::dimension_mismatch, "matrix diff shape mismatch");
  Matrix r = *this;
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
}

Vec Matrix::apply(const Vec& v) const {
  if (v.size() != cols_) fail(errc::dimension_mismatch, "matrix apply shape mismatch");
  Vec r(rows_, Scalar::zero(field_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      if (at(i, j).is_zero() || v[j].is_zero()) continue;
      r[i] += at(i, j) * v[j];
    }
  return r;
}

Vec Matrix::apply_row(const Vec& v) const {
  if (v.size() != rows_) fail(errc::dimension_mismatch, "matrix apply_row shape mismatch");
  Vec r(cols_, Scalar::zero(field_));
  for (std::size_t i = 0; i < rows_; ++i) {
    if (v[i].is_zero()) continue;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (at(i, j).is_zero()) continue;
      r[j] += v[i] * at(i, j);
    }
  }
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

bool Matrix::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](const Scalar& s) { return s.is_zero(); });
}

Vec Matrix::row(std::size_t i) const {
  Vec r(cols_, Scalar::zero(field_));
  for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
  return r;
}

std::size_t Matrix::rank() const { return rref(*this).rank; }

std::optional<Matrix> Matrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  // Row-reduce [A | I].
  Matrix aug(field_, rows_, 2 * cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_ + i) = Scalar::one(field_);
  }
  auto r = rref(aug);
  for (std::size_t i = 0; i < rows_; ++i)
    if (r.pivot_columns.size() <= i || r.pivot_columns[i] != i) return std::nullopt;
  Matrix inv(field_, rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) inv.at(i, j) = r.reduced.at(i, cols_ + j);
  return inv;
}

RrefResult rref(const Matrix& m) {
  Matrix a = m;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < a.cols() && r < a.rows(); ++col) {
    std::size_t sel = a.rows();
    for (std::size_t i = r; i < a.rows(); ++i)
      if (!a.at(i, col).is_zero()) {
        sel = i;
        break;
      }
    if (sel == a.rows()) continue;
    if (sel != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(sel, j), a.at(r, j));
    Scalar inv = a.at(r, col).inverse();
    for (std::size_t j = col; j < a.cols(); ++j) a.at(r, j) = a.at(r, j) * inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a.at(i, col).is_zero()) continue;
      Scalar factor = a.at(i, col);
      for (std::size_t j = col; j < a.cols(); ++j) a.at(i, j) = a.at(i, j) - factor * a.at(r, j);
    }
    pivots.push_back(col);
    ++r;
  }
  return {std::move(a), r, std::move(pivots)};
}

std::optional<LinearSolution> solve_linear(const Matrix& a, const Vec& b) {
  if (b.size() != a.rows()) fail(errc::dimension_mismatch, "solve_linear: row count mismatch");
  const FieldPtr& f = a.field();
  Matrix aug(f, a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  auto r = rref(aug);
  // Inconsistent iff a pivot lands in the augmented column.
  for (std::size_t i = 0; i < r.pivot_columns.size(); ++i)
    if (r.pivot_columns[i] == a.cols()) return std::nullopt;

  Vec particular(a.cols(), Scalar::zero(f));
  for (std::size_t i = 0; i < r.pivot_columns.size(); ++i)
    particular[r.pivot_columns[i]] = r.reduced.at(i, a.cols());

  LinearSolution sol{std::move(particular), {}};
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : r.pivot_columns) is_pivot[p] = true;
  for (std::size_t jfree = 0; jfree < a.cols(); ++jfree) {
    if (is_pivot[jfree]) continue;
    Vec k(a.cols(), Scalar::zero(f));
    k[jfree] = Scalar::one(f);
    for (std::size_t i = 0; i < r.pivot_columns.size(); ++i)
      k[r.pivot_columns[i]] = -r.reduced.at(i, jfree);
    sol.kernel_basis.push_back(std::move(k));
  }
  return sol;
}

std::vector<Vec> kernel_basis(const Matrix& a) {
  auto sol = solve_linear(a, vec_zero(a.field(), a.rows()));
  return sol->kernel_basis;
}

bool RowSpan::add(Vec v) {
  v = reduce(std::move(v));
  std::size_t p = 0;
  while (p < width_ && v[p].is_zero()) ++p;
  if (p == width_) return false;
  Scalar inv = v[p].inverse();
  for (auto& x : v) x = x * inv;
  // Back-substitute into existing rows.
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i][p].is_zero()) continue;
    Scalar c = rows_[i][p];
    for (std::size_t j = 0; j < width_; ++j) rows_[i][j] = rows_[i][j] - c * v[j];
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, p);
  rows_.insert(rows_.begin() + pos, std::move(v));
  return true;
}

Vec RowSpan::reduce(Vec v) const {
  if (v.size() != width_) fail(errc::dimension_mismatch, "RowSpan width mismatch");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Scalar& c = v[pivots_[i]];
    if (c.is_zero()) continue;
    Scalar factor = c;
    for (std::size_t j = 0; j < width_; ++j) {
      if (rows_[i][j].is_zero()) continue;
      v[j] = v[j] - factor * rows_[i][j];
    }
  }
  return v;
}

bool RowSpan::contains(const Vec& v) const { return vec_is_zero(reduce(v)); }

std::optional<Vec> RowSpan::coordinates(const Vec& v) const {
  Vec w = v;
  Vec coords(rows_.size(), Scalar::zero(field_));
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Scalar& c = w[pivots_[i]];
    if (c.is_zero()) continue;
    coords[i] = c;
    Scalar factor = c;
    for (std::size_t j = 0; j < width_; ++j) {
      if (rows_[i][j].is_zero()) continue;
      w[j] = w[j] - factor * rows_[i][j];
    }
  }
  if (!vec_is_zero(w)) return std::nullopt;
  return coords;
}

Vec vec_zero(const FieldPtr& f, std::size_t n) { return Vec(n, Scalar::zero(f)); }

Vec vec_unit(const FieldPtr& f, std::size_t n, std::size_t i) {
  Vec v(n, Scalar::zero(f));
  v[i] = Scalar::one(f);
  return v;
}

Vec vec_add(const Vec& a, const Vec& b) {
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vec vec_scale(const Vec& a, const Scalar& c) {
  Vec r = a;
  for (auto& x : r) x = x * c;
  return r;
}

bool vec_is_zero(const Vec& a) {
  return std::all_of(a.begin(), a.end(), [](const Scalar& s) { return s.is_zero(); });
}

}  // namespace quiverkit
