#include "bigalois/matrix.hpp"

namespace bigalois {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Scalar(0)) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) throw PreconditionError("matrix entry count mismatch");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

Matrix Matrix::diagonal(const std::vector<Scalar>& diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::conjugate() const {
  Matrix c = *this;
  for (auto& e : c.entries_) e = bigalois::conjugate(e);
  return c;
}

Scalar Matrix::trace() const {
  if (!square()) throw PreconditionError("trace of a non-square matrix");
  Scalar t(0);
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

Scalar Matrix::determinant() const {
  if (!square()) throw PreconditionError("determinant of a non-square matrix");
  Matrix a = *this;
  Scalar det(1);
  const std::size_t n = rows_;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col).is_zero()) ++pivot;
    if (pivot == n) return Scalar(0);
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    Scalar inv = a(col, col).inverse();
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a(r, col).is_zero()) continue;
      Scalar f = a(r, col) * inv;
      for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
    }
  }
  return det;
}

std::optional<Matrix> Matrix::inverse() const {
  if (!square()) return std::nullopt;
  const std::size_t n = rows_;
  Matrix a = *this;
  Matrix inv = identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col).is_zero()) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    Scalar p = a(col, col).inverse();
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) *= p;
      inv(col, j) *= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col).is_zero()) continue;
      Scalar f = a(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

TowerPtr Matrix::tower() const {
  TowerPtr t = Tower::rationals();
  for (const auto& e : entries_) {
    if (e.tower() != t) t = join_towers(t, e.tower());
  }
  return t;
}

Matrix Matrix::lifted(const TowerPtr& tower) const {
  Matrix m = *this;
  for (auto& e : m.entries_) e = e.lifted(tower);
  return m;
}

Matrix Matrix::operator-() const {
  Matrix m = *this;
  for (auto& e : m.entries_) e = -e;
  return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw PreconditionError("matrix size mismatch");
  Matrix m = a;
  for (std::size_t i = 0; i < m.entries_.size(); ++i) m.entries_[i] += b.entries_[i];
  return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + (-b); }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw PreconditionError("matrix size mismatch in product");
  Matrix m(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += a(i, k) * b(k, j);
    }
  return m;
}

Matrix operator*(const Scalar& s, const Matrix& a) {
  Matrix m = a;
  for (auto& e : m.entries_) e = s * e;
  return m;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

FormMatrix::FormMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (!entries_.square()) throw PreconditionError("form matrix must be square");
  auto inv = entries_.inverse();
  if (!inv) throw SingularMatrix("matrix is singular");
  const Matrix id = Matrix::identity(entries_.rows());
  if (!(entries_ * *inv == id) || !(*inv * entries_ == id)) {
    throw SingularMatrix("inverse failed verification");
  }
  inverse_ = std::move(*inv);
}

FormMatrix sl2_form(const Scalar& q) {
  Matrix m(2, 2);
  m(0, 1) = Scalar(1);
  m(1, 0) = -q.inverse();
  return FormMatrix(std::move(m));
}

Scalar trace_invariant(const FormMatrix& e) {
  return (e.entries() * e.inverse().transpose()).trace();
}

}  // namespace bigalois
