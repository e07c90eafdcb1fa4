#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bigalois/scalar.hpp"

namespace bigalois {

/// Dense row-major matrix of exact scalars.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(const std::vector<Scalar>& diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  const std::vector<Scalar>& entries() const { return entries_; }

  Matrix transpose() const;
  Matrix conjugate() const;
  /// Conjugate transpose.
  Matrix adjoint() const { return conjugate().transpose(); }
  Scalar trace() const;
  Scalar determinant() const;
  std::optional<Matrix> inverse() const;

  /// Deepest tower among the entries.
  TowerPtr tower() const;
  Matrix lifted(const TowerPtr& tower) const;

  Matrix operator-() const;
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Scalar& s, const Matrix& a);
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> entries_;
};

/// An invertible square matrix with its exact inverse (verified on both sides).
class FormMatrix {
 public:
  explicit FormMatrix(Matrix entries);

  std::size_t size() const { return entries_.rows(); }
  const Matrix& entries() const { return entries_; }
  const Matrix& inverse() const { return inverse_; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  TowerPtr tower() const { return entries_.tower(); }

  friend bool operator==(const FormMatrix& a, const FormMatrix& b) {
    return a.entries_ == b.entries_;
  }

 private:
  Matrix entries_;
  Matrix inverse_;
};

/// The matrix E_q = ((0, 1), (-1/q, 0)) whose form algebra is O(SL_q(2)).
FormMatrix sl2_form(const Scalar& q);

/// tr(E (E^{-1})^t), the invariant fixing q through q^2 + tr q + 1 = 0.
Scalar trace_invariant(const FormMatrix& e);

}  // namespace bigalois
