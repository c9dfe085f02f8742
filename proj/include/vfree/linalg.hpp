#pragma once

// Dense exact matrices over a Field. Gaussian elimination over prime fields
// with p < 2^16 runs on packed rows through the vectorized axpy kernel.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "vfree/field.hpp"

namespace vfree {

class Matrix {
 public:
  Matrix(const Field& f, std::size_t rows, std::size_t cols);
  static Matrix identity(const Field& f, std::size_t n);
  static Matrix from_rows(const Field& f, const std::vector<std::vector<Scalar>>& rows);

  const Field& field() const { return *field_; }
  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
  std::vector<Scalar> row(std::size_t i) const;
  std::vector<Scalar> col(std::size_t j) const;

  Matrix transpose() const;
  Matrix embed(const Field& target) const;
  std::vector<Scalar> apply(const std::vector<Scalar>& v) const;
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);
  std::string to_string() const;

 private:
  const Field* field_;
  std::size_t r_, c_;
  std::vector<Scalar> a_;
};

struct Rref {
  Matrix m;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

Rref rref(const Matrix& a);
std::size_t rank(const Matrix& a);
// Basis of {x : a x = 0}, one vector per free column (free entry 1, other free entries 0).
std::vector<std::vector<Scalar>> kernel(const Matrix& a);
std::optional<std::vector<Scalar>> solve(const Matrix& a, const std::vector<Scalar>& b);
Scalar det(const Matrix& a);
std::optional<Matrix> inverse(const Matrix& a);

}  // namespace vfree
