#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gconv/rational.hpp"

namespace gconv {

/// Dense row-major matrix of exact rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<long>> rows);

  static Matrix identity(std::size_t n);
  static Matrix scalar(std::size_t n, const Rational& s);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  bool is_zero() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Rational& s, const Matrix& a);
std::vector<Rational> operator*(const Matrix& a, std::span<const Rational> x);
Matrix transpose(const Matrix& a);

std::string to_string(const Matrix& m);

/// Gauss-Jordan inverse over Q; nullopt when singular.
std::optional<Matrix> inverse(const Matrix& a);
Rational determinant(const Matrix& a);
std::size_t matrix_rank(const Matrix& a);

/// Integer solution of A x = b (A given row-major with `cols` columns), via
/// column Hermite reduction. Free variables are set to zero.
std::optional<std::vector<Integer>> solve_integer(const std::vector<std::vector<Integer>>& a,
                                                  const std::vector<Integer>& b);

/// Solution of A x = b with every x_i in Z[1/base] (base == 1 means Z).
std::optional<std::vector<Rational>> solve_in_ring(const Matrix& a, std::span<const Rational> b, long base,
                                                   unsigned max_exponent = 64);

}  // namespace gconv
