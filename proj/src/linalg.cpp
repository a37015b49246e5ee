#include "gconv/linalg.hpp"

#include <utility>

#include "gconv/error.hpp"

namespace gconv {

Matrix::Matrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  a_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorKind::InvalidArgument, "ragged matrix literal");
    for (long v : r) a_.emplace_back(v);
  }
}

Matrix Matrix::identity(std::size_t n) { return scalar(n, Rational(1)); }

Matrix Matrix::scalar(std::size_t n, const Rational& s) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& v : a_)
    if (sgn(v) != 0) return false;
  return true;
}

namespace {

void same_shape(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::InvalidArgument, "matrix shape mismatch");
}

}  // namespace

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::InvalidArgument, "matrix product shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  same_shape(a, b);
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  same_shape(a, b);
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

Matrix operator*(const Rational& s, const Matrix& a) {
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
  return c;
}

std::vector<Rational> operator*(const Matrix& a, std::span<const Rational> x) {
  if (a.cols() != x.size()) throw Error(ErrorKind::InvalidArgument, "matrix-vector shape mismatch");
  std::vector<Rational> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

std::string to_string(const Matrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + to_string(m(i, j));
    s += "]";
  }
  return s + "]";
}

std::optional<Matrix> inverse(const Matrix& a) {
  if (!a.square()) throw Error(ErrorKind::InvalidArgument, "inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix m = a;
  Matrix inv = Matrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(m(pivot, col)) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(pivot, j), m(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    Rational p = m(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      m(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || sgn(m(i, col)) == 0) continue;
      Rational f = m(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

Rational determinant(const Matrix& a) {
  if (!a.square()) throw Error(ErrorKind::InvalidArgument, "determinant of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix m = a;
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(m(pivot, col)) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(pivot, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (sgn(m(i, col)) == 0) continue;
      Rational f = m(i, col) / m(col, col);
      for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(col, j);
    }
  }
  return det;
}

std::size_t matrix_rank(const Matrix& a) {
  Matrix m = a;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && sgn(m(pivot, col)) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(rank, j));
    for (std::size_t i = rank + 1; i < m.rows(); ++i) {
      if (sgn(m(i, col)) == 0) continue;
      Rational f = m(i, col) / m(rank, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(rank, j);
    }
    ++rank;
  }
  return rank;
}

std::optional<std::vector<Integer>> solve_integer(const std::vector<std::vector<Integer>>& a,
                                                  const std::vector<Integer>& b) {
  const std::size_t m = a.size();
  if (b.size() != m) throw Error(ErrorKind::InvalidArgument, "right-hand side length mismatch");
  const std::size_t n = m ? a[0].size() : 0;
  std::vector<std::vector<Integer>> h = a;
  // u tracks the unimodular column operations: A u = h.
  std::vector<std::vector<Integer>> u(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;

  auto col_combine = [&](std::size_t p, std::size_t q, const Integer& s, const Integer& t, const Integer& v,
                         const Integer& w) {
    // (col_p, col_q) <- (s col_p + t col_q, v col_p + w col_q), determinant +-1
    for (std::size_t r = 0; r < m; ++r) {
      Integer x = h[r][p], y = h[r][q];
      h[r][p] = s * x + t * y;
      h[r][q] = v * x + w * y;
    }
    for (std::size_t r = 0; r < n; ++r) {
      Integer x = u[r][p], y = u[r][q];
      u[r][p] = s * x + t * y;
      u[r][q] = v * x + w * y;
    }
  };

  std::vector<std::size_t> pivot_col(m, n);
  std::size_t next = 0;
  for (std::size_t r = 0; r < m && next < n; ++r) {
    for (std::size_t j = next + 1; j < n; ++j) {
      if (h[r][j] == 0) continue;
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h[r][next].get_mpz_t(), h[r][j].get_mpz_t());
      Integer v = -(h[r][j] / g), w = h[r][next] / g;
      col_combine(next, j, s, t, v, w);
    }
    if (h[r][next] != 0) pivot_col[r] = next++;
  }

  std::vector<Integer> y(n, 0);
  for (std::size_t r = 0; r < m; ++r) {
    Integer rhs = b[r];
    for (std::size_t j = 0; j < n; ++j)
      if (pivot_col[r] != j) rhs -= h[r][j] * y[j];
    if (pivot_col[r] == n) {
      if (rhs != 0) return std::nullopt;
      continue;
    }
    const Integer& p = h[r][pivot_col[r]];
    if (Integer(rhs % p) != 0) return std::nullopt;
    y[pivot_col[r]] = rhs / p;
  }
  std::vector<Integer> x(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) x[i] += u[i][j] * y[j];
  return x;
}

std::optional<std::vector<Rational>> solve_in_ring(const Matrix& a, std::span<const Rational> b, long base,
                                                   unsigned max_exponent) {
  if (a.rows() != b.size()) throw Error(ErrorKind::InvalidArgument, "right-hand side length mismatch");
  Integer scale = 1;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), a(i, j).get_den_mpz_t());
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), b[i].get_den_mpz_t());
  }
  std::vector<std::vector<Integer>> ai(a.rows(), std::vector<Integer>(a.cols()));
  std::vector<Integer> bi(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) ai[i][j] = Rational(a(i, j) * scale).get_num();
    bi[i] = Rational(b[i] * scale).get_num();
  }
  // x = y / base^e with y integral: A y = base^e b.
  Integer power = 1;
  const unsigned tries = base <= 1 ? 1 : max_exponent + 1;
  for (unsigned e = 0; e < tries; ++e) {
    std::vector<Integer> rhs(bi.size());
    for (std::size_t i = 0; i < bi.size(); ++i) rhs[i] = bi[i] * power;
    if (auto y = solve_integer(ai, rhs)) {
      std::vector<Rational> x(y->size());
      for (std::size_t i = 0; i < y->size(); ++i) {
        x[i] = Rational((*y)[i], power);
        x[i].canonicalize();
      }
      return x;
    }
    power *= base;
  }
  return std::nullopt;
}

}  // namespace gconv
