#ifndef TRACELAT_MATRIX_HPP
#define TRACELAT_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "tracelat/error.hpp"
#include "tracelat/rational.hpp"

namespace tracelat {

/// Dense row-major matrix over an exact ring (Integer or Rational).
template <typename T>
class BasicMatrix {
 public:
  BasicMatrix() = default;
  BasicMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  BasicMatrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw Error(Errc::DimensionMismatch, "ragged initializer");
      for (const auto& v : row) data_.push_back(v);
    }
  }

  static BasicMatrix identity(std::size_t n) {
    BasicMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static BasicMatrix from_rows(const std::vector<std::vector<T>>& rows) {
    BasicMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < m.rows_; ++i) {
      if (rows[i].size() != m.cols_) throw Error(Errc::DimensionMismatch, "ragged rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::vector<T> row_vector(std::size_t i) const {
    auto r = row(i);
    return {r.begin(), r.end()};
  }

  void set_row(std::size_t i, std::span<const T> values) {
    if (values.size() != cols_) throw Error(Errc::DimensionMismatch, "row length");
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = values[j];
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  BasicMatrix transpose() const {
    BasicMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  friend bool operator==(const BasicMatrix& a, const BasicMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend BasicMatrix operator*(const BasicMatrix& a, const BasicMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(Errc::DimensionMismatch, "matrix product");
    BasicMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend BasicMatrix operator+(BasicMatrix a, const BasicMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(Errc::DimensionMismatch, "matrix sum");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend BasicMatrix operator*(const T& s, BasicMatrix a) {
    for (auto& v : a.data_) v *= s;
    return a;
  }

  const std::vector<T>& data() const noexcept { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using Matrix = BasicMatrix<Rational>;
using IntMatrix = BasicMatrix<Integer>;

inline bool is_integral(const Matrix& m) {
  for (const auto& v : m.data())
    if (!is_integer(v)) return false;
  return true;
}

inline IntMatrix to_integer(const Matrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!is_integer(m(i, j))) throw Error(Errc::NotIntegral, "entry " + to_string(m(i, j)));
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

inline Matrix to_rational(const IntMatrix& m) {
  Matrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

/// Least common multiple of all entry denominators.
inline Integer common_denominator(const Matrix& m) {
  Integer d = 1;
  for (const auto& v : m.data()) d = lcm_of(d, v.get_den());
  return d;
}

/// Row vector times matrix.
inline std::vector<Rational> vec_mul(std::span<const Rational> v, const Matrix& m) {
  if (v.size() != m.rows()) throw Error(Errc::DimensionMismatch, "vector-matrix product");
  std::vector<Rational> out(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
  }
  return out;
}

}  // namespace tracelat

#endif  // TRACELAT_MATRIX_HPP
