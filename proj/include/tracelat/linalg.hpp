#ifndef TRACELAT_LINALG_HPP
#define TRACELAT_LINALG_HPP

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "tracelat/matrix.hpp"

namespace tracelat {

/// Fraction-free Bareiss determinant of an integer matrix.
inline Integer det(IntMatrix m) {
  if (!m.is_square()) throw Error(Errc::NonSquare, "det of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = std::move(v);
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// Exact determinant of a rational matrix: rows are scaled to integers,
/// Bareiss is run, and the scale is divided back out.
inline Rational det(const Matrix& m) {
  if (!m.is_square()) throw Error(Errc::NonSquare, "det of non-square matrix");
  IntMatrix im(m.rows(), m.cols());
  Integer scale = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer d = 1;
    for (const auto& v : m.row(i)) d = lcm_of(d, v.get_den());
    scale *= d;
    for (std::size_t j = 0; j < m.cols(); ++j) im(i, j) = Rational(m(i, j) * d).get_num();
  }
  return make_rational(det(std::move(im)), scale);
}

inline Matrix inverse(const Matrix& m) {
  if (!m.is_square()) throw Error(Errc::NonSquare, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  Matrix a = m;
  Matrix inv = Matrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw Error(Errc::Singular, "matrix is singular");
    a.swap_rows(c, p);
    inv.swap_rows(c, p);
    Rational piv = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      Rational f = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

/// Row rank over Q.
inline std::size_t rank(Matrix a) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) continue;
      Rational f = a(i, c) / a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

struct HermiteForm {
  IntMatrix h;  ///< row-style Hermite normal form
  IntMatrix u;  ///< unimodular transform, h = u * m
};

/// Row-style Hermite normal form: echelon with zeros below each pivot,
/// positive pivots, and entries above a pivot reduced into [0, pivot).
/// Zero rows (rank deficiency) are collected at the bottom.
inline HermiteForm hnf(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(rows);
  auto row_combine = [](IntMatrix& a, std::size_t i, std::size_t k, const Integer& x, const Integer& y,
                        const Integer& z, const Integer& w) {
    // (row_i, row_k) <- (x*row_i + y*row_k, z*row_i + w*row_k)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Integer ri = a(i, j), rk = a(k, j);
      a(i, j) = x * ri + y * rk;
      a(k, j) = z * ri + w * rk;
    }
  };
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
    for (std::size_t k = pivot_row + 1; k < rows; ++k) {
      if (h(k, c) == 0) continue;
      const Integer a = h(pivot_row, c), b = h(k, c);
      auto [g, x, y] = xgcd(a, b);
      Integer z = -b / g, w = a / g;
      row_combine(h, pivot_row, k, x, y, z, w);
      row_combine(u, pivot_row, k, x, y, z, w);
    }
    if (h(pivot_row, c) == 0) continue;
    if (h(pivot_row, c) < 0) {
      for (std::size_t j = 0; j < cols; ++j) h(pivot_row, j) = -h(pivot_row, j);
      for (std::size_t j = 0; j < rows; ++j) u(pivot_row, j) = -u(pivot_row, j);
    }
    const Integer piv = h(pivot_row, c);
    for (std::size_t r = 0; r < pivot_row; ++r) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(r, c).get_mpz_t(), piv.get_mpz_t());
      if (q == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) h(r, j) -= q * h(pivot_row, j);
      for (std::size_t j = 0; j < rows; ++j) u(r, j) -= q * u(pivot_row, j);
    }
    ++pivot_row;
  }
  return {std::move(h), std::move(u)};
}

/// HNF rows with the trailing zero rows dropped: a canonical basis of the
/// Z-span of the rows of m.
inline IntMatrix hnf_basis(const IntMatrix& m) {
  IntMatrix h = hnf(m).h;
  std::size_t r = 0;
  while (r < h.rows()) {
    bool zero = true;
    for (const auto& v : h.row(r)) zero = zero && v == 0;
    if (zero) break;
    ++r;
  }
  IntMatrix out(r, h.cols());
  for (std::size_t i = 0; i < r; ++i) out.set_row(i, h.row(i));
  return out;
}

/// Canonical basis of the Z-span of rational generator rows, returned as
/// rationals: HNF of the denominator-cleared matrix, divided back.
inline Matrix lattice_hnf(const Matrix& generators) {
  Integer d = common_denominator(generators);
  IntMatrix scaled = to_integer(Rational(d) * generators);
  const Rational inv_d = Rational(1) / d;
  return inv_d * to_rational(hnf_basis(scaled));
}

/// Smith normal form invariant factors d1 | d2 | ... | dn of a square
/// nonsingular integer matrix (all positive, product = |det|).
inline std::vector<Integer> snf(const IntMatrix& m) {
  if (!m.is_square()) throw Error(Errc::NonSquare, "snf of non-square matrix");
  if (det(m) == 0) throw Error(Errc::Singular, "snf of singular matrix");
  const std::size_t n = m.rows();
  IntMatrix a = m;
  for (std::size_t k = 0; k < n; ++k) {
    for (;;) {
      // move the smallest nonzero entry of the trailing block to (k, k)
      std::size_t bi = n, bj = n;
      for (std::size_t i = k; i < n; ++i)
        for (std::size_t j = k; j < n; ++j)
          if (a(i, j) != 0 && (bi == n || abs(a(i, j)) < abs(a(bi, bj)))) {
            bi = i;
            bj = j;
          }
      a.swap_rows(k, bi);
      for (std::size_t i = 0; i < n; ++i) std::swap(a(i, k), a(i, bj));
      bool clean = true;
      const Integer piv = a(k, k);
      for (std::size_t i = k + 1; i < n; ++i) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a(i, k).get_mpz_t(), piv.get_mpz_t());
        if (q != 0)
          for (std::size_t j = k; j < n; ++j) a(i, j) -= q * a(k, j);
        clean = clean && a(i, k) == 0;
      }
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a(k, j).get_mpz_t(), piv.get_mpz_t());
        if (q != 0)
          for (std::size_t i = k; i < n; ++i) a(i, j) -= q * a(i, k);
        clean = clean && a(k, j) == 0;
      }
      if (!clean) continue;
      // divisibility: pivot must divide the whole trailing block
      std::optional<std::size_t> bad_row;
      for (std::size_t i = k + 1; i < n && !bad_row; ++i)
        for (std::size_t j = k + 1; j < n; ++j)
          if (a(i, j) % piv != 0) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      for (std::size_t j = k; j < n; ++j) a(k, j) += a(*bad_row, j);
    }
  }
  std::vector<Integer> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = abs(a(i, i));
  return out;
}

}  // namespace tracelat

#endif  // TRACELAT_LINALG_HPP
