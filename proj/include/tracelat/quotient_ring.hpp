#ifndef TRACELAT_QUOTIENT_RING_HPP
#define TRACELAT_QUOTIENT_RING_HPP

#include <vector>

#include "tracelat/linalg.hpp"

namespace tracelat {

using Coords = std::vector<Rational>;

/// Arithmetic in Q[x]/(m) for a monic rational modulus m, elements stored in
/// the power basis (1, x, ..., x^{n-1}).
class QuotientRing {
 public:
  QuotientRing() = default;

  /// modulus: coefficients c_0..c_n of m(x) = sum c_i x^i with c_n = 1.
  explicit QuotientRing(Coords modulus) : modulus_(std::move(modulus)) {
    if (modulus_.size() < 2 || modulus_.back() != 1)
      throw Error(Errc::DimensionMismatch, "modulus must be monic of degree >= 1");
    const std::size_t n = degree();
    // reduced x^k for k in [0, 2n-1)
    powers_.assign(2 * n - 1, Coords(n));
    for (std::size_t k = 0; k < n; ++k) powers_[k][k] = 1;
    for (std::size_t k = n; k < 2 * n - 1; ++k) {
      const Coords& prev = powers_[k - 1];
      Coords& cur = powers_[k];
      // x * prev, then fold x^n = -sum_{i<n} c_i x^i
      const Rational top = prev[n - 1];
      for (std::size_t i = n - 1; i > 0; --i) cur[i] = prev[i - 1];
      cur[0] = 0;
      for (std::size_t i = 0; i < n; ++i) cur[i] -= top * modulus_[i];
    }
    traces_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      Matrix m = multiplication_matrix(powers_[k]);
      Rational tr = 0;
      for (std::size_t i = 0; i < n; ++i) tr += m(i, i);
      traces_[k] = tr;
    }
  }

  std::size_t degree() const noexcept { return modulus_.size() - 1; }
  const Coords& modulus() const noexcept { return modulus_; }

  Coords one() const {
    Coords c(degree());
    c[0] = 1;
    return c;
  }

  Coords generator() const {
    Coords c(degree());
    if (degree() > 1)
      c[1] = 1;
    else
      c[0] = -modulus_[0];
    return c;
  }

  Coords constant(const Rational& q) const {
    Coords c(degree());
    c[0] = q;
    return c;
  }

  Coords add(const Coords& a, const Coords& b) const {
    Coords c(degree());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
    return c;
  }

  Coords sub(const Coords& a, const Coords& b) const {
    Coords c(degree());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] - b[i];
    return c;
  }

  Coords scale(const Rational& s, const Coords& a) const {
    Coords c(degree());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = s * a[i];
    return c;
  }

  Coords mul(const Coords& a, const Coords& b) const {
    const std::size_t n = degree();
    std::vector<Rational> prod(2 * n - 1);
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) prod[i + j] += a[i] * b[j];
    }
    Coords c(prod.begin(), prod.begin() + n);
    for (std::size_t k = n; k < 2 * n - 1; ++k) {
      if (prod[k] == 0) continue;
      for (std::size_t i = 0; i < n; ++i) c[i] += prod[k] * powers_[k][i];
    }
    return c;
  }

  /// Rows are a * x^i in the power basis, so coords(a*b) = coords(b) * M.
  Matrix multiplication_matrix(const Coords& a) const {
    const std::size_t n = degree();
    Matrix m(n, n);
    Coords row = a;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m(i, j) = row[j];
      if (i + 1 < n) row = mul(row, generator());
    }
    return m;
  }

  /// Inverse modulo m; throws DivisionByZero when a is not a unit.
  Coords inv(const Coords& a) const {
    Matrix m = multiplication_matrix(a);
    if (det(m) == 0) throw Error(Errc::DivisionByZero, "element is not invertible");
    Coords e = one();
    return vec_mul(e, inverse(m));
  }

  Coords pow(Coords base, long long e) const {
    if (e < 0) {
      base = inv(base);
      e = -e;
    }
    Coords r = one();
    while (e > 0) {
      if (e & 1) r = mul(r, base);
      e >>= 1;
      if (e) base = mul(base, base);
    }
    return r;
  }

  Rational trace(const Coords& a) const {
    Rational t = 0;
    for (std::size_t i = 0; i < degree(); ++i) t += a[i] * traces_[i];
    return t;
  }

  Rational norm(const Coords& a) const { return det(multiplication_matrix(a)); }

  /// p(a) for a polynomial p given by coefficients in increasing degree.
  Coords evaluate(const Coords& poly, const Coords& a) const {
    Coords r(degree());
    for (std::size_t k = poly.size(); k-- > 0;) {
      r = mul(r, a);
      r[0] += poly[k];
    }
    return r;
  }

  /// Substitutes x -> image into a, given precomputed powers image^k.
  Coords substitute(const Coords& a, const std::vector<Coords>& image_powers) const {
    Coords r(degree());
    for (std::size_t k = 0; k < degree(); ++k) {
      if (a[k] == 0) continue;
      for (std::size_t i = 0; i < degree(); ++i) r[i] += a[k] * image_powers[k][i];
    }
    return r;
  }

  std::vector<Coords> powers_of(const Coords& a) const {
    std::vector<Coords> out{one()};
    for (std::size_t k = 1; k < degree(); ++k) out.push_back(mul(out.back(), a));
    return out;
  }

  bool is_rational(const Coords& a) const {
    for (std::size_t i = 1; i < a.size(); ++i)
      if (a[i] != 0) return false;
    return true;
  }

 private:
  Coords modulus_;
  std::vector<Coords> powers_;
  Coords traces_;
};

}  // namespace tracelat

#endif  // TRACELAT_QUOTIENT_RING_HPP
