#ifndef TRACELAT_RATIONAL_HPP
#define TRACELAT_RATIONAL_HPP

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "tracelat/error.hpp"

namespace tracelat {

using Integer = mpz_class;
// mpq_class keeps numerator/denominator coprime with a positive denominator
// after every arithmetic operation; only raw construction needs canonicalize().
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(Errc::DivisionByZero, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

/// Floor-division remainder in [0, |m|).
inline Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (r < 0) r += abs(m);
  return r;
}

inline Integer gcd_of(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm_of(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// Extended gcd: returns (g, x, y) with a*x + b*y = g >= 0.
inline std::tuple<Integer, Integer, Integer> xgcd(const Integer& a, const Integer& b) {
  Integer g, x, y;
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return {g, x, y};
}

inline bool is_perfect_square(const Integer& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline Integer isqrt(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline bool is_rational_square(const Rational& q) {
  return q >= 0 && is_perfect_square(q.get_num()) && is_perfect_square(q.get_den());
}

inline bool is_prime(const Integer& n) {
  return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

/// Prime factorization of |n| by trial division, as (prime, exponent) pairs
/// in increasing prime order.
inline std::vector<std::pair<Integer, unsigned>> factorize(Integer n) {
  std::vector<std::pair<Integer, unsigned>> out;
  n = abs(n);
  if (n <= 1) return out;
  for (Integer p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
    if (is_prime(n)) break;
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

/// Signed squarefree kernel: n = kernel * s^2 with kernel squarefree.
inline Integer squarefree_part(const Integer& n) {
  if (n == 0) return 0;
  Integer k = n < 0 ? -1 : 1;
  for (const auto& [p, e] : factorize(n))
    if (e % 2 == 1) k *= p;
  return k;
}

/// Canonical "p/q" (or "p" when q = 1).
inline std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}
inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Parses "p", "-p", "p/q" with optional surrounding blanks.
/// Error messages carry the character position of the offending input.
inline Rational parse_rational(std::string_view text) {
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) -> Rational {
    throw Error(Errc::Parse, "cannot parse rational \"" + std::string(text) + "\" at position " +
                                 std::to_string(pos) + ": " + why);
  };
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto read_int = [&](bool allow_sign) -> Integer {
    std::string digits;
    if (allow_sign && pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
      if (text[pos] == '-') digits.push_back('-');
      ++pos;
    }
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      digits.push_back(text[pos++]);
    if (pos == start) fail("expected digit");
    return Integer(digits);
  };
  skip_ws();
  Integer num = read_int(true);
  Integer den = 1;
  skip_ws();
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    skip_ws();
    den = read_int(false);
    if (den == 0) fail("zero denominator");
    skip_ws();
  }
  if (pos != text.size()) fail("unexpected character");
  return make_rational(num, den);
}

}  // namespace tracelat

#endif  // TRACELAT_RATIONAL_HPP
