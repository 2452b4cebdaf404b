#ifndef TRACELAT_CYCLOTOMIC_HPP
#define TRACELAT_CYCLOTOMIC_HPP

#include <cctype>
#include <memory>
#include <numeric>
#include <string>
#include <string_view>

#include "tracelat/lattice.hpp"
#include "tracelat/quotient_ring.hpp"

namespace tracelat {

/// Integer polynomial division a / b (increasing degree, b monic), exact.
inline std::vector<Integer> divide_exact(std::vector<Integer> a, const std::vector<Integer>& b) {
  const std::size_t db = b.size() - 1;
  if (a.size() < b.size()) throw Error(Errc::NotIntegral, "division by a polynomial of larger degree");
  std::vector<Integer> q(a.size() - db);
  for (std::size_t k = a.size(); k-- > db;) {
    const Integer c = a[k];
    q[k - db] = c;
    for (std::size_t i = 0; i <= db; ++i) a[k - db + i] -= c * b[i];
  }
  for (const auto& r : a)
    if (r != 0) throw Error(Errc::NotIntegral, "polynomial division is not exact");
  return q;
}

/// Phi_n, computed as (x^n - 1) divided by Phi_d for every proper divisor d.
inline std::vector<Integer> cyclotomic_polynomial(unsigned long n) {
  if (n == 0) throw Error(Errc::DimensionMismatch, "n must be positive");
  std::vector<Integer> p(n + 1);
  p[0] = -1;
  p[n] = 1;
  for (unsigned long d = 1; d < n; ++d)
    if (n % d == 0) p = divide_exact(p, cyclotomic_polynomial(d));
  return p;
}

inline unsigned long euler_phi(unsigned long n) {
  unsigned long r = n;
  for (const auto& [p, e] : factorize(Integer(n))) r = r / p.get_ui() * (p.get_ui() - 1);
  return r;
}

/// Q(zeta_n) in the power basis of zeta, with the Hermitian trace form.
class CycField {
 public:
  explicit CycField(unsigned long n) : s_(std::make_shared<State>()) {
    if (n < 3) throw Error(Errc::DimensionMismatch, "n must be >= 3");
    s_->n = n;
    Coords modulus;
    for (const auto& c : cyclotomic_polynomial(n)) modulus.emplace_back(c);
    s_->ring = QuotientRing(modulus);
    for (unsigned long k = 2; k < n; ++k)
      if (std::gcd(k, n) == 1) s_->galois_k.push_back(k);
    for (unsigned long k : s_->galois_k)
      s_->galois_powers.push_back(s_->ring.powers_of(zeta_power(k)));
    s_->conj_index = s_->galois_k.size() - 1;  // k = n - 1
  }

  unsigned long n() const { return s_->n; }
  std::size_t degree() const { return s_->ring.degree(); }
  const QuotientRing& ring() const { return s_->ring; }

  Coords one() const { return s_->ring.one(); }
  Coords zeta() const { return s_->ring.generator(); }
  Coords constant(const Rational& q) const { return s_->ring.constant(q); }

  /// zeta^k for any integer k.
  Coords zeta_power(long long k) const {
    const long long n = static_cast<long long>(s_->n);
    return s_->ring.pow(zeta(), ((k % n) + n) % n);
  }

  Coords add(const Coords& a, const Coords& b) const { return s_->ring.add(a, b); }
  Coords sub(const Coords& a, const Coords& b) const { return s_->ring.sub(a, b); }
  Coords mul(const Coords& a, const Coords& b) const { return s_->ring.mul(a, b); }
  Coords inv(const Coords& a) const { return s_->ring.inv(a); }
  Coords pow(const Coords& a, long long e) const { return s_->ring.pow(a, e); }
  Rational trace(const Coords& a) const { return s_->ring.trace(a); }

  /// Image under zeta -> zeta^{n-1}.
  Coords conj(const Coords& a) const { return s_->ring.substitute(a, s_->galois_powers[s_->conj_index]); }

  Rational hermitian_pair(const Coords& a, const Coords& b) const { return trace(mul(a, conj(b))); }

  // TraceAmbient interface; Galois elements are zeta -> zeta^k, k coprime to n, k != 1
  Rational trace_form(const Coords& a, const Coords& b) const { return hermitian_pair(a, b); }
  std::size_t galois_generator_count() const { return s_->galois_k.size(); }
  Coords apply_galois(std::size_t i, const Coords& a) const { return s_->ring.substitute(a, s_->galois_powers[i]); }
  Json descriptor() const { return Json{{"kind", "cyclotomic"}, {"n", s_->n}}; }
  friend bool operator==(const CycField& a, const CycField& b) { return a.s_->n == b.s_->n; }

 private:
  struct State {
    unsigned long n = 0;
    QuotientRing ring;
    std::vector<unsigned long> galois_k;
    std::vector<std::vector<Coords>> galois_powers;
    std::size_t conj_index = 0;
  };
  std::shared_ptr<State> s_;
};

using CycLattice = TraceLattice<CycField>;

/// The ideal g Z[zeta] with basis g zeta^i.
inline CycLattice principal_ideal_lattice(const CycField& field, const Coords& generator) {
  bool zero = true;
  for (const auto& c : generator) zero = zero && c == 0;
  if (zero) throw Error(Errc::ZeroGenerator, "generator must be nonzero");
  const std::size_t n = field.degree();
  Matrix basis(n, n);
  Coords row = generator;
  for (std::size_t i = 0; i < n; ++i) {
    basis.set_row(i, row);
    row = field.mul(row, field.zeta());
  }
  return CycLattice(field, std::move(basis));
}

/// (1 - zeta_p)^{-(p-3)/2}.
inline Coords cyclotomic_ap_generator(const CycField& field, unsigned long p) {
  Coords u = field.sub(field.one(), field.zeta());
  return field.pow(u, -static_cast<long long>((p - 3) / 2));
}

inline constexpr unsigned long kMaxCyclotomicPrime = 13;

struct CyclotomicReport {
  unsigned long p;
  CycLattice lattice;
  Classification classification;
};

inline CyclotomicReport verify_cyclotomic_ap(unsigned long p) {
  if (p < 3 || !is_prime(Integer(p))) throw Error(Errc::NotPrime, std::to_string(p) + " is not an odd prime");
  if (p > kMaxCyclotomicPrime) throw Error(Errc::TooLarge, "p > 13 is beyond desk scale");
  CycField f(p);
  CycLattice l = principal_ideal_lattice(f, cyclotomic_ap_generator(f, p));
  return {p, l, classify_root_type(l.gram())};
}

namespace detail {

class GeneratorParser {
 public:
  GeneratorParser(const CycField& f, std::string_view text) : f_(f), s_(text) {}

  Coords parse() {
    Coords v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::Parse, what + " at position " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool starts_primary() {
    skip();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return c == 'z' || c == '(' || std::isdigit(static_cast<unsigned char>(c));
  }

  Coords expr() {
    Coords v = term();
    for (;;) {
      if (eat('+'))
        v = f_.add(v, term());
      else if (eat('-'))
        v = f_.sub(v, term());
      else
        return v;
    }
  }

  Coords term() {
    Coords v = unary();
    for (;;) {
      if (eat('*')) {
        v = f_.mul(v, unary());
      } else if (eat('/')) {
        const std::size_t at = pos_;
        Coords d = unary();
        try {
          v = f_.mul(v, f_.inv(d));
        } catch (const Error&) {
          pos_ = at;
          fail("division by zero");
        }
      } else if (starts_primary()) {
        v = f_.mul(v, power());  // implicit product, e.g. 2z
      } else {
        return v;
      }
    }
  }

  Coords unary() {
    if (eat('-')) return f_.sub(f_.constant(0), unary());
    if (eat('+')) return unary();
    return power();
  }

  Coords power() {
    Coords base = primary();
    if (!eat('^')) return base;
    skip();
    bool neg = false;
    if (eat('-')) neg = true;
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    const long long e = std::stoll(std::string(s_.substr(start, pos_ - start)));
    try {
      return f_.pow(base, neg ? -e : e);
    } catch (const Error&) {
      fail("negative power of zero");
    }
  }

  Coords primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == 'z') {
      ++pos_;
      return f_.zeta();
    }
    if (c == '(') {
      ++pos_;
      Coords v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return f_.constant(Rational(Integer(std::string(s_.substr(start, pos_ - start)))));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const CycField& f_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses an expression in the symbol z (a primitive n-th root of unity):
/// integers, z, + - * / ^ (integer exponents, negative allowed), parentheses.
inline Coords parse_cyclotomic_element(const CycField& field, std::string_view text) {
  return detail::GeneratorParser(field, text).parse();
}

}  // namespace tracelat

#endif  // TRACELAT_CYCLOTOMIC_HPP
