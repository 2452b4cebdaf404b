#ifndef TRACELAT_SHANKS_FIELD_HPP
#define TRACELAT_SHANKS_FIELD_HPP

#include <array>
#include <memory>

#include "tracelat/quotient_ring.hpp"
#include "tracelat/serialize.hpp"

namespace tracelat {

/// a0 + a1*eps + a2*eps^2 in the power basis of Q(eps), f_t(eps) = 0.
struct FieldElement {
  std::array<Rational, 3> c;

  friend bool operator==(const FieldElement&, const FieldElement&) = default;

  Coords coords() const { return {c[0], c[1], c[2]}; }
  static FieldElement from(const Coords& v) { return {{v.at(0), v.at(1), v.at(2)}}; }
};

/// Divisors of |n| (n != 0), positive, ascending.
inline std::vector<Integer> positive_divisors(const Integer& n) {
  std::vector<Integer> divs{1};
  for (const auto& [p, e] : factorize(n)) {
    const std::size_t base = divs.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

/// Rational roots of an integer-coefficient polynomial (increasing degree).
inline std::vector<Rational> rational_roots(const std::vector<Integer>& poly) {
  std::vector<Rational> roots;
  std::size_t low = 0;
  while (low < poly.size() && poly[low] == 0) ++low;
  if (low > 0) roots.push_back(0);
  if (low + 1 >= poly.size()) return roots;
  auto eval = [&](const Rational& x) {
    Rational v = 0;
    for (std::size_t k = poly.size(); k-- > 0;) v = v * x + poly[k];
    return v;
  };
  for (const auto& p : positive_divisors(poly[low]))
    for (const auto& q : positive_divisors(poly.back()))
      for (int sign : {1, -1}) {
        Rational x = make_rational(sign * p, q);
        if (eval(x) == 0 && std::find(roots.begin(), roots.end(), x) == roots.end()) roots.push_back(x);
      }
  return roots;
}

/// Coefficients (increasing degree) of f_t(x) = x^3 - t x^2 - (t+3) x - 1.
inline Coords shanks_polynomial(const Rational& t) { return {Rational(-1), Rational(-(t + 3)), Rational(-t), Rational(1)}; }

/// The parameter the t = 0 field is re-expressed with: f_0(x) = -x^3 f_{-3}(1/x).
inline Rational remap_t0() { return Rational(-3); }

/// The cyclic cubic field Q[x]/f_t with sigma(eps) = -1/(1+eps).
/// Handles are immutable and cheap to copy.
class ShanksField {
 public:
  static ShanksField make(const Rational& t) {
    auto s = std::make_shared<State>();
    s->t = t;
    s->delta = t * t + 3 * t + 9;
    s->minpoly = shanks_polynomial(t);
    // clear denominators: b f_t with t = a/b
    const Integer a = t.get_num(), b = t.get_den();
    std::vector<Integer> cleared{-b, -(a + 3 * b), -a, b};
    if (!rational_roots(cleared).empty())
      throw Error(Errc::Reducible, "f_t has a rational root for t = " + to_string(t));
    s->ring = QuotientRing(s->minpoly);
    Coords one_plus_eps = s->ring.add(s->ring.one(), s->ring.generator());
    s->sigma_eps = s->ring.scale(-1, s->ring.inv(one_plus_eps));
    s->sigma_powers = s->ring.powers_of(s->sigma_eps);
    return ShanksField(std::move(s));
  }

  const Rational& t() const { return s_->t; }
  const Rational& delta() const { return s_->delta; }
  const Coords& minpoly() const { return s_->minpoly; }
  std::size_t degree() const { return 3; }

  FieldElement one() const { return from_rational(1); }
  FieldElement eps() const { return {{0, 1, 0}}; }
  FieldElement from_rational(const Rational& q) const { return {{q, 0, 0}}; }

  FieldElement add(const FieldElement& a, const FieldElement& b) const {
    return FieldElement::from(s_->ring.add(a.coords(), b.coords()));
  }
  FieldElement sub(const FieldElement& a, const FieldElement& b) const {
    return FieldElement::from(s_->ring.sub(a.coords(), b.coords()));
  }
  FieldElement scale(const Rational& q, const FieldElement& a) const {
    return FieldElement::from(s_->ring.scale(q, a.coords()));
  }
  FieldElement mul(const FieldElement& a, const FieldElement& b) const {
    return FieldElement::from(s_->ring.mul(a.coords(), b.coords()));
  }
  FieldElement inv(const FieldElement& a) const {
    if (a == from_rational(0)) throw Error(Errc::DivisionByZero, "inverse of zero");
    return FieldElement::from(s_->ring.inv(a.coords()));
  }

  /// Image under the generator sigma of Gal(F/Q).
  FieldElement sigma(const FieldElement& a) const {
    return FieldElement::from(s_->ring.substitute(a.coords(), s_->sigma_powers));
  }

  Rational trace(const FieldElement& a) const { return s_->ring.trace(a.coords()); }
  Rational trace_pair(const FieldElement& a, const FieldElement& b) const { return trace(mul(a, b)); }
  Rational norm(const FieldElement& a) const { return s_->ring.norm(a.coords()); }

  /// lambda0*eps + lambda1*eps^sigma + lambda2*eps^{sigma^2}.
  FieldElement bracket(const std::array<Rational, 3>& lambda) const {
    require_nonzero_t();
    FieldElement e = eps();
    FieldElement e1 = sigma(e);
    FieldElement e2 = sigma(e1);
    return add(add(scale(lambda[0], e), scale(lambda[1], e1)), scale(lambda[2], e2));
  }

  /// Rows eps, eps^sigma, eps^{sigma^2} in the power basis.
  Matrix normal_basis_matrix() const {
    FieldElement e = eps();
    FieldElement e1 = sigma(e);
    FieldElement e2 = sigma(e1);
    Matrix m(3, 3);
    for (std::size_t j = 0; j < 3; ++j) {
      m(0, j) = e.c[j];
      m(1, j) = e1.c[j];
      m(2, j) = e2.c[j];
    }
    return m;
  }

  /// Coordinates c with bracket(c) = a.
  std::array<Rational, 3> normal_coords(const FieldElement& a) const {
    require_nonzero_t();
    Coords c = vec_mul(a.coords(), inverse(normal_basis_matrix()));
    return {c[0], c[1], c[2]};
  }

  bool is_rational(const FieldElement& a) const { return a.c[1] == 0 && a.c[2] == 0; }

  /// Evaluates a rational polynomial (increasing degree) at a.
  FieldElement evaluate(const Coords& poly, const FieldElement& a) const {
    return FieldElement::from(s_->ring.evaluate(poly, a.coords()));
  }

  const QuotientRing& ring() const { return s_->ring; }

  // TraceAmbient interface
  Rational trace_form(const Coords& a, const Coords& b) const { return s_->ring.trace(s_->ring.mul(a, b)); }
  std::size_t galois_generator_count() const { return 1; }
  Coords apply_galois(std::size_t, const Coords& a) const { return s_->ring.substitute(a, s_->sigma_powers); }
  Json descriptor() const { return Json{{"kind", "shanks"}, {"t", to_string(s_->t)}}; }
  friend bool operator==(const ShanksField& a, const ShanksField& b) { return a.s_->t == b.s_->t; }

 private:
  struct State {
    Rational t, delta;
    Coords minpoly;
    QuotientRing ring;
    Coords sigma_eps;
    std::vector<Coords> sigma_powers;
  };

  explicit ShanksField(std::shared_ptr<const State> s) : s_(std::move(s)) {}

  void require_nonzero_t() const {
    if (s_->t == 0)
      throw Error(Errc::ZeroParameter,
                  "eps and its conjugates are Q-dependent at t = 0; use the same field with t = " +
                      to_string(remap_t0()));
  }

  std::shared_ptr<const State> s_;
};

struct Reparametrization {
  Rational t;       ///< t' = Tr(u)
  FieldElement u;   ///< u = alpha^sigma / alpha, a root of f_{t'}
};

/// Re-expresses the field by a root of another Shanks polynomial, starting
/// from a trace-zero irrational alpha: u = sigma(alpha)/alpha, t' = Tr(u).
inline Reparametrization reparametrize(const ShanksField& field, const FieldElement& alpha) {
  if (field.trace(alpha) != 0) throw Error(Errc::NonzeroTrace, "alpha must have trace zero");
  if (field.is_rational(alpha)) throw Error(Errc::RationalInput, "alpha must not be rational");
  FieldElement u = field.mul(field.sigma(alpha), field.inv(alpha));
  Rational t_new = field.trace(u);
  if (field.evaluate(shanks_polynomial(t_new), u) != field.from_rational(0))
    throw Error(Errc::NotFound, "u is not a root of f_{Tr(u)}");
  if (field.is_rational(u)) throw Error(Errc::RationalInput, "u generates a proper subfield");
  return {t_new, u};
}

inline Json to_json(const FieldElement& a) { return to_json(a.coords()); }

}  // namespace tracelat

#endif  // TRACELAT_SHANKS_FIELD_HPP
