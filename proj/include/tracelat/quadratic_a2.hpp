#ifndef TRACELAT_QUADRATIC_A2_HPP
#define TRACELAT_QUADRATIC_A2_HPP

#include <optional>
#include <set>
#include <vector>

#include "tracelat/conic.hpp"
#include "tracelat/lattice.hpp"

namespace tracelat {

/// Q(sqrt(sign * d)) with elements x + y sqrt(sign * d), coordinates (x, y).
class QuadraticField {
 public:
  QuadraticField(Integer d, int sign) : d_(std::move(d)), sign_(sign >= 0 ? 1 : -1) {
    if (d_ < 1) throw Error(Errc::DimensionMismatch, "d must be >= 1");
    if (squarefree_part(d_) != d_) throw Error(Errc::NonSquare, "d must be squarefree");
  }

  const Integer& d() const { return d_; }
  int sign() const { return sign_; }
  std::size_t degree() const { return 2; }

  /// Tr(a * conj(b)) = 2(a_x b_x + d a_y b_y) for either sign.
  Rational trace_form(const Coords& a, const Coords& b) const { return 2 * (a[0] * b[0] + d_ * a[1] * b[1]); }
  std::size_t galois_generator_count() const { return 1; }
  Coords apply_galois(std::size_t, const Coords& a) const { return {a[0], -a[1]}; }
  Json descriptor() const { return Json{{"kind", "quadratic"}, {"d", to_string(d_)}, {"sign", sign_}}; }
  friend bool operator==(const QuadraticField& a, const QuadraticField& b) {
    return a.d_ == b.d_ && a.sign_ == b.sign_;
  }

 private:
  Integer d_;
  int sign_;
};

using QuadLattice = TraceLattice<QuadraticField>;

/// Two elements x1 + y1 w, x2 + y2 w.
struct QuadBasis {
  Rational x1, y1, x2, y2;
  friend bool operator==(const QuadBasis&, const QuadBasis&) = default;

  Matrix matrix() const { return Matrix{{x1, y1}, {x2, y2}}; }
};

inline Rational pairing(const Coords& a, const Coords& b, const Integer& d) { return 2 * (a[0] * b[0] + d * a[1] * b[1]); }

/// Residuals of x1^2 + d y1^2 = 1, x2^2 + d y2^2 = 1, 2 x1 x2 + 2 d y1 y2 = -1.
inline std::array<Rational, 3> a2_residuals(const QuadBasis& b, const Integer& d) {
  return {b.x1 * b.x1 + d * b.y1 * b.y1 - 1, b.x2 * b.x2 + d * b.y2 * b.y2 - 1,
          2 * b.x1 * b.x2 + 2 * d * b.y1 * b.y2 + 1};
}

inline bool solves_a2_system(const QuadBasis& b, const Integer& d) {
  for (const auto& r : a2_residuals(b, d))
    if (r != 0) return false;
  return true;
}

enum class Branch { Plus, Minus };

/// Basis of the A_2 lattice in Q(sqrt(+-3)) attached to the slope s1/s0.
inline QuadBasis a2_basis_from_slopes(const Integer& s0, const Integer& s1, Branch branch) {
  ConicPoint p = a2_first_point(s0, s1);
  const Integer n = s0 * s0 + 3 * s1 * s1;
  const Integer m = s0 * s0 - 3 * s1 * s1;
  // the two roots (x1 - y1)/2 and (-x1 - y1)/2 of 12 y2^2 + 12 y1 y2 + 1 - 4 x1^2
  Rational y2 = branch == Branch::Plus ? make_rational(-(s0 - 3 * s1) * (s0 + s1), 2 * n)
                                       : make_rational((s0 + 3 * s1) * (s0 - s1), 2 * n);
  Rational x2 = -(12 * s0 * s1 * y2 - n) / (2 * Rational(m));
  return {p.x, p.y, x2, y2};
}

inline QuadLattice a2_from_slopes(const Integer& s0, const Integer& s1, Branch branch, int sign = 1) {
  QuadBasis b = a2_basis_from_slopes(s0, s1, branch);
  QuadLattice l(QuadraticField(3, sign), b.matrix());
  if (l.gram() != root_lattice_gram({RootType::Kind::A, 2}))
    throw Error(Errc::WrongGram, "slope basis misses the A2 Gram");
  return l;
}

/// Solutions with x1 = x2 and y1 = -y2, i.e. bases {a, conj(a)}: 4x^2 = 1 and
/// d y^2 = 3/4. Empty unless 3/d is a rational square.
inline std::vector<QuadBasis> normal_a2_solutions(const Integer& d) {
  std::vector<QuadBasis> out;
  const Rational y2 = Rational(3) / (4 * Rational(d));
  if (!is_rational_square(y2)) return out;
  const Rational y = make_rational(isqrt(y2.get_num()), isqrt(y2.get_den()));
  for (int sx : {1, -1})
    for (int sy : {1, -1}) {
      QuadBasis b{Rational(sx, 2), sy * y, Rational(sx, 2), -sy * y};
      if (solves_a2_system(b, d)) out.push_back(b);
    }
  return out;
}

/// Z (1 + w)/2 + Z (1 - w)/2 with w = sqrt(+-3).
inline QuadLattice normal_a2(int sign = 1) {
  const Rational h(1, 2);
  return QuadLattice(QuadraticField(3, sign), Matrix{{h, h}, {h, -h}});
}

/// Circle point from base (1, 0) along slope s1/s0 on x^2 + d y^2 = 1
/// (s0 = 0 is the vertical line, giving the base point).
inline ConicPoint unit_conic_point(const Integer& s0, const Integer& s1, const Integer& d) {
  if (s0 == 0 && s1 == 0) throw Error(Errc::ZeroSlopePair, "(s0, s1) = (0, 0)");
  const Integer den = s0 * s0 + d * s1 * s1;
  return {make_rational(d * s1 * s1 - s0 * s0, den), make_rational(-2 * s0 * s1, den)};
}

/// All (x2, y2) completing a circle point (x1, y1) to a solution; eliminating
/// x2 leaves 4d y2^2 + 4d y1 y2 + (1 - 4 x1^2) = 0 with discriminant 48 d x1^2.
inline std::vector<QuadBasis> complete_a2_solution(const ConicPoint& p, const Integer& d) {
  std::vector<QuadBasis> out;
  if (p.x == 0) {
    // d y1^2 = 1 forces d = 1 and y2 = -1/(2 y1), then x2^2 = 3/4: no rational point
    const Rational y2 = -1 / (2 * d * p.y);
    const Rational x2sq = 1 - d * y2 * y2;
    if (is_rational_square(x2sq)) {
      const Rational r = make_rational(isqrt(x2sq.get_num()), isqrt(x2sq.get_den()));
      for (const Rational& x2 : {r, Rational(-r)}) out.push_back({p.x, p.y, x2, y2});
    }
    return out;
  }
  const Rational disc = 48 * d * p.x * p.x;
  if (!is_rational_square(disc)) return out;
  const Rational root = make_rational(isqrt(disc.get_num()), isqrt(disc.get_den()));
  std::set<Rational> seen;
  for (const Rational& r : {root, Rational(-root)}) {
    const Rational y2 = (-4 * d * p.y + r) / (8 * d);
    if (!seen.insert(y2).second) continue;
    const Rational x2 = (-1 - 2 * d * p.y * y2) / (2 * p.x);
    QuadBasis b{p.x, p.y, x2, y2};
    if (!solves_a2_system(b, d)) throw Error(Errc::NotFound, "elimination produced a non-solution");
    out.push_back(b);
  }
  return out;
}

struct FalsifyResult {
  Integer d_input;
  Integer d;               ///< squarefree part actually searched
  long height = 0;
  std::size_t points = 0;  ///< circle points examined
  std::vector<QuadBasis> solutions;
};

/// Exhaustive search over circle points of slope height <= height for a
/// rational A_2 basis in Q(sqrt(+-d)).
inline FalsifyResult falsify_a2(const Integer& d_input, long height) {
  if (d_input == 0) throw Error(Errc::DimensionMismatch, "d must be nonzero");
  if (height < 1) throw Error(Errc::DimensionMismatch, "height must be >= 1");
  FalsifyResult res{d_input, abs(squarefree_part(d_input)), height, 0, {}};
  std::set<ConicPoint> seen;
  auto visit = [&](const Integer& s0, const Integer& s1) {
    ConicPoint p = unit_conic_point(s0, s1, res.d);
    if (!seen.insert(p).second) return;
    ++res.points;
    for (auto& b : complete_a2_solution(p, res.d)) res.solutions.push_back(b);
  };
  visit(0, 1);
  for (long s0 = 1; s0 <= height; ++s0)
    for (long s1 = -height; s1 <= height; ++s1)
      if (gcd_of(Integer(s0), Integer(s1)) == 1) visit(s0, s1);
  return res;
}

struct A2Family {
  std::vector<QuadLattice> lattices;
  std::vector<std::pair<std::array<Integer, 2>, Branch>> slopes;
};

/// Distinct lattices from slopes s1/s0 in lowest terms with |s0|, |s1| <= height
/// and both branches, in enumeration order.
inline A2Family a2_family(long height, int sign = 1) {
  A2Family fam;
  std::set<std::vector<Rational>> seen;
  for (long s0 = 0; s0 <= height; ++s0)
    for (long s1 = -height; s1 <= height; ++s1) {
      if (gcd_of(Integer(s0), Integer(s1)) != 1) continue;
      if (s0 == 0 && s1 != 1) continue;
      for (Branch br : {Branch::Plus, Branch::Minus}) {
        QuadLattice l = a2_from_slopes(s0, s1, br, sign);
        if (!seen.insert(l.canonical_basis().data()).second) continue;
        fam.lattices.push_back(l);
        fam.slopes.push_back({{Integer(s0), Integer(s1)}, br});
      }
    }
  return fam;
}

inline std::size_t family_distinctness(long height, int sign = 1) { return a2_family(height, sign).lattices.size(); }

inline Json to_json(const QuadBasis& b) {
  return Json::array({to_string(b.x1), to_string(b.y1), to_string(b.x2), to_string(b.y2)});
}

}  // namespace tracelat

#endif  // TRACELAT_QUADRATIC_A2_HPP
