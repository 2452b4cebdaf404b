#ifndef TRACELAT_CONIC_HPP
#define TRACELAT_CONIC_HPP

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "tracelat/serialize.hpp"

namespace tracelat {

/// The ellipse x^2 + D y^2 = m with D, m > 0.
struct Conic {
  Rational D;
  Rational m;

  static Conic make(const Rational& D, const Rational& m) {
    if (D <= 0 || m <= 0) throw Error(Errc::DimensionMismatch, "conic needs D > 0 and m > 0");
    return {D, m};
  }
};

struct ConicPoint {
  Rational x;
  Rational y;

  friend bool operator==(const ConicPoint&, const ConicPoint&) = default;
  friend bool operator<(const ConicPoint& a, const ConicPoint& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  }
};

inline Rational residual(const Conic& c, const ConicPoint& p) { return p.x * p.x + c.D * p.y * p.y - c.m; }
inline bool on_conic(const Conic& c, const ConicPoint& p) { return residual(c, p) == 0; }

/// Slope of a chord; nullopt encodes the vertical direction.
using Slope = std::optional<Rational>;

inline Json to_json(const ConicPoint& p) { return Json{{"x", to_string(p.x)}, {"y", to_string(p.y)}}; }
inline Json slope_json(const Slope& s) { return s ? Json(to_string(*s)) : Json("inf"); }

/// The base point (t + 3/2, 3/2) on x^2 + 3y^2 = t^2 + 3t + 9.
inline ConicPoint base_point_delta(const Rational& t) {
  ConicPoint p{t + Rational(3, 2), Rational(3, 2)};
  const Conic c{3, t * t + 3 * t + 9};
  if (!on_conic(c, p)) throw Error(Errc::PointNotOnConic, "base point identity failed");
  return p;
}

/// Other intersection of the line through p0 with the given slope. A tangent
/// line returns p0; the vertical line returns (x0, -y0).
inline ConicPoint second_intersection(const Conic& c, const ConicPoint& p0, const Slope& slope) {
  if (!on_conic(c, p0)) throw Error(Errc::PointNotOnConic, "base point is not on the conic");
  if (!slope) return {p0.x, -p0.y};
  const Rational& s = *slope;
  // x = x0 + u, y = y0 + s u; the nonzero root of the quadratic in u
  Rational u = -(2 * p0.x + 2 * c.D * p0.y * s) / (1 + c.D * s * s);
  return {p0.x + u, p0.y + s * u};
}

struct ConicSample {
  ConicPoint point;
  Slope slope;
};

/// Slopes a/b in lowest terms with |a|, |b| <= height (b > 0), in Farey order
/// by denominator then numerator, followed by the vertical slope.
inline std::vector<Slope> slopes_up_to(long height) {
  std::vector<Slope> out;
  for (long b = 1; b <= height; ++b)
    for (long a = -height; a <= height; ++a)
      if (gcd_of(Integer(a), Integer(b)) == 1) out.emplace_back(make_rational(Integer(a), Integer(b)));
  out.emplace_back(std::nullopt);
  return out;
}

/// Distinct points reached by chords of slope height <= height through p0,
/// each with the first slope that produced it.
inline std::vector<ConicSample> enumerate_points(const Conic& c, const ConicPoint& p0, long height) {
  if (height < 1) throw Error(Errc::DimensionMismatch, "height must be >= 1");
  std::vector<ConicSample> out;
  std::set<ConicPoint> seen;
  for (const auto& s : slopes_up_to(height)) {
    ConicPoint p = second_intersection(c, p0, s);
    if (seen.insert(p).second) out.push_back({p, s});
  }
  return out;
}

/// Point of x^2 + 3y^2 = 1 on the chord of slope s1/s0 through (1, 0).
inline ConicPoint a2_first_point(const Integer& s0, const Integer& s1) {
  if (s0 == 0 && s1 == 0) throw Error(Errc::ZeroSlopePair, "(s0, s1) = (0, 0)");
  Integer n = s0 * s0 + 3 * s1 * s1;
  return {make_rational(-(s0 * s0 - 3 * s1 * s1), n), make_rational(-2 * s0 * s1, n)};
}

}  // namespace tracelat

#endif  // TRACELAT_CONIC_HPP
