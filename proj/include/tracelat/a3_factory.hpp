#ifndef TRACELAT_A3_FACTORY_HPP
#define TRACELAT_A3_FACTORY_HPP

#include <array>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "tracelat/conic.hpp"
#include "tracelat/lattice.hpp"
#include "tracelat/parallel.hpp"
#include "tracelat/shanks_field.hpp"

namespace tracelat {

/// Requested traces Tr(b^2) = d, Tr(b b^sigma) = e for a normal generator b,
/// with f^2 = d + 2e.
struct TraceTarget {
  Rational d, e, f;

  static TraceTarget make(const Rational& d, const Rational& e, const Rational& f) {
    if (f * f != d + 2 * e) throw Error(Errc::NonSquare, "f^2 must equal d + 2e");
    return {d, e, f};
  }
  static TraceTarget a3() { return {2, 1, 2}; }
  static TraceTarget self_dual() { return {1, 0, 1}; }

  Matrix circulant_gram() const { return Matrix{{d, e, e}, {e, d, e}, {e, e, d}}; }
};

using Lambda = std::array<Rational, 3>;

/// (sum of lambda_i, sum over i<j of lambda_i lambda_j).
inline std::pair<Rational, Rational> lq(const Lambda& l) {
  return {l[0] + l[1] + l[2], l[0] * l[1] + l[0] * l[2] + l[1] * l[2]};
}

/// (Tr(<l,eps>^2), Tr(<l,eps><l,eps^sigma>)) from the closed formulas in L and Q.
inline std::pair<Rational, Rational> trace_targets_of(const Rational& t, const Lambda& l) {
  if (t == 0) throw Error(Errc::ZeroParameter, "closed formulas need t != 0; use t = -3 for the same field");
  const Rational delta = t * t + 3 * t + 9;
  auto [L, Q] = lq(l);
  return {(t * t + 2 * t + 6) * L * L - 2 * delta * Q, -(t + 3) * L * L + delta * Q};
}

/// The conic x^2 + 3y^2 = (d - e) delta_t on which admissible lambda live.
inline Conic target_conic(const Rational& t, const TraceTarget& target) {
  return Conic::make(3, (target.d - target.e) * (t * t + 3 * t + 9));
}

/// Discriminant of the quadratic whose roots are t*lambda_1, t*lambda_2.
inline Rational lambda_discriminant(const Rational& t, const TraceTarget& target, const Rational& lambda0) {
  const Rational delta = t * t + 3 * t + 9;
  const Rational s = 3 * t * lambda0 - target.f;
  return -s * s / 3 + (4 * t * t * target.f * target.f - 12 * t * t * target.e) / (3 * delta);
}

/// Recovers lambda from a point of the target conic; lambda_1 takes the + branch.
inline Lambda lambda_from_point(const Rational& t, const TraceTarget& target, const ConicPoint& p) {
  if (t == 0) throw Error(Errc::ZeroParameter, "t = 0 is excluded; use t = -3 for the same field");
  if (!on_conic(target_conic(t, target), p))
    throw Error(Errc::PointNotOnConic, "(" + to_string(p.x) + ", " + to_string(p.y) + ") is not on the conic");
  const Rational delta = t * t + 3 * t + 9;
  const Rational lambda0 = (2 * t * p.x / delta + target.f) / (3 * t);
  const Rational root = 2 * t * p.y / delta;
  if (lambda_discriminant(t, target, lambda0) != root * root)
    throw Error(Errc::PointNotOnConic, "discriminant identity failed");
  const Rational rest = target.f - t * lambda0;
  Lambda l{lambda0, (rest + root) / (2 * t), (rest - root) / (2 * t)};
  if (trace_targets_of(t, l) != std::make_pair(target.d, target.e))
    throw Error(Errc::PointNotOnConic, "recovered lambda misses the trace target");
  return l;
}

using ShanksLattice = TraceLattice<ShanksField>;

/// Lattice spanned by the Galois orbit of <lambda, eps>.
inline ShanksLattice normal_basis_lattice(const ShanksField& field, const Lambda& l) {
  FieldElement b0 = field.bracket(l);
  FieldElement b1 = field.sigma(b0);
  FieldElement b2 = field.sigma(b1);
  Matrix basis(3, 3);
  basis.set_row(0, b0.coords());
  basis.set_row(1, b1.coords());
  basis.set_row(2, b2.coords());
  if (rank(basis) != 3) throw Error(Errc::DegenerateLambda, "the orbit of <lambda, eps> is Q-dependent");
  return ShanksLattice(field, std::move(basis));
}

inline ShanksLattice normal_basis_lattice(const Rational& t, const Lambda& l) {
  return normal_basis_lattice(ShanksField::make(t), l);
}

/// The unimodular change of basis taking the circulant Gram (2,1,1) to A_3.
inline Matrix a3_change_of_basis() { return Matrix{{1, 0, 0}, {-1, 1, 0}, {0, -1, 1}}; }

inline ShanksLattice to_a3_basis(const ShanksLattice& l) {
  if (l.gram() != TraceTarget::a3().circulant_gram())
    throw Error(Errc::WrongGram, "expected Gram [[2,1,1],[1,2,1],[1,1,2]]");
  ShanksLattice out = l.transformed(a3_change_of_basis());
  if (out.gram() != root_lattice_gram({RootType::Kind::A, 3})) throw Error(Errc::WrongGram, "base change failed");
  return out;
}

struct FamilyMember {
  Lambda lambda;
  ConicPoint point;
  Slope slope;
  ShanksLattice lattice;   ///< normal basis
  Matrix hnf;              ///< canonical basis, the dedup key
  std::string type;
};

struct Family {
  Rational t;
  TraceTarget target;
  std::vector<FamilyMember> members;
  std::size_t points = 0;   ///< conic points visited
  std::size_t skipped = 0;  ///< points whose lambda is degenerate
  std::size_t duplicates = 0;

  Integer max_lambda0_denominator() const {
    Integer m = 0;
    for (const auto& mem : members)
      if (mem.lambda[0].get_den() > m) m = mem.lambda[0].get_den();
    return m;
  }
};

/// Lattices from every conic point reachable with slope height <= height,
/// deduplicated by canonical basis in conic-enumeration order.
inline Family generate_family(const Rational& t, long height, const TraceTarget& target = TraceTarget::a3(),
                              unsigned workers = worker_count()) {
  if (t == 0) throw Error(Errc::ZeroParameter, "t = 0 is excluded; use t = -3 for the same field");
  ShanksField field = ShanksField::make(t);
  const Conic conic = target_conic(t, target);
  // the base point lies on x^2 + 3y^2 = delta; rescale by d - e when it is a square
  const Rational scale2 = target.d - target.e;
  if (!is_rational_square(scale2)) throw Error(Errc::NotFound, "no known base point for this target");
  const Rational scale = make_rational(isqrt(scale2.get_num()), isqrt(scale2.get_den()));
  ConicPoint base = base_point_delta(t);
  base = {base.x * scale, base.y * scale};
  auto samples = enumerate_points(conic, base, height);

  const bool a3 = target.d == 2 && target.e == 1;
  const bool unimodular = target.d == 1 && target.e == 0;
  auto build = [&](std::size_t i) -> std::optional<FamilyMember> {
    const auto& s = samples[i];
    Lambda l = lambda_from_point(t, target, s.point);
    try {
      ShanksLattice lat = normal_basis_lattice(field, l);
      if (lat.gram() != target.circulant_gram()) throw Error(Errc::WrongGram, "normal basis misses the target Gram");
      std::string type = "other";
      if (a3 || unimodular) type = classify_root_type(lat.gram()).type.tag();
      return FamilyMember{l, s.point, s.slope, lat, lat.canonical_basis(), type};
    } catch (const Error& e) {
      if (e.code() == Errc::DegenerateLambda) return std::nullopt;
      throw;
    }
  };
  auto built = parallel_map<std::optional<FamilyMember>>(samples.size(), build, workers);

  Family fam{t, target, {}, samples.size(), 0, 0};
  std::set<std::vector<Rational>> seen;
  for (auto& m : built) {
    if (!m) {
      ++fam.skipped;
    } else if (!seen.insert(m->hnf.data()).second) {
      ++fam.duplicates;
    } else {
      fam.members.push_back(std::move(*m));
    }
  }
  return fam;
}

inline Family self_dual_family(const Rational& t, long height, unsigned workers = worker_count()) {
  return generate_family(t, height, TraceTarget::self_dual(), workers);
}

/// The matrix identity P * I * P = circulant(2,1,1) with P = J - I.
inline bool self_dual_transform_identity() {
  const Matrix p{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
  return p * Matrix::identity(3) * p == TraceTarget::a3().circulant_gram();
}

inline Json to_json(const FamilyMember& m) {
  Json j = to_json(m.lattice, m.type);
  j["lambda"] = Json::array({to_string(m.lambda[0]), to_string(m.lambda[1]), to_string(m.lambda[2])});
  j["point"] = to_json(m.point);
  j["slope"] = slope_json(m.slope);
  j["hnf"] = to_json(m.hnf);
  return j;
}

}  // namespace tracelat

#endif  // TRACELAT_A3_FACTORY_HPP
