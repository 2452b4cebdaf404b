#ifndef TRACELAT_ORDERS_HPP
#define TRACELAT_ORDERS_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "tracelat/a3_factory.hpp"
#include "tracelat/lattice.hpp"
#include "tracelat/shanks_field.hpp"

namespace tracelat {

/// Ideals are trace lattices in the ambient field, certified stable under an order.
using IdealLattice = ShanksLattice;

/// A multiplication-closed full-rank lattice containing 1.
struct CubicOrder {
  ShanksLattice lattice;
  Integer disc;

  const ShanksField& field() const { return lattice.ambient(); }
  const Matrix& basis() const { return lattice.basis(); }
};

namespace detail {

inline Coords basis_element(const Matrix& b, std::size_t i) { return b.row_vector(i); }

/// Canonical basis of the Z-span of all products of basis elements.
inline Matrix product_generators(const ShanksField& f, const Matrix& a, const Matrix& b) {
  Matrix gens(a.rows() * b.rows(), 3);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.rows(); ++j) gens.set_row(i * b.rows() + j, f.ring().mul(a.row_vector(i), b.row_vector(j)));
  return lattice_hnf(gens);
}

/// Basis of the lattice dual to the rows of b under the standard dot product.
inline Matrix standard_dual(const Matrix& b) { return inverse(b).transpose(); }

inline Matrix stack(const Matrix& a, const Matrix& b) {
  Matrix s(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) s.set_row(i, a.row(i));
  for (std::size_t i = 0; i < b.rows(); ++i) s.set_row(a.rows() + i, b.row(i));
  return s;
}

/// Intersection of full-rank lattices, as (A^# + B^#)^#.
inline Matrix intersect(const Matrix& a, const Matrix& b) {
  return lattice_hnf(standard_dual(lattice_hnf(stack(standard_dual(a), standard_dual(b)))));
}

/// {x in F : x I subset I} for a full-rank lattice I.
inline Matrix multiplier_ring(const ShanksField& f, const Matrix& ideal) {
  std::optional<Matrix> acc;
  for (std::size_t k = 0; k < ideal.rows(); ++k) {
    const Coords inv = f.ring().inv(ideal.row_vector(k));
    Matrix shifted(ideal.rows(), 3);
    for (std::size_t j = 0; j < ideal.rows(); ++j) shifted.set_row(j, f.ring().mul(inv, ideal.row_vector(j)));
    acc = acc ? intersect(*acc, shifted) : lattice_hnf(shifted);
  }
  return *acc;
}

/// Left kernel of an integer matrix over Z/p: rows v with v * a = 0 mod p.
inline std::vector<std::vector<Integer>> left_kernel_mod(const IntMatrix& a, const Integer& p) {
  const std::size_t n = a.rows(), m = a.cols();
  // row-reduce [a | I] and read kernel vectors off the zero rows of the a-part
  IntMatrix w(n, m + n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) w(i, j) = mod_floor(a(i, j), p);
    w(i, m + i) = 1;
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < m && r < n; ++c) {
    std::size_t piv = r;
    while (piv < n && w(piv, c) == 0) ++piv;
    if (piv == n) continue;
    w.swap_rows(r, piv);
    Integer inv;
    mpz_invert(inv.get_mpz_t(), w(r, c).get_mpz_t(), p.get_mpz_t());
    for (std::size_t j = 0; j < m + n; ++j) w(r, j) = mod_floor(w(r, j) * inv, p);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || w(i, c) == 0) continue;
      const Integer k = w(i, c);
      for (std::size_t j = 0; j < m + n; ++j) w(i, j) = mod_floor(w(i, j) - k * w(r, j), p);
    }
    ++r;
  }
  std::vector<std::vector<Integer>> out;
  for (std::size_t i = r; i < n; ++i) {
    std::vector<Integer> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = w(i, m + j);
    out.push_back(std::move(v));
  }
  return out;
}

/// Integral structure constants: basis_i * basis_j = sum_k c[i][j][k] basis_k.
using StructureConstants = std::vector<std::vector<std::vector<Integer>>>;

inline std::optional<StructureConstants> structure_constants(const ShanksField& f, const Matrix& basis) {
  const Matrix inv = inverse(basis);
  StructureConstants c(3, std::vector<std::vector<Integer>>(3));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Coords coords = vec_mul(f.ring().mul(basis.row_vector(i), basis.row_vector(j)), inv);
      for (const auto& q : coords) {
        if (!is_integer(q)) return std::nullopt;
        c[i][j].push_back(q.get_num());
      }
    }
  return c;
}

inline std::vector<Integer> mul_mod(const StructureConstants& c, const std::vector<Integer>& x,
                                    const std::vector<Integer>& y, const Integer& p) {
  std::vector<Integer> z(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      if (x[i] == 0 || y[j] == 0) continue;
      for (std::size_t k = 0; k < 3; ++k) z[k] += x[i] * y[j] * c[i][j][k];
    }
  for (auto& v : z) v = mod_floor(v, p);
  return z;
}

inline std::vector<Integer> pow_mod(const StructureConstants& c, std::vector<Integer> x, Integer e,
                                    const std::vector<Integer>& one, const Integer& p) {
  std::vector<Integer> r = one;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mul_mod(c, r, x, p);
    x = mul_mod(c, x, x, p);
    e /= 2;
  }
  return r;
}

/// The p-radical {x in O : x^k in pO for some k}.
inline Matrix p_radical(const CubicOrder& o, const Integer& p) {
  const StructureConstants c = *structure_constants(o.field(), o.basis());
  const Matrix inv = inverse(o.basis());
  std::vector<Integer> one(3);
  Coords one_coords = vec_mul(o.field().ring().one(), inv);
  for (std::size_t i = 0; i < 3; ++i) one[i] = one_coords[i].get_num();
  Integer q = p;
  while (q < 3) q *= p;
  IntMatrix frob(3, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    std::vector<Integer> e(3);
    e[i] = 1;
    frob.set_row(i, pow_mod(c, e, q, one, p));
  }
  Matrix gens = Rational(p) * o.basis();
  for (const auto& v : left_kernel_mod(frob, p)) {
    Coords lift(3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) lift[j] += v[i] * o.basis()(i, j);
    Matrix row(1, 3);
    row.set_row(0, lift);
    gens = stack(gens, row);
  }
  return lattice_hnf(gens);
}

inline std::optional<Matrix> enlarge_at(const CubicOrder& o, const Integer& p) {
  Matrix bigger = multiplier_ring(o.field(), p_radical(o, p));
  if (bigger == o.lattice.canonical_basis()) return std::nullopt;
  return bigger;
}

}  // namespace detail

inline bool is_multiplication_closed(const ShanksField& f, const Matrix& basis) {
  return detail::structure_constants(f, basis).has_value();
}

/// Builds the order on a basis, checking 1 in O and closure under products.
inline CubicOrder make_order(const ShanksField& f, const Matrix& basis) {
  ShanksLattice l(f, basis);
  if (!l.contains(f.ring().one())) throw Error(Errc::NotIntegral, "order must contain 1");
  if (!is_multiplication_closed(f, basis)) throw Error(Errc::NotIntegral, "basis is not closed under multiplication");
  const Rational d = det(l.gram());
  if (!is_integer(d)) throw Error(Errc::NotIntegral, "order discriminant is not an integer");
  return {std::move(l), d.get_num()};
}

/// Z[theta] with theta = b eps, b the denominator of t.
inline CubicOrder equation_order(const ShanksField& f) {
  const Rational b = f.t().get_den();
  return make_order(f, Matrix{{1, 0, 0}, {0, b, 0}, {0, 0, b * b}});
}

inline CubicOrder equation_order(const Rational& t) { return equation_order(ShanksField::make(t)); }

/// Characteristic-polynomial coefficients (trace, second symmetric, norm) of x.
inline std::array<Rational, 3> char_poly_coefficients(const ShanksField& f, const Coords& x) {
  const Rational tr = f.ring().trace(x);
  const Rational tr2 = f.ring().trace(f.ring().mul(x, x));
  return {tr, (tr * tr - tr2) / 2, f.ring().norm(x)};
}

/// Iterated radical enlargement at p until the order is p-maximal.
inline CubicOrder dedekind_maximalize(CubicOrder o, const Integer& p) {
  if (!is_prime(p)) throw Error(Errc::NotPrime, to_string(p) + " is not prime");
  while (auto bigger = detail::enlarge_at(o, p)) {
    CubicOrder next = make_order(o.field(), *bigger);
    if (o.disc % (p * p) != 0 || next.disc * p * p > o.disc)
      throw Error(Errc::NotMaximal, "enlargement did not reduce the discriminant");
    o = std::move(next);
  }
  return o;
}

inline bool is_p_maximal(const CubicOrder& o, const Integer& p) { return !detail::enlarge_at(o, p).has_value(); }

inline std::vector<Integer> primes_squared_dividing(const Integer& n) {
  std::vector<Integer> out;
  for (const auto& [p, e] : factorize(abs(n)))
    if (e >= 2) out.push_back(p);
  return out;
}

inline bool is_maximal(const CubicOrder& o) {
  for (const auto& p : primes_squared_dividing(o.disc))
    if (!is_p_maximal(o, p)) return false;
  return true;
}

inline CubicOrder maximal_order(const ShanksField& f) {
  CubicOrder o = equation_order(f);
  for (const auto& p : primes_squared_dividing(o.disc)) o = dedekind_maximalize(std::move(o), p);
  return o;
}

inline CubicOrder maximal_order(const Rational& t) { return maximal_order(ShanksField::make(t)); }

/// True when o * I subset I.
inline bool is_ideal_of(const CubicOrder& o, const IdealLattice& ideal) {
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (!ideal.contains(o.field().ring().mul(o.basis().row_vector(i), ideal.basis().row_vector(j)))) return false;
  return true;
}

/// Module generated by all pairwise products.
inline IdealLattice ideal_product(const IdealLattice& a, const IdealLattice& b) {
  return IdealLattice(a.ambient(), detail::product_generators(a.ambient(), a.basis(), b.basis()));
}

/// [b : a] for full-rank lattices a inside b.
inline Rational lattice_index(const ShanksLattice& sub, const ShanksLattice& super) {
  return abs(det(sub.basis()) / det(super.basis()));
}

/// The trace dual of the maximal order.
inline IdealLattice different_inverse(const CubicOrder& o) {
  if (!is_maximal(o)) throw Error(Errc::NotMaximal, "different_inverse needs the maximal order");
  IdealLattice d(o.field(), lattice_hnf(dual(o.lattice).basis()));
  if (!is_ideal_of(o, d)) throw Error(Errc::NotMaximal, "trace dual is not an ideal");
  return d;
}

inline constexpr unsigned long kMaxConductor = 200;

/// The ideal C between O and D^{-1} with [C : O] = conductor and C^2 = D^{-1},
/// found by searching every intermediate sublattice.
inline IdealLattice sqrt_different_inverse(const CubicOrder& o) {
  if (!is_perfect_square(o.disc)) throw Error(Errc::NotFound, "d_F is not a square");
  const Integer m = isqrt(o.disc);
  if (m > kMaxConductor) throw Error(Errc::TooLarge, "conductor " + to_string(m) + " > 200");
  const IdealLattice dinv = different_inverse(o);
  const ShanksField& f = o.field();
  // the order in coordinates of D^{-1}
  const IntMatrix ocoords = to_integer(o.basis() * inverse(dinv.basis()));
  const Matrix dcanon = dinv.canonical_basis();
  const unsigned long mu = m.get_ui();
  std::vector<IdealLattice> found;
  // upper-triangular HNF of an index-m sublattice: rows (d1,a,b), (0,d2,c), (0,0,d3)
  for (unsigned long d1 = 1; d1 <= mu; ++d1) {
    if (mu % d1) continue;
    for (unsigned long d2 = 1; d2 <= mu / d1; ++d2) {
      if ((mu / d1) % d2) continue;
      const unsigned long d3 = mu / d1 / d2;
      for (unsigned long a = 0; a < d2; ++a)
        for (unsigned long b = 0; b < d3; ++b)
          for (unsigned long c = 0; c < d3; ++c) {
            auto contains = [&](std::span<const Integer> v) {
              if (v[0] % d1 != 0) return false;
              const Integer k0 = v[0] / d1;
              const Integer r1 = v[1] - k0 * a;
              if (r1 % d2 != 0) return false;
              const Integer k1 = r1 / d2;
              return (v[2] - k0 * b - k1 * c) % d3 == 0;
            };
            bool ok = true;
            for (std::size_t i = 0; i < 3 && ok; ++i) ok = contains(ocoords.row(i));
            if (!ok) continue;
            Matrix sub{{Rational(d1), Rational(a), Rational(b)}, {0, Rational(d2), Rational(c)}, {0, 0, Rational(d3)}};
            IdealLattice cand(f, sub * dinv.basis());
            if (!is_ideal_of(o, cand)) continue;
            if (ideal_product(cand, cand).canonical_basis() != dcanon) continue;
            found.push_back(std::move(cand));
          }
    }
  }
  if (found.size() != 1)
    throw Error(Errc::NotFound, std::to_string(found.size()) + " square roots of the different found");
  return found.front();
}

/// Maximal ideals of O above 2, read off the ideals of O/2O; sorted by canonical basis.
inline std::vector<IdealLattice> primes_above_2(const CubicOrder& o) {
  const detail::StructureConstants c = *detail::structure_constants(o.field(), o.basis());
  const Integer two = 2;
  auto vec = [](unsigned x) { return std::vector<Integer>{x & 1u, x >> 1 & 1u, x >> 2 & 1u}; };
  auto code = [](const std::vector<Integer>& v) {
    return static_cast<unsigned>(v[0].get_ui() | v[1].get_ui() << 1 | v[2].get_ui() << 2);
  };
  auto mul = [&](unsigned x, unsigned y) { return code(detail::mul_mod(c, vec(x), vec(y), two)); };
  std::vector<IdealLattice> out;
  // subsets of the 8 elements containing 0 and closed under addition are the subspaces
  for (unsigned set = 1; set < 256; set += 2) {
    auto in = [&](unsigned x) { return (set >> x & 1u) != 0; };
    bool subspace = true, ideal = true, field = true;
    for (unsigned x = 0; x < 8; ++x)
      for (unsigned y = 0; y < 8; ++y) {
        if (!in(x)) continue;
        if (in(y) && !in(x ^ y)) subspace = false;
        if (!in(mul(x, y))) ideal = false;
      }
    if (!subspace || !ideal || set == 255) continue;
    for (unsigned x = 0; x < 8; ++x)
      for (unsigned y = 0; y < 8; ++y)
        if (!in(x) && !in(y) && in(mul(x, y))) field = false;
    if (!field) continue;
    Matrix gens = Rational(2) * o.basis();
    for (unsigned x = 1; x < 8; ++x) {
      if (!in(x)) continue;
      Matrix row(1, 3);
      Coords lift(3);
      auto v = vec(x);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) lift[j] += v[i] * o.basis()(i, j);
      row.set_row(0, lift);
      gens = detail::stack(gens, row);
    }
    out.emplace_back(o.field(), lattice_hnf(gens));
  }
  std::sort(out.begin(), out.end(), [](const IdealLattice& a, const IdealLattice& b) {
    return a.canonical_basis().data() < b.canonical_basis().data();
  });
  return out;
}

struct FakeA3Report {
  IdealLattice prime;
  IdealLattice root_different;
  IdealLattice lattice;
  std::optional<Coords> odd_witness;
  std::vector<Integer> disc_group;
  std::string type;
  bool galois_stable = false;
  bool dual_galois_stable = false;

  bool certified() const {
    return odd_witness.has_value() && disc_group == std::vector<Integer>{1, 1, 4} && type == "diag114" &&
           !galois_stable && !dual_galois_stable;
  }
};

/// p C^{-1} for the prime p above 2 with least canonical basis.
inline FakeA3Report fake_a3(const CubicOrder& o, std::size_t prime_index = 0) {
  std::vector<IdealLattice> primes = primes_above_2(o);
  if (primes.size() != 3) throw Error(Errc::TwoInert, "2 does not split completely");
  if (prime_index >= primes.size()) throw Error(Errc::DimensionMismatch, "prime index out of range");
  IdealLattice c = sqrt_different_inverse(o);
  IdealLattice l = ideal_product(primes[prime_index], c);
  FakeA3Report r{primes[prime_index], c, l, odd_trace_witness(l), disc_group(l.gram()),
                 classify_root_type(l.gram()).type.tag(), galois_stable(l), galois_stable(dual(l))};
  return r;
}

enum class Exclusion { Excluded, NotExcluded };

inline std::string to_string(Exclusion e) {
  return e == Exclusion::Excluded ? "excluded" : "not excluded by this criterion";
}

/// A fractional ideal has discriminant-group order in the square class of d_F.
inline Exclusion an_exclusion(const Integer& d_f, const Integer& disc_order) {
  if (d_f == 0) throw Error(Errc::ZeroParameter, "d_F must be nonzero");
  if (disc_order == 0) throw Error(Errc::ZeroParameter, "discriminant must be nonzero");
  return squarefree_part(d_f) == squarefree_part(disc_order) ? Exclusion::NotExcluded : Exclusion::Excluded;
}

inline Json to_json(const CubicOrder& o) {
  return Json{{"ambient", o.field().descriptor()},
              {"basis", to_json(o.basis())},
              {"gram", to_json(o.lattice.gram())},
              {"disc", to_string(o.disc)}};
}

}  // namespace tracelat

#endif  // TRACELAT_ORDERS_HPP
