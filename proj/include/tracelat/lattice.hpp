#ifndef TRACELAT_LATTICE_HPP
#define TRACELAT_LATTICE_HPP

#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tracelat/linalg.hpp"
#include "tracelat/quotient_ring.hpp"
#include "tracelat/serialize.hpp"

namespace tracelat {

/// A number field (or etale algebra) carrying a positive-definite trace
/// form, with elements given by coordinates in a fixed Q-basis.
template <typename A>
concept TraceAmbient = std::copy_constructible<A> && requires(const A& a, const Coords& x, std::size_t k) {
  { a.degree() } -> std::convertible_to<std::size_t>;
  { a.trace_form(x, x) } -> std::same_as<Rational>;
  { a.galois_generator_count() } -> std::convertible_to<std::size_t>;
  { a.apply_galois(k, x) } -> std::same_as<Coords>;
  { a.descriptor() } -> std::same_as<Json>;
  { a == a } -> std::convertible_to<bool>;
};

template <TraceAmbient A>
Matrix gram_of(const Matrix& basis, const A& ambient) {
  const std::size_t n = basis.rows();
  if (basis.cols() != ambient.degree()) throw Error(Errc::DimensionMismatch, "basis width != field degree");
  if (rank(basis) != n) throw Error(Errc::DependentBasis, "basis rows are linearly dependent");
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      g(i, j) = ambient.trace_form(basis.row_vector(i), basis.row_vector(j));
      g(j, i) = g(i, j);
    }
  return g;
}

/// Rational Cholesky data: Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2.
/// Returns nullopt when the form is not positive definite.
inline std::optional<Matrix> cholesky_form(const Matrix& gram) {
  const std::size_t n = gram.rows();
  Matrix q = gram;
  for (std::size_t i = 0; i < n; ++i) {
    if (q(i, i) <= 0) return std::nullopt;
    for (std::size_t j = i + 1; j < n; ++j) {
      q(j, i) = q(i, j);
      q(i, j) /= q(i, i);
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) q(k, l) -= q(k, i) * q(i, l);
  }
  return q;
}

inline bool is_positive_definite(const Matrix& gram) {
  return gram.is_symmetric() && cholesky_form(gram).has_value();
}

inline bool is_integral_gram(const Matrix& gram) { return is_integral(gram); }

inline bool is_even_gram(const Matrix& gram) {
  if (!is_integral(gram)) return false;
  for (std::size_t i = 0; i < gram.rows(); ++i)
    if (gram(i, i).get_num() % 2 != 0) return false;
  return true;
}

/// Invariant factors of the discriminant group L^*/L (SNF of the Gram matrix).
inline std::vector<Integer> disc_group(const Matrix& gram) {
  if (!is_integral(gram)) throw Error(Errc::NotIntegral, "discriminant group needs an integral Gram");
  return snf(to_integer(gram));
}

inline Rational quadratic_value(const Matrix& gram, std::span<const Integer> x) {
  Rational v = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (x[j] != 0) row += gram(i, j) * x[j];
    v += row * x[i];
  }
  return v;
}

inline Rational bilinear_value(const Matrix& gram, std::span<const Integer> x, std::span<const Integer> y) {
  Rational v = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (y[j] != 0) v += gram(i, j) * x[i] * y[j];
  }
  return v;
}

struct ShortVector {
  std::vector<Integer> coords;
  Rational norm;
};

/// All nonzero v with v^T G v <= bound, one representative per +-pair (the
/// last nonzero coordinate is positive). Exact Fincke-Pohst enumeration.
inline std::vector<ShortVector> short_vectors(const Matrix& gram, const Rational& bound) {
  auto chol = cholesky_form(gram);
  if (!gram.is_symmetric() || !chol) throw Error(Errc::NotPositiveDefinite, "Gram matrix is not positive definite");
  const Matrix& q = *chol;
  const std::size_t n = gram.rows();
  std::vector<ShortVector> out;
  if (n == 0 || bound <= 0) return out;
  std::vector<Integer> x(n);
  std::vector<Rational> remaining(n + 1);

  // depth-first from the last coordinate down
  auto recurse = [&](auto&& self, std::size_t level, bool tail_zero) -> void {
    const std::size_t i = level - 1;
    Rational center = 0;
    for (std::size_t j = i + 1; j < n; ++j) center -= q(i, j) * x[j];
    const Rational radius2 = remaining[level] / q(i, i);
    auto fits = [&](const Integer& v) {
      Rational d = v - center;
      return d * d <= radius2;
    };
    Integer lo = floor_of(center), hi = lo + 1;
    if (!fits(lo) && !fits(hi)) return;
    if (!fits(lo)) lo = hi;
    while (fits(lo - 1)) --lo;
    if (fits(hi))
      while (fits(hi + 1)) ++hi;
    else
      hi = lo;
    if (tail_zero && lo < 0) lo = 0;
    for (Integer v = lo; v <= hi; ++v) {
      x[i] = v;
      Rational d = v - center;
      remaining[i] = remaining[level] - q(i, i) * d * d;
      const bool zero_now = tail_zero && v == 0;
      if (i == 0) {
        if (!zero_now) out.push_back({x, bound - remaining[0]});
      } else {
        self(self, i, zero_now);
      }
    }
    x[i] = 0;
  };
  remaining[n] = bound;
  recurse(recurse, n, true);
  return out;
}

/// Root-lattice and related labels recognized by classify_root_type.
struct RootType {
  enum class Kind { A, D, E, Diag114, UnimodularOdd, Other };
  Kind kind = Kind::Other;
  std::size_t n = 0;

  std::string tag() const {
    switch (kind) {
      case Kind::A: return "A" + std::to_string(n);
      case Kind::D: return "D" + std::to_string(n);
      case Kind::E: return "E" + std::to_string(n);
      case Kind::Diag114: return "diag114";
      case Kind::UnimodularOdd: return "unimodular_odd";
      case Kind::Other: return "other";
    }
    return "other";
  }

  friend bool operator==(const RootType&, const RootType&) = default;
};

struct Classification {
  RootType type;
  bool even = false;
  Integer det;
  std::size_t root_count = 0;  ///< number of norm-2 vectors, both signs
  bool roots_generate = false;
};

/// Gram matrix of the standard basis of type A_n, D_n (n >= 4) or
/// E_n (n = 6, 7, 8): chain adjacency, with the first node moved to hang off
/// node 3 (D) or node 4 (E).
inline Matrix root_lattice_gram(RootType type) {
  const std::size_t n = type.n;
  Matrix g(n, n);
  auto link = [&](std::size_t i, std::size_t j) {  // 1-based
    g(i - 1, j - 1) = -1;
    g(j - 1, i - 1) = -1;
  };
  for (std::size_t i = 0; i < n; ++i) g(i, i) = 2;
  using Kind = RootType::Kind;
  switch (type.kind) {
    case Kind::A:
      for (std::size_t i = 1; i < n; ++i) link(i, i + 1);
      break;
    case Kind::D:
    case Kind::E:
      if ((type.kind == Kind::D && n < 4) || (type.kind == Kind::E && (n < 6 || n > 8)))
        throw Error(Errc::DimensionMismatch, "no root system " + type.tag());
      for (std::size_t i = 2; i < n; ++i) link(i, i + 1);
      link(1, type.kind == Kind::D ? 3 : 4);
      break;
    default:
      throw Error(Errc::DimensionMismatch, "not a root system: " + type.tag());
  }
  return g;
}

inline constexpr std::size_t kMaxClassifyRank = 12;

/// Recognizes A_n, D_n, E_6/7/8 from (evenness, det, root count, roots
/// generate); for odd lattices recognizes Z^n-type unimodular forms and the
/// ternary form x^2 + y^2 + 4z^2.
inline Classification classify_root_type(const Matrix& gram) {
  if (!is_integral(gram)) throw Error(Errc::NotIntegral, "classification needs an integral Gram");
  const std::size_t n = gram.rows();
  if (n > kMaxClassifyRank) throw Error(Errc::RankTooLarge, "rank " + std::to_string(n) + " > 12");
  if (!is_positive_definite(gram)) throw Error(Errc::NotPositiveDefinite, "Gram matrix is not positive definite");
  Classification c;
  c.det = det(to_integer(gram));
  c.even = is_even_gram(gram);
  using Kind = RootType::Kind;
  if (c.even) {
    std::vector<ShortVector> roots;
    for (auto& v : short_vectors(gram, 2))
      if (v.norm == 2) roots.push_back(std::move(v));
    c.root_count = 2 * roots.size();
    if (!roots.empty()) {
      IntMatrix gens(roots.size(), n);
      for (std::size_t i = 0; i < roots.size(); ++i) gens.set_row(i, roots[i].coords);
      c.roots_generate = hnf_basis(gens) == IntMatrix::identity(n);
    }
    if (!c.roots_generate) return c;
    const Integer& d = c.det;
    const std::size_t r = c.root_count;
    if (d == n + 1 && r == n * (n + 1))
      c.type = {Kind::A, n};
    else if (n >= 4 && d == 4 && r == 2 * n * (n - 1))
      c.type = {Kind::D, n};
    else if (n == 6 && d == 3 && r == 72)
      c.type = {Kind::E, 6};
    else if (n == 7 && d == 2 && r == 126)
      c.type = {Kind::E, 7};
    else if (n == 8 && d == 1 && r == 240)
      c.type = {Kind::E, 8};
    return c;
  }
  if (c.det == 1) {
    c.type = {Kind::UnimodularOdd, n};
    return c;
  }
  if (n == 3 && c.det == 4) {
    std::vector<ShortVector> units, fours;
    for (auto& v : short_vectors(gram, 4)) {
      if (v.norm == 1) units.push_back(v);
      if (v.norm == 4) fours.push_back(v);
    }
    for (std::size_t a = 0; a < units.size(); ++a)
      for (std::size_t b = a + 1; b < units.size(); ++b) {
        if (bilinear_value(gram, units[a].coords, units[b].coords) != 0) continue;
        for (const auto& w : fours) {
          if (bilinear_value(gram, units[a].coords, w.coords) != 0) continue;
          if (bilinear_value(gram, units[b].coords, w.coords) != 0) continue;
          IntMatrix m(3, 3);
          m.set_row(0, units[a].coords);
          m.set_row(1, units[b].coords);
          m.set_row(2, w.coords);
          if (abs(det(m)) == 1) {
            c.type = {Kind::Diag114, 3};
            return c;
          }
        }
      }
  }
  return c;
}

inline constexpr std::size_t kMaxParityRank = 20;

/// Searches L/2L for a class of odd norm; nullopt exactly when L is even.
inline std::optional<std::vector<Integer>> odd_trace_witness(const Matrix& gram) {
  if (!is_integral(gram)) throw Error(Errc::NotIntegral, "parity search needs an integral Gram");
  const std::size_t n = gram.rows();
  if (n > kMaxParityRank) throw Error(Errc::RankTooLarge, "parity search capped at rank 20");
  std::vector<std::vector<unsigned char>> g2(n, std::vector<unsigned char>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g2[i][j] = mod_floor(gram(i, j).get_num(), 2) == 1 ? 1 : 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    unsigned parity = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1)) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (mask >> j & 1) parity ^= g2[i][j];
    }
    if (parity) {
      std::vector<Integer> x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<unsigned long>(mask >> i & 1);
      return x;
    }
  }
  return std::nullopt;
}

/// A full-rank Z-module inside an ambient field with its trace-form Gram.
template <TraceAmbient A>
class TraceLattice {
 public:
  TraceLattice(A ambient, Matrix basis) : ambient_(std::move(ambient)), basis_(std::move(basis)) {
    if (!basis_.is_square() || basis_.rows() != ambient_.degree())
      throw Error(Errc::DimensionMismatch, "lattice basis must be square of field degree");
    gram_ = gram_of(basis_, ambient_);
    if (!is_positive_definite(gram_)) throw Error(Errc::NotPositiveDefinite, "trace form is not positive definite");
  }

  const A& ambient() const { return ambient_; }
  const Matrix& basis() const { return basis_; }
  const Matrix& gram() const { return gram_; }
  std::size_t rank() const { return basis_.rows(); }

  bool is_integral() const { return is_integral_gram(gram_); }
  bool is_even() const { return is_even_gram(gram_); }

  /// Coordinates of v with respect to the lattice basis.
  Coords coordinates(const Coords& v) const { return vec_mul(v, inverse(basis_)); }

  bool contains(const Coords& v) const {
    for (const auto& c : coordinates(v))
      if (!tracelat::is_integer(c)) return false;
    return true;
  }

  /// Basis change by a matrix (rows of m combine basis rows).
  TraceLattice transformed(const Matrix& m) const { return TraceLattice(ambient_, m * basis_); }

  /// Canonical basis: HNF of the denominator-cleared basis.
  Matrix canonical_basis() const { return lattice_hnf(basis_); }

  Coords element(std::span<const Integer> coords) const {
    Coords v(basis_.cols());
    for (std::size_t i = 0; i < coords.size(); ++i)
      for (std::size_t j = 0; j < basis_.cols(); ++j) v[j] += coords[i] * basis_(i, j);
    return v;
  }

 private:
  A ambient_;
  Matrix basis_;
  Matrix gram_;
};

template <TraceAmbient A>
TraceLattice<A> dual(const TraceLattice<A>& l) {
  return TraceLattice<A>(l.ambient(), inverse(l.gram()) * l.basis());
}

template <TraceAmbient A>
bool lattice_equal(const TraceLattice<A>& a, const TraceLattice<A>& b) {
  if (!(a.ambient() == b.ambient())) throw Error(Errc::AmbientMismatch, "lattices live in different fields");
  return a.canonical_basis() == b.canonical_basis();
}

/// True when every Galois generator maps each basis vector back into L.
template <TraceAmbient A>
bool galois_stable(const TraceLattice<A>& l) {
  for (std::size_t k = 0; k < l.ambient().galois_generator_count(); ++k)
    for (std::size_t i = 0; i < l.rank(); ++i)
      if (!l.contains(l.ambient().apply_galois(k, l.basis().row_vector(i)))) return false;
  return true;
}

/// Odd-norm representative as an element of the ambient field.
template <TraceAmbient A>
std::optional<Coords> odd_trace_witness(const TraceLattice<A>& l) {
  auto w = odd_trace_witness(l.gram());
  if (!w) return std::nullopt;
  return l.element(*w);
}

template <TraceAmbient A>
Json to_json(const TraceLattice<A>& l, const std::optional<std::string>& type = std::nullopt) {
  Json j{{"ambient", l.ambient().descriptor()}, {"basis", to_json(l.basis())}, {"gram", to_json(l.gram())}};
  if (type) j["type"] = *type;
  return j;
}

}  // namespace tracelat

#endif  // TRACELAT_LATTICE_HPP
