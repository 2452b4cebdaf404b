#include <gtest/gtest.h>

#include <chrono>
#include <functional>

#include "oracles.hpp"
#include "tracelat/cyclotomic.hpp"

namespace tracelat {
namespace {

Coords c(std::initializer_list<int> v) {
  Coords out;
  for (int x : v) out.emplace_back(x);
  return out;
}

// |disc Z[zeta_n]| = n^phi / prod_{p | n} p^{phi / (p - 1)}, by trial division
Integer cyclotomic_disc_oracle(unsigned long n) {
  unsigned long phi = n, m = n;
  std::vector<unsigned long> primes;
  for (unsigned long p = 2; p <= m; ++p)
    if (m % p == 0) {
      primes.push_back(p);
      phi = phi / p * (p - 1);
      while (m % p == 0) m /= p;
    }
  Integer num, den = 1, pp;
  mpz_ui_pow_ui(num.get_mpz_t(), n, phi);
  for (unsigned long p : primes) {
    mpz_ui_pow_ui(pp.get_mpz_t(), p, phi / (p - 1));
    den *= pp;
  }
  return num / den;
}

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::NotFound;
}

TEST(Cyclotomic, Polynomials) {
  EXPECT_EQ(cyclotomic_polynomial(1), (std::vector<Integer>{-1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(4), (std::vector<Integer>{1, 0, 1}));
  EXPECT_EQ(cyclotomic_polynomial(5), (std::vector<Integer>{1, 1, 1, 1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(6), (std::vector<Integer>{1, -1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(12), (std::vector<Integer>{1, 0, -1, 0, 1}));
  for (unsigned long n = 1; n <= 30; ++n) EXPECT_EQ(cyclotomic_polynomial(n).size() - 1, euler_phi(n)) << n;
}

TEST(Cyclotomic, Conjugation) {
  CycField f(5);
  EXPECT_EQ(f.conj(f.zeta()), c({-1, -1, -1, -1}));
  EXPECT_EQ(f.mul(f.zeta(), f.conj(f.zeta())), f.one());
  for (unsigned long n : {3ul, 4ul, 5ul, 7ul, 8ul, 9ul, 12ul}) {
    CycField g(n);
    Coords a = parse_cyclotomic_element(g, "2 - z + 3z^2");
    Coords b = parse_cyclotomic_element(g, "z^-1 + 5");
    EXPECT_EQ(g.conj(g.conj(a)), a);
    EXPECT_EQ(g.conj(g.mul(a, b)), g.mul(g.conj(a), g.conj(b)));
    EXPECT_EQ(g.galois_generator_count() + 1, g.degree());
  }
}

TEST(Cyclotomic, HermitianForm) {
  CycField f(5);
  EXPECT_EQ(f.hermitian_pair(f.one(), f.one()), 4);
  EXPECT_EQ(f.hermitian_pair(f.zeta(), f.zeta()), 4);
  EXPECT_EQ(f.hermitian_pair(f.zeta(), f.one()), -1);
  for (unsigned long n : {3ul, 4ul, 5ul, 7ul, 8ul, 9ul}) {
    CycField g(n);
    CycLattice l = principal_ideal_lattice(g, g.one());
    const Matrix& m = l.gram();
    EXPECT_EQ(m, m.transpose()) << n;
    EXPECT_TRUE(cholesky_form(m).has_value()) << n;
    EXPECT_TRUE(galois_stable(l));
    // disc(Z[zeta_n]) up to sign
    EXPECT_EQ(abs(det(m)), cyclotomic_disc_oracle(n)) << n;
  }
}

TEST(Cyclotomic, SmallIdeals) {
  CycField three(3);
  EXPECT_EQ(classify_root_type(principal_ideal_lattice(three, three.one()).gram()).type.tag(), "A2");
  auto four_a2 = classify_root_type(principal_ideal_lattice(three, three.constant(2)).gram());
  EXPECT_EQ(four_a2.type.tag(), "other");
  EXPECT_EQ(four_a2.root_count, 0u);
  CycField five(5);
  Coords g = parse_cyclotomic_element(five, "(1 - z)^-1");
  EXPECT_EQ(classify_root_type(principal_ideal_lattice(five, g).gram()).type.tag(), "A4");
}

TEST(Cyclotomic, ApFamily) {
  for (unsigned long p : {3ul, 5ul, 7ul, 11ul}) {
    const auto start = std::chrono::steady_clock::now();
    CyclotomicReport r = verify_cyclotomic_ap(p);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    EXPECT_EQ(r.classification.type.tag(), "A" + std::to_string(p - 1));
    EXPECT_EQ(r.classification.det, Integer(p));
    EXPECT_EQ(r.classification.root_count, p * (p - 1));
    EXPECT_TRUE(r.classification.even);
    EXPECT_TRUE(galois_stable(r.lattice));
    EXPECT_LT(secs, 60.0);
  }
}

TEST(Cyclotomic, RootsMatchReducedBoxOracle) {
  for (unsigned long p : {7ul, 11ul}) {
    const Matrix g = verify_cyclotomic_ap(p).lattice.gram();
    auto sorted = [](std::vector<ShortVector> vs) {
      std::vector<std::vector<Integer>> k;
      for (auto& v : vs) k.push_back(std::move(v.coords));
      std::sort(k.begin(), k.end());
      return k;
    };
    const IntMatrix u = testing::lll_transform(g);
    EXPECT_EQ(abs(det(u)), 1);
    EXPECT_EQ(sorted(short_vectors(g, 2)), sorted(testing::short_vectors_reduced_box(g, 2))) << p;
  }
}

TEST(Cyclotomic, UnitMultipleGivesSameLattice) {
  CycField f(7);
  Coords g = cyclotomic_ap_generator(f, 7);
  // 1 + zeta is a unit for odd p
  Coords u = f.mul(g, parse_cyclotomic_element(f, "1 + z"));
  Coords v = f.mul(g, f.zeta_power(3));
  EXPECT_TRUE(lattice_equal(principal_ideal_lattice(f, g), principal_ideal_lattice(f, u)));
  EXPECT_TRUE(lattice_equal(principal_ideal_lattice(f, g), principal_ideal_lattice(f, v)));
  EXPECT_FALSE(lattice_equal(principal_ideal_lattice(f, g), principal_ideal_lattice(f, f.mul(g, f.constant(2)))));
}

TEST(Cyclotomic, Errors) {
  EXPECT_EQ(code_of([] { verify_cyclotomic_ap(9); }), Errc::NotPrime);
  EXPECT_EQ(code_of([] { verify_cyclotomic_ap(2); }), Errc::NotPrime);
  EXPECT_EQ(code_of([] { verify_cyclotomic_ap(17); }), Errc::TooLarge);
  CycField f(5);
  EXPECT_EQ(code_of([&] { principal_ideal_lattice(f, f.constant(0)); }), Errc::ZeroGenerator);
  EXPECT_THROW(CycField(2), Error);
}

TEST(Cyclotomic, Parser) {
  CycField f(5);
  EXPECT_EQ(parse_cyclotomic_element(f, "z^5"), f.one());
  EXPECT_EQ(parse_cyclotomic_element(f, "1+z+z^2+z^3+z^4"), f.constant(0));
  EXPECT_EQ(parse_cyclotomic_element(f, "2z"), c({0, 2, 0, 0}));
  EXPECT_EQ(parse_cyclotomic_element(f, " -(z - 1) * 3 "), c({3, -3, 0, 0}));
  EXPECT_EQ(parse_cyclotomic_element(f, "z^-1"), f.zeta_power(4));
  EXPECT_EQ(f.mul(parse_cyclotomic_element(f, "1/(1-z)"), f.sub(f.one(), f.zeta())), f.one());
  for (const char* bad : {"", "z +", "(1 + z", "z ^ x", "1 / (z - z)", "w", "0^-1", "3)"})
    EXPECT_EQ(code_of([&] { parse_cyclotomic_element(f, bad); }), Errc::Parse) << bad;
  try {
    parse_cyclotomic_element(f, "1 + w");
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("position 4"), std::string::npos) << e.what();
  }
}

TEST(Cyclotomic, Json) {
  CycField f(7);
  Json j = to_json(principal_ideal_lattice(f, f.one()), "A6");
  EXPECT_EQ(j["ambient"]["kind"], "cyclotomic");
  EXPECT_EQ(j["ambient"]["n"], 7);
}

}  // namespace
}  // namespace tracelat
