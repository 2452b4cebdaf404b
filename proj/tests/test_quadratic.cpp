#include <gtest/gtest.h>

#include "tracelat/quadratic_a2.hpp"

namespace tracelat {
namespace {

const Matrix kA2{{2, -1}, {-1, 2}};

TEST(Quadratic, Pairing) {
  const Rational h(1, 2);
  EXPECT_EQ(pairing({1, 0}, {1, 0}, 3), 2);
  EXPECT_EQ(pairing({h, h}, {h, h}, 3), 2);
  EXPECT_EQ(pairing({h, h}, {h, -h}, 3), -1);
  for (int sign : {1, -1}) {
    QuadraticField f(3, sign);
    EXPECT_EQ(f.trace_form({h, h}, {h, -h}), -1);
  }
  EXPECT_THROW(QuadraticField(12, 1), Error);
}

TEST(Quadratic, SlopeExamples) {
  QuadBasis b = a2_basis_from_slopes(1, 0, Branch::Plus);
  EXPECT_EQ(b, (QuadBasis{-1, 0, Rational(1, 2), Rational(-1, 2)}));
  EXPECT_EQ(a2_basis_from_slopes(1, 2, Branch::Plus).y2, Rational(15, 26));
  EXPECT_EQ(a2_basis_from_slopes(1, 2, Branch::Minus).y2, Rational(-7, 26));
  EXPECT_EQ(a2_from_slopes(1, 0, Branch::Plus).gram(), kA2);
  QuadBasis c = a2_basis_from_slopes(1, 1, Branch::Minus);
  EXPECT_EQ(c, (QuadBasis{Rational(1, 2), Rational(-1, 2), -1, 0}));
  EXPECT_EQ(a2_from_slopes(1, 1, Branch::Minus).gram(), kA2);
  EXPECT_THROW(a2_from_slopes(0, 0, Branch::Plus), Error);
}

TEST(Quadratic, SlopeSweep) {
  for (int s0 = -10; s0 <= 10; ++s0)
    for (int s1 = -10; s1 <= 10; ++s1) {
      if (!s0 && !s1) continue;
      EXPECT_NE(a2_first_point(s0, s1).x, 0);
      for (Branch br : {Branch::Plus, Branch::Minus}) {
        QuadBasis b = a2_basis_from_slopes(s0, s1, br);
        EXPECT_TRUE(solves_a2_system(b, 3));
        QuadLattice real = a2_from_slopes(s0, s1, br, 1);
        QuadLattice imag = a2_from_slopes(s0, s1, br, -1);
        EXPECT_EQ(real.gram(), imag.gram());
        EXPECT_EQ(classify_root_type(real.gram()).type.tag(), "A2");
      }
    }
}

TEST(Quadratic, NormalA2) {
  QuadLattice n = normal_a2();
  EXPECT_EQ(n.gram(), kA2);
  EXPECT_TRUE(galois_stable(n));
  EXPECT_EQ(n.ambient().apply_galois(0, n.basis().row_vector(0)), n.basis().row_vector(1));
  auto sols = normal_a2_solutions(3);
  ASSERT_EQ(sols.size(), 4u);
  for (const auto& s : sols) EXPECT_TRUE(lattice_equal(QuadLattice(n.ambient(), s.matrix()), n));
  const Rational h(1, 2);
  EXPECT_NE(std::find(sols.begin(), sols.end(), QuadBasis{h, h, h, -h}), sols.end());
  EXPECT_NE(std::find(sols.begin(), sols.end(), QuadBasis{-h, -h, -h, h}), sols.end());
  for (int d : {1, 2, 5, 6, 7, 11}) EXPECT_TRUE(normal_a2_solutions(d).empty());
}

TEST(Quadratic, NormalSolutionsAmongSearch) {
  // every normal-shaped solution the bounded search finds is the normal lattice
  FalsifyResult r = falsify_a2(3, 12);
  std::size_t normal = 0;
  for (const auto& s : r.solutions) {
    if (s.x1 != s.x2 || s.y1 != -s.y2) continue;
    ++normal;
    EXPECT_TRUE(lattice_equal(QuadLattice(QuadraticField(3, 1), s.matrix()), normal_a2()));
  }
  EXPECT_GE(normal, 2u);
}

TEST(Quadratic, Falsifier) {
  for (int d : {1, 2, 5, 6, 7}) {
    FalsifyResult r = falsify_a2(d, 50);
    EXPECT_TRUE(r.solutions.empty()) << d;
    EXPECT_GT(r.points, 1000u);
  }
  FalsifyResult three = falsify_a2(3, 2);
  ASSERT_FALSE(three.solutions.empty());
  bool found_normal = false;
  for (const auto& s : three.solutions) {
    EXPECT_TRUE(solves_a2_system(s, 3));
    found_normal |= lattice_equal(QuadLattice(QuadraticField(3, 1), s.matrix()), normal_a2());
  }
  EXPECT_TRUE(found_normal);
  FalsifyResult twelve = falsify_a2(12, 2);
  EXPECT_EQ(twelve.d, 3);
  EXPECT_FALSE(twelve.solutions.empty());
  EXPECT_EQ(falsify_a2(-3, 1).d, 3);
}

TEST(Quadratic, XZeroBranch) {
  // x1 = 0 needs d y1^2 = 1, so d = 1 and y1 = +-1; no completion exists
  EXPECT_TRUE(complete_a2_solution({0, 1}, 1).empty());
  EXPECT_TRUE(complete_a2_solution({0, -1}, 1).empty());
}

TEST(Quadratic, FamilyDistinctness) {
  // slopes of height 1 all land on Z[(1 + w)/2]
  EXPECT_EQ(family_distinctness(1), 1u);
  EXPECT_TRUE(lattice_equal(a2_family(1).lattices.front(), normal_a2()));
  EXPECT_GE(family_distinctness(2), 2u);
  std::size_t h3 = family_distinctness(3), h6 = family_distinctness(6), h12 = family_distinctness(12);
  EXPECT_LT(h3, h6);
  EXPECT_LT(h6, h12);
  auto fam = a2_family(10);
  EXPECT_GE(fam.lattices.size(), 10u);
  Integer den3 = 0, den12 = 0;
  for (const auto& l : a2_family(3).lattices)
    for (std::size_t i = 0; i < 2; ++i) den3 = std::max(den3, Integer(l.basis()(i, 0).get_den()));
  for (const auto& l : a2_family(12).lattices)
    for (std::size_t i = 0; i < 2; ++i) den12 = std::max(den12, Integer(l.basis()(i, 0).get_den()));
  EXPECT_GT(den12, den3);
  for (std::size_t i = 0; i < fam.lattices.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) EXPECT_FALSE(lattice_equal(fam.lattices[i], fam.lattices[j]));
}

}  // namespace
}  // namespace tracelat
