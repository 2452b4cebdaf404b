#include <gtest/gtest.h>

#include <random>

#include "tracelat/a3_factory.hpp"

namespace tracelat {
namespace {

// Traces computed directly in the field, independent of the L/Q formulas.
std::pair<Rational, Rational> field_traces(const ShanksField& f, const Lambda& l) {
  FieldElement b = f.bracket(l);
  return {f.trace_pair(b, b), f.trace_pair(b, f.sigma(b))};
}

TEST(A3Factory, Lq) {
  EXPECT_EQ(lq({1, 1, 1}), std::make_pair(Rational(3), Rational(3)));
  EXPECT_EQ(lq({1, 0, 0}), std::make_pair(Rational(1), Rational(0)));
  EXPECT_EQ(lq({1, 2, 3}), std::make_pair(Rational(6), Rational(11)));
}

TEST(A3Factory, TraceTargetsClosedForm) {
  EXPECT_EQ(trace_targets_of(1, {1, 1, 1}), std::make_pair(Rational(3), Rational(3)));
  EXPECT_EQ(trace_targets_of(5, {0, 0, 0}), std::make_pair(Rational(0), Rational(0)));
  EXPECT_THROW(trace_targets_of(0, {1, 0, 0}), Error);
  std::mt19937 rng(71);
  std::uniform_int_distribution<int> num(-12, 12), den(1, 5);
  for (int i = 0; i < 50; ++i) {
    Rational t = make_rational(num(rng), den(rng));
    if (t == 0) continue;
    ShanksField f = [&] {
      try {
        return ShanksField::make(t);
      } catch (const Error&) {
        return ShanksField::make(1);
      }
    }();
    Lambda l{make_rational(num(rng), den(rng)), make_rational(num(rng), den(rng)), make_rational(num(rng), den(rng))};
    EXPECT_EQ(trace_targets_of(f.t(), l), field_traces(f, l));
  }
}

TEST(A3Factory, LambdaFromPoint) {
  const Rational t = 1;
  ShanksField f = ShanksField::make(t);
  ConicPoint p = base_point_delta(t);
  Lambda l = lambda_from_point(t, TraceTarget::a3(), p);
  EXPECT_EQ(l[0], Rational(2, 3) * (p.x / f.delta() + 1 / t));
  EXPECT_EQ(field_traces(f, l), std::make_pair(Rational(2), Rational(1)));

  Lambda s = lambda_from_point(t, TraceTarget::self_dual(), p);
  EXPECT_EQ(s[0], Rational(2, 3) * (p.x / f.delta() + 1 / (2 * t)));
  EXPECT_EQ(field_traces(f, s), std::make_pair(Rational(1), Rational(0)));

  EXPECT_THROW(lambda_from_point(0, TraceTarget::a3(), base_point_delta(0)), Error);
  try {
    lambda_from_point(t, TraceTarget::a3(), {0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::PointNotOnConic);
  }
}

TEST(A3Factory, QuadraticRootRecovery) {
  for (Rational t : {Rational(1), Rational(2), Rational(-1), Rational(1, 3), Rational(-7, 2)}) {
    const Rational delta = t * t + 3 * t + 9;
    for (const auto& target : {TraceTarget::a3(), TraceTarget::self_dual()}) {
      // both presets have d - e = 1, so the conic is x^2 + 3y^2 = delta
      for (const auto& s : enumerate_points(target_conic(t, target), base_point_delta(t), 6)) {
        Lambda l = lambda_from_point(t, target, s.point);
        Rational root = 2 * t * s.point.y / delta;
        Rational diff = l[1] - l[2];
        EXPECT_EQ(lambda_discriminant(t, target, l[0]), root * root);
        EXPECT_EQ(t * t * diff * diff, root * root);
        EXPECT_EQ(trace_targets_of(t, l), std::make_pair(target.d, target.e));
        EXPECT_EQ(field_traces(ShanksField::make(t), l), std::make_pair(target.d, target.e));
      }
    }
  }
}

TEST(A3Factory, NormalBasisLatticeGrams) {
  const Rational t = 2;
  ShanksField f = ShanksField::make(t);
  Lambda a = lambda_from_point(t, TraceTarget::a3(), base_point_delta(t));
  ShanksLattice l = normal_basis_lattice(f, a);
  EXPECT_EQ(l.gram(), (Matrix{{2, 1, 1}, {1, 2, 1}, {1, 1, 2}}));
  Matrix rotated = l.basis();
  rotated.swap_rows(0, 1);
  rotated.swap_rows(1, 2);
  EXPECT_EQ(gram_of(rotated, f), l.gram());
  EXPECT_TRUE(galois_stable(l));

  Lambda s = lambda_from_point(t, TraceTarget::self_dual(), base_point_delta(t));
  ShanksLattice u = normal_basis_lattice(f, s);
  EXPECT_EQ(u.gram(), Matrix::identity(3));
  EXPECT_TRUE(lattice_equal(dual(u), u));

  try {
    normal_basis_lattice(f, {1, 1, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DegenerateLambda);
  }
}

TEST(A3Factory, ToA3Basis) {
  const Rational t = 3;
  ShanksLattice l = normal_basis_lattice(t, lambda_from_point(t, TraceTarget::a3(), base_point_delta(t)));
  ShanksLattice a = to_a3_basis(l);
  EXPECT_EQ(a.gram(), root_lattice_gram({RootType::Kind::A, 3}));
  EXPECT_TRUE(lattice_equal(a, l));
  EXPECT_EQ(classify_root_type(a.gram()).type.tag(), "A3");
  ShanksLattice u = normal_basis_lattice(t, lambda_from_point(t, TraceTarget::self_dual(), base_point_delta(t)));
  try {
    to_a3_basis(u);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::WrongGram);
  }
}

void certify_a3_family(const Family& fam) {
  for (std::size_t i = 0; i < fam.members.size(); ++i) {
    const auto& m = fam.members[i];
    auto c = classify_root_type(m.lattice.gram());
    EXPECT_EQ(m.type, "A3");
    EXPECT_EQ(c.type.tag(), "A3");
    EXPECT_TRUE(c.even);
    EXPECT_EQ(c.det, 4);
    EXPECT_EQ(c.root_count, 12u);
    EXPECT_TRUE(c.roots_generate);
    EXPECT_TRUE(galois_stable(m.lattice));
    EXPECT_EQ(disc_group(m.lattice.gram()), (std::vector<Integer>{1, 1, 4}));
    EXPECT_EQ(trace_targets_of(fam.t, m.lambda), std::make_pair(Rational(2), Rational(1)));
    for (std::size_t j = 0; j < i; ++j) EXPECT_FALSE(lattice_equal(m.lattice, fam.members[j].lattice));
  }
}

TEST(A3Factory, FamilyAtTOne) {
  Family fam = generate_family(1, 5);
  EXPECT_GE(fam.members.size(), 8u);
  certify_a3_family(fam);
  EXPECT_EQ(fam.members.size() + fam.skipped + fam.duplicates, fam.points);
  EXPECT_GT(generate_family(1, 20).max_lambda0_denominator(), fam.max_lambda0_denominator());
}

TEST(A3Factory, FamilyGrowsWithHeight) {
  for (Rational t : {Rational(1), Rational(2), Rational(3)}) {
    std::size_t prev = 0;
    for (long h : {2L, 5L, 10L}) {
      std::size_t n = generate_family(t, h).members.size();
      EXPECT_GT(n, prev) << to_string(t) << " height " << h;
      prev = n;
    }
  }
}

TEST(A3Factory, DeterministicAcrossWorkerCounts) {
  Family serial = generate_family(2, 6, TraceTarget::a3(), 0);
  Family threaded = generate_family(2, 6, TraceTarget::a3(), 4);
  ASSERT_EQ(serial.members.size(), threaded.members.size());
  for (std::size_t i = 0; i < serial.members.size(); ++i)
    EXPECT_EQ(to_json(serial.members[i]).dump(), to_json(threaded.members[i]).dump());
}

TEST(A3Factory, SelfDualFamily) {
  EXPECT_TRUE(self_dual_transform_identity());
  Family fam = self_dual_family(1, 5);
  EXPECT_GE(fam.members.size(), 8u);
  for (std::size_t i = 0; i < fam.members.size(); ++i) {
    const auto& m = fam.members[i];
    EXPECT_EQ(m.lattice.gram(), Matrix::identity(3));
    EXPECT_TRUE(lattice_equal(dual(m.lattice), m.lattice));
    for (std::size_t j = 0; j < i; ++j) EXPECT_FALSE(lattice_equal(m.lattice, fam.members[j].lattice));
  }
}

TEST(A3Factory, FamilyErrors) {
  EXPECT_THROW(generate_family(0, 3), Error);
  try {
    generate_family(Rational(-3, 2), 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::Reducible);
  }
}

TEST(A3Factory, MemberJson) {
  Family fam = generate_family(1, 2);
  ASSERT_FALSE(fam.members.empty());
  Json j = to_json(fam.members.front());
  for (const char* key : {"lambda", "point", "slope", "gram", "hnf", "type", "basis", "ambient"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["type"], "A3");
}

}  // namespace
}  // namespace tracelat
