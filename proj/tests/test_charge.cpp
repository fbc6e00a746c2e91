#include <gtest/gtest.h>

#include "stablat/charge.hpp"
#include "stablat/error.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace stablat;

namespace {

constexpr int kTrials = 2000;

MukaiLattice d1() { return MukaiLattice(std::vector<IntVector>{{2}}); }
const AmpleData kH{{1}};

MukaiVector mv(long r, long c, long s) { return {r, {Integer(c)}, s}; }

CentralCharge standard_d1(const Rational& beta, const Rational& alpha) {
  return standard_charge(d1(), kH, {{beta}, {alpha}});
}

struct Instance {
  std::vector<IntVector> gram;
  AmpleData ample;
};

std::vector<Instance> instances() {
  return {{{{2}}, {{1}}},
          {{{4}}, {{1}}},
          {{{0, 1}, {1, 0}}, {{1, 1}}},
          {{{2, 1}, {1, -2}}, {{1, 0}}},
          {{{2, 0, 0}, {0, -2, 0}, {0, 0, -4}}, {{1, 0, 0}}}};
}

// omega = t h + small noise, retried until it is a valid Kahler-type class.
ExpParams random_params(const MukaiLattice& l, const AmpleData& a, gen::Rng& rng) {
  while (true) {
    ExpParams p;
    const Rational t = rng.positive_rational(12, 4);
    for (std::size_t i = 0; i < l.ns_rank(); ++i) {
      p.B.push_back(rng.rational(8, 5));
      p.omega.push_back(t * a.h[i] + rng.rational(1, 8));
    }
    try {
      check_exp_params(l, a, p);
      return p;
    } catch (const Error&) {
    }
  }
}

oracle_test::IntGram to_long(const std::vector<IntVector>& g) {
  oracle_test::IntGram out(g.size(), std::vector<long>(g.size()));
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) out[i][j] = g[i][j].get_si();
  return out;
}

}  // namespace

TEST(StandardCharge, DegreeOneExamples) {
  const MukaiLattice l = d1();
  const Rational alpha(7, 3);
  const CentralCharge z = standard_d1(0, alpha);
  EXPECT_EQ(evaluate(l, z, mv(0, 0, 1)), (ExactComplex{-1, 0}));
  EXPECT_EQ(evaluate(l, z, mv(1, 0, 1)), (ExactComplex{alpha * alpha - 1, 0}));
  EXPECT_EQ(evaluate(l, standard_d1(0, 2), mv(0, 0, 1)), (ExactComplex{-1, 0}));
  EXPECT_EQ(evaluate(l, z, mv(0, 0, 0)), (ExactComplex{0, 0}));
  const Rational beta(-5, 4);
  EXPECT_EQ(evaluate(l, standard_d1(beta, alpha), mv(1, 0, 1)),
            (ExactComplex{alpha * alpha - beta * beta - 1, -2 * alpha * beta}));
}

TEST(StandardCharge, RejectsNonPositiveOmega) {
  try {
    standard_d1(0, -1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Precondition);
    EXPECT_NE(std::string(e.what()).find("omega"), std::string::npos);
  }
}

TEST(StandardCharge, MatchesHandExpansionAndPointIsMinusOne) {
  gen::Rng rng(31);
  const auto inst = instances();
  for (int t = 0; t < kTrials; ++t) {
    const Instance& in = inst[t % inst.size()];
    const MukaiLattice l(in.gram);
    const ExpParams p = random_params(l, in.ample, rng);
    const CentralCharge z = standard_charge(l, in.ample, p);
    const MukaiVector v = rng.mukai(l.ns_rank(), 9);
    EXPECT_EQ(evaluate(l, z, v), oracle_test::naive_charge(to_long(in.gram), p.B, p.omega, v));
    EXPECT_EQ(evaluate(l, z, MukaiVector{0, IntVector(l.ns_rank()), 1}), (ExactComplex{-1, 0}));
    EXPECT_TRUE(is_positive_plane(l, z).positive);
  }
}

TEST(StandardCharge, RankOneClosedForm) {
  gen::Rng rng(32);
  for (int t = 0; t < kTrials; ++t) {
    const Rational beta = rng.rational(9, 7), alpha = rng.positive_rational(9, 7);
    const MukaiVector v = rng.mukai(1, 20);
    EXPECT_EQ(evaluate(d1(), standard_d1(beta, alpha), v), oracle_test::rank1_charge(1, beta, alpha, v));
  }
}

TEST(PrincipalPhase, AxesAndBranch) {
  EXPECT_EQ(principal_phase(ExactComplex{-1, 0}).value, 1.0);
  EXPECT_TRUE(principal_phase(ExactComplex{-1, 0}).on_negative_real_axis);
  EXPECT_EQ(principal_phase(ExactComplex{1, 0}).value, 2.0);
  EXPECT_EQ(principal_phase(ExactComplex{0, 1}).value, 0.5);
  EXPECT_EQ(principal_phase(ExactComplex{0, -3}).value, 1.5);
  EXPECT_NEAR(principal_phase(ExactComplex{1, 1}).value, 0.25, 1e-15);
  EXPECT_NEAR(principal_phase(ExactComplex{1, -1}).value, 1.75, 1e-15);
  try {
    principal_phase(ExactComplex{0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::HoleClass);
  }
}

TEST(PrincipalPhase, LiesInHalfOpenInterval) {
  gen::Rng rng(33);
  for (int t = 0; t < kTrials; ++t) {
    ExactComplex z{rng.rational(50, 9), rng.rational(50, 9)};
    if (z.is_zero()) continue;
    const double phi = principal_phase(z).value;
    EXPECT_GT(phi, 0.0);
    EXPECT_LE(phi, 2.0);
  }
}

TEST(PositivePlane, Examples) {
  const MukaiLattice l = d1();
  const PlaneTest t = is_positive_plane(l, standard_d1(0, 2));
  EXPECT_TRUE(t.positive);
  EXPECT_EQ(t.gram(0, 0), 8);
  EXPECT_EQ(t.gram(1, 1), 8);
  EXPECT_EQ(t.gram(0, 1), 0);
  EXPECT_FALSE(is_positive_plane(l, CentralCharge({0, 1, 0}, {0, 1, 0})).positive);
  EXPECT_FALSE(is_positive_plane(l, CentralCharge({1, 0, 1}, {0, 0, 1})).positive);
}

TEST(SameComponent, Examples) {
  const MukaiLattice l = d1();
  const CentralCharge ref = standard_d1(0, 2);
  EXPECT_TRUE(same_component(l, ref, ref));
  EXPECT_FALSE(same_component(l, CentralCharge(ref.im(), ref.re()), ref));
  EXPECT_TRUE(same_component(l, standard_d1(1, 2), standard_d1(0, 3)));
}

TEST(SameComponent, ExpChargesShareOneComponent) {
  gen::Rng rng(34);
  const auto inst = instances();
  for (int t = 0; t < 500; ++t) {
    const Instance& in = inst[t % inst.size()];
    const MukaiLattice l(in.gram);
    const CentralCharge a = standard_charge(l, in.ample, random_params(l, in.ample, rng));
    const CentralCharge b = standard_charge(l, in.ample, random_params(l, in.ample, rng));
    EXPECT_TRUE(same_component(l, a, b));
  }
}

TEST(HoleClasses, Examples) {
  const MukaiLattice l = d1();
  EXPECT_TRUE(hole_classes(l, standard_d1(0, 2)).empty());
  EXPECT_EQ(hole_classes(l, standard_d1(0, 1)), (std::vector<MukaiVector>{mv(-1, 0, -1), mv(1, 0, 1)}));
  EXPECT_EQ(hole_classes(l, standard_d1(1, 1)), (std::vector<MukaiVector>{mv(-1, -1, -2), mv(1, 1, 2)}));
  EXPECT_TRUE(hole_classes(l, standard_d1(Rational(1, 3), Rational(5, 7))).empty());
}

TEST(HoleClasses, EveryHoleHasZeroChargeAndSquareMinusTwo) {
  gen::Rng rng(35);
  for (int t = 0; t < 300; ++t) {
    // beta integral and alpha = 1 puts exp(beta h) . (1,0,1) on a hole.
    const Rational beta = rng.integer(-4, 4);
    const Rational alpha = rng.coin() ? Rational(1) : rng.positive_rational(6, 5);
    const CentralCharge z = standard_d1(beta, alpha);
    for (const MukaiVector& h : hole_classes(d1(), z)) {
      EXPECT_TRUE(evaluate(d1(), z, h).is_zero());
      EXPECT_EQ(mukai_pairing(d1(), h, h), -2);
    }
    if (alpha == 1) EXPECT_EQ(hole_classes(d1(), z).size(), 2u);
  }
}

TEST(ChargeKernel, HasRankRho) {
  const auto inst = instances();
  gen::Rng rng(36);
  for (const Instance& in : inst) {
    const MukaiLattice l(in.gram);
    const ChargeKernel k = charge_kernel(l, standard_charge(l, in.ample, random_params(l, in.ample, rng)));
    EXPECT_EQ(k.basis.size(), l.ns_rank());
    const Signature s = signature(k.gram);
    EXPECT_EQ(s.negative, static_cast<int>(l.ns_rank()));
  }
}

TEST(Heart, Examples) {
  const MukaiLattice l = d1();
  const ExpParams b0{{0}, {2}};
  EXPECT_TRUE(heart_contains(l, b0, {"k(x)", ZeroSheaf{}, TorsionSheaf{}}));
  EXPECT_TRUE(heart_contains(l, {{5}, {1}}, {"k(x)", ZeroSheaf{}, TorsionSheaf{}}));
  for (long n = 1; n <= 5; ++n)
    EXPECT_TRUE(heart_contains(l, b0, {"O(-n)[1]", TorsionFree{Rational(-n * 4)}, TorsionSheaf{}}));
  EXPECT_FALSE(heart_contains(l, b0, {"O", ZeroSheaf{}, WithSlopes{0}}));
  EXPECT_TRUE(heart_contains(l, {{-1}, {2}}, {"O", ZeroSheaf{}, WithSlopes{0}}));
}

TEST(Heart, MonotoneInBOmega) {
  gen::Rng rng(37);
  const MukaiLattice l = d1();
  for (int t = 0; t < kTrials; ++t) {
    const Rational mu = rng.rational(20, 3);
    const Rational b1 = rng.rational(6, 4), b2 = b1 + rng.positive_rational(6, 4);
    const ExpParams lo{{b1}, {1}}, hi{{b2}, {1}};
    const TwoTermSheafDatum upper{"F", ZeroSheaf{}, WithSlopes{mu}};
    const TwoTermSheafDatum lower{"G[1]", TorsionFree{mu}, TorsionSheaf{}};
    if (heart_contains(l, hi, upper)) EXPECT_TRUE(heart_contains(l, lo, upper));
    if (heart_contains(l, lo, lower)) EXPECT_TRUE(heart_contains(l, hi, lower));
  }
}

TEST(Admissible, OmegaSquaredThreshold) {
  const MukaiLattice l = d1();
  const AdmissibilityReport a2 = standard_admissible(l, kH, {{0}, {2}}, 20);
  EXPECT_TRUE(a2.sufficient);
  EXPECT_EQ(a2.omega_squared, 8);
  EXPECT_TRUE(a2.violations.empty());

  const AdmissibilityReport a09 = standard_admissible(l, kH, {{0}, {Rational(9, 10)}}, 20);
  EXPECT_FALSE(a09.sufficient);
  ASSERT_FALSE(a09.violations.empty());
  EXPECT_EQ(a09.violations.front().delta, mv(1, 0, 1));
  EXPECT_EQ(a09.violations.front().z, (ExactComplex{Rational(-19, 100), 0}));
  EXPECT_FALSE(a09.violations.front().hole);

  const AdmissibilityReport a1 = standard_admissible(l, kH, {{0}, {1}}, 20);
  EXPECT_FALSE(a1.sufficient);
  ASSERT_EQ(a1.violations.size(), 1u);
  EXPECT_EQ(a1.violations.front().delta, mv(1, 0, 1));
  EXPECT_TRUE(a1.violations.front().hole);
}

TEST(ChargeFromValues, HitsPrescribedValues) {
  gen::Rng rng(38);
  const MukaiLattice l = d1();
  const std::vector<MukaiVector> classes{mv(1, 0, 1), mv(1, 1, 2), mv(0, 0, 1)};
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 3));
    std::vector<MukaiVector> cs(classes.begin(), classes.begin() + static_cast<long>(n));
    std::vector<ExactComplex> vals;
    for (std::size_t i = 0; i < n; ++i) vals.push_back({rng.rational(9, 5), rng.rational(9, 5)});
    const CentralCharge z = charge_from_values(l, cs, vals);
    for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(evaluate(l, z, cs[i]), vals[i]);
  }
  EXPECT_THROW(charge_from_values(l, {mv(1, 0, 1), mv(2, 0, 2)}, {{1, 0}, {2, 0}}), Error);
}
