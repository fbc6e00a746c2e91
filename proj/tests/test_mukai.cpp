#include <gtest/gtest.h>

#include "stablat/error.hpp"
#include "stablat/mukai.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace stablat;

namespace {

constexpr int kTrials = 10000;

MukaiLattice d1() { return MukaiLattice(std::vector<IntVector>{{2}}); }

MukaiVector mv(long r, long c, long s) { return {r, {Integer(c)}, s}; }

oracle_test::IntGram to_long(const std::vector<IntVector>& g) {
  oracle_test::IntGram out(g.size(), std::vector<long>(g.size()));
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) out[i][j] = g[i][j].get_si();
  return out;
}

}  // namespace

TEST(MukaiLattice, RejectsBadGrams) {
  EXPECT_THROW(MukaiLattice(std::vector<IntVector>{{1}}), Error);            // odd diagonal
  EXPECT_THROW(MukaiLattice(std::vector<IntVector>{{-2}}), Error);           // not hyperbolic
  EXPECT_THROW(MukaiLattice(std::vector<IntVector>{{2, 1}, {0, 2}}), Error);  // not symmetric
  EXPECT_THROW(MukaiLattice(std::vector<IntVector>{{2, 0}, {0, 2}}), Error);  // signature (2, 0)
  EXPECT_NO_THROW(MukaiLattice(std::vector<IntVector>{{0, 1}, {1, 0}}));
}

TEST(Pairing, DegreeOneExamples) {
  const MukaiLattice l = d1();
  EXPECT_EQ(mukai_pairing(l, mv(0, 0, 1), mv(1, 0, 1)), -1);
  EXPECT_EQ(mukai_pairing(l, mv(1, 0, 1), mv(1, 0, 1)), -2);
  EXPECT_EQ(mukai_pairing(l, mv(0, 1, 0), mv(0, 1, 0)), 2);
}

TEST(Pairing, DimensionMismatchIsInputError) {
  const MukaiLattice l = d1();
  try {
    mukai_pairing(l, mv(1, 0, 1), MukaiVector{1, {0, 0}, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Input);
  }
}

TEST(Pairing, MatchesExpansionSymmetricBilinear) {
  gen::Rng rng(21);
  const auto grams = gen::sample_grams();
  for (int t = 0; t < kTrials; ++t) {
    const auto& g = grams[t % grams.size()];
    const MukaiLattice l(g);
    const std::size_t rho = g.size();
    const MukaiVector u = rng.mukai(rho, 20), v = rng.mukai(rho, 20), w = rng.mukai(rho, 20);
    const Integer a = rng.integer(-9, 9), b = rng.integer(-9, 9);
    EXPECT_EQ(mukai_pairing(l, u, v), oracle_test::naive_pairing(to_long(g), u, v));
    EXPECT_EQ(mukai_pairing(l, u, v), mukai_pairing(l, v, u));
    EXPECT_EQ(mukai_pairing(l, a * u + b * v, w), a * mukai_pairing(l, u, w) + b * mukai_pairing(l, v, w));
  }
}

TEST(Rigidity, Examples) {
  const MukaiLattice l = d1();
  EXPECT_EQ(classify_rigidity(l, mv(1, 0, 1)), RigidityClass::Spherical);
  EXPECT_EQ(classify_rigidity(l, mv(0, 0, 1)), RigidityClass::Semirigid);
  EXPECT_EQ(classify_rigidity(l, mv(0, 1, 0)), RigidityClass::Other);
}

TEST(SheafVector, Examples) {
  const MukaiLattice l = d1();
  EXPECT_EQ(mukai_vector_of_sheaf(l, 1, {0}, 0), mv(1, 0, 1));
  EXPECT_EQ(mukai_vector_of_sheaf(l, 0, {0}, 1), mv(0, 0, 1));
  EXPECT_EQ(mukai_vector_of_sheaf(l, 1, {0}, -1), mv(1, 0, 0));
  EXPECT_EQ(classify_rigidity(l, mv(1, 0, 0)), RigidityClass::Semirigid);
  EXPECT_THROW(mukai_vector_of_sheaf(l, 1, {0}, Rational(1, 2)), Error);
}

TEST(Reflect, Examples) {
  const MukaiLattice l = d1();
  const MukaiVector delta = mv(1, 0, 1);
  EXPECT_EQ(reflect(l, delta, delta), mv(-1, 0, -1));
  EXPECT_EQ(reflect(l, mv(0, 0, 1), delta), mv(-1, 0, 0));
  EXPECT_EQ(mukai_pairing(l, reflect(l, mv(0, 0, 1), delta), reflect(l, delta, delta)), -1);
  try {
    reflect(l, mv(0, 0, 1), mv(0, 0, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Precondition);
  }
}

TEST(Reflect, IsometricInvolutionNegatingDelta) {
  gen::Rng rng(22);
  const auto grams = gen::sample_grams();
  for (int t = 0; t < kTrials; ++t) {
    const MukaiLattice l(grams[t % grams.size()]);
    const MukaiVector delta = gen::spherical(l, rng, 4);
    ASSERT_EQ(mukai_pairing(l, delta, delta), -2);
    const MukaiVector v = rng.mukai(l.ns_rank(), 15), w = rng.mukai(l.ns_rank(), 15);
    const MukaiVector sv = reflect(l, v, delta), sw = reflect(l, w, delta);
    EXPECT_EQ(mukai_pairing(l, sv, sw), mukai_pairing(l, v, w));
    EXPECT_EQ(reflect(l, sv, delta), v);
    EXPECT_EQ(reflect(l, delta, delta), -delta);
    // Delta is preserved.
    const MukaiVector e = reflect(l, gen::spherical(l, rng, 3), delta);
    EXPECT_EQ(mukai_pairing(l, e, e), -2);
  }
}

TEST(TensorExp, Examples) {
  const MukaiLattice l = d1();
  EXPECT_EQ(tensor_exp(l, mv(1, 0, 1), {1}), mv(1, 1, 2));
  EXPECT_EQ(tensor_exp(l, mv(0, 0, 1), {5}), mv(0, 0, 1));
  EXPECT_EQ(tensor_exp(l, mv(3, -2, 7), {0}), mv(3, -2, 7));
}

TEST(TensorExp, GroupLawAndIsometry) {
  gen::Rng rng(23);
  const auto grams = gen::sample_grams();
  for (int t = 0; t < kTrials; ++t) {
    const MukaiLattice l(grams[t % grams.size()]);
    const std::size_t rho = l.ns_rank();
    const MukaiVector v = rng.mukai(rho, 12), w = rng.mukai(rho, 12);
    const IntVector a = rng.int_vector(rho, 5), b = rng.int_vector(rho, 5);
    IntVector ab(rho), neg(rho);
    for (std::size_t i = 0; i < rho; ++i) {
      ab[i] = a[i] + b[i];
      neg[i] = -a[i];
    }
    EXPECT_EQ(tensor_exp(l, tensor_exp(l, v, a), b), tensor_exp(l, v, ab));
    EXPECT_EQ(tensor_exp(l, tensor_exp(l, v, a), neg), v);
    EXPECT_EQ(mukai_pairing(l, tensor_exp(l, v, a), tensor_exp(l, w, a)), mukai_pairing(l, v, w));
  }
}

TEST(Shift, Examples) {
  const MukaiVector v = mv(0, 0, 1);
  EXPECT_EQ(shift_class(v, 0), v);
  EXPECT_EQ(shift_class(v, 1), mv(0, 0, -1));
  EXPECT_EQ(shift_class(v, 2), v);
  EXPECT_EQ(shift_class(v, -3), mv(0, 0, -1));
}

TEST(MukaiVector, CoordinatesRoundTrip) {
  gen::Rng rng(24);
  for (int t = 0; t < 1000; ++t) {
    const MukaiVector v = rng.mukai(static_cast<std::size_t>(rng.integer(1, 4)), 50);
    EXPECT_EQ(MukaiVector::from_coords(v.coords()), v);
  }
  EXPECT_EQ(to_string(mv(-1, 0, 2)), "(-1,0,2)");
}
