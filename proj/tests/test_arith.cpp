#include <gtest/gtest.h>

#include "stablat/arith.hpp"
#include "stablat/error.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace stablat;

namespace {

constexpr int kTrials = 2000;

RatMatrix random_symmetric(gen::Rng& rng, std::size_t n, long radius) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = rng.integer(-radius, radius);
  return m;
}

// A = L D L^T with random unit lower L and positive D.
RatMatrix random_positive_definite(gen::Rng& rng, std::size_t n) {
  RatMatrix l = RatMatrix::identity(n), d(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    d(i, i) = rng.positive_rational(9, 4);
    for (std::size_t j = 0; j < i; ++j) l(i, j) = rng.rational(5, 3);
  }
  return l * d * l.transpose();
}

}  // namespace

TEST(Ratio, IsCanonical) {
  EXPECT_EQ(ratio(2, 4), Rational(1, 2));
  EXPECT_EQ(ratio(3, -6).get_den(), 2);
  EXPECT_EQ(ratio(3, -6).get_num(), -1);
  EXPECT_THROW(ratio(1, 0), Error);
}

TEST(ParseRational, FractionsIntegersAndDecimals) {
  EXPECT_EQ(parse_rational("-3/4"), Rational(-3, 4));
  EXPECT_EQ(parse_rational("6/8"), Rational(3, 4));
  EXPECT_EQ(parse_rational("17"), Rational(17));
  EXPECT_EQ(parse_rational("0.9", true), Rational(9, 10));
  EXPECT_EQ(parse_rational("-3e-2", true), Rational(-3, 100));
  EXPECT_THROW(parse_rational("0.9"), Error);
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
  const auto list = parse_rational_list("1, -1/2,3");
  ASSERT_EQ(list.size(), 3u);
  EXPECT_EQ(list[1], Rational(-1, 2));
}

TEST(ParseRational, RoundTripsThroughToString) {
  gen::Rng rng(11);
  for (int t = 0; t < kTrials; ++t) {
    const Rational q = rng.rational(1000, 97);
    EXPECT_EQ(parse_rational(to_string(q)), q);
  }
}

TEST(FloorSqrt, BracketsTheRoot) {
  gen::Rng rng(12);
  for (int t = 0; t < kTrials; ++t) {
    const Rational q = rng.positive_rational(100000, 50);
    const Integer f = floor_sqrt(q);
    EXPECT_LE(Rational(f * f), q);
    EXPECT_GT(Rational((f + 1) * (f + 1)), q);
  }
  EXPECT_EQ(*exact_sqrt(Rational(9, 16)), Rational(3, 4));
  EXPECT_FALSE(exact_sqrt(Rational(2)).has_value());
}

TEST(Ldl, ReconstructsPositiveDefiniteMatrices) {
  gen::Rng rng(13);
  for (int t = 0; t < kTrials; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 5));
    const RatMatrix a = random_positive_definite(rng, n);
    const auto ldl = ldl_decompose(a);
    ASSERT_TRUE(ldl.has_value());
    RatMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      d(i, i) = ldl->diagonal[i];
      EXPECT_GT(ldl->diagonal[i], 0);
      EXPECT_EQ(ldl->lower(i, i), 1);
    }
    EXPECT_EQ(ldl->lower * d * ldl->lower.transpose(), a);
    EXPECT_TRUE(is_positive_definite(a));
  }
}

TEST(Ldl, RejectsNonSymmetric) {
  const RatMatrix a = RatMatrix::from_rows(std::vector<IntVector>{{1, 2}, {0, 1}});
  EXPECT_THROW(ldl_decompose(a), Error);
}

TEST(Inverse, TimesMatrixIsIdentity) {
  gen::Rng rng(14);
  int checked = 0;
  while (checked < kTrials) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 4));
    RatMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.rational(7, 3);
    if (determinant(a) == 0) {
      EXPECT_THROW(inverse(a), Error);
      continue;
    }
    EXPECT_EQ(inverse(a) * a, RatMatrix::identity(n));
    ++checked;
  }
}

TEST(CharacteristicPolynomial, EndsAtDeterminantAndTrace) {
  gen::Rng rng(15);
  for (int t = 0; t < kTrials; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 5));
    const RatMatrix a = random_symmetric(rng, n, 6);
    const RatVector p = characteristic_polynomial(a);
    ASSERT_EQ(p.size(), n + 1);
    EXPECT_EQ(p[n], 1);
    Rational trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += a(i, i);
    EXPECT_EQ(p[n - 1], -trace);
    EXPECT_EQ(p[0], (n % 2 ? -1 : 1) * determinant(a));
  }
}

TEST(Signature, MatchesJacobiEigenvalues) {
  gen::Rng rng(16);
  for (int t = 0; t < kTrials; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 5));
    const RatMatrix a = random_symmetric(rng, n, 4);
    std::vector<std::vector<long>> m(n, std::vector<long>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m[i][j] = a(i, j).get_num().get_si();
    const auto expected = oracle_test::inertia(m);
    const Signature got = signature(a);
    EXPECT_EQ(got.positive, expected.positive);
    EXPECT_EQ(got.negative, expected.negative);
    EXPECT_EQ(got.zero, expected.zero);
  }
}

TEST(Signature, MukaiShapedExamples) {
  // Hyperbolic plane and the degree-one Mukai form.
  EXPECT_EQ(signature(RatMatrix::from_rows(std::vector<IntVector>{{0, 1}, {1, 0}})), (Signature{1, 1, 0}));
  EXPECT_EQ(signature(RatMatrix::from_rows(std::vector<IntVector>{{0, 0, -1}, {0, 2, 0}, {-1, 0, 0}})),
            (Signature{2, 1, 0}));
}

TEST(IntegerKernel, AnnihilatesAndSpans) {
  gen::Rng rng(17);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(2, 5));
    const std::size_t rows = static_cast<std::size_t>(rng.integer(1, static_cast<long>(n)));
    std::vector<IntVector> a(rows);
    for (auto& row : a) row = rng.int_vector(n, 4);
    const auto basis = integer_kernel(a, n);
    for (const IntVector& k : basis)
      for (const IntVector& row : a) {
        Integer dot = 0;
        for (std::size_t j = 0; j < n; ++j) dot += row[j] * k[j];
        EXPECT_EQ(dot, 0);
      }
    // rank + nullity = n
    RatMatrix m(rows, n);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = a[i][j];
    const RatMatrix gram = m * m.transpose();
    std::size_t rank = rows - static_cast<std::size_t>(signature(gram).zero);
    EXPECT_EQ(basis.size(), n - rank);
  }
}

TEST(ClearDenominators, PrimitiveAndProportional) {
  const IntVector v = clear_denominators({Rational(1, 2), Rational(-3, 4), Rational(0)});
  EXPECT_EQ(v, (IntVector{2, -3, 0}));
}
