#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace schauder;

namespace {

const PNormSpace kR2(2, Exponent(2.0));

TEST(Exponent, DualPairs) {
  EXPECT_TRUE(Exponent(1.0).dual().is_infinite());
  EXPECT_EQ(Exponent::infinity().dual().value(), 1.0);
  EXPECT_EQ(Exponent(2.0).dual().value(), 2.0);
  EXPECT_NEAR(Exponent(3.0).dual().value(), 1.5, 1e-15);
  const Exponent p(1.7);
  EXPECT_NEAR(p.reciprocal() + p.dual().reciprocal(), 1.0, 1e-15);
}

TEST(Exponent, RejectsBelowOne) {
  EXPECT_THROW(Exponent(0.5), PreconditionError);
  EXPECT_THROW(Exponent(std::nan("")), PreconditionError);
  EXPECT_THROW(PNormSpace(0, Exponent(2.0)), PreconditionError);
}

TEST(VectorNorm, Examples) {
  EXPECT_DOUBLE_EQ(vector_norm(kR2, Vector{3, 4}), 5.0);
  EXPECT_DOUBLE_EQ(vector_norm(PNormSpace(3, Exponent(1.0)), Vector{1, -2, 3}), 6.0);
  EXPECT_DOUBLE_EQ(vector_norm(PNormSpace(3, Exponent::infinity()), Vector{1, -2, 3}), 3.0);
}

TEST(VectorNorm, DimensionMismatch) {
  EXPECT_THROW(vector_norm(kR2, Vector{1, 2, 3}), DimensionMismatch);
  EXPECT_THROW(functional_norm(kR2, Functional{1}), DimensionMismatch);
}

TEST(FunctionalNorm, Examples) {
  EXPECT_DOUBLE_EQ(functional_norm(PNormSpace(2, Exponent(1.0)), Functional{3, 4}), 4.0);
  EXPECT_DOUBLE_EQ(functional_norm(kR2, Functional{3, 4}), 5.0);
  EXPECT_DOUBLE_EQ(functional_norm(PNormSpace(2, Exponent::infinity()), Functional{1, 1}), 2.0);
}

TEST(OperatorNorm, IdentityAnyP) {
  for (double p : {1.0, 1.3, 2.0, 3.0, 7.5}) {
    const auto b = operator_norm(Operator::Identity(3, 3), Exponent(p));
    EXPECT_NEAR(b.lower, 1.0, 1e-12) << p;
    EXPECT_NEAR(b.upper, 1.0, 1e-12) << p;
  }
  const auto inf = operator_norm(Operator::Identity(3, 3), Exponent::infinity());
  EXPECT_TRUE(inf.exact);
  EXPECT_EQ(inf.upper, 1.0);
}

TEST(OperatorNorm, ClosedForms) {
  Operator t(2, 2);
  t << 1, 2, 3, 4;
  const auto one = operator_norm(t, Exponent(1.0));
  EXPECT_TRUE(one.exact);
  EXPECT_DOUBLE_EQ(one.upper, 6.0);
  const auto inf = operator_norm(t, Exponent::infinity());
  EXPECT_DOUBLE_EQ(inf.lower, 7.0);
  EXPECT_DOUBLE_EQ(inf.upper, 7.0);
  // sqrt of the largest eigenvalue of [[10,14],[14,20]]
  EXPECT_NEAR(operator_norm(t, Exponent(2.0)).upper, std::sqrt(15.0 + std::sqrt(221.0)), 1e-12);
}

TEST(OperatorNorm, GeneralPIntervalContainsDenseAscent) {
  Operator t(2, 2);
  t << 1, 2, 3, 4;
  const auto b = operator_norm(t, Exponent(3.0));
  EXPECT_FALSE(b.exact);
  EXPECT_LE(b.lower, b.upper);
  EXPECT_LE(b.upper / b.lower, 1.2);
  const double ascent = oracle::dense_ascent_norm(t, 3.0, 10000, 0);
  EXPECT_LE(ascent, b.upper + 1e-9);
  EXPECT_GE(ascent, b.lower - 1e-6);
}

TEST(OperatorNorm, DimensionMismatch) {
  EXPECT_THROW(operator_norm(kR2, Operator::Identity(3, 3)), DimensionMismatch);
  EXPECT_THROW(operator_norm(Operator::Zero(2, 3), Exponent(2.0)), DimensionMismatch);
}

TEST(OperatorNorm, Deterministic) {
  std::mt19937_64 rng(5);
  const Matrix t = testkit::gaussian_matrix(4, 4, rng);
  const auto a = operator_norm(t, Exponent(2.5), NormOptions{7});
  const auto b = operator_norm(t, Exponent(2.5), NormOptions{7});
  EXPECT_EQ(a.lower, b.lower);
  EXPECT_EQ(a.upper, b.upper);
}

TEST(SpaceProperties, Homogeneity) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> lambda(-50.0, 50.0);
  for (double p : {1.0, 1.5, 2.0, 3.0, std::numeric_limits<double>::infinity()}) {
    const PNormSpace s(5, Exponent(p));
    for (int i = 0; i < 200; ++i) {
      const Vector v(testkit::gaussian(5, rng));
      const double l = lambda(rng);
      const double lhs = vector_norm(s, Vector(l * v.coords));
      const double rhs = std::abs(l) * vector_norm(s, v);
      EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, rhs)) << "p=" << p;
    }
  }
}

TEST(SpaceProperties, Hoelder) {
  std::mt19937_64 rng(12);
  for (double p : {1.0, 1.25, 2.0, 4.0, std::numeric_limits<double>::infinity()}) {
    const PNormSpace s(4, Exponent(p));
    for (int i = 0; i < 1000; ++i) {
      const Vector v(testkit::gaussian(4, rng));
      const Functional f(testkit::gaussian(4, rng));
      EXPECT_LE(std::abs(f(v)), functional_norm(s, f) * vector_norm(s, v) * (1 + 1e-12) + 1e-15);
    }
  }
}

TEST(SpaceProperties, SampledImagesBelowUpperBound) {
  std::mt19937_64 rng(13);
  for (double p : {1.0, 1.5, 2.0, 3.0, std::numeric_limits<double>::infinity()}) {
    const PNormSpace s(4, Exponent(p));
    for (int trial = 0; trial < 20; ++trial) {
      const Matrix t = testkit::gaussian_matrix(4, 4, rng);
      const double upper = operator_norm(s, t).upper;
      for (int i = 0; i < 100; ++i) {
        Coords v = testkit::gaussian(4, rng);
        v /= lp_norm(v, s.p());
        EXPECT_LE(lp_norm(t * v, s.p()), upper + 1e-9);
      }
    }
  }
}

TEST(SpaceProperties, ClosedFormsMatchOracle) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const Index d = std::uniform_int_distribution<Index>(1, 6)(rng);
    const Matrix t = testkit::gaussian_matrix(d, d, rng);
    EXPECT_NEAR(operator_norm(t, Exponent(1.0)).upper, oracle::ball_vertex_norm(t, 1.0), 1e-9);
    EXPECT_NEAR(operator_norm(t, Exponent::infinity()).upper,
                oracle::ball_vertex_norm(t, std::numeric_limits<double>::infinity()), 1e-9);
    EXPECT_NEAR(operator_norm(t, Exponent(2.0)).upper, oracle::spectral_norm_eig(t), 1e-9);
  }
}

TEST(SpaceProperties, GeneralPEnclosesOracleAscent) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix t = testkit::gaussian_matrix(3, 3, rng);
    for (double p : {1.5, 3.0}) {
      const auto b = operator_norm(t, Exponent(p));
      const double ascent = oracle::dense_ascent_norm(t, p, 500, trial);
      EXPECT_LE(ascent, b.upper + 1e-9);
      EXPECT_LE(b.lower, b.upper);
    }
  }
}

}  // namespace
