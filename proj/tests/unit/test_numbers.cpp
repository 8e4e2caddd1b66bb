#include <gshift/polynomial.hpp>
#include <gshift/quadratic.hpp>
#include <gshift/rational.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace gshift;

TEST(Rational, ParsesExactDecimals) {
  EXPECT_EQ(parse_rational("0.183"), Rational(183) / 1000);
  EXPECT_EQ(parse_rational("1e-3"), Rational(1) / 1000);
  EXPECT_EQ(parse_rational("1.5e2"), Rational(150));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_EQ(parse_rational("3/6"), Rational(1) / 2);
  EXPECT_EQ(parse_rational(" 9/10 "), Rational(9) / 10);
}

TEST(Rational, RejectsMalformedText) {
  EXPECT_THROW(parse_rational("abc"), InputError);
  EXPECT_THROW(parse_rational("1/0"), InputError);
  EXPECT_THROW(parse_rational(""), InputError);
}

TEST(Rational, CanonicalText) {
  EXPECT_EQ(to_string(Rational(2) / 4), "1/2");
  EXPECT_EQ(to_string(Rational(3)), "3");
}

TEST(Rational, BinomialAndSquareRoots) {
  EXPECT_EQ(binomial(5, 2), 10);
  EXPECT_EQ(binomial(3, 0), 1);
  EXPECT_EQ(binomial(3, 3), 1);
  EXPECT_EQ(*exact_sqrt(Rational(9) / 4), Rational(3) / 2);
  EXPECT_FALSE(exact_sqrt(Rational(2)).has_value());
  EXPECT_FALSE(exact_sqrt(Rational(-4)).has_value());
}

TEST(Quadratic, ArithmeticInTheField) {
  const auto r2 = QuadraticNumber::sqrt_of(2);
  EXPECT_FALSE(r2.is_rational());
  EXPECT_EQ(r2 * r2, QuadraticNumber(2));
  EXPECT_EQ((QuadraticNumber(1) + r2).norm(), Rational(-1));
  EXPECT_LT(QuadraticNumber(1) - r2, QuadraticNumber(0));
  EXPECT_GT(QuadraticNumber(3) - QuadraticNumber(2) * r2, QuadraticNumber(0));
  EXPECT_TRUE(QuadraticNumber::sqrt_of(Rational(1) / 4).is_rational());
  EXPECT_EQ((QuadraticNumber(1) / (QuadraticNumber(1) + r2)), r2 - QuadraticNumber(1));
}

TEST(Quadratic, SignAgreesWithFloatingPoint) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-50, 50);
  std::uniform_int_distribution<long> den(1, 20);
  const Rational radicands[] = {Rational(2), Rational(3), Rational(5) / 7, Rational(11) / 3};
  for (int i = 0; i < 2000; ++i) {
    const Rational a = Rational(num(rng)) / den(rng);
    const Rational b = Rational(num(rng)) / den(rng);
    const Rational& c = radicands[i % 4];
    const QuadraticNumber x = QuadraticNumber(a) + QuadraticNumber(b) * QuadraticNumber::sqrt_of(c);
    const double approx = a.get_d() + b.get_d() * std::sqrt(c.get_d());
    if (std::fabs(approx) < 1e-9) continue;
    EXPECT_EQ(x.sign(), approx > 0 ? 1 : -1) << x.to_string();
  }
}

TEST(Polynomial, EvaluationAndCalculus) {
  const Polynomial p{1, 1, 1};
  EXPECT_EQ(p(Rational(2)), Rational(7));
  EXPECT_EQ(p.derivative(), (Polynomial{1, 2}));
  EXPECT_EQ(p.compose_linear(1, 1)(Rational(1)), Rational(7));
  EXPECT_EQ((p - p).degree(), -1);
}

TEST(Polynomial, RootCountingAndEventualSign) {
  const Polynomial p{0, -10, 1};  // x^2 - 10x
  EXPECT_EQ(p.count_roots_above(Rational(-1)), 2);
  EXPECT_EQ(p.count_roots_above(Rational(5)), 1);
  EXPECT_EQ(*eventually_positive_from(p, 0), 11);
  EXPECT_EQ(*eventually_nonnegative_from(p, 0), 10);
  EXPECT_FALSE(eventually_positive_from(Polynomial{0, -1}, 0).has_value());
  EXPECT_EQ(*eventually_nonnegative_from(Polynomial{}, 4), 4);
}
