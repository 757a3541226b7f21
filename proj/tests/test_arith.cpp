#include "cdual/arith.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using namespace cdual;

TEST(Rational, ParsesAndCanonicalizes) {
  EXPECT_EQ(Rational::parse("6/8"), Rational(3, 4));
  EXPECT_EQ(Rational::parse("-5"), Rational(-5));
  EXPECT_EQ(to_string(Rational(10, -4)), "-5/2");
  EXPECT_THROW(Rational::parse("1/0"), DivisionByZero);
  EXPECT_THROW(Rational::parse("x"), std::invalid_argument);
}

TEST(Rational, FieldOperations) {
  const Rational a(2, 3), b(-5, 7);
  EXPECT_EQ(a + b, Rational(-1, 21));
  EXPECT_EQ(a * b, Rational(-10, 21));
  EXPECT_EQ(a / b, Rational(-14, 15));
  EXPECT_EQ(inv(a), Rational(3, 2));
  EXPECT_THROW(inv(Rational(0)), DivisionByZero);
  EXPECT_EQ(ipow(a, -3), Rational(27, 8));
  EXPECT_EQ(Rational(7).to_ll(), 7);
  EXPECT_THROW(Rational(1, 2).to_ll(), std::range_error);
}

TEST(Fp, ArithmeticModP) {
  const std::uint64_t p = 101;
  const Fp a(7, p), b(-3, p);
  EXPECT_EQ(b.value(), 98u);
  EXPECT_EQ((a * inv(a)).value(), 1u);
  EXPECT_EQ((a + b).value(), 4u);
  EXPECT_EQ((-Fp(0, p)).value(), 0u);
  EXPECT_THROW(inv(Fp(0, p)), DivisionByZero);
}

TEST(Fp, InverseProperty) {
  std::mt19937_64 g(3);
  for (const Fp& x : fixtures::random_fp_point(g, 100)) EXPECT_EQ(x * inv(x), one_like(x));
}

TEST(Fp, ReduceRational) {
  const std::uint64_t p = 101;
  EXPECT_EQ(reduce(Rational(1, 2), p) * Fp(2, p), Fp(1, p));
  EXPECT_THROW(reduce(Rational(1, 101), p), DivisionByZero);
}

TEST(Fp, SquareRoots) {
  const std::uint64_t p = fixtures::kPrime;
  std::mt19937_64 g(5);
  for (const Fp& x : fixtures::random_fp_point(g, 50)) {
    const auto r = sqrt_fp(x * x);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(*r * *r, x * x);
  }
  EXPECT_FALSE(sqrt_fp(Fp(3, 7)).has_value());  // 3 is not a square mod 7
  (void)p;
}

TEST(Primes, Deterministic) {
  EXPECT_TRUE(is_prime_u64(2));
  EXPECT_TRUE(is_prime_u64(4294967291ULL));
  EXPECT_TRUE(is_prime_u64(fixtures::kPrime));
  EXPECT_FALSE(is_prime_u64(1));
  EXPECT_FALSE(is_prime_u64(4294967297ULL));  // 641 * 6700417
  EXPECT_FALSE(is_prime_u64(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST(Jet, ProductAndQuotientRules) {
  const std::vector<Rational> pt{Rational(2), Rational(3)};
  const auto J = jet_lift_all(pt);
  const auto f = J[0] * J[0] * J[1];  // x^2 y
  EXPECT_EQ(f.value, Rational(12));
  EXPECT_EQ(f.d[0], Rational(12));  // 2xy
  EXPECT_EQ(f.d[1], Rational(4));   // x^2
  const auto q = J[0] / J[1];
  EXPECT_EQ(q.d[0], Rational(1, 3));
  EXPECT_EQ(q.d[1], Rational(-2, 9));
  const auto r = ipow(J[1], -2);
  EXPECT_EQ(r.d[1], Rational(-2, 27));
}
