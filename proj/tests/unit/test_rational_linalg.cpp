#include <gtest/gtest.h>

#include <numeric>

#include "flatspec/linalg.hpp"
#include "flatspec/rational.hpp"

using namespace flatspec;

TEST(ParseRational, AcceptsFractionsIntegersAndDecimals) {
  EXPECT_EQ(parse_rational("1/2"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-3"), Rational(-3));
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational("-0.25"), Rational(-1, 4));
  EXPECT_EQ(parse_rational("+10"), Rational(10));
}

TEST(ParseRational, RejectsIrrationalAndMalformedText) {
  for (const char* bad : {"sqrt(3)/2", "", "1/0", "1/", "abc", "1e3", "0x10", "1//2", "."})
    EXPECT_THROW(parse_rational(bad), Error) << bad;
}

TEST(RationalText, IsCanonical) {
  EXPECT_EQ(to_string(Rational(4, 8)), "1/2");
  EXPECT_EQ(to_string(Rational(-6, 3)), "-2");
  EXPECT_EQ(fractional_part(Rational(-1, 3)), Rational(2, 3));
  EXPECT_EQ(floor(Rational(-1, 3)), Integer(-1));
}

TEST(Linalg, InverseAndDeterminant) {
  RatMatrix m{{2, 1}, {Rational(1, 2), 1}};
  EXPECT_EQ(determinant(m), Rational(3, 2));
  EXPECT_EQ(m * inverse(m), RatMatrix::identity(2));
  EXPECT_THROW(inverse(RatMatrix{{1, 2}, {2, 4}}), Error);
}

TEST(Linalg, IntegerKernelIsPrimitiveBasis) {
  // x + 2y - z = 0 in Z^3 has a rank-2 saturated kernel.
  IntMatrix a{{1, 2, -1}};
  const auto basis = integer_kernel(a);
  ASSERT_EQ(basis.size(), 2u);
  for (const auto& v : basis) EXPECT_EQ(v[0] + 2 * v[1] - v[2], 0);
  // Saturation: the 2x2 minors of the basis have gcd 1.
  const auto& u = basis[0];
  const auto& w = basis[1];
  std::int64_t g = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) g = std::gcd(g, u[i] * w[j] - u[j] * w[i]);
  EXPECT_EQ(std::abs(g), 1);
}

TEST(Linalg, IntegerKernelOfInvertibleMatrixIsEmpty) {
  EXPECT_TRUE(integer_kernel(IntMatrix{{2, 1}, {1, 1}}).empty());
  EXPECT_EQ(integer_kernel(IntMatrix(2, 2)).size(), 2u);
}

TEST(Linalg, MatrixOrder) {
  EXPECT_EQ(matrix_order(IntMatrix{{0, -1}, {1, 0}}, 10), 4);
  EXPECT_EQ(matrix_order(IntMatrix{{1, 1}, {0, 1}}, 50), 0);
  EXPECT_EQ(matrix_order(IntMatrix::identity(3), 5), 1);
}

TEST(Linalg, ReduceModOne) {
  const RatVector v = reduce_mod_one({Rational(3, 2), Rational(-1, 4), Rational(2)});
  EXPECT_EQ(v, (RatVector{Rational(1, 2), Rational(3, 4), Rational(0)}));
}
