#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "fuzzyest/errors.hpp"
#include "fuzzyest/linguistic_variable.hpp"
#include "fuzzyest/membership.hpp"

namespace fuzzyest {
namespace {

TEST(Membership, TriangleEvaluatesPiecewiseLinear) {
  const auto mf = MembershipFunction::triangular(0.0, 1.0, 3.0);
  EXPECT_DOUBLE_EQ(mf(-0.5), 0.0);
  EXPECT_DOUBLE_EQ(mf(0.0), 0.0);
  EXPECT_DOUBLE_EQ(mf(0.5), 0.5);
  EXPECT_DOUBLE_EQ(mf(1.0), 1.0);
  EXPECT_DOUBLE_EQ(mf(2.0), 0.5);
  EXPECT_DOUBLE_EQ(mf(3.0), 0.0);
  EXPECT_DOUBLE_EQ(mf.peak(), 1.0);
}

TEST(Membership, DegenerateShoulders) {
  const auto left = MembershipFunction::triangular(0.0, 0.0, 2.0);
  EXPECT_DOUBLE_EQ(left(0.0), 1.0);
  EXPECT_DOUBLE_EQ(left(1.0), 0.5);
  const auto trap = MembershipFunction::trapezoidal(0.0, 0.0, 1.0, 2.0);
  EXPECT_DOUBLE_EQ(trap(0.0), 1.0);
  EXPECT_DOUBLE_EQ(trap(1.0), 1.0);
  EXPECT_DOUBLE_EQ(trap(1.5), 0.5);
  EXPECT_DOUBLE_EQ(trap(2.5), 0.0);
  const auto right = MembershipFunction::trapezoidal(85.0, 95.0, 100.0, 100.0);
  EXPECT_DOUBLE_EQ(right(100.0), 1.0);
  EXPECT_DOUBLE_EQ(right(90.0), 0.5);
}

TEST(Membership, GaussianOneSigmaValue) {
  const auto mf = MembershipFunction::gaussian(5.0, 2.0);
  EXPECT_DOUBLE_EQ(mf(5.0), 1.0);
  // exp(-1/2), computed independently.
  EXPECT_NEAR(mf(7.0), 0.6065306597126334, 1e-15);
  EXPECT_NEAR(mf(3.0), 0.6065306597126334, 1e-15);
}

TEST(Membership, InvalidParametersThrowDomainError) {
  EXPECT_THROW(MembershipFunction::triangular(2.0, 1.0, 3.0), DomainError);
  EXPECT_THROW(MembershipFunction::triangular(1.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(MembershipFunction::trapezoidal(0.0, 2.0, 1.0, 3.0), DomainError);
  EXPECT_THROW(MembershipFunction::gaussian(0.0, 0.0), DomainError);
  EXPECT_THROW(MembershipFunction::gaussian(0.0, -1.0), DomainError);
  EXPECT_THROW(MembershipFunction::gaussian(NAN, 1.0), DomainError);
  EXPECT_THROW(MembershipFunction::triangular(0.0, INFINITY, 1.0), DomainError);
}

TEST(Membership, MakeChecksParameterCount) {
  const std::vector<double> three{0.0, 1.0, 2.0};
  EXPECT_EQ(MembershipFunction::make(Shape::triangular, three), MembershipFunction::triangular(0.0, 1.0, 2.0));
  EXPECT_THROW(MembershipFunction::make(Shape::gaussian, three), DomainError);
  EXPECT_THROW(MembershipFunction::make(Shape::trapezoidal, three), DomainError);
}

TEST(Membership, ShapeNamesRoundTrip) {
  for (Shape s : {Shape::triangular, Shape::trapezoidal, Shape::gaussian}) {
    EXPECT_EQ(shape_from_string(to_string(s)), s);
  }
  EXPECT_THROW(shape_from_string("bell"), ParseError);
}

TEST(Membership, TrapezoidCentroidOracle) {
  // Area-weighted centroid of trapezoid (0,0,1,2) is 7/9; check by quadrature.
  const auto mf = MembershipFunction::trapezoidal(0.0, 0.0, 1.0, 2.0);
  const int n = 200001;
  double num = 0.0, den = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = 2.0 * i / (n - 1);
    const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    num += w * x * mf(x);
    den += w * mf(x);
  }
  EXPECT_NEAR(num / den, 7.0 / 9.0, 1e-8);
}

}  // namespace
}  // namespace fuzzyest
