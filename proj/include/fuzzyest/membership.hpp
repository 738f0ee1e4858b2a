#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>

namespace fuzzyest {

/// Closed real interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const noexcept { return hi - lo; }
  double midpoint() const noexcept { return lo + 0.5 * (hi - lo); }
  bool contains(double x) const noexcept { return x >= lo && x <= hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class Shape { triangular, trapezoidal, gaussian };

std::string_view to_string(Shape shape) noexcept;
/// Throws ParseError (line 0) for unknown names.
Shape shape_from_string(std::string_view name);

/// A membership function over a numeric universe.
///
/// Instances are only created through the named constructors, which reject
/// parameters that break the shape invariant; evaluation never fails.
///   triangular(a, b, c):     a <= b <= c, peak 1 at b, zero outside [a, c]
///   trapezoidal(a, b, c, d): a <= b <= c <= d, 1 on [b, c], zero outside [a, d]
///   gaussian(c, sigma):      sigma > 0, exp(-(x - c)^2 / (2 sigma^2))
/// Degenerate edges (a == b or c == d) give shoulder shapes.
class MembershipFunction {
 public:
  static MembershipFunction triangular(double a, double b, double c);
  static MembershipFunction trapezoidal(double a, double b, double c, double d);
  static MembershipFunction gaussian(double center, double sigma);
  /// Builds from a shape tag and its parameter list (2, 3 or 4 values).
  static MembershipFunction make(Shape shape, std::span<const double> params);

  double operator()(double x) const noexcept;

  Shape shape() const noexcept { return shape_; }
  std::span<const double> params() const noexcept { return {params_.data(), count_}; }
  /// Point of maximal membership (midpoint of the core for trapezoids).
  double peak() const noexcept;

  friend bool operator==(const MembershipFunction&, const MembershipFunction&) = default;

 private:
  MembershipFunction(Shape shape, std::array<double, 4> params, std::size_t count) noexcept
      : shape_(shape), params_(params), count_(count) {}

  Shape shape_;
  std::array<double, 4> params_;
  std::size_t count_;
};

inline double eval_membership(const MembershipFunction& mf, double x) noexcept { return mf(x); }

}  // namespace fuzzyest
