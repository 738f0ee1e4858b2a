#include "fuzzyest/membership.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "fuzzyest/errors.hpp"

namespace fuzzyest {

namespace {

void require_finite(std::span<const double> params, std::string_view shape) {
  for (double p : params) {
    if (!std::isfinite(p)) {
      throw DomainError(fmt::format("{} membership function has a non-finite parameter", shape));
    }
  }
}

}  // namespace

std::string_view to_string(Shape shape) noexcept {
  switch (shape) {
    case Shape::triangular:
      return "triangular";
    case Shape::trapezoidal:
      return "trapezoidal";
    case Shape::gaussian:
      return "gaussian";
  }
  return "unknown";
}

Shape shape_from_string(std::string_view name) {
  if (name == "triangular") return Shape::triangular;
  if (name == "trapezoidal") return Shape::trapezoidal;
  if (name == "gaussian") return Shape::gaussian;
  throw ParseError(0, fmt::format("unknown membership function shape '{}'", name));
}

MembershipFunction MembershipFunction::triangular(double a, double b, double c) {
  std::array<double, 4> p{a, b, c, 0.0};
  require_finite({p.data(), 3}, "triangular");
  if (!(a <= b && b <= c) || a == c) {
    throw DomainError(fmt::format("triangular({}, {}, {}) needs a <= b <= c and a < c", a, b, c));
  }
  return {Shape::triangular, p, 3};
}

MembershipFunction MembershipFunction::trapezoidal(double a, double b, double c, double d) {
  std::array<double, 4> p{a, b, c, d};
  require_finite(p, "trapezoidal");
  if (!(a <= b && b <= c && c <= d) || a == d) {
    throw DomainError(fmt::format("trapezoidal({}, {}, {}, {}) needs a <= b <= c <= d and a < d", a, b, c, d));
  }
  return {Shape::trapezoidal, p, 4};
}

MembershipFunction MembershipFunction::gaussian(double center, double sigma) {
  std::array<double, 4> p{center, sigma, 0.0, 0.0};
  require_finite({p.data(), 2}, "gaussian");
  if (!(sigma > 0.0)) {
    throw DomainError(fmt::format("gaussian sigma must be positive, got {}", sigma));
  }
  return {Shape::gaussian, p, 2};
}

MembershipFunction MembershipFunction::make(Shape shape, std::span<const double> params) {
  const auto expect = [&](std::size_t n) {
    if (params.size() != n) {
      throw DomainError(fmt::format("{} membership function takes {} parameters, got {}", to_string(shape), n,
                                    params.size()));
    }
  };
  switch (shape) {
    case Shape::triangular:
      expect(3);
      return triangular(params[0], params[1], params[2]);
    case Shape::trapezoidal:
      expect(4);
      return trapezoidal(params[0], params[1], params[2], params[3]);
    case Shape::gaussian:
      expect(2);
      return gaussian(params[0], params[1]);
  }
  throw DomainError("unknown membership function shape");
}

double MembershipFunction::operator()(double x) const noexcept {
  const auto& p = params_;
  switch (shape_) {
    case Shape::triangular: {
      if (x < p[0] || x > p[2]) return 0.0;
      if (x == p[1]) return 1.0;
      if (x < p[1]) return (x - p[0]) / (p[1] - p[0]);
      return (p[2] - x) / (p[2] - p[1]);
    }
    case Shape::trapezoidal: {
      if (x < p[0] || x > p[3]) return 0.0;
      if (x >= p[1] && x <= p[2]) return 1.0;
      if (x < p[1]) return (x - p[0]) / (p[1] - p[0]);
      return (p[3] - x) / (p[3] - p[2]);
    }
    case Shape::gaussian: {
      const double z = (x - p[0]) / p[1];
      return std::exp(-0.5 * z * z);
    }
  }
  return 0.0;
}

double MembershipFunction::peak() const noexcept {
  switch (shape_) {
    case Shape::triangular:
      return params_[1];
    case Shape::trapezoidal:
      return 0.5 * (params_[1] + params_[2]);
    case Shape::gaussian:
      return params_[0];
  }
  return 0.0;
}

}  // namespace fuzzyest
