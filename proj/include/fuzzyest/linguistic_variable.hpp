#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzyest/membership.hpp"

namespace fuzzyest {

struct Term {
  std::string name;
  MembershipFunction mf;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Fraction of the universe width by which an input may overshoot an endpoint
/// and still be clamped onto it. Anything farther out is an OutOfRangeError.
inline constexpr double kClampTolerance = 0.01;

/// A named quantity over a closed universe, partitioned into ordered terms.
///
/// Construction checks lo < hi and unique term names. Coverage is checked
/// separately because output variables need not cover their universe.
class LinguisticVariable {
 public:
  LinguisticVariable(std::string name, Interval universe, std::vector<Term> terms);

  const std::string& name() const noexcept { return name_; }
  const Interval& universe() const noexcept { return universe_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  std::optional<std::size_t> find(std::string_view term_name) const noexcept;
  /// Throws ValidationError when the term does not exist.
  const Term& term(std::string_view term_name) const;

  /// Applies the out-of-range policy: values within kClampTolerance * width of
  /// an endpoint snap to it, farther values throw OutOfRangeError.
  double clamp(double x) const;

  /// Degrees for each term, in term order. The input is clamped first.
  std::vector<double> degrees(double x) const;

  /// Throws ValidationError unless every point of the universe (dense scan plus
  /// term peaks) has at least one term with positive degree.
  void check_coverage() const;

  friend bool operator==(const LinguisticVariable&, const LinguisticVariable&) = default;

 private:
  std::string name_;
  Interval universe_;
  std::vector<Term> terms_;
};

/// Term name -> degree for a crisp input.
std::map<std::string, double> fuzzify(const LinguisticVariable& var, double x);

enum class PartitionShape { triangular, gaussian };

std::string_view to_string(PartitionShape shape) noexcept;
PartitionShape partition_shape_from_string(std::string_view name);

/// "s1", "s2", ... "sn" style names.
std::vector<std::string> ordinal_term_names(std::string_view prefix, std::size_t n);

/// Splits `universe` into `n` equally spaced terms centred from lo to hi.
///
/// Triangular partitions are Ruspini (degrees sum to one everywhere); the end
/// triangles extend one spacing past the universe so they stay symmetric.
/// Gaussian widths are spacing / (2 sqrt(2 ln 2)), so neighbours cross at 0.5.
/// Empty `term_names` selects s1..sn. Throws InvalidPartitionError for n < 2.
LinguisticVariable make_partition(std::string name, Interval universe, std::size_t n, PartitionShape shape,
                                  std::vector<std::string> term_names = {});

}  // namespace fuzzyest
