#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fuzzyest {

// ---------------------------------------------------------------------------
// Development modes
// ---------------------------------------------------------------------------

enum class Mode { organic, semidetached, embedded };

inline constexpr std::array<Mode, 3> kAllModes{Mode::organic, Mode::semidetached, Mode::embedded};

/// Productivity coefficient A and scale exponent B of PM = A * KDSI^B.
struct ModeCoefficients {
  double a;
  double b;
};

constexpr ModeCoefficients coefficients(Mode mode) noexcept {
  switch (mode) {
    case Mode::organic:
      return {3.2, 1.05};
    case Mode::semidetached:
      return {3.0, 1.12};
    case Mode::embedded:
      return {2.8, 1.20};
  }
  return {0.0, 0.0};
}

std::string_view to_string(Mode mode) noexcept;
/// Accepts "organic", "semidetached" (also "semi-detached"), "embedded".
std::optional<Mode> parse_mode(std::string_view token) noexcept;

// ---------------------------------------------------------------------------
// Cost drivers
// ---------------------------------------------------------------------------

enum class Rating { very_low, low, nominal, high, very_high, extra_high };

inline constexpr std::array<Rating, 6> kAllRatings{Rating::very_low,  Rating::low,       Rating::nominal,
                                                   Rating::high,      Rating::very_high, Rating::extra_high};

/// Dataset tokens: vl, l, n, h, vh, xh.
std::string_view to_token(Rating rating) noexcept;
std::optional<Rating> parse_rating(std::string_view token) noexcept;
constexpr int rating_index(Rating r) noexcept { return static_cast<int>(r); }

/// The fifteen intermediate COCOMO-81 cost drivers, in dataset column order.
enum class DriverId { rely, data, cplx, time, stor, virt, turn, acap, aexp, pcap, vexp, lexp, modp, tool, sced };

inline constexpr std::size_t kDriverCount = 15;
inline constexpr std::array<DriverId, kDriverCount> kAllDrivers{
    DriverId::rely, DriverId::data, DriverId::cplx, DriverId::time, DriverId::stor,
    DriverId::virt, DriverId::turn, DriverId::acap, DriverId::aexp, DriverId::pcap,
    DriverId::vexp, DriverId::lexp, DriverId::modp, DriverId::tool, DriverId::sced};

constexpr std::size_t index_of(DriverId id) noexcept { return static_cast<std::size_t>(id); }
/// Lower-case column token ("stor").
std::string_view to_token(DriverId id) noexcept;
/// Upper-case display name ("STOR").
std::string display_name(DriverId id);
std::optional<DriverId> parse_driver(std::string_view token) noexcept;

/// How the multiplier moves from the lowest to the highest defined rating.
enum class Direction { increasing, decreasing, u_shaped };

std::string_view to_string(Direction d) noexcept;

struct CostDriver {
  DriverId id;
  Direction direction;
  /// Defined ratings only, ordered from lowest to highest.
  std::map<Rating, double> multipliers;
  /// Optional positions of the ratings on a measured axis (percent utilisation).
  std::map<Rating, double> anchors;

  bool defines(Rating r) const { return multipliers.contains(r); }
  bool has_measured_scale() const { return !anchors.empty(); }
  /// Throws InvalidRatingError naming the driver.
  double multiplier(Rating r) const;
  double min_multiplier() const;
  double max_multiplier() const;
};

/// Multiplier tables for all fifteen drivers.
///
/// Parsing enforces: every driver present, Nominal = 1.0, monotonic
/// multipliers in the stated direction, anchors (when given) strictly
/// increasing and given for every level, and the STOR rows equal to the
/// reference values {n: 1.00, h: 1.06, vh: 1.21, xh: 1.56} at anchors
/// {50, 70, 85, 95} percent.
class CostDriverTable {
 public:
  /// Columns: driver,direction,level,multiplier,anchor. '#' lines are comments.
  static CostDriverTable parse(std::istream& in);
  static CostDriverTable load(const std::string& path);
  /// The table compiled in from data/cost_drivers.csv.
  static const CostDriverTable& builtin();

  const CostDriver& driver(DriverId id) const { return drivers_[index_of(id)]; }
  const std::array<CostDriver, kDriverCount>& drivers() const noexcept { return drivers_; }

 private:
  std::array<CostDriver, kDriverCount> drivers_;
};

/// One rating per driver, indexed by index_of(DriverId).
using Ratings = std::array<Rating, kDriverCount>;

constexpr Ratings all_nominal() noexcept {
  Ratings r{};
  r.fill(Rating::nominal);
  return r;
}

// ---------------------------------------------------------------------------
// Crisp intermediate COCOMO
// ---------------------------------------------------------------------------

/// A * KDSI^B. Throws DomainError for kdsi <= 0.
double nominal_effort(Mode mode, double kdsi);

/// Product of the fifteen effort multipliers.
double eaf(const CostDriverTable& table, const Ratings& ratings);

/// nominal_effort * eaf.
double total_effort(const CostDriverTable& table, Mode mode, double kdsi, const Ratings& ratings);

}  // namespace fuzzyest
