#include "fuzzyest/cocomo.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "builtin_tables.hpp"
#include "fuzzyest/errors.hpp"
#include "fuzzyest/text.hpp"

namespace fuzzyest {

std::string_view to_string(Mode mode) noexcept {
  switch (mode) {
    case Mode::organic:
      return "organic";
    case Mode::semidetached:
      return "semidetached";
    case Mode::embedded:
      return "embedded";
  }
  return "unknown";
}

std::optional<Mode> parse_mode(std::string_view token) noexcept {
  const auto t = text::lower(text::trim(token));
  if (t == "organic") return Mode::organic;
  if (t == "semidetached" || t == "semi-detached") return Mode::semidetached;
  if (t == "embedded") return Mode::embedded;
  return std::nullopt;
}

std::string_view to_token(Rating rating) noexcept {
  static constexpr std::array<std::string_view, 6> kTokens{"vl", "l", "n", "h", "vh", "xh"};
  return kTokens[static_cast<std::size_t>(rating)];
}

std::optional<Rating> parse_rating(std::string_view token) noexcept {
  const auto t = text::lower(text::trim(token));
  for (Rating r : kAllRatings) {
    if (t == to_token(r)) return r;
  }
  return std::nullopt;
}

std::string_view to_token(DriverId id) noexcept {
  static constexpr std::array<std::string_view, kDriverCount> kTokens{
      "rely", "data", "cplx", "time", "stor", "virt", "turn", "acap",
      "aexp", "pcap", "vexp", "lexp", "modp", "tool", "sced"};
  return kTokens[index_of(id)];
}

std::string display_name(DriverId id) {
  std::string s(to_token(id));
  for (auto& c : s) c = static_cast<char>(c - 'a' + 'A');
  return s;
}

std::optional<DriverId> parse_driver(std::string_view token) noexcept {
  const auto t = text::lower(text::trim(token));
  for (DriverId d : kAllDrivers) {
    if (t == to_token(d)) return d;
  }
  return std::nullopt;
}

std::string_view to_string(Direction d) noexcept {
  switch (d) {
    case Direction::increasing:
      return "increasing";
    case Direction::decreasing:
      return "decreasing";
    case Direction::u_shaped:
      return "u_shaped";
  }
  return "unknown";
}

double CostDriver::multiplier(Rating r) const {
  auto it = multipliers.find(r);
  if (it == multipliers.end()) throw InvalidRatingError(display_name(id), std::string(to_token(r)));
  return it->second;
}

double CostDriver::min_multiplier() const {
  return std::min_element(multipliers.begin(), multipliers.end(),
                          [](const auto& a, const auto& b) { return a.second < b.second; })
      ->second;
}

double CostDriver::max_multiplier() const {
  return std::max_element(multipliers.begin(), multipliers.end(),
                          [](const auto& a, const auto& b) { return a.second < b.second; })
      ->second;
}

namespace {

std::optional<Direction> parse_direction(std::string_view s) {
  if (s == "increasing") return Direction::increasing;
  if (s == "decreasing") return Direction::decreasing;
  if (s == "u_shaped") return Direction::u_shaped;
  return std::nullopt;
}

void validate_driver(const CostDriver& d) {
  const auto name = display_name(d.id);
  if (d.multipliers.size() < 2) throw ValidationError(fmt::format("{}: fewer than two rating levels", name));
  auto nom = d.multipliers.find(Rating::nominal);
  if (nom == d.multipliers.end() || nom->second != 1.0) {
    throw ValidationError(fmt::format("{}: the Nominal multiplier must be exactly 1.0", name));
  }
  for (auto it = d.multipliers.begin(); std::next(it) != d.multipliers.end(); ++it) {
    const auto next = std::next(it);
    if (rating_index(next->first) != rating_index(it->first) + 1) {
      throw ValidationError(fmt::format("{}: rating levels must be contiguous", name));
    }
    const bool up = next->second > it->second;
    const bool down = next->second < it->second;
    bool ok = false;
    switch (d.direction) {
      case Direction::increasing:
        ok = up;
        break;
      case Direction::decreasing:
        ok = down;
        break;
      case Direction::u_shaped:
        ok = next->first <= Rating::nominal ? down : up;
        break;
    }
    if (!ok) {
      throw ValidationError(fmt::format("{}: multipliers {} -> {} break the {} ordering", name,
                                        to_token(it->first), to_token(next->first), to_string(d.direction)));
    }
  }
  if (d.has_measured_scale()) {
    if (d.anchors.size() != d.multipliers.size()) {
      throw ValidationError(fmt::format("{}: anchors must be given for every level or none", name));
    }
    for (auto it = d.anchors.begin(); std::next(it) != d.anchors.end(); ++it) {
      if (!(std::next(it)->second > it->second)) {
        throw ValidationError(fmt::format("{}: anchors must increase with the rating", name));
      }
    }
  }
}

// Main-storage reference rows: utilisation anchors and effort multipliers.
void cross_check_stor(const CostDriver& stor) {
  const std::map<Rating, double> multipliers{
      {Rating::nominal, 1.00}, {Rating::high, 1.06}, {Rating::very_high, 1.21}, {Rating::extra_high, 1.56}};
  const std::map<Rating, double> anchors{
      {Rating::nominal, 50.0}, {Rating::high, 70.0}, {Rating::very_high, 85.0}, {Rating::extra_high, 95.0}};
  if (stor.multipliers != multipliers || stor.anchors != anchors) {
    throw ValidationError("STOR rows differ from the reference main-storage table");
  }
}

}  // namespace

CostDriverTable CostDriverTable::parse(std::istream& in) {
  std::array<std::optional<CostDriver>, kDriverCount> slots;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (!header_seen) {
      if (t != "driver,direction,level,multiplier,anchor") {
        throw ParseError(line_no, "expected header 'driver,direction,level,multiplier,anchor'");
      }
      header_seen = true;
      continue;
    }
    const auto cells = text::split(t, ',');
    if (cells.size() != 5) throw ParseError(line_no, fmt::format("expected 5 columns, got {}", cells.size()));
    const auto id = parse_driver(cells[0]);
    if (!id) throw ParseError(line_no, fmt::format("unknown cost driver '{}'", text::trim(cells[0])));
    const auto dir = parse_direction(text::trim(cells[1]));
    if (!dir) throw ParseError(line_no, fmt::format("unknown direction '{}'", text::trim(cells[1])));
    const auto level = parse_rating(cells[2]);
    if (!level) throw ParseError(line_no, fmt::format("unknown rating level '{}'", text::trim(cells[2])));
    const auto mult = text::parse_double(cells[3]);
    if (!mult || *mult <= 0.0) throw ParseError(line_no, "multiplier must be a positive number");

    auto& slot = slots[index_of(*id)];
    if (!slot) slot = CostDriver{*id, *dir, {}, {}};
    if (slot->direction != *dir) throw ParseError(line_no, "direction differs from earlier rows of this driver");
    if (!slot->multipliers.emplace(*level, *mult).second) throw ParseError(line_no, "duplicate rating level");
    if (!text::trim(cells[4]).empty()) {
      const auto anchor = text::parse_double(cells[4]);
      if (!anchor) throw ParseError(line_no, "anchor must be a number");
      slot->anchors.emplace(*level, *anchor);
    }
  }
  if (!header_seen) throw ParseError(0, "cost driver table is empty");

  CostDriverTable table;
  for (DriverId id : kAllDrivers) {
    auto& slot = slots[index_of(id)];
    if (!slot) throw ValidationError(fmt::format("cost driver table has no rows for {}", display_name(id)));
    validate_driver(*slot);
    table.drivers_[index_of(id)] = std::move(*slot);
  }
  cross_check_stor(table.driver(DriverId::stor));
  return table;
}

CostDriverTable CostDriverTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot open cost driver table '{}'", path));
  return parse(in);
}

const CostDriverTable& CostDriverTable::builtin() {
  static const CostDriverTable table = [] {
    std::istringstream in(detail::kBuiltinDriverTableCsv);
    return parse(in);
  }();
  return table;
}

double nominal_effort(Mode mode, double kdsi) {
  if (!(kdsi > 0.0) || !std::isfinite(kdsi)) {
    throw DomainError(fmt::format("size must be a positive number of KDSI, got {}", kdsi));
  }
  const auto [a, b] = coefficients(mode);
  return a * std::pow(kdsi, b);
}

double eaf(const CostDriverTable& table, const Ratings& ratings) {
  double product = 1.0;
  for (DriverId id : kAllDrivers) product *= table.driver(id).multiplier(ratings[index_of(id)]);
  return product;
}

double total_effort(const CostDriverTable& table, Mode mode, double kdsi, const Ratings& ratings) {
  return nominal_effort(mode, kdsi) * eaf(table, ratings);
}

}  // namespace fuzzyest
