#include "fuzzyest/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include <fmt/format.h>

#include "fuzzyest/errors.hpp"
#include "fuzzyest/text.hpp"

namespace fuzzyest {

namespace {

constexpr std::size_t kColumns = 3 + kDriverCount + 1;

[[noreturn]] void invalid(std::size_t line, const std::string& what) {
  throw ValidationError(fmt::format("line {}: {}", line, what));
}

}  // namespace

std::vector<ProjectRecord> load_dataset(std::istream& in) {
  std::vector<ProjectRecord> records;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (!header_seen) {
      if (text::lower(t) != kDatasetHeader) {
        throw ParseError(line_no, fmt::format("expected header '{}'", kDatasetHeader));
      }
      header_seen = true;
      continue;
    }
    const auto cells = text::split(t, ',');
    if (cells.size() != kColumns) {
      throw ParseError(line_no, fmt::format("expected {} columns, got {}", kColumns, cells.size()));
    }
    ProjectRecord rec;
    rec.id = std::string(text::trim(cells[0]));
    if (rec.id.empty()) throw ParseError(line_no, "empty project id");

    const auto kdsi = text::parse_double(cells[1]);
    if (!kdsi) throw ParseError(line_no, fmt::format("kdsi '{}' is not a number", text::trim(cells[1])));
    if (*kdsi <= 0.0) invalid(line_no, fmt::format("kdsi must be positive, got {}", *kdsi));
    rec.kdsi = *kdsi;

    const auto mode = parse_mode(cells[2]);
    if (!mode) invalid(line_no, fmt::format("unknown mode '{}'", text::trim(cells[2])));
    rec.mode = *mode;

    for (DriverId id : kAllDrivers) {
      const auto cell = text::trim(cells[3 + index_of(id)]);
      if (cell.empty()) {
        rec.ratings[index_of(id)] = Rating::nominal;
        rec.defaulted.push_back(id);
        continue;
      }
      const auto r = parse_rating(cell);
      if (!r) invalid(line_no, fmt::format("unknown {} level '{}'", to_token(id), cell));
      rec.ratings[index_of(id)] = *r;
    }

    const auto actual = text::parse_double(cells.back());
    if (!actual) throw ParseError(line_no, fmt::format("actual_pm '{}' is not a number", text::trim(cells.back())));
    if (*actual <= 0.0) invalid(line_no, fmt::format("actual_pm must be positive, got {}", *actual));
    rec.actual_pm = *actual;
    records.push_back(std::move(rec));
  }
  if (!header_seen) throw ParseError(0, "dataset has no header row");
  return records;
}

std::vector<ProjectRecord> load_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot open dataset '{}'", path));
  try {
    return load_dataset(in);
  } catch (const ParseError& e) {
    throw ParseError(0, fmt::format("{}: {}", path, e.what()));
  } catch (const ValidationError& e) {
    throw ValidationError(fmt::format("{}: {}", path, e.what()));
  }
}

void write_dataset(std::ostream& out, std::span<const ProjectRecord> records) {
  out << kDatasetHeader << '\n';
  for (const auto& r : records) {
    out << r.id << ',' << text::format_double(r.kdsi) << ',' << to_string(r.mode);
    for (DriverId id : kAllDrivers) {
      out << ',';
      const bool blank = std::find(r.defaulted.begin(), r.defaulted.end(), id) != r.defaulted.end();
      if (!blank) out << to_token(r.ratings[index_of(id)]);
    }
    out << ',' << text::format_double(r.actual_pm) << '\n';
  }
}

std::vector<ProjectRecord> filter_by_size(std::span<const ProjectRecord> records, Interval range) {
  std::vector<ProjectRecord> out;
  for (const auto& r : records) {
    if (range.contains(r.kdsi)) out.push_back(r);
  }
  return out;
}

}  // namespace fuzzyest
