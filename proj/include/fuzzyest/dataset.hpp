#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fuzzyest/cocomo.hpp"
#include "fuzzyest/membership.hpp"

namespace fuzzyest {

/// One historical software project.
struct ProjectRecord {
  std::string id;
  double kdsi = 0.0;
  Mode mode = Mode::organic;
  Ratings ratings = all_nominal();
  double actual_pm = 0.0;
  /// Drivers whose cell was blank in the source and defaulted to Nominal.
  std::vector<DriverId> defaulted;

  friend bool operator==(const ProjectRecord&, const ProjectRecord&) = default;
};

/// The exact header row of a dataset file.
inline constexpr const char* kDatasetHeader =
    "id,kdsi,mode,rely,data,cplx,time,stor,virt,turn,acap,aexp,pcap,vexp,lexp,modp,tool,sced,actual_pm";

/// Reads comma-separated project rows. Blank lines and lines starting with
/// '#' are ignored; the first remaining line must be kDatasetHeader.
/// Malformed rows throw ParseError carrying the 1-based line number; unknown
/// mode/level tokens and non-positive size or effort throw ValidationError
/// whose message starts with "line N:". Blank driver cells default to
/// Nominal and are listed in ProjectRecord::defaulted.
std::vector<ProjectRecord> load_dataset(std::istream& in);
std::vector<ProjectRecord> load_dataset_file(const std::string& path);

/// Writes the header and one row per record; numbers use the shortest
/// representation that round-trips.
void write_dataset(std::ostream& out, std::span<const ProjectRecord> records);

/// Projects whose size lies in the closed range.
std::vector<ProjectRecord> filter_by_size(std::span<const ProjectRecord> records, Interval range);

/// Size range of the validation subset.
inline constexpr Interval kValidationRange{1.0, 100.0};

}  // namespace fuzzyest
