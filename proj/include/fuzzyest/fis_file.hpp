#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "fuzzyest/inference.hpp"

namespace fuzzyest {

inline constexpr int kFisSchemaVersion = 1;

/// "fuzzyest <version>"
std::string tool_version();

/// Provenance block written at the top of every FIS file.
struct FisFileHeader {
  std::string tool = tool_version();
  std::uint64_t seed = 0;
  std::string config;

  friend bool operator==(const FisFileHeader&, const FisFileHeader&) = default;
};

struct LoadedFis {
  FuzzyInferenceSystem fis;
  FisFileHeader header;
};

/// Indented JSON with keys in a fixed order. Numbers use the shortest form
/// that round-trips, so save -> load -> save reproduces the same bytes.
std::string serialize_fis(const FuzzyInferenceSystem& fis, const FisFileHeader& header);

/// Throws ParseError for malformed JSON or a wrong schema, and ValidationError
/// when the described system fails the FuzzyInferenceSystem build checks.
LoadedFis deserialize_fis(std::string_view text);

/// File wrappers; errors are prefixed with the path.
void save_fis(const std::string& path, const FuzzyInferenceSystem& fis, const FisFileHeader& header);
LoadedFis load_fis(const std::string& path);

}  // namespace fuzzyest
