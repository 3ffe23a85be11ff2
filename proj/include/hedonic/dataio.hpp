#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hedonic/types.hpp"

namespace hedonic::dataio {

// Canonical CSV column names, in order. postcode_corrected is optional.
const std::vector<std::string>& csv_columns();

struct RejectedRow {
  std::size_t row_number = 0;  // 1-based data row (header excluded)
  std::string reason;
  std::string raw;  // original fields re-joined
};

struct IngestResult {
  std::vector<RawListing> listings;
  std::vector<RejectedRow> rejects;
};

// Parses the canonical CSV. Missing required columns are a schema error
// (throws); malformed rows become rejects, never silent drops.
IngestResult ingest(std::istream& in);
IngestResult ingest_file(const std::string& path);

// Serializes listings back to the canonical CSV format.
std::string emit(std::span<const RawListing> listings);
void emit_file(const std::string& path, std::span<const RawListing> listings);

std::string rejects_csv(std::span<const RejectedRow> rejects);

// Cleaning rules: drops records with floor area below 37 m2 and computes
// the response log(price / size). Throws when nothing survives.
// Record ids are the 0-based positions in the input listing vector.
std::vector<PropertyRecord> clean(const std::vector<RawListing>& listings);

inline constexpr double kMinFloorAreaM2 = 37.0;

}  // namespace hedonic::dataio
