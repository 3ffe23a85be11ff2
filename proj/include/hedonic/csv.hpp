#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hedonic::csv {

// One parsed CSV document: header row plus data rows, RFC-4180 quoting
// (quoted fields may contain commas, doubled quotes and newlines).
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // column index by exact header name, -1 if absent
  int column(std::string_view name) const;
};

Table read(std::istream& in);
Table read_file(const std::string& path);

std::string escape_field(std::string_view field);
std::string join_row(const std::vector<std::string>& fields);

// Shortest round-trip formatting (via std::to_chars). Locale-free and
// byte-deterministic, which the run manifests rely on.
std::string format_double(double v);
std::string format_int(long long v);

std::optional<double> parse_double(std::string_view s);
std::optional<long long> parse_int(std::string_view s);

}  // namespace hedonic::csv
