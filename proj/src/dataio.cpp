#include "hedonic/dataio.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "hedonic/csv.hpp"

namespace hedonic::dataio {

namespace {

bool looks_like_date(const std::string& s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
  for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "price",       "sale_date", "latitude", "longitude",     "neighbourhood",
      "baths",       "beds",      "ber",      "description",   "size",
      "property_type", "postcode", "postcode_corrected"};
  return cols;
}

IngestResult ingest(std::istream& in) {
  const csv::Table table = csv::read(in);
  const auto& cols = csv_columns();

  std::vector<int> idx(cols.size(), -1);
  for (std::size_t i = 0; i < cols.size(); ++i) {
    idx[i] = table.column(cols[i]);
    const bool optional = cols[i] == "postcode_corrected";
    if (idx[i] < 0 && !optional) {
      throw std::runtime_error("schema error: missing required column '" + cols[i] + "'");
    }
  }

  IngestResult result;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::size_t row_number = r + 1;
    auto reject = [&](const std::string& reason) {
      result.rejects.push_back({row_number, reason, csv::join_row(row)});
    };
    if (row.size() < table.header.size()) {
      reject("wrong field count");
      continue;
    }
    auto field = [&](int c) -> const std::string& {
      static const std::string empty;
      return c >= 0 && c < static_cast<int>(row.size()) ? row[c] : empty;
    };

    RawListing listing;
    const auto price = csv::parse_double(field(idx[0]));
    if (!price) {
      reject("price unparseable");
      continue;
    }
    if (!(*price > 0.0)) {
      reject("price not positive");
      continue;
    }
    listing.price = *price;

    listing.sale_date = field(idx[1]);
    if (!looks_like_date(listing.sale_date)) {
      reject("sale_date not an ISO date");
      continue;
    }

    const auto lat = csv::parse_double(field(idx[2]));
    const auto lon = csv::parse_double(field(idx[3]));
    if (!lat) {
      reject("latitude unparseable");
      continue;
    }
    if (!lon) {
      reject("longitude unparseable");
      continue;
    }
    if (*lat < -90.0 || *lat > 90.0) {
      reject("latitude out of range");
      continue;
    }
    if (*lon < -180.0 || *lon > 180.0) {
      reject("longitude out of range");
      continue;
    }
    listing.latitude = *lat;
    listing.longitude = *lon;

    listing.neighbourhood = field(idx[4]);

    const auto baths = csv::parse_int(field(idx[5]));
    const auto beds = csv::parse_int(field(idx[6]));
    if (!baths || *baths < 0) {
      reject("baths unparseable");
      continue;
    }
    if (!beds || *beds < 0) {
      reject("beds unparseable");
      continue;
    }
    listing.baths = static_cast<int>(*baths);
    listing.beds = static_cast<int>(*beds);

    try {
      listing.ber = ber_from_label(field(idx[7]));
    } catch (const std::exception&) {
      reject("unknown ber label '" + field(idx[7]) + "'");
      continue;
    }

    listing.description = field(idx[8]);

    const auto size = csv::parse_double(field(idx[9]));
    if (!size) {
      reject("size unparseable");
      continue;
    }
    if (!(*size > 0.0)) {
      reject("size not positive");
      continue;
    }
    listing.size_m2 = *size;

    try {
      listing.type = property_type_from_label(field(idx[10]));
    } catch (const std::exception&) {
      reject("unknown property_type label '" + field(idx[10]) + "'");
      continue;
    }

    listing.postcode = field(idx[11]);
    if (!is_known_postcode(listing.postcode)) {
      reject("unknown postcode label '" + listing.postcode + "'");
      continue;
    }
    listing.postcode_corrected = field(idx[12]);
    if (!listing.postcode_corrected.empty() && !is_known_postcode(listing.postcode_corrected)) {
      reject("unknown postcode_corrected label '" + listing.postcode_corrected + "'");
      continue;
    }

    result.listings.push_back(std::move(listing));
  }
  return result;
}

IngestResult ingest_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("ingest: cannot open " + path);
  return ingest(in);
}

std::string emit(std::span<const RawListing> listings) {
  std::string out = csv::join_row(csv_columns());
  for (const auto& l : listings) {
    out += csv::join_row({
        csv::format_double(l.price),
        l.sale_date,
        csv::format_double(l.latitude),
        csv::format_double(l.longitude),
        l.neighbourhood,
        csv::format_int(l.baths),
        csv::format_int(l.beds),
        to_label(l.ber),
        l.description,
        csv::format_double(l.size_m2),
        to_label(l.type),
        l.postcode,
        l.postcode_corrected,
    });
  }
  return out;
}

void emit_file(const std::string& path, std::span<const RawListing> listings) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit: cannot open " + path);
  out << emit(listings);
}

std::string rejects_csv(std::span<const RejectedRow> rejects) {
  std::string out = csv::join_row({"row_number", "reason", "raw"});
  for (const auto& r : rejects) {
    std::string raw = r.raw;
    if (!raw.empty() && raw.back() == '\n') raw.pop_back();
    out += csv::join_row({csv::format_int(static_cast<long long>(r.row_number)), r.reason, raw});
  }
  return out;
}

std::vector<PropertyRecord> clean(const std::vector<RawListing>& listings) {
  std::vector<PropertyRecord> records;
  records.reserve(listings.size());
  for (std::size_t i = 0; i < listings.size(); ++i) {
    const RawListing& l = listings[i];
    if (l.size_m2 < kMinFloorAreaM2) continue;
    PropertyRecord rec;
    rec.id = static_cast<std::int64_t>(i);
    rec.raw = l;
    rec.log_ppm2 = std::log(l.price / l.size_m2);
    if (!std::isfinite(rec.log_ppm2)) continue;  // guarded by ingest; belt and braces
    records.push_back(std::move(rec));
  }
  if (records.empty()) throw std::runtime_error("no usable records after cleaning");
  return records;
}

}  // namespace hedonic::dataio
