#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hedonic {

// ---------------------------------------------------------------------------
// Closed label sets
// ---------------------------------------------------------------------------

enum class PropertyType : int {
  apartment = 0,
  detached_house,
  duplex,
  end_of_terrace_house,
  semi_detached_house,
  terraced_house,
  townhouse,
};
inline constexpr int kNumPropertyTypes = 7;

enum class BerRating : int { A = 0, B, C, D, E, F, G, exempt };
inline constexpr int kNumBerRatings = 8;

const std::array<std::string, kNumPropertyTypes>& property_type_labels();
const std::array<std::string, kNumBerRatings>& ber_labels();

// 25 Dublin postcode regions plus the county remainder, in canonical order.
const std::vector<std::string>& postcode_labels();

std::string to_label(PropertyType t);
std::string to_label(BerRating b);
PropertyType property_type_from_label(std::string_view s);  // throws on unknown
BerRating ber_from_label(std::string_view s);               // throws on unknown
bool is_known_postcode(std::string_view s);

// ---------------------------------------------------------------------------
// Text-mined attributes
// ---------------------------------------------------------------------------

// Binary attributes mined from the free-text description, plus the two
// city-centre interactions (set from geography after mining).
enum class MinedFlag : int {
  south_facing = 0,
  attic_conversion,
  parking,
  development_potential,
  open_plan,
  fireplace,
  central_heating,
  immersion,
  hot_press,
  garage,
  large_garden,
  ground_floor_apartment,
  first_floor_apartment,
  second_floor_apartment,
  penthouse_apartment,
  refurbished,
  cul_de_sac,
  garden,
  garden_cc,
  car_space_cc,
};
inline constexpr int kNumMinedFlags = 20;

const std::array<std::string, kNumMinedFlags>& mined_flag_names();
int mined_flag_index(std::string_view name);  // -1 if unknown

struct MinedFeatures {
  std::array<std::uint8_t, kNumMinedFlags> bits{};

  bool get(MinedFlag f) const { return bits[static_cast<int>(f)] != 0; }
  void set(MinedFlag f, bool v) { bits[static_cast<int>(f)] = v ? 1 : 0; }
  bool operator==(const MinedFeatures&) const = default;
};

// ---------------------------------------------------------------------------
// Distance features (thresholds of the landmark table)
// ---------------------------------------------------------------------------

struct DistanceFeatures {
  double ifsc_km = 0.0;  // continuous CBD distance
  bool near_airport = false;
  bool within_city_centre = false;
  bool near_dart = false;
  bool near_luas = false;
  bool near_park = false;
  bool operator==(const DistanceFeatures&) const = default;
};

// Planar km east/north of a fixed local origin.
struct PlanarCoord {
  double x_km = 0.0;
  double y_km = 0.0;
};

// ---------------------------------------------------------------------------
// Transactions
// ---------------------------------------------------------------------------

// One listing as ingested, prior to cleaning.
struct RawListing {
  double price = 0.0;  // euro
  std::string sale_date;
  double latitude = 0.0;
  double longitude = 0.0;
  std::string neighbourhood;
  int baths = 0;
  int beds = 0;
  BerRating ber = BerRating::exempt;
  std::string description;
  double size_m2 = 0.0;
  PropertyType type = PropertyType::apartment;
  std::string postcode;            // as given by the vendor
  std::string postcode_corrected;  // empty means same as given

  const std::string& effective_corrected_postcode() const {
    return postcode_corrected.empty() ? postcode : postcode_corrected;
  }
  bool operator==(const RawListing&) const = default;
};

// A cleaned transaction, enriched with the response, mined attributes,
// distance features and projected coordinates.
struct PropertyRecord {
  std::int64_t id = 0;  // stable source row index
  RawListing raw;
  double log_ppm2 = 0.0;  // ln(price / size)
  MinedFeatures mined;
  DistanceFeatures dist;
  PlanarCoord xy;
};

}  // namespace hedonic
