#pragma once

#include <string>
#include <vector>

#include "hedonic/types.hpp"

namespace hedonic::geo {

struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;
};

struct GeodesicResult {
  double km = 0.0;
  bool great_circle_fallback = false;  // set when the inverse problem fails to converge
};

// WGS-84 ellipsoidal distance (Vincenty inverse). Near-antipodal pairs that
// do not converge fall back to the spherical great-circle distance, flagged.
GeodesicResult geodesic(const GeoPoint& a, const GeoPoint& b);
double geodesic_km(const GeoPoint& a, const GeoPoint& b);

// Local equirectangular projection around a fixed origin:
//   x = R * dlon * cos(lat0), y = R * dlat   (radians, R = 6371 km).
// Throws if the point is more than ~100 km from the origin, where the
// planar approximation degrades.
PlanarCoord project(const GeoPoint& p, const GeoPoint& origin);
GeoPoint unproject(const PlanarCoord& c, const GeoPoint& origin);

enum class LandmarkClass : int { ifsc = 0, airport, city_centre, dart, luas, park };
inline constexpr int kNumLandmarkClasses = 6;
const std::string& landmark_class_name(LandmarkClass c);
LandmarkClass landmark_class_from_name(const std::string& s);  // throws on unknown

struct Landmark {
  LandmarkClass cls;
  std::string name;
  GeoPoint pos;
};

// Threshold radii in km; indicators fire at distance <= threshold.
struct Thresholds {
  double airport_km = 5.0;
  double city_centre_km = 2.0;
  double dart_km = 1.5;
  double luas_km = 1.0;
  double park_km = 5.0;
};

struct LandmarkSet {
  std::vector<Landmark> landmarks;
  Thresholds thresholds;

  // Bundled Dublin default set.
  static const LandmarkSet& dublin_default();
  // CSV with columns: class,name,latitude,longitude
  static LandmarkSet load_csv(const std::string& path);

  // The single CBD landmark; also the projection origin. Throws if absent.
  GeoPoint ifsc() const;
  bool has_class(LandmarkClass c) const;
  // Min geodesic distance from p to any landmark of the class; throws if
  // the class is empty.
  double min_distance_km(const GeoPoint& p, LandmarkClass c) const;
};

// Continuous IFSC distance plus the thresholded indicators. Throws a
// configuration error when a landmark class is missing.
DistanceFeatures distance_features(const GeoPoint& p, const LandmarkSet& set);

}  // namespace hedonic::geo
