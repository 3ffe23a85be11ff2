#include "hedonic/geo.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "hedonic/csv.hpp"

namespace hedonic::geo {

namespace {

constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
// WGS-84
constexpr double kSemiMajorKm = 6378.137;
constexpr double kFlattening = 1.0 / 298.257223563;
constexpr double kSemiMinorKm = kSemiMajorKm * (1.0 - kFlattening);
// spherical radius used by the local projection and the fallback
constexpr double kEarthRadiusKm = 6371.0;

void check_point(const GeoPoint& p) {
  if (!(p.lat >= -90.0 && p.lat <= 90.0) || !(p.lon >= -180.0 && p.lon <= 180.0)) {
    throw std::invalid_argument("geo: coordinate out of range");
  }
}

double great_circle_km(const GeoPoint& a, const GeoPoint& b) {
  const double phi1 = a.lat * kDegToRad, phi2 = b.lat * kDegToRad;
  const double dphi = (b.lat - a.lat) * kDegToRad;
  const double dlam = (b.lon - a.lon) * kDegToRad;
  const double s = std::sin(dphi / 2.0), t = std::sin(dlam / 2.0);
  const double h = s * s + std::cos(phi1) * std::cos(phi2) * t * t;
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

}  // namespace

GeodesicResult geodesic(const GeoPoint& a, const GeoPoint& b) {
  check_point(a);
  check_point(b);
  if (a.lat == b.lat && a.lon == b.lon) return {0.0, false};

  // Vincenty inverse
  const double big_l = (b.lon - a.lon) * kDegToRad;
  const double u1 = std::atan((1.0 - kFlattening) * std::tan(a.lat * kDegToRad));
  const double u2 = std::atan((1.0 - kFlattening) * std::tan(b.lat * kDegToRad));
  const double sin_u1 = std::sin(u1), cos_u1 = std::cos(u1);
  const double sin_u2 = std::sin(u2), cos_u2 = std::cos(u2);

  double lambda = big_l;
  double sin_sigma = 0.0, cos_sigma = 0.0, sigma = 0.0;
  double cos_sq_alpha = 0.0, cos_2sigma_m = 0.0;
  bool converged = false;
  for (int iter = 0; iter < 200; ++iter) {
    const double sin_lambda = std::sin(lambda), cos_lambda = std::cos(lambda);
    const double t1 = cos_u2 * sin_lambda;
    const double t2 = cos_u1 * sin_u2 - sin_u1 * cos_u2 * cos_lambda;
    sin_sigma = std::sqrt(t1 * t1 + t2 * t2);
    if (sin_sigma == 0.0) return {0.0, false};  // coincident
    cos_sigma = sin_u1 * sin_u2 + cos_u1 * cos_u2 * cos_lambda;
    sigma = std::atan2(sin_sigma, cos_sigma);
    const double sin_alpha = cos_u1 * cos_u2 * sin_lambda / sin_sigma;
    cos_sq_alpha = 1.0 - sin_alpha * sin_alpha;
    cos_2sigma_m = (cos_sq_alpha != 0.0)
                       ? cos_sigma - 2.0 * sin_u1 * sin_u2 / cos_sq_alpha
                       : 0.0;  // equatorial line
    const double c = kFlattening / 16.0 * cos_sq_alpha *
                     (4.0 + kFlattening * (4.0 - 3.0 * cos_sq_alpha));
    const double lambda_prev = lambda;
    lambda = big_l + (1.0 - c) * kFlattening * sin_alpha *
                         (sigma + c * sin_sigma *
                                      (cos_2sigma_m +
                                       c * cos_sigma * (-1.0 + 2.0 * cos_2sigma_m * cos_2sigma_m)));
    if (std::abs(lambda - lambda_prev) < 1e-12) {
      converged = true;
      break;
    }
  }
  if (!converged) return {great_circle_km(a, b), true};

  const double u_sq = cos_sq_alpha *
                      (kSemiMajorKm * kSemiMajorKm - kSemiMinorKm * kSemiMinorKm) /
                      (kSemiMinorKm * kSemiMinorKm);
  const double big_a =
      1.0 + u_sq / 16384.0 * (4096.0 + u_sq * (-768.0 + u_sq * (320.0 - 175.0 * u_sq)));
  const double big_b = u_sq / 1024.0 * (256.0 + u_sq * (-128.0 + u_sq * (74.0 - 47.0 * u_sq)));
  const double delta_sigma =
      big_b * sin_sigma *
      (cos_2sigma_m +
       big_b / 4.0 *
           (cos_sigma * (-1.0 + 2.0 * cos_2sigma_m * cos_2sigma_m) -
            big_b / 6.0 * cos_2sigma_m * (-3.0 + 4.0 * sin_sigma * sin_sigma) *
                (-3.0 + 4.0 * cos_2sigma_m * cos_2sigma_m)));
  return {kSemiMinorKm * big_a * (sigma - delta_sigma), false};
}

double geodesic_km(const GeoPoint& a, const GeoPoint& b) { return geodesic(a, b).km; }

PlanarCoord project(const GeoPoint& p, const GeoPoint& origin) {
  check_point(p);
  check_point(origin);
  const double x =
      kEarthRadiusKm * (p.lon - origin.lon) * kDegToRad * std::cos(origin.lat * kDegToRad);
  const double y = kEarthRadiusKm * (p.lat - origin.lat) * kDegToRad;
  if (std::hypot(x, y) > 100.0) {
    throw std::invalid_argument("project: point too far from origin for planar accuracy");
  }
  return {x, y};
}

GeoPoint unproject(const PlanarCoord& c, const GeoPoint& origin) {
  GeoPoint p;
  p.lat = origin.lat + c.y_km / (kEarthRadiusKm * kDegToRad);
  p.lon = origin.lon + c.x_km / (kEarthRadiusKm * kDegToRad * std::cos(origin.lat * kDegToRad));
  return p;
}

const std::string& landmark_class_name(LandmarkClass c) {
  static const std::array<std::string, kNumLandmarkClasses> names = {
      "ifsc", "airport", "city_centre", "dart", "luas", "park"};
  return names[static_cast<int>(c)];
}

LandmarkClass landmark_class_from_name(const std::string& s) {
  for (int i = 0; i < kNumLandmarkClasses; ++i) {
    if (landmark_class_name(static_cast<LandmarkClass>(i)) == s) {
      return static_cast<LandmarkClass>(i);
    }
  }
  throw std::invalid_argument("unknown landmark class '" + s + "'");
}

LandmarkSet LandmarkSet::load_csv(const std::string& path) {
  const auto table = csv::read_file(path);
  const int ccls = table.column("class");
  const int cname = table.column("name");
  const int clat = table.column("latitude");
  const int clon = table.column("longitude");
  if (ccls < 0 || cname < 0 || clat < 0 || clon < 0) {
    throw std::runtime_error("landmarks: header must be class,name,latitude,longitude");
  }
  LandmarkSet set;
  for (const auto& row : table.rows) {
    const auto lat = csv::parse_double(row[clat]);
    const auto lon = csv::parse_double(row[clon]);
    if (!lat || !lon) throw std::runtime_error("landmarks: bad coordinate for " + row[cname]);
    set.landmarks.push_back({landmark_class_from_name(row[ccls]), row[cname], {*lat, *lon}});
  }
  return set;
}

GeoPoint LandmarkSet::ifsc() const {
  for (const auto& lm : landmarks) {
    if (lm.cls == LandmarkClass::ifsc) return lm.pos;
  }
  throw std::runtime_error("landmarks: missing class 'ifsc'");
}

bool LandmarkSet::has_class(LandmarkClass c) const {
  for (const auto& lm : landmarks) {
    if (lm.cls == c) return true;
  }
  return false;
}

double LandmarkSet::min_distance_km(const GeoPoint& p, LandmarkClass c) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& lm : landmarks) {
    if (lm.cls != c) continue;
    best = std::min(best, geodesic_km(p, lm.pos));
  }
  if (!std::isfinite(best)) {
    throw std::runtime_error("landmarks: missing class '" + landmark_class_name(c) + "'");
  }
  return best;
}

DistanceFeatures distance_features(const GeoPoint& p, const LandmarkSet& set) {
  for (int i = 0; i < kNumLandmarkClasses; ++i) {
    const auto c = static_cast<LandmarkClass>(i);
    if (!set.has_class(c)) {
      throw std::runtime_error("landmarks: missing class '" + landmark_class_name(c) + "'");
    }
  }
  DistanceFeatures d;
  d.ifsc_km = set.min_distance_km(p, LandmarkClass::ifsc);
  // boundary rule: distance equal to the threshold counts as within
  d.near_airport = set.min_distance_km(p, LandmarkClass::airport) <= set.thresholds.airport_km;
  d.within_city_centre =
      set.min_distance_km(p, LandmarkClass::city_centre) <= set.thresholds.city_centre_km;
  d.near_dart = set.min_distance_km(p, LandmarkClass::dart) <= set.thresholds.dart_km;
  d.near_luas = set.min_distance_km(p, LandmarkClass::luas) <= set.thresholds.luas_km;
  d.near_park = set.min_distance_km(p, LandmarkClass::park) <= set.thresholds.park_km;
  return d;
}

}  // namespace hedonic::geo
