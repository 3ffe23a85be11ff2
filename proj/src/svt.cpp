#include "hedonic/svt.hpp"

#include <cmath>
#include <stdexcept>

#include "hedonic/csv.hpp"
#include "json.hpp"

namespace hedonic::svt {

LocationSurface surface(const fit::FittedModel& model, const Bbox& bbox, double resolution_km) {
  if (!model.layout.spatial) throw std::invalid_argument("surface: model has no spatial term");
  if (!(resolution_km > 0.0)) throw std::invalid_argument("surface: resolution must be > 0");
  if (!(bbox.x1 >= bbox.x0 && bbox.y1 >= bbox.y0)) {
    throw std::invalid_argument("surface: malformed bounding box");
  }
  const auto& sl = *model.layout.spatial;
  const Eigen::VectorXd delta = model.beta.segment(sl.col0, sl.gp.dim());

  LocationSurface s;
  s.resolution_km = resolution_km;
  s.x0_km = bbox.x0 + resolution_km / 2.0;
  s.y0_km = bbox.y0 + resolution_km / 2.0;
  s.nx = std::max(1, static_cast<int>(std::ceil((bbox.x1 - bbox.x0) / resolution_km)));
  s.ny = std::max(1, static_cast<int>(std::ceil((bbox.y1 - bbox.y0) / resolution_km)));
  s.log_value.resize(s.cells());
  s.location_value.resize(s.cells());
  for (int iy = 0; iy < s.ny; ++iy) {
    for (int ix = 0; ix < s.nx; ++ix) {
      const Eigen::RowVectorXd row = sl.gp.row(s.x_at(ix), s.y_at(iy)) - sl.centers;
      const double v = row.dot(delta);
      s.log_value[iy * s.nx + ix] = v;
      s.location_value[iy * s.nx + ix] = std::exp(v);
    }
  }
  return s;
}

LocationSurface surface(const fit::FittedModel& model, double resolution_km, double pad_km) {
  const auto& b = model.train_bbox;
  return surface(model, Bbox{b[0] - pad_km, b[1] + pad_km, b[2] - pad_km, b[3] + pad_km},
                 resolution_km);
}

Eigen::VectorXd scaling_field(const LocationSurface& s) {
  if (s.cells() == 0) throw std::invalid_argument("scaling_field: empty surface");
  const double lo = s.location_value.minCoeff();
  if (!(lo > 0.0)) throw std::invalid_argument("scaling_field: non-positive location value");
  return s.location_value / lo;
}

double site_tax(double scaling, double site_acres, double baseline_eur_per_acre) {
  if (!(scaling >= 1.0)) throw std::invalid_argument("site_tax: scaling must be >= 1");
  if (!(site_acres > 0.0)) throw std::invalid_argument("site_tax: site size must be > 0");
  if (!(baseline_eur_per_acre > 0.0)) throw std::invalid_argument("site_tax: baseline must be > 0");
  return scaling * site_acres * baseline_eur_per_acre;
}

double apartment_site_tax(double scaling, double site_acres, double baseline_eur_per_acre,
                          long long n_apartments) {
  if (n_apartments < 1) throw std::invalid_argument("site_tax: need >= 1 apartment");
  return site_tax(scaling, site_acres, baseline_eur_per_acre) /
         static_cast<double>(n_apartments);
}

std::string surface_csv(const LocationSurface& s, const Eigen::VectorXd& scalings,
                        const geo::GeoPoint& origin) {
  if (scalings.size() != s.cells()) throw std::invalid_argument("surface_csv: size mismatch");
  std::string out =
      csv::join_row({"x_km", "y_km", "lat", "lon", "log_value", "location_value", "scaling"});
  for (int iy = 0; iy < s.ny; ++iy) {
    for (int ix = 0; ix < s.nx; ++ix) {
      const int c = iy * s.nx + ix;
      const geo::GeoPoint p = geo::unproject({s.x_at(ix), s.y_at(iy)}, origin);
      out += csv::join_row({csv::format_double(s.x_at(ix)), csv::format_double(s.y_at(iy)),
                            csv::format_double(p.lat), csv::format_double(p.lon),
                            csv::format_double(s.log_value[c]),
                            csv::format_double(s.location_value[c]),
                            csv::format_double(scalings[c])});
    }
  }
  return out;
}

std::string surface_meta_json(const LocationSurface& s) {
  nlohmann::ordered_json j;
  j["x0_km"] = s.x0_km;
  j["y0_km"] = s.y0_km;
  j["resolution_km"] = s.resolution_km;
  j["nx"] = s.nx;
  j["ny"] = s.ny;
  j["min_location_value"] = s.location_value.minCoeff();
  j["max_location_value"] = s.location_value.maxCoeff();
  return j.dump(1);
}

double nearest_scaling(const LocationSurface& s, const Eigen::VectorXd& scalings,
                       const PlanarCoord& p) {
  if (scalings.size() != s.cells() || s.cells() == 0) {
    throw std::invalid_argument("nearest_scaling: bad surface");
  }
  auto clamp_idx = [](int v, int hi) { return std::max(0, std::min(v, hi)); };
  const int ix = clamp_idx(static_cast<int>(std::lround((p.x_km - s.x0_km) / s.resolution_km)),
                           s.nx - 1);
  const int iy = clamp_idx(static_cast<int>(std::lround((p.y_km - s.y0_km) / s.resolution_km)),
                           s.ny - 1);
  return scalings[iy * s.nx + ix];
}

}  // namespace hedonic::svt
