#pragma once

#include <Eigen/Dense>
#include <string>

#include "hedonic/fit.hpp"
#include "hedonic/geo.hpp"

namespace hedonic::svt {

// Regular lattice of the fitted spatial-smooth contribution (log price per
// m2 scale) with the exponentiated location value alongside.
struct LocationSurface {
  double x0_km = 0.0, y0_km = 0.0;  // lower-left cell center
  double resolution_km = 0.25;
  int nx = 0, ny = 0;
  Eigen::VectorXd log_value;       // row-major: iy * nx + ix
  Eigen::VectorXd location_value;  // exp(log_value)

  int cells() const { return nx * ny; }
  double x_at(int ix) const { return x0_km + ix * resolution_km; }
  double y_at(int iy) const { return y0_km + iy * resolution_km; }
};

struct Bbox {
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
};

// Evaluates the model's spatial term at each cell center. Throws when the
// model has no spatial term. The default bounding box is the model's
// training extent padded by 1 km.
LocationSurface surface(const fit::FittedModel& model, const Bbox& bbox,
                        double resolution_km = 0.25);
LocationSurface surface(const fit::FittedModel& model, double resolution_km = 0.25,
                        double pad_km = 1.0);

// Per-cell ratio of location value to the lattice minimum; the minimum cell
// is exactly 1 and the field is invariant to constants added on log scale.
Eigen::VectorXd scaling_field(const LocationSurface& surface);

// Site value tax: scaling * site size (acres) * baseline (euro/acre).
double site_tax(double scaling, double site_acres, double baseline_eur_per_acre);
// Per-apartment share of the site tax.
double apartment_site_tax(double scaling, double site_acres, double baseline_eur_per_acre,
                          long long n_apartments);

// CSV export (x_km,y_km,lat,lon,log_value,location_value,scaling) plus a
// JSON header with the lattice geometry.
std::string surface_csv(const LocationSurface& surface, const Eigen::VectorXd& scalings,
                        const geo::GeoPoint& origin);
std::string surface_meta_json(const LocationSurface& surface);

// Nearest-cell scaling lookup for a lat/lon query against an exported grid.
double nearest_scaling(const LocationSurface& surface, const Eigen::VectorXd& scalings,
                       const PlanarCoord& p);

}  // namespace hedonic::svt
