#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hedonic/fit.hpp"
#include "hedonic/types.hpp"

namespace hedonic::eval {

// Metric suite on euro prices. Fractions are in [0, 1]; callers that print
// tables convert to percent.
struct Metrics {
  double r2 = 0.0;
  double rmse = 0.0;   // euro
  double mdape = 0.0;  // fraction
  double within5 = 0.0;
  double within10 = 0.0;
  double within20 = 0.0;
  double coverage50 = 0.0;
  double coverage95 = 0.0;
};

// R2 = 1 - RSS/TSS, RMSE, median |a-p|/a, within-X shares and interval
// coverage (inclusive endpoints). Interval spans may be empty, in which
// case coverages are 0. Throws on length mismatch or a zero actual price.
Metrics compute_metrics(std::span<const double> actual, std::span<const double> predicted,
                        std::span<const double> lo50 = {}, std::span<const double> hi50 = {},
                        std::span<const double> lo95 = {}, std::span<const double> hi95 = {});

// ---------------------------------------------------------------------------
// Spatial autocorrelation
// ---------------------------------------------------------------------------

struct SpatialWeights {
  // per record: (neighbour index, weight) pairs, zero self-weight
  std::vector<std::vector<std::pair<int, double>>> rows;
  bool row_standardized = false;
};

// Binary k-nearest-neighbour weights on planar coordinates, row-standardized.
SpatialWeights knn_weights(const std::vector<PlanarCoord>& coords, int k = 10);

// Moran's I = (n/S0) sum_ij w_ij (e_i - m)(e_j - m) / sum_i (e_i - m)^2.
// Throws for n < 3 or zero residual variance.
double morans_i(const Eigen::VectorXd& residuals, const SpatialWeights& weights);

// ---------------------------------------------------------------------------
// Cross-validation harness
// ---------------------------------------------------------------------------

struct PredRow {
  std::int64_t id = 0;
  int fold = 0;
  double actual_price = 0.0;
  double pred_price = 0.0;
  double lo50 = 0.0, hi50 = 0.0, lo95 = 0.0, hi95 = 0.0;
  double log_residual = 0.0;  // observed - predicted log price per m2
};

struct Excluded {
  std::int64_t id = 0;
  int fold = 0;
  std::string reason;
};

struct EvalReport {
  std::string model;
  Metrics metrics;
  double morans_i = 0.0;
  long long n_scored = 0;
  long long n_excluded = 0;
  std::vector<PredRow> rows;       // in record order
  std::vector<Excluded> excluded;  // unseen levels etc., never imputed
};

// Deterministic seeded 5-fold CV: every record is predicted exactly once by
// a model not trained on its fold; metrics are computed on euro prices.
EvalReport kfold_cv(std::span<const PropertyRecord> records, const fit::ModelSpec& spec,
                    int folds, std::uint64_t seed, int jobs = 1);

// Seeded fold assignment (sizes differ by at most one).
std::vector<int> fold_assignment(std::size_t n, int folds, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Price-band accuracy table
// ---------------------------------------------------------------------------

struct BandRow {
  std::string label;
  long long count = 0;
  bool defined = false;  // false for empty bands: metric fields are meaningless
  double mdape = 0.0;
  double within5 = 0.0;
  double within10 = 0.0;
  double within20 = 0.0;
  double cumulative_mdape = 0.0;
  bool cumulative_defined = false;
};

// Fixed euro band edges; prices above the top band fall into a trailing
// overflow row (emitted only when occupied) so the final cumulative MdAPE
// equals the overall MdAPE.
const std::vector<std::string>& band_labels();
std::vector<BandRow> band_table(std::span<const double> actual,
                                std::span<const double> predicted);

// ---------------------------------------------------------------------------
// Spatial-knot sweep
// ---------------------------------------------------------------------------

struct SweepRow {
  int k = 0;
  double r2 = 0.0;
  double rmse = 0.0;
  double coverage95 = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  int elbow_k = 0;  // smallest k with R2 within 0.005 of the max-k R2
  std::vector<std::string> warnings;
};

SweepResult knot_sweep(std::span<const PropertyRecord> records, const fit::ModelSpec& spec,
                       const std::vector<int>& k_values, int folds, std::uint64_t seed,
                       int jobs = 1);

}  // namespace hedonic::eval
