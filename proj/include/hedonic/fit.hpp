#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hedonic/smooth.hpp"
#include "hedonic/types.hpp"

namespace hedonic::fit {

enum class PostcodeMode : int { given = 0, corrected, corrected_with_changes };
std::string to_string(PostcodeMode m);
PostcodeMode postcode_mode_from_string(const std::string& s);

struct SplineTermSpec {
  std::string covariate;
  int knots = 5;
};

// Which terms enter a model. The named registry below resolves the
// published model variants; postcode_mode selects the postcode source and,
// for the corrected variants, the matching term sets.
struct ModelSpec {
  std::string name;
  PostcodeMode postcode_mode = PostcodeMode::given;
  std::vector<std::string> binary_terms;   // mined flags and distance indicators
  std::vector<std::string> linear_terms;   // continuous covariates entering linearly
  std::vector<SplineTermSpec> spline_terms;
  std::vector<std::string> categorical_terms;
  bool spatial = false;
  int spatial_knots = 100;
  double spatial_rho_km = 0.0;  // 0 = max pairwise knot distance
  std::uint64_t knot_seed = 1;
};

// BasicLinear, Linear, GAM1..GAM6.
const std::vector<std::string>& model_names();
ModelSpec make_model_spec(const std::string& name, PostcodeMode mode);

// value of a continuous/binary covariate for design assembly
double covariate_value(const PropertyRecord& rec, const std::string& name);
// level string of a categorical term under the given postcode mode
std::string categorical_level(const PropertyRecord& rec, const std::string& term,
                              PostcodeMode mode);
// canonical labels for the 15 investigated postcode changes, "given.corrected"
const std::vector<std::string>& postcode_change_labels();

struct UnseenLevelError : std::runtime_error {
  UnseenLevelError(const std::string& term, const std::string& level)
      : std::runtime_error("unseen level '" + level + "' for term '" + term + "'"),
        term_name(term),
        level_name(level) {}
  std::string term_name;
  std::string level_name;
};

// ---------------------------------------------------------------------------
// Design matrix
// ---------------------------------------------------------------------------

struct PenaltyBlock {
  std::string term;
  int col0 = 0;
  Eigen::MatrixXd s;
};

struct CatTermLayout {
  std::string name;
  smooth::SumToZero enc;
  std::vector<std::string> dropped_levels;
  int col0 = 0;
};

struct SplineTermLayout {
  std::string covariate;
  smooth::CrSpline spline;
  Eigen::RowVectorXd centers;
  int col0 = 0;
};

struct SpatialTermLayout {
  smooth::GpSmooth gp;
  Eigen::RowVectorXd centers;
  int col0 = 0;
};

// Frozen feature mapping: everything needed to rebuild a design row for a
// new record exactly as at fit time.
struct DesignLayout {
  PostcodeMode postcode_mode = PostcodeMode::given;
  std::vector<std::string> binary_cols;  // retained, in spec order
  std::vector<std::string> linear_cols;
  std::vector<CatTermLayout> cats;
  std::vector<SplineTermLayout> splines;
  std::optional<SpatialTermLayout> spatial;
  int ncols = 0;

  // throws UnseenLevelError when a categorical level was not in training
  Eigen::RowVectorXd row(const PropertyRecord& rec) const;
};

struct Design {
  DesignLayout layout;
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  std::vector<PenaltyBlock> penalties;
  std::vector<std::string> warnings;
};

// Columns ordered: intercept, binaries, linear, categorical contrasts,
// spline bases, spatial basis; smooth bases are column-centered.
Design build_design(std::span<const PropertyRecord> records, const ModelSpec& spec);

// ---------------------------------------------------------------------------
// Penalized least squares + GCV
// ---------------------------------------------------------------------------

struct PenalizedFit {
  Eigen::VectorXd beta;
  Eigen::MatrixXd m_inv;  // (X'X + sum_j lambda_j S_j)^-1
  double rss = 0.0;
  double tr_influence = 0.0;
  double sigma2 = 0.0;
  double gcv = 0.0;
  Eigen::VectorXd edf_diag;  // diag of M^-1 X'X
};

PenalizedFit fit_at_lambda(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                           const std::vector<PenaltyBlock>& penalties,
                           const std::vector<double>& lambda);

struct FittedModel {
  ModelSpec spec;
  DesignLayout layout;
  Eigen::VectorXd beta;
  Eigen::MatrixXd covariance;  // sigma2 * M^-1
  double sigma2 = 0.0;
  double gcv = 0.0;
  bool gcv_converged = true;
  std::vector<std::string> penalty_terms;
  std::vector<double> lambda;  // aligned with penalty_terms
  std::vector<double> edf;     // per penalized term
  double edf_total = 0.0;
  long long n_train = 0;
  std::array<double, 4> train_bbox{};  // planar x0,x1,y0,y1 of training coords
  std::vector<std::string> warnings;
};

// Smoothing parameters by GCV: coordinate-wise golden-section search over
// log10(lambda) in [-8, 8], cycled until the score moves by < 1e-7
// relative or 50 cycles. Requires n >= 10.
FittedModel fit_penalized(const Design& design, const ModelSpec& spec);
FittedModel fit_model(std::span<const PropertyRecord> records, const ModelSpec& spec);

// Objective J(b) = |y - Xb|^2 + sum_j lambda_j b' S_j b and its analytic
// gradient, for optimality checks.
double penalized_objective(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                           const std::vector<PenaltyBlock>& penalties,
                           const std::vector<double>& lambda, const Eigen::VectorXd& beta);
Eigen::VectorXd penalized_gradient(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                   const std::vector<PenaltyBlock>& penalties,
                                   const std::vector<double>& lambda,
                                   const Eigen::VectorXd& beta);

// ---------------------------------------------------------------------------
// Prediction
// ---------------------------------------------------------------------------

struct Prediction {
  double log_point = 0.0;
  double se = 0.0;  // includes sigma2
  double log_lo50 = 0.0, log_hi50 = 0.0;
  double log_lo95 = 0.0, log_hi95 = 0.0;
  double price_point = 0.0;
  double price_lo50 = 0.0, price_hi50 = 0.0;
  double price_lo95 = 0.0, price_hi95 = 0.0;
};

Prediction predict(const FittedModel& model, const PropertyRecord& rec);

// ---------------------------------------------------------------------------
// Interpretable outputs
// ---------------------------------------------------------------------------

struct Scaling {
  std::string group;  // categorical term name or "binary"
  std::string name;   // level or flag name
  double coefficient = 0.0;
  double se = 0.0;
  double scaling = 1.0;  // exp(coefficient)
  double lo = 1.0, hi = 1.0;  // exp(coefficient -/+ 1.96 se)
};

std::vector<Scaling> coefficient_scalings(const FittedModel& model);

// Premium of scaling a over scaling b, in percent: 100 * (1 - b/a).
double premium_percent(double scaling_a, double scaling_b);

// Fitted 1-D smooth contribution with pointwise standard errors.
struct CurveBand {
  Eigen::VectorXd fit;
  Eigen::VectorXd se;
};
CurveBand smooth_band(const FittedModel& model, const std::string& covariate,
                      const Eigen::VectorXd& xs);

// Centered spatial contribution at a planar coordinate, with its se.
struct SpatialValue {
  double fit = 0.0;
  double se = 0.0;
};
SpatialValue spatial_value(const FittedModel& model, double x_km, double y_km);

// ---------------------------------------------------------------------------
// Persistence (versioned JSON, bit-exact round trip)
// ---------------------------------------------------------------------------

std::string model_to_json(const FittedModel& model);
FittedModel model_from_json(const std::string& text);
void save_model(const std::string& path, const FittedModel& model);
FittedModel load_model(const std::string& path);

inline constexpr double kZ50 = 0.6744897501960817;   // 75th normal percentile
inline constexpr double kZ95 = 1.959963984540054;    // 97.5th normal percentile

}  // namespace hedonic::fit
