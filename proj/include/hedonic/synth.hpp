#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hedonic/geo.hpp"
#include "hedonic/types.hpp"

namespace hedonic::synth {

// Study region of the synthetic county. Chosen so the local planar
// projection holds its 0.5% accuracy everywhere inside.
inline constexpr double kRegionLatMin = 53.295;
inline constexpr double kRegionLatMax = 53.452;
inline constexpr double kRegionLonMin = -6.44;
inline constexpr double kRegionLonMax = -6.06;

// Simplified convex (hexagonal) postcode region with its property-type mix.
struct PostcodeRegion {
  std::string label;
  std::string neighbourhood;
  geo::GeoPoint center;
  double radius_km = 1.0;
  std::array<int, kNumPropertyTypes> type_counts{};  // sampling weights

  int total() const {
    int t = 0;
    for (int c : type_counts) t += c;
    return t;
  }
};

const std::vector<PostcodeRegion>& default_regions();

// One planned mislabelling: records truly in `corrected` advertised as
// `given`, with a price premium planted on top of the location truth.
struct ChangePlan {
  std::string given;
  std::string corrected;
  int occurrences = 0;  // at the default corpus size; scaled proportionally
  double log_premium = 0.0;
};

const std::vector<ChangePlan>& default_change_plan();

// True generating coefficients on the log price-per-m2 scale. Categorical
// tables are centered within each variable so the sum-to-zero estimands are
// directly comparable.
struct TruthTables {
  double intercept = 0.0;
  std::array<double, kNumPropertyTypes> type_log{};
  std::array<double, kNumBerRatings> ber_log{};
  std::map<std::string, double> postcode_log;
  std::array<double, kNumMinedFlags> binary_log{};
};

struct GeneratorConfig {
  std::uint64_t seed = 20180101;
  int n_records = 5208;   // valid records surviving the cleaning rules
  int n_undersize = 77;   // planted floor-area violations (removed by clean)
  double noise_sigma = 0.12;

  // spatial surface truth (kernel expansion over maximin anchors)
  bool plant_gp = true;
  double gp_rho_km = 6.0;
  double gp_sigma = 0.45;
  int gp_anchors = 80;

  bool plant_smooths = true;  // beds/baths/size shape effects
  bool plant_mislabels = true;

  // marginal phrase-planting frequencies per mined flag; floor-apartment
  // flags are rescaled to conditional-on-apartment draws
  std::array<double, kNumMinedFlags> plant_prob{};

  TruthTables tables;

  static GeneratorConfig defaults();
  void validate() const;  // throws on inconsistent frequencies
  bool operator==(const GeneratorConfig&) const = default;
};

// True smooth shapes used by the generator.
double true_beds_effect(double beds);
double true_baths_effect(double baths);
double true_size_effect(double size);

// Spatial truth: f(s) = sum_j w_j (1 + r_j/rho) exp(-r_j/rho).
struct GpTruth {
  Eigen::MatrixXd anchors;  // m x 2 planar km (origin at the IFSC)
  Eigen::VectorXd weights;
  double rho_km = 0.0;

  double value(double x_km, double y_km) const;
};

struct RecordTruth {
  std::int64_t id = 0;
  std::string true_postcode;
  std::string given_postcode;
  std::string change;  // "given.corrected" or empty
  bool undersize = false;
  MinedFeatures planted;  // interactions included
  double type_effect = 0.0;
  double ber_effect = 0.0;
  double postcode_effect = 0.0;
  double change_effect = 0.0;
  double binary_effect = 0.0;
  double f_beds = 0.0, f_baths = 0.0, f_size = 0.0;
  double gp_value = 0.0;
  double noise = 0.0;
  double noiseless_log_ppm2 = 0.0;
};

struct GroundTruth {
  GeneratorConfig config;
  GpTruth gp;
  std::vector<RecordTruth> records;
};

struct SynthResult {
  std::vector<RawListing> listings;
  GroundTruth truth;
};

// Deterministic generation: identical config -> identical output.
SynthResult generate(const GeneratorConfig& config);

std::string ground_truth_json(const GroundTruth& truth);

// filler sentences used to pad descriptions; none may trigger a flag
const std::vector<std::string>& filler_sentences();

}  // namespace hedonic::synth
