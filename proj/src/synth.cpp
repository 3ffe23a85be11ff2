#include "hedonic/synth.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "hedonic/rng.hpp"
#include "hedonic/smooth.hpp"
#include "hedonic/textmine.hpp"
#include "json.hpp"

namespace hedonic::synth {

namespace {

constexpr double kKmPerDegLat = 6371.0 * 3.14159265358979323846 / 180.0;
constexpr double kDefaultCorpus = 5208.0;
constexpr double kApartmentShare = 1250.0 / 5208.0;

struct TypeRow {
  const char* label;
  const char* neighbourhood;
  double lat, lon, radius_km;
  std::array<int, kNumPropertyTypes> counts;  // ap, det, dup, eot, semi, terr, town
};

const TypeRow kRegionTable[] = {
    {"D1", "North City", 53.352, -6.255, 1.0, {51, 0, 1, 2, 0, 7, 0}},
    {"D2", "South City", 53.338, -6.252, 1.0, {45, 0, 0, 1, 1, 5, 2}},
    {"D3", "Clontarf", 53.362, -6.210, 1.3, {27, 9, 0, 21, 33, 62, 0}},
    {"D4", "Ballsbridge", 53.326, -6.222, 1.6, {72, 22, 3, 20, 38, 73, 8}},
    {"D5", "Raheny", 53.383, -6.175, 1.5, {10, 12, 3, 26, 82, 59, 0}},
    {"D6", "Ranelagh", 53.317, -6.258, 1.3, {39, 15, 3, 19, 36, 60, 5}},
    {"D6W", "Terenure", 53.310, -6.292, 1.3, {17, 11, 1, 10, 57, 22, 0}},
    {"D7", "Phibsborough", 53.357, -6.288, 1.4, {38, 7, 4, 32, 23, 107, 0}},
    {"D8", "Portobello", 53.337, -6.288, 1.4, {117, 1, 5, 26, 7, 112, 4}},
    {"D9", "Drumcondra", 53.376, -6.248, 1.5, {53, 9, 3, 23, 101, 59, 2}},
    {"D10", "Ballyfermot", 53.342, -6.352, 1.0, {5, 2, 0, 9, 0, 14, 0}},
    {"D11", "Finglas", 53.388, -6.292, 1.5, {28, 4, 2, 15, 35, 39, 2}},
    {"D12", "Crumlin", 53.322, -6.312, 1.3, {7, 10, 0, 45, 35, 86, 0}},
    {"D13", "Sutton", 53.394, -6.148, 1.6, {24, 15, 6, 15, 45, 30, 0}},
    {"D14", "Dundrum", 53.308, -6.250, 1.2, {26, 25, 1, 12, 93, 39, 4}},
    {"D15", "Blanchardstown", 53.386, -6.392, 1.8, {74, 46, 22, 20, 117, 32, 2}},
    {"D16", "Ballinteer", 53.306, -6.278, 1.2, {32, 19, 1, 6, 115, 7, 2}},
    {"D17", "Coolock", 53.398, -6.182, 1.2, {13, 3, 1, 2, 8, 4, 0}},
    {"D18", "Sandyford", 53.306, -6.185, 1.3, {76, 60, 4, 9, 59, 14, 4}},
    {"D20", "Palmerstown", 53.348, -6.326, 0.9, {5, 1, 1, 1, 8, 8, 0}},
    {"D22", "Clondalkin", 53.328, -6.395, 1.4, {14, 7, 2, 7, 30, 18, 0}},
    {"D24", "Tallaght", 53.312, -6.348, 1.5, {34, 7, 4, 17, 37, 28, 2}},
    {"NCD", "Swords", 53.425, -6.195, 2.6, {145, 107, 34, 63, 176, 129, 7}},
    {"SCD", "Dun Laoghaire", 53.307, -6.148, 1.3, {209, 140, 21, 42, 267, 128, 8}},
    {"WCD", "Lucan", 53.346, -6.418, 1.2, {58, 21, 12, 18, 132, 36, 5}},
    {"Dublin County", "Ashbourne Road", 53.432, -6.340, 1.6, {31, 14, 5, 5, 8, 8, 0}},
};

// median size (m2) by property type for the lognormal size draw
constexpr std::array<double, kNumPropertyTypes> kMedianSize = {70.0,  165.0, 95.0, 105.0,
                                                               112.0, 100.0, 92.0};

double ln(double v) { return std::log(v); }

template <std::size_t N>
void center(std::array<double, N>& a) {
  double mean = 0.0;
  for (double v : a) mean += v;
  mean /= static_cast<double>(N);
  for (double& v : a) v -= mean;
}

}  // namespace

const std::vector<PostcodeRegion>& default_regions() {
  static const std::vector<PostcodeRegion> regions = [] {
    std::vector<PostcodeRegion> out;
    for (const auto& row : kRegionTable) {
      out.push_back({row.label, row.neighbourhood, {row.lat, row.lon}, row.radius_km, row.counts});
    }
    return out;
  }();
  return regions;
}

const std::vector<ChangePlan>& default_change_plan() {
  static const std::vector<ChangePlan> plan = {
      {"D5", "D13", 3, ln(1.05)},   {"D6", "D6W", 12, ln(1.06)},
      {"D6W", "D12", 3, ln(1.04)},  {"D9", "D3", 3, ln(1.03)},
      {"D9", "D17", 10, ln(1.08)},  {"D11", "D9", 7, ln(0.96)},
      {"D14", "D16", 19, ln(1.05)}, {"D16", "D14", 5, ln(0.97)},
      {"NCD", "D15", 9, ln(1.04)},  {"SCD", "D4", 27, ln(1.07)},
      {"SCD", "D18", 101, ln(1.05)}, {"SCD", "D24", 32, ln(1.06)},
      {"WCD", "D15", 38, ln(1.03)}, {"WCD", "D22", 24, ln(1.05)},
      {"WCD", "D24", 45, ln(1.04)},
  };
  return plan;
}

GeneratorConfig GeneratorConfig::defaults() {
  GeneratorConfig cfg;

  cfg.tables.intercept = ln(4405.0);

  cfg.tables.type_log = {ln(0.91), ln(1.16), ln(0.88), ln(1.01), ln(1.11), ln(1.00), ln(0.96)};
  center(cfg.tables.type_log);

  cfg.tables.ber_log = {ln(1.08), ln(1.04), ln(1.00), ln(0.99),
                        ln(0.99), ln(0.98), ln(0.94), ln(0.98)};
  center(cfg.tables.ber_log);

  const std::vector<std::pair<std::string, double>> postcode_scalings = {
      {"D1", 1.09},  {"D2", 1.18},  {"D3", 1.04},  {"D4", 0.96},  {"D5", 0.99},
      {"D6", 1.02},  {"D6W", 1.00}, {"D7", 1.17},  {"D8", 1.10},  {"D9", 1.13},
      {"D10", 0.85}, {"D11", 1.03}, {"D12", 0.95}, {"D13", 1.01}, {"D14", 0.95},
      {"D15", 1.15}, {"D16", 1.00}, {"D17", 1.04}, {"D18", 0.95}, {"D20", 1.01},
      {"D22", 0.83}, {"D24", 0.86}, {"NCD", 1.01}, {"SCD", 0.88}, {"WCD", 0.94},
      {"Dublin County", 0.97},
  };
  double mean = 0.0;
  for (const auto& [label, v] : postcode_scalings) mean += ln(v);
  mean /= static_cast<double>(postcode_scalings.size());
  for (const auto& [label, v] : postcode_scalings) cfg.tables.postcode_log[label] = ln(v) - mean;

  auto bset = [&cfg](MinedFlag f, double scaling) {
    cfg.tables.binary_log[static_cast<int>(f)] = ln(scaling);
  };
  bset(MinedFlag::south_facing, 1.02);
  bset(MinedFlag::attic_conversion, 1.00);
  bset(MinedFlag::parking, 1.00);
  bset(MinedFlag::development_potential, 1.04);
  bset(MinedFlag::open_plan, 1.01);
  bset(MinedFlag::fireplace, 1.03);
  bset(MinedFlag::hot_press, 1.01);
  bset(MinedFlag::garage, 1.07);
  bset(MinedFlag::ground_floor_apartment, 0.97);
  bset(MinedFlag::first_floor_apartment, 0.98);
  bset(MinedFlag::second_floor_apartment, 0.98);
  bset(MinedFlag::penthouse_apartment, 1.14);
  bset(MinedFlag::refurbished, 1.04);
  bset(MinedFlag::car_space_cc, 1.04);
  // central_heating, immersion, large_garden, cul_de_sac, garden and
  // garden_cc carry no effect: mined but outside the generating model

  auto pset = [&cfg](MinedFlag f, double count) {
    cfg.plant_prob[static_cast<int>(f)] = count / kDefaultCorpus;
  };
  pset(MinedFlag::south_facing, 871);
  pset(MinedFlag::attic_conversion, 190);
  pset(MinedFlag::parking, 3782);
  pset(MinedFlag::development_potential, 492);
  pset(MinedFlag::open_plan, 1512);
  pset(MinedFlag::fireplace, 2403);
  pset(MinedFlag::central_heating, 2596);
  pset(MinedFlag::immersion, 196);
  pset(MinedFlag::hot_press, 993);
  pset(MinedFlag::garage, 770);
  pset(MinedFlag::large_garden, 155);
  pset(MinedFlag::ground_floor_apartment, 201);
  pset(MinedFlag::first_floor_apartment, 119);
  pset(MinedFlag::second_floor_apartment, 66);
  pset(MinedFlag::penthouse_apartment, 39);
  pset(MinedFlag::refurbished, 1219);
  pset(MinedFlag::cul_de_sac, 1006);
  pset(MinedFlag::garden, 2350);

  return cfg;
}

void GeneratorConfig::validate() const {
  if (n_records < 1) throw std::invalid_argument("synth: n_records must be >= 1");
  if (n_undersize < 0) throw std::invalid_argument("synth: n_undersize must be >= 0");
  if (noise_sigma < 0.0) throw std::invalid_argument("synth: noise_sigma must be >= 0");
  if (plant_gp && (!(gp_rho_km > 0.0) || gp_anchors < 1 || gp_sigma < 0.0)) {
    throw std::invalid_argument("synth: bad spatial truth parameters");
  }
  for (int i = 0; i < kNumMinedFlags; ++i) {
    if (plant_prob[i] < 0.0 || plant_prob[i] > 1.0) {
      throw std::invalid_argument("synth: plant frequency for '" + mined_flag_names()[i] +
                                  "' outside [0, 1]");
    }
  }
  // floor flags are drawn jointly for apartments; their conditional masses
  // must leave room for the no-flag outcome
  const double floor_sum =
      (plant_prob[static_cast<int>(MinedFlag::ground_floor_apartment)] +
       plant_prob[static_cast<int>(MinedFlag::first_floor_apartment)] +
       plant_prob[static_cast<int>(MinedFlag::second_floor_apartment)] +
       plant_prob[static_cast<int>(MinedFlag::penthouse_apartment)]) /
      kApartmentShare;
  if (floor_sum > 1.0) {
    throw std::invalid_argument("synth: floor-apartment frequencies exceed the apartment share");
  }
}

double true_beds_effect(double beds) {
  return 0.06 * (1.0 - std::exp(-(beds - 1.0) / 1.8));
}

double true_baths_effect(double baths) {
  const double rise = 0.045 * (1.0 - std::exp(-(baths - 1.0) / 1.2));
  const double decline = baths > 2.0 ? 0.008 * (baths - 2.0) * (baths - 2.0) : 0.0;
  return rise - decline;
}

double true_size_effect(double size) {
  const double bump = std::exp(-((size - 300.0) / 45.0) * ((size - 300.0) / 45.0));
  return 0.22 * std::exp(-(size - 37.0) / 75.0) + 0.035 * bump - 0.10;
}

double GpTruth::value(double x_km, double y_km) const {
  double v = 0.0;
  for (Eigen::Index j = 0; j < anchors.rows(); ++j) {
    const double dx = x_km - anchors(j, 0);
    const double dy = y_km - anchors(j, 1);
    const double r = std::sqrt(dx * dx + dy * dy) / rho_km;
    v += weights[j] * (1.0 + r) * std::exp(-r);
  }
  return v;
}

namespace {

geo::GeoPoint sample_in_hexagon(Rng& rng, const PostcodeRegion& region) {
  // flat-top hexagon with circumradius radius_km, planar km offsets
  const double r = region.radius_km;
  const double root3 = std::sqrt(3.0);
  double dx = 0.0, dy = 0.0;
  for (;;) {
    dx = rng.uniform(-r, r);
    dy = rng.uniform(-root3 / 2.0 * r, root3 / 2.0 * r);
    if (root3 * std::abs(dx) + std::abs(dy) <= root3 * r) break;
  }
  geo::GeoPoint p;
  p.lat = region.center.lat + dy / kKmPerDegLat;
  p.lon = region.center.lon +
          dx / (kKmPerDegLat * std::cos(region.center.lat * 3.14159265358979323846 / 180.0));
  return p;
}

std::string style_phrase(Rng& rng, const std::string& phrase) {
  switch (rng.uniform_int(0, 2)) {
    case 0:
      return phrase;
    case 1: {
      std::string upper = phrase;
      for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      return upper;
    }
    default: {
      std::string title = phrase;
      bool start = true;
      for (char& c : title) {
        if (start && std::isalpha(static_cast<unsigned char>(c))) {
          c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        }
        start = c == ' ' || c == '-';
      }
      return title;
    }
  }
}

}  // namespace

const std::vector<std::string>& filler_sentences() {
  static const std::vector<std::string> fillers = {
      "bright and spacious accommodation",
      "close to local amenities",
      "viewing highly recommended",
      "excellent transport links nearby",
      "well presented throughout",
      "generous living space",
      "quiet residential setting",
      "ideal starter home",
      "sought after location",
      "built in wardrobes",
      "double glazed windows",
      "modern kitchen and bathroom",
      "gas heating system",
      "close to schools and shops",
  };
  return fillers;
}

SynthResult generate(const GeneratorConfig& config) {
  config.validate();
  const auto& regions = default_regions();
  const auto& lexicon = textmine::PhraseLexicon::bundled_default();
  const auto& landmarks = geo::LandmarkSet::dublin_default();
  const geo::GeoPoint origin = landmarks.ifsc();

  Rng rng(config.seed);
  const int total = config.n_records + config.n_undersize;

  SynthResult result;
  result.truth.config = config;
  result.listings.reserve(total);
  result.truth.records.reserve(total);

  // --- spatial truth: anchors by maximin over a region-weighted sample ---
  if (config.plant_gp) {
    std::vector<double> region_weights;
    for (const auto& r : regions) region_weights.push_back(r.total());
    const int n_candidates = std::max(3 * config.gp_anchors, 60);
    Eigen::MatrixXd candidates(n_candidates, 2);
    for (int i = 0; i < n_candidates; ++i) {
      const auto& region = regions[rng.categorical(region_weights)];
      const geo::GeoPoint p = sample_in_hexagon(rng, region);
      const PlanarCoord c = geo::project(p, origin);
      candidates(i, 0) = c.x_km;
      candidates(i, 1) = c.y_km;
    }
    GpTruth& gp = result.truth.gp;
    gp.rho_km = config.gp_rho_km;
    gp.anchors = smooth::maximin_knots(candidates, config.gp_anchors, rng.next_u64());
    const auto m = gp.anchors.rows();
    Eigen::MatrixXd gram(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j <= i; ++j) {
        const double dx = gp.anchors(i, 0) - gp.anchors(j, 0);
        const double dy = gp.anchors(i, 1) - gp.anchors(j, 1);
        const double r = std::sqrt(dx * dx + dy * dy) / gp.rho_km;
        gram(i, j) = gram(j, i) = (1.0 + r) * std::exp(-r);
      }
    }
    gram.diagonal().array() += 1e-8;
    Eigen::VectorXd z(m);
    for (Eigen::Index i = 0; i < m; ++i) z[i] = rng.normal();
    const Eigen::LLT<Eigen::MatrixXd> llt(gram);
    Eigen::VectorXd field_at_anchors = llt.matrixL() * z;
    field_at_anchors *= config.gp_sigma;
    gp.weights = llt.solve(field_at_anchors);
  } else {
    result.truth.gp.rho_km = config.gp_rho_km;
    result.truth.gp.anchors.resize(0, 2);
    result.truth.gp.weights.resize(0);
  }

  // --- undersize plan: which raw rows violate the floor-area rule ---
  std::vector<int> indices(total);
  std::iota(indices.begin(), indices.end(), 0);
  rng.shuffle(indices);
  std::vector<char> undersize(total, 0);
  for (int i = 0; i < config.n_undersize; ++i) undersize[indices[i]] = 1;

  // --- per-record draws ---
  std::vector<double> region_weights;
  for (const auto& r : regions) region_weights.push_back(r.total());
  const std::array<double, kNumBerRatings> ber_weights = {0.05, 0.11, 0.20, 0.22,
                                                          0.16, 0.10, 0.07, 0.09};

  const int flag_ground = static_cast<int>(MinedFlag::ground_floor_apartment);
  const int flag_first = static_cast<int>(MinedFlag::first_floor_apartment);
  const int flag_second = static_cast<int>(MinedFlag::second_floor_apartment);
  const int flag_penthouse = static_cast<int>(MinedFlag::penthouse_apartment);

  for (int i = 0; i < total; ++i) {
    const auto& region = regions[rng.categorical(region_weights)];
    std::vector<double> type_weights(region.type_counts.begin(), region.type_counts.end());
    const auto type = static_cast<PropertyType>(rng.categorical(type_weights));

    const geo::GeoPoint pos = sample_in_hexagon(rng, region);
    const PlanarCoord xy = geo::project(pos, origin);

    double size = 0.0;
    if (undersize[i]) {
      size = std::round(rng.uniform(15.0, 36.9) * 10.0) / 10.0;
    } else {
      do {
        size = kMedianSize[static_cast<int>(type)] * std::exp(0.33 * rng.normal());
      } while (size < 37.5);
      size = std::round(size * 10.0) / 10.0;
    }

    const int beds = static_cast<int>(
        std::clamp(std::lround(0.8 + size / 55.0 + 0.8 * rng.normal()), 1L, 8L));
    const int baths = static_cast<int>(
        std::clamp(std::lround(0.6 + 0.45 * beds + 0.6 * rng.normal()), 1L, 6L));

    const BerRating ber = size < 50.0
                              ? BerRating::exempt
                              : static_cast<BerRating>(rng.categorical(
                                    {ber_weights.begin(), ber_weights.end()}));

    // phrase planting
    std::vector<std::string> fragments;
    const int n_fillers = static_cast<int>(rng.uniform_int(2, 4));
    for (int f = 0; f < n_fillers; ++f) {
      fragments.push_back(
          filler_sentences()[static_cast<std::size_t>(rng.uniform_int(
              0, static_cast<std::int64_t>(filler_sentences().size()) - 1))]);
    }
    auto plant = [&](int flag) {
      const auto& phrases = lexicon.phrases[flag];
      const auto& phrase =
          phrases[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(phrases.size()) - 1))];
      fragments.push_back(style_phrase(rng, phrase));
    };
    for (int flag = 0; flag < kNumMinedFlags; ++flag) {
      if (flag == static_cast<int>(MinedFlag::garden_cc) ||
          flag == static_cast<int>(MinedFlag::car_space_cc)) {
        continue;  // interactions are geographic, never planted
      }
      if (flag == flag_ground || flag == flag_first || flag == flag_second ||
          flag == flag_penthouse) {
        continue;  // drawn jointly below
      }
      if (rng.uniform() < config.plant_prob[flag]) plant(flag);
    }
    if (type == PropertyType::apartment) {
      const double pg = config.plant_prob[flag_ground] / kApartmentShare;
      const double p1 = config.plant_prob[flag_first] / kApartmentShare;
      const double p2 = config.plant_prob[flag_second] / kApartmentShare;
      const double pp = config.plant_prob[flag_penthouse] / kApartmentShare;
      const std::size_t which = rng.categorical({1.0 - pg - p1 - p2 - pp, pg, p1, p2, pp});
      if (which == 1) plant(flag_ground);
      if (which == 2) plant(flag_first);
      if (which == 3) plant(flag_second);
      if (which == 4) plant(flag_penthouse);
    }
    rng.shuffle(fragments);
    std::string description;
    for (std::size_t f = 0; f < fragments.size(); ++f) {
      if (f) description += ", ";
      description += fragments[f];
    }
    description += ".";
    if (!description.empty()) {
      description[0] =
          static_cast<char>(std::toupper(static_cast<unsigned char>(description[0])));
    }

    // planted flags: what a faithful miner finds in the fragments
    MinedFeatures planted;
    for (int flag = 0; flag < kNumMinedFlags; ++flag) {
      for (const auto& trigger : lexicon.phrases[flag]) {
        bool hit = false;
        for (const auto& frag : fragments) {
          if (textmine::contains_ci(frag, trigger)) {
            hit = true;
            break;
          }
        }
        if (hit) {
          planted.bits[flag] = 1;
          break;
        }
      }
    }
    const DistanceFeatures dist = geo::distance_features(pos, landmarks);
    planted = textmine::apply_interactions(planted, dist.within_city_centre);

    RecordTruth truth;
    truth.id = i;
    truth.undersize = undersize[i] != 0;
    truth.true_postcode = region.label;
    truth.given_postcode = region.label;
    truth.planted = planted;
    truth.type_effect = config.tables.type_log[static_cast<int>(type)];
    truth.ber_effect = config.tables.ber_log[static_cast<int>(ber)];
    const auto pit = config.tables.postcode_log.find(region.label);
    truth.postcode_effect = pit != config.tables.postcode_log.end() ? pit->second : 0.0;
    for (int flag = 0; flag < kNumMinedFlags; ++flag) {
      if (planted.bits[flag]) truth.binary_effect += config.tables.binary_log[flag];
    }
    if (config.plant_smooths) {
      truth.f_beds = true_beds_effect(beds);
      truth.f_baths = true_baths_effect(baths);
      truth.f_size = true_size_effect(size);
    }
    if (config.plant_gp) truth.gp_value = result.truth.gp.value(xy.x_km, xy.y_km);
    truth.noise = config.noise_sigma > 0.0 ? config.noise_sigma * rng.normal() : 0.0;
    truth.noiseless_log_ppm2 = config.tables.intercept + truth.type_effect + truth.ber_effect +
                               truth.postcode_effect + truth.binary_effect + truth.f_beds +
                               truth.f_baths + truth.f_size + truth.gp_value;

    RawListing listing;
    listing.latitude = pos.lat;
    listing.longitude = pos.lon;
    listing.neighbourhood = region.neighbourhood;
    listing.baths = baths;
    listing.beds = beds;
    listing.ber = ber;
    listing.description = description;
    listing.size_m2 = size;
    listing.type = type;
    listing.postcode = region.label;
    listing.postcode_corrected = region.label;
    {
      const int month = static_cast<int>(rng.uniform_int(1, 11));
      const int day = static_cast<int>(rng.uniform_int(1, 28));
      char buf[16];
      std::snprintf(buf, sizeof(buf), "2018-%02d-%02d", month, day);
      listing.sale_date = buf;
    }

    result.truth.records.push_back(std::move(truth));
    result.listings.push_back(std::move(listing));
  }

  // --- planned mislabels: records truly in `corrected`, advertised `given` ---
  if (config.plant_mislabels) {
    for (const auto& change : default_change_plan()) {
      const long long quota = std::llround(static_cast<double>(change.occurrences) *
                                           config.n_records / kDefaultCorpus);
      long long assigned = 0;
      for (int i = 0; i < total && assigned < quota; ++i) {
        auto& truth = result.truth.records[i];
        if (truth.undersize || truth.true_postcode != change.corrected ||
            truth.given_postcode != truth.true_postcode) {
          continue;
        }
        truth.given_postcode = change.given;
        truth.change = change.given + "." + change.corrected;
        truth.change_effect = change.log_premium;
        truth.noiseless_log_ppm2 += change.log_premium;
        result.listings[i].postcode = change.given;
        ++assigned;
      }
    }
  }

  // --- prices from the generative form ---
  for (int i = 0; i < total; ++i) {
    const auto& truth = result.truth.records[i];
    result.listings[i].price =
        std::exp(truth.noiseless_log_ppm2 + truth.noise) * result.listings[i].size_m2;
  }
  return result;
}

std::string ground_truth_json(const GroundTruth& truth) {
  nlohmann::ordered_json j;
  j["format"] = "hedonic-ground-truth";
  j["version"] = 1;

  nlohmann::ordered_json cfg;
  cfg["seed"] = truth.config.seed;
  cfg["n_records"] = truth.config.n_records;
  cfg["n_undersize"] = truth.config.n_undersize;
  cfg["noise_sigma"] = truth.config.noise_sigma;
  cfg["plant_gp"] = truth.config.plant_gp;
  cfg["gp_rho_km"] = truth.config.gp_rho_km;
  cfg["gp_sigma"] = truth.config.gp_sigma;
  cfg["gp_anchors"] = truth.config.gp_anchors;
  cfg["plant_smooths"] = truth.config.plant_smooths;
  cfg["plant_mislabels"] = truth.config.plant_mislabels;
  cfg["plant_prob"] = truth.config.plant_prob;
  cfg["intercept"] = truth.config.tables.intercept;
  cfg["type_log"] = truth.config.tables.type_log;
  cfg["ber_log"] = truth.config.tables.ber_log;
  cfg["postcode_log"] = truth.config.tables.postcode_log;
  cfg["binary_log"] = truth.config.tables.binary_log;
  j["config"] = std::move(cfg);

  nlohmann::ordered_json gp;
  gp["rho_km"] = truth.gp.rho_km;
  nlohmann::ordered_json anchors = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < truth.gp.anchors.rows(); ++i) {
    anchors.push_back({truth.gp.anchors(i, 0), truth.gp.anchors(i, 1)});
  }
  gp["anchors"] = std::move(anchors);
  std::vector<double> w(truth.gp.weights.data(), truth.gp.weights.data() + truth.gp.weights.size());
  gp["weights"] = std::move(w);
  j["gp"] = std::move(gp);

  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const auto& r : truth.records) {
    nlohmann::ordered_json e;
    e["id"] = r.id;
    e["true_postcode"] = r.true_postcode;
    e["given_postcode"] = r.given_postcode;
    e["change"] = r.change;
    e["undersize"] = r.undersize;
    e["planted"] = r.planted.bits;
    e["type_effect"] = r.type_effect;
    e["ber_effect"] = r.ber_effect;
    e["postcode_effect"] = r.postcode_effect;
    e["change_effect"] = r.change_effect;
    e["binary_effect"] = r.binary_effect;
    e["f_beds"] = r.f_beds;
    e["f_baths"] = r.f_baths;
    e["f_size"] = r.f_size;
    e["gp_value"] = r.gp_value;
    e["noise"] = r.noise;
    e["noiseless_log_ppm2"] = r.noiseless_log_ppm2;
    records.push_back(std::move(e));
  }
  j["records"] = std::move(records);
  return j.dump(1);
}

}  // namespace hedonic::synth
