#include <stdexcept>

#include "hedonic/fit.hpp"

namespace hedonic::fit {

std::string to_string(PostcodeMode m) {
  switch (m) {
    case PostcodeMode::given: return "given";
    case PostcodeMode::corrected: return "corrected";
    case PostcodeMode::corrected_with_changes: return "corrected+changes";
  }
  return "given";
}

PostcodeMode postcode_mode_from_string(const std::string& s) {
  if (s == "given") return PostcodeMode::given;
  if (s == "corrected") return PostcodeMode::corrected;
  if (s == "corrected+changes" || s == "corrected_with_changes") {
    return PostcodeMode::corrected_with_changes;
  }
  throw std::invalid_argument("unknown postcode mode '" + s +
                              "' (valid: given, corrected, corrected+changes)");
}

const std::vector<std::string>& model_names() {
  static const std::vector<std::string> names = {"BasicLinear", "Linear", "GAM1", "GAM2",
                                                 "GAM3",        "GAM4",   "GAM5", "GAM6"};
  return names;
}

const std::vector<std::string>& postcode_change_labels() {
  static const std::vector<std::string> labels = {
      "D5.D13",  "D6.D6W",  "D6W.D12", "D9.D3",   "D9.D17",
      "D11.D9",  "D14.D16", "D16.D14", "NCD.D15", "SCD.D4",
      "SCD.D18", "SCD.D24", "WCD.D15", "WCD.D22", "WCD.D24"};
  return labels;
}

namespace {

// Per-term entry kind for the published model variants, one character per
// column: Linear, GAM1..4 with given postcodes, GAM1..4 with corrected
// postcodes, GAM5, GAM6.  '.' absent, 'L' linear, 'S' spline.
struct TermRow {
  const char* term;
  const char* kinds;  // 11 chars
};

constexpr int kColLinear = 0;
constexpr int kColGamGiven = 1;      // GAM1..4 at columns 1..4
constexpr int kColGamCorrected = 5;  // GAM1..4 at columns 5..8
constexpr int kColGam5 = 9;
constexpr int kColGam6 = 10;

const TermRow kTermTable[] = {
    //                          L 1234g 1234c 5 6
    {"attic_conversion",       "LLLLLLLLLLL"},
    {"south_facing",           "LLLLLLLLLLL"},
    {"development_potential",  "LLLLLLLLLLL"},
    {"fireplace",              "LLLLLLLLLLL"},
    {"hot_press",              "LLLLLLLLLLL"},
    {"immersion",              "LL........."},
    {"garage",                 "LLLLLLLLLLL"},
    {"refurbished",            "LLLLLLLLLLL"},
    {"parking",                "L..L..LLLLL"},
    {"open_plan",              "LLLLLLLLLLL"},
    {"ground_floor_apartment", "LLLLLLLLLLL"},
    {"first_floor_apartment",  "LLLLLLLLLLL"},
    {"second_floor_apartment", "LLLLLLLLLLL"},
    {"penthouse_apartment",    "LLLLLLLLLLL"},
    {"near_park",              "LL...L..L.L"},
    {"ifsc_km",                "LSL.SSL.S.S"},
    {"near_airport",           "LLL.LLL.L.L"},
    {"near_dart",              "LLL.LLL.L.L"},
    {"near_luas",              "LLL.LLL.L.L"},
    {"size",                   "LSLSSSLSSSS"},
    {"garden_cc",              "L.L...L...."},
    {"car_space_cc",           "LLLLLLLLLLL"},
    {"beds",                   ".SLSSSLSLSL"},
    {"baths",                  ".LLSSSLSLSL"},
};

const char kSpatialRow[] = "..GGG.GGGGG";

bool is_continuous(const std::string& term) {
  return term == "size" || term == "beds" || term == "baths" || term == "ifsc_km";
}

int spline_knot_count(const std::string& term) {
  return (term == "beds" || term == "baths") ? 5 : 20;
}

ModelSpec from_column(const std::string& name, PostcodeMode mode, int col) {
  ModelSpec spec;
  spec.name = name;
  spec.postcode_mode = mode;
  for (const auto& row : kTermTable) {
    const char kind = row.kinds[col];
    if (kind == '.') continue;
    if (kind == 'S') {
      spec.spline_terms.push_back({row.term, spline_knot_count(row.term)});
    } else if (is_continuous(row.term)) {
      spec.linear_terms.push_back(row.term);
    } else {
      spec.binary_terms.push_back(row.term);
    }
  }
  spec.categorical_terms = {"property_type", "ber", "postcode"};
  if (mode == PostcodeMode::corrected_with_changes && (col == kColGam5 || col == kColGam6)) {
    spec.categorical_terms.push_back("postcode_change");
  }
  spec.spatial = kSpatialRow[col] == 'G';
  return spec;
}

}  // namespace

ModelSpec make_model_spec(const std::string& name, PostcodeMode mode) {
  auto unknown = [&]() -> std::invalid_argument {
    std::string msg = "unknown model spec '" + name + "' (valid:";
    for (const auto& n : model_names()) msg += " " + n;
    msg += ")";
    return std::invalid_argument(msg);
  };

  if (name == "BasicLinear") {
    // the plain hedonic form: continuous effects plus the core categoricals,
    // no mined or distance features
    ModelSpec spec;
    spec.name = name;
    spec.postcode_mode = mode;
    spec.linear_terms = {"size", "beds", "baths", "ifsc_km"};
    spec.categorical_terms = {"property_type", "ber", "postcode"};
    return spec;
  }
  if (name == "Linear") return from_column(name, mode, kColLinear);
  if (name == "GAM5" || name == "GAM6") {
    if (mode == PostcodeMode::given) {
      throw std::invalid_argument(name + " requires corrected postcodes");
    }
    return from_column(name, PostcodeMode::corrected_with_changes,
                       name == "GAM5" ? kColGam5 : kColGam6);
  }
  if (name.size() == 4 && name.rfind("GAM", 0) == 0) {
    const int i = name[3] - '1';
    if (i < 0 || i > 3) throw unknown();
    const int col = (mode == PostcodeMode::given ? kColGamGiven : kColGamCorrected) + i;
    return from_column(name, mode, col);
  }
  throw unknown();
}

double covariate_value(const PropertyRecord& rec, const std::string& name) {
  if (name == "size") return rec.raw.size_m2;
  if (name == "beds") return rec.raw.beds;
  if (name == "baths") return rec.raw.baths;
  if (name == "ifsc_km") return rec.dist.ifsc_km;
  if (name == "near_airport") return rec.dist.near_airport ? 1.0 : 0.0;
  if (name == "within_city_centre") return rec.dist.within_city_centre ? 1.0 : 0.0;
  if (name == "near_dart") return rec.dist.near_dart ? 1.0 : 0.0;
  if (name == "near_luas") return rec.dist.near_luas ? 1.0 : 0.0;
  if (name == "near_park") return rec.dist.near_park ? 1.0 : 0.0;
  const int flag = mined_flag_index(name);
  if (flag >= 0) return rec.mined.bits[flag] ? 1.0 : 0.0;
  throw std::invalid_argument("unknown term name '" + name + "'");
}

std::string categorical_level(const PropertyRecord& rec, const std::string& term,
                              PostcodeMode mode) {
  if (term == "property_type") return to_label(rec.raw.type);
  if (term == "ber") return to_label(rec.raw.ber);
  if (term == "postcode") {
    return mode == PostcodeMode::given ? rec.raw.postcode
                                       : rec.raw.effective_corrected_postcode();
  }
  if (term == "postcode_change") {
    const std::string& corrected = rec.raw.effective_corrected_postcode();
    if (corrected == rec.raw.postcode) return "none";
    return rec.raw.postcode + "." + corrected;
  }
  throw std::invalid_argument("unknown categorical term '" + term + "'");
}

}  // namespace hedonic::fit
