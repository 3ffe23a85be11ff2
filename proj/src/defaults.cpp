#include <algorithm>
#include <stdexcept>

#include "hedonic/geo.hpp"
#include "hedonic/textmine.hpp"
#include "hedonic/types.hpp"

namespace hedonic {

const std::array<std::string, kNumPropertyTypes>& property_type_labels() {
  static const std::array<std::string, kNumPropertyTypes> labels = {
      "Apartment",        "Detached House",      "Duplex", "End of Terrace House",
      "Semi-Detached House", "Terraced House", "Townhouse"};
  return labels;
}

const std::array<std::string, kNumBerRatings>& ber_labels() {
  static const std::array<std::string, kNumBerRatings> labels = {"A", "B", "C", "D",
                                                                 "E", "F", "G", "Exempt"};
  return labels;
}

const std::vector<std::string>& postcode_labels() {
  static const std::vector<std::string> labels = {
      "D1",  "D2",  "D3",  "D4",  "D5",  "D6",  "D6W", "D7",  "D8",
      "D9",  "D10", "D11", "D12", "D13", "D14", "D15", "D16", "D17",
      "D18", "D20", "D22", "D24", "NCD", "SCD", "WCD", "Dublin County"};
  return labels;
}

std::string to_label(PropertyType t) { return property_type_labels()[static_cast<int>(t)]; }
std::string to_label(BerRating b) { return ber_labels()[static_cast<int>(b)]; }

PropertyType property_type_from_label(std::string_view s) {
  const auto& labels = property_type_labels();
  for (int i = 0; i < kNumPropertyTypes; ++i) {
    if (labels[i] == s) return static_cast<PropertyType>(i);
  }
  throw std::invalid_argument("unknown property_type label '" + std::string(s) + "'");
}

BerRating ber_from_label(std::string_view s) {
  const auto& labels = ber_labels();
  for (int i = 0; i < kNumBerRatings; ++i) {
    if (labels[i] == s) return static_cast<BerRating>(i);
  }
  throw std::invalid_argument("unknown ber label '" + std::string(s) + "'");
}

bool is_known_postcode(std::string_view s) {
  const auto& labels = postcode_labels();
  return std::find(labels.begin(), labels.end(), s) != labels.end();
}

const std::array<std::string, kNumMinedFlags>& mined_flag_names() {
  static const std::array<std::string, kNumMinedFlags> names = {
      "south_facing",
      "attic_conversion",
      "parking",
      "development_potential",
      "open_plan",
      "fireplace",
      "central_heating",
      "immersion",
      "hot_press",
      "garage",
      "large_garden",
      "ground_floor_apartment",
      "first_floor_apartment",
      "second_floor_apartment",
      "penthouse_apartment",
      "refurbished",
      "cul_de_sac",
      "garden",
      "garden_cc",
      "car_space_cc",
  };
  return names;
}

int mined_flag_index(std::string_view name) {
  const auto& names = mined_flag_names();
  for (int i = 0; i < kNumMinedFlags; ++i) {
    if (names[i] == name) return i;
  }
  return -1;
}

}  // namespace hedonic

namespace hedonic::textmine {

const PhraseLexicon& PhraseLexicon::bundled_default() {
  static const PhraseLexicon lex = [] {
    PhraseLexicon l;
    auto set = [&l](MinedFlag f, std::vector<std::string> phrases) {
      l.phrases[static_cast<int>(f)] = std::move(phrases);
    };
    set(MinedFlag::south_facing, {"south facing", "south orientation", "south-facing"});
    set(MinedFlag::attic_conversion, {"attic conversion"});
    set(MinedFlag::parking, {"parking", "car spot", "car space"});
    set(MinedFlag::development_potential, {"development potential"});
    set(MinedFlag::open_plan, {"open plan", "open-plan"});
    set(MinedFlag::fireplace, {"fireplace"});
    set(MinedFlag::central_heating, {"central heating"});
    set(MinedFlag::immersion, {"immersion"});
    set(MinedFlag::hot_press, {"hot press"});
    set(MinedFlag::garage, {"garage"});
    set(MinedFlag::large_garden, {"large garden"});
    set(MinedFlag::ground_floor_apartment, {"ground floor apartment"});
    set(MinedFlag::first_floor_apartment, {"first floor apartment"});
    set(MinedFlag::second_floor_apartment, {"second floor apartment"});
    set(MinedFlag::penthouse_apartment, {"penthouse apartment"});
    set(MinedFlag::refurbished, {"refurbished", "renovated", "upgraded"});
    set(MinedFlag::cul_de_sac, {"cul-de-sac", "cul de sac"});
    set(MinedFlag::garden, {"garden"});
    // garden_cc / car_space_cc are geographic interactions, not mined.
    l.validate();
    return l;
  }();
  return lex;
}

}  // namespace hedonic::textmine

namespace hedonic::geo {

const LandmarkSet& LandmarkSet::dublin_default() {
  static const LandmarkSet set = [] {
    LandmarkSet s;
    auto add = [&s](LandmarkClass c, const char* name, double lat, double lon) {
      s.landmarks.push_back({c, name, {lat, lon}});
    };
    add(LandmarkClass::ifsc, "IFSC", 53.34937, -6.24573);
    add(LandmarkClass::city_centre, "O'Connell Bridge", 53.34729, -6.25923);
    add(LandmarkClass::airport, "Dublin Airport", 53.42645, -6.24988);

    add(LandmarkClass::dart, "Howth", 53.39040, -6.07310);
    add(LandmarkClass::dart, "Sutton", 53.39057, -6.11531);
    add(LandmarkClass::dart, "Bayside", 53.39172, -6.13700);
    add(LandmarkClass::dart, "Howth Junction", 53.39095, -6.15640);
    add(LandmarkClass::dart, "Kilbarrack", 53.38690, -6.14450);
    add(LandmarkClass::dart, "Raheny", 53.38100, -6.17440);
    add(LandmarkClass::dart, "Harmonstown", 53.37600, -6.19070);
    add(LandmarkClass::dart, "Killester", 53.37160, -6.20310);
    add(LandmarkClass::dart, "Clontarf Road", 53.36340, -6.22680);
    add(LandmarkClass::dart, "Connolly", 53.35310, -6.24610);
    add(LandmarkClass::dart, "Tara Street", 53.34670, -6.25450);
    add(LandmarkClass::dart, "Pearse", 53.34340, -6.24880);
    add(LandmarkClass::dart, "Grand Canal Dock", 53.33940, -6.23770);
    add(LandmarkClass::dart, "Lansdowne Road", 53.33460, -6.22920);
    add(LandmarkClass::dart, "Sandymount", 53.33140, -6.22240);
    add(LandmarkClass::dart, "Sydney Parade", 53.32340, -6.21280);
    add(LandmarkClass::dart, "Booterstown", 53.31220, -6.19980);
    add(LandmarkClass::dart, "Blackrock", 53.30150, -6.17780);
    add(LandmarkClass::dart, "Seapoint", 53.29800, -6.16500);
    add(LandmarkClass::dart, "Salthill and Monkstown", 53.29380, -6.15000);
    add(LandmarkClass::dart, "Dun Laoghaire", 53.29500, -6.13500);
    add(LandmarkClass::dart, "Sandycove and Glasthule", 53.28800, -6.12300);

    add(LandmarkClass::luas, "The Point", 53.34870, -6.22900);
    add(LandmarkClass::luas, "Spencer Dock", 53.34890, -6.23830);
    add(LandmarkClass::luas, "Mayor Square", 53.34910, -6.24450);
    add(LandmarkClass::luas, "Connolly LUAS", 53.35080, -6.24680);
    add(LandmarkClass::luas, "Abbey Street", 53.34860, -6.25810);
    add(LandmarkClass::luas, "Jervis", 53.34750, -6.26650);
    add(LandmarkClass::luas, "Four Courts", 53.34640, -6.27340);
    add(LandmarkClass::luas, "Smithfield", 53.34680, -6.27860);
    add(LandmarkClass::luas, "Heuston", 53.34650, -6.29360);
    add(LandmarkClass::luas, "Fatima", 53.33800, -6.29350);
    add(LandmarkClass::luas, "Drimnagh", 53.33560, -6.31800);
    add(LandmarkClass::luas, "Bluebell", 53.32970, -6.33160);
    add(LandmarkClass::luas, "Red Cow", 53.31390, -6.36920);
    add(LandmarkClass::luas, "Tallaght", 53.28780, -6.37460);
    add(LandmarkClass::luas, "St Stephen's Green", 53.33910, -6.26130);
    add(LandmarkClass::luas, "Harcourt", 53.33360, -6.26270);
    add(LandmarkClass::luas, "Charlemont", 53.33050, -6.25880);
    add(LandmarkClass::luas, "Ranelagh", 53.32620, -6.25630);
    add(LandmarkClass::luas, "Milltown", 53.30970, -6.25160);
    add(LandmarkClass::luas, "Dundrum", 53.29200, -6.24500);
    add(LandmarkClass::luas, "Broombridge", 53.37270, -6.29740);
    add(LandmarkClass::luas, "Cabra", 53.36600, -6.28800);

    add(LandmarkClass::park, "Phoenix Park", 53.35580, -6.32980);
    add(LandmarkClass::park, "St Stephen's Green Park", 53.33800, -6.25920);
    add(LandmarkClass::park, "Merrion Square Park", 53.33950, -6.24980);
    add(LandmarkClass::park, "Herbert Park", 53.32490, -6.23460);
    add(LandmarkClass::park, "Bushy Park", 53.30090, -6.28310);
    add(LandmarkClass::park, "Marlay Park", 53.27400, -6.25300);
    add(LandmarkClass::park, "St Anne's Park", 53.37730, -6.17630);
    add(LandmarkClass::park, "Fairview Park", 53.35790, -6.23530);
    add(LandmarkClass::park, "Griffith Park", 53.37050, -6.26510);
    add(LandmarkClass::park, "Malahide Castle Park", 53.44400, -6.16000);
    return s;
  }();
  return set;
}

}  // namespace hedonic::geo
