#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "hedonic/types.hpp"

namespace hedonic::textmine {

// Trigger phrases per mined attribute. Matching is a plain case-insensitive
// substring search; hyphen/space variants are separate triggers, not regex.
struct PhraseLexicon {
  std::array<std::vector<std::string>, kNumMinedFlags> phrases;

  // Bundled default trigger set.
  static const PhraseLexicon& bundled_default();
  // Plain-text config, one feature per line: `feature_name: phrase1 | phrase2`.
  static PhraseLexicon load(const std::string& path);
  static PhraseLexicon parse(const std::string& text);
  std::string to_text() const;

  // Every flag needs at least one trigger; throws otherwise.
  void validate() const;
};

// Sets a flag iff any trigger occurs as a case-insensitive substring of the
// description. Interactions (garden_cc, car_space_cc) are left unset.
MinedFeatures mine(const std::string& description, const PhraseLexicon& lexicon);

// Fills garden_cc and car_space_cc from the city-centre indicator; all
// other flags pass through unchanged.
MinedFeatures apply_interactions(const MinedFeatures& features, bool within_city_centre);

// Occurrence count of each flag over the corpus.
std::array<long long, kNumMinedFlags> tabulate(std::span<const MinedFeatures> corpus);

bool contains_ci(const std::string& haystack, const std::string& needle);

}  // namespace hedonic::textmine
