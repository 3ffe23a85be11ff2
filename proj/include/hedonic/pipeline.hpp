#pragma once

#include <string>
#include <vector>

#include "hedonic/dataio.hpp"
#include "hedonic/geo.hpp"
#include "hedonic/textmine.hpp"
#include "hedonic/types.hpp"

namespace hedonic {

// Fills mined attributes, distance features, interactions and the planar
// projection (origin at the IFSC landmark) for each cleaned record.
void enrich(std::vector<PropertyRecord>& records, const textmine::PhraseLexicon& lexicon,
            const geo::LandmarkSet& landmarks);

struct PreparedData {
  std::vector<PropertyRecord> records;
  std::vector<dataio::RejectedRow> rejects;
};

// ingest -> clean -> enrich in one step, as the CLI subcommands use it.
PreparedData load_and_prepare(const std::string& csv_path, const textmine::PhraseLexicon& lexicon,
                              const geo::LandmarkSet& landmarks);

}  // namespace hedonic
