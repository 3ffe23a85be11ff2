#include "hedonic/pipeline.hpp"

namespace hedonic {

void enrich(std::vector<PropertyRecord>& records, const textmine::PhraseLexicon& lexicon,
            const geo::LandmarkSet& landmarks) {
  const geo::GeoPoint origin = landmarks.ifsc();
  for (auto& rec : records) {
    const geo::GeoPoint p{rec.raw.latitude, rec.raw.longitude};
    rec.dist = geo::distance_features(p, landmarks);
    rec.mined = textmine::apply_interactions(textmine::mine(rec.raw.description, lexicon),
                                             rec.dist.within_city_centre);
    rec.xy = geo::project(p, origin);
  }
}

PreparedData load_and_prepare(const std::string& csv_path, const textmine::PhraseLexicon& lexicon,
                              const geo::LandmarkSet& landmarks) {
  auto ingested = dataio::ingest_file(csv_path);
  PreparedData out;
  out.rejects = std::move(ingested.rejects);
  out.records = dataio::clean(ingested.listings);
  enrich(out.records, lexicon, landmarks);
  return out;
}

}  // namespace hedonic
