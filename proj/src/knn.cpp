#include "hedonic/knn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hedonic/geo.hpp"

namespace hedonic::knn {

namespace {

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct Comparator {
  double dist_km;
  std::int64_t id;
  double ppm2;
};

std::vector<Comparator> same_type_by_distance(const PropertyRecord& query,
                                              std::span<const PropertyRecord> pool) {
  const geo::GeoPoint q{query.raw.latitude, query.raw.longitude};
  std::vector<Comparator> cands;
  for (const auto& rec : pool) {
    if (rec.id == query.id || rec.raw.type != query.raw.type) continue;
    cands.push_back({geo::geodesic_km(q, {rec.raw.latitude, rec.raw.longitude}), rec.id,
                     rec.raw.price / rec.raw.size_m2});
  }
  std::sort(cands.begin(), cands.end(), [](const Comparator& a, const Comparator& b) {
    if (a.dist_km != b.dist_km) return a.dist_km < b.dist_km;
    return a.id < b.id;
  });
  return cands;
}

KnnEstimate estimate_from_sorted(const PropertyRecord& query,
                                 const std::vector<Comparator>& cands, int k) {
  KnnEstimate est;
  est.id = query.id;
  est.k = k;
  const auto take = std::min<std::size_t>(static_cast<std::size_t>(k), cands.size());
  est.degraded = take < static_cast<std::size_t>(k);
  std::vector<double> ppm2;
  ppm2.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    est.neighbours_used.push_back(cands[i].id);
    ppm2.push_back(cands[i].ppm2);
  }
  est.ppm2_estimate = median_of(std::move(ppm2));
  est.price_estimate = est.ppm2_estimate * query.raw.size_m2;
  return est;
}

}  // namespace

KnnEstimate knn_estimate(const PropertyRecord& query, std::span<const PropertyRecord> pool,
                         int k) {
  if (k < 1) throw std::invalid_argument("knn: k must be >= 1");
  const auto cands = same_type_by_distance(query, pool);
  if (cands.empty()) {
    throw std::runtime_error("knn: no comparables of type '" + to_label(query.raw.type) +
                             "' for record " + std::to_string(query.id));
  }
  return estimate_from_sorted(query, cands, k);
}

std::vector<KnnMetricsRow> knn_evaluate(std::span<const PropertyRecord> records,
                                        const std::vector<int>& ks) {
  std::vector<KnnMetricsRow> rows(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) rows[i].k = ks[i];
  std::vector<std::vector<double>> ape(ks.size());

  // the candidate ranking is shared across k for each query
  for (const auto& rec : records) {
    const auto cands = same_type_by_distance(rec, records);
    if (cands.empty()) {
      for (auto& row : rows) ++row.n_no_comparables;
      continue;
    }
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const auto est = estimate_from_sorted(rec, cands, ks[i]);
      ape[i].push_back(std::abs(rec.raw.price - est.price_estimate) / rec.raw.price);
    }
  }

  for (std::size_t i = 0; i < ks.size(); ++i) {
    rows[i].n_scored = static_cast<long long>(ape[i].size());
    if (ape[i].empty()) continue;
    long long w10 = 0, w20 = 0;
    for (double a : ape[i]) {
      if (a <= 0.10) ++w10;
      if (a <= 0.20) ++w20;
    }
    rows[i].mdape = median_of(ape[i]);
    rows[i].within10 = static_cast<double>(w10) / static_cast<double>(ape[i].size());
    rows[i].within20 = static_cast<double>(w20) / static_cast<double>(ape[i].size());
  }
  return rows;
}

}  // namespace hedonic::knn
