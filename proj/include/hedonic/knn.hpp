#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hedonic/types.hpp"

namespace hedonic::knn {

struct KnnEstimate {
  std::int64_t id = 0;
  int k = 0;
  double ppm2_estimate = 0.0;
  double price_estimate = 0.0;  // ppm2 * query size
  std::vector<std::int64_t> neighbours_used;
  bool degraded = false;  // fewer than k comparators available
};

// Median price-per-m2 of the k geodesically nearest same-type neighbours.
// The query is excluded by id; distance ties break on record id. Throws
// when the pool holds no other record of the query's type.
KnnEstimate knn_estimate(const PropertyRecord& query, std::span<const PropertyRecord> pool,
                         int k);

struct KnnMetricsRow {
  int k = 0;
  double mdape = 0.0;     // fraction, not percent
  double within10 = 0.0;  // fraction of |a-p|/a <= 0.10
  double within20 = 0.0;
  long long n_scored = 0;
  long long n_no_comparables = 0;
};

// Leave-one-out evaluation over all records, one row per k.
std::vector<KnnMetricsRow> knn_evaluate(std::span<const PropertyRecord> records,
                                        const std::vector<int>& ks = {3, 5, 7, 9});

}  // namespace hedonic::knn
