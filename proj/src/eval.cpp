#include "hedonic/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "hedonic/rng.hpp"

namespace hedonic::eval {

namespace {

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

Metrics compute_metrics(std::span<const double> actual, std::span<const double> predicted,
                        std::span<const double> lo50, std::span<const double> hi50,
                        std::span<const double> lo95, std::span<const double> hi95) {
  const std::size_t n = actual.size();
  if (n == 0) throw std::invalid_argument("metrics: empty input");
  if (predicted.size() != n) throw std::invalid_argument("metrics: length mismatch");
  const bool have50 = !lo50.empty();
  const bool have95 = !lo95.empty();
  if (have50 && (lo50.size() != n || hi50.size() != n)) {
    throw std::invalid_argument("metrics: interval length mismatch");
  }
  if (have95 && (lo95.size() != n || hi95.size() != n)) {
    throw std::invalid_argument("metrics: interval length mismatch");
  }

  double mean = 0.0;
  for (double a : actual) mean += a;
  mean /= static_cast<double>(n);

  double rss = 0.0, tss = 0.0;
  std::vector<double> ape(n);
  long long w5 = 0, w10 = 0, w20 = 0, c50 = 0, c95 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (actual[i] == 0.0) throw std::invalid_argument("metrics: zero actual price");
    const double err = actual[i] - predicted[i];
    rss += err * err;
    tss += (actual[i] - mean) * (actual[i] - mean);
    ape[i] = std::abs(err) / std::abs(actual[i]);
    if (ape[i] <= 0.05) ++w5;
    if (ape[i] <= 0.10) ++w10;
    if (ape[i] <= 0.20) ++w20;
    if (have50 && actual[i] >= lo50[i] && actual[i] <= hi50[i]) ++c50;
    if (have95 && actual[i] >= lo95[i] && actual[i] <= hi95[i]) ++c95;
  }

  Metrics m;
  m.r2 = tss > 0.0 ? 1.0 - rss / tss : (rss == 0.0 ? 1.0 : 0.0);
  m.rmse = std::sqrt(rss / static_cast<double>(n));
  m.mdape = median_of(std::move(ape));
  m.within5 = static_cast<double>(w5) / static_cast<double>(n);
  m.within10 = static_cast<double>(w10) / static_cast<double>(n);
  m.within20 = static_cast<double>(w20) / static_cast<double>(n);
  m.coverage50 = have50 ? static_cast<double>(c50) / static_cast<double>(n) : 0.0;
  m.coverage95 = have95 ? static_cast<double>(c95) / static_cast<double>(n) : 0.0;
  return m;
}

SpatialWeights knn_weights(const std::vector<PlanarCoord>& coords, int k) {
  const auto n = static_cast<int>(coords.size());
  if (k < 1) throw std::invalid_argument("knn_weights: k must be >= 1");
  SpatialWeights w;
  w.rows.resize(n);
  std::vector<std::pair<double, int>> dist;
  for (int i = 0; i < n; ++i) {
    dist.clear();
    dist.reserve(n - 1);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double dx = coords[i].x_km - coords[j].x_km;
      const double dy = coords[i].y_km - coords[j].y_km;
      dist.emplace_back(dx * dx + dy * dy, j);
    }
    const auto take = std::min<std::size_t>(static_cast<std::size_t>(k), dist.size());
    std::partial_sort(dist.begin(), dist.begin() + take, dist.end());
    const double weight = take > 0 ? 1.0 / static_cast<double>(take) : 0.0;
    for (std::size_t t = 0; t < take; ++t) w.rows[i].emplace_back(dist[t].second, weight);
  }
  w.row_standardized = true;
  return w;
}

double morans_i(const Eigen::VectorXd& residuals, const SpatialWeights& weights) {
  const auto n = residuals.size();
  if (n < 3) throw std::invalid_argument("morans_i: need >= 3 values");
  if (static_cast<Eigen::Index>(weights.rows.size()) != n) {
    throw std::invalid_argument("morans_i: weights/residual size mismatch");
  }
  const double mean = residuals.mean();
  const Eigen::VectorXd e = residuals.array() - mean;
  const double denom = e.squaredNorm();
  if (!(denom > 0.0)) throw std::invalid_argument("morans_i: zero residual variance");

  double num = 0.0, s0 = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (const auto& [j, wij] : weights.rows[i]) {
      num += wij * e[i] * e[j];
      s0 += wij;
    }
  }
  if (!(s0 > 0.0)) throw std::invalid_argument("morans_i: empty weight matrix");
  return (static_cast<double>(n) / s0) * num / denom;
}

std::vector<int> fold_assignment(std::size_t n, int folds, std::uint64_t seed) {
  if (folds < 2) throw std::invalid_argument("cv: folds must be >= 2");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(order);
  std::vector<int> fold(n, 0);
  for (std::size_t i = 0; i < n; ++i) fold[order[i]] = static_cast<int>(i % folds);
  return fold;
}

EvalReport kfold_cv(std::span<const PropertyRecord> records, const fit::ModelSpec& spec,
                    int folds, std::uint64_t seed, int jobs) {
  const std::size_t n = records.size();
  if (static_cast<long long>(n) < 10LL * folds) {
    throw std::invalid_argument("cv: need at least 10 records per fold");
  }
  const std::vector<int> fold = fold_assignment(n, folds, seed);

  struct FoldOutput {
    std::vector<PredRow> rows;
    std::vector<Excluded> excluded;
  };
  std::vector<FoldOutput> outputs(folds);

  auto run_fold = [&](int f) {
    std::vector<PropertyRecord> train;
    train.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (fold[i] != f) train.push_back(records[i]);
    }
    const fit::FittedModel model = fit::fit_model(train, spec);
    FoldOutput& out = outputs[f];
    for (std::size_t i = 0; i < n; ++i) {
      if (fold[i] != f) continue;
      const auto& rec = records[i];
      try {
        const fit::Prediction pred = fit::predict(model, rec);
        PredRow row;
        row.id = rec.id;
        row.fold = f;
        row.actual_price = rec.raw.price;
        row.pred_price = pred.price_point;
        row.lo50 = pred.price_lo50;
        row.hi50 = pred.price_hi50;
        row.lo95 = pred.price_lo95;
        row.hi95 = pred.price_hi95;
        row.log_residual = rec.log_ppm2 - pred.log_point;
        out.rows.push_back(row);
      } catch (const fit::UnseenLevelError& err) {
        out.excluded.push_back({rec.id, f, err.what()});
      }
    }
  };

  if (jobs > 1) {
    std::vector<std::thread> threads;
    std::atomic<int> next{0};
    const int workers = std::min(jobs, folds);
    for (int t = 0; t < workers; ++t) {
      threads.emplace_back([&] {
        for (int f = next.fetch_add(1); f < folds; f = next.fetch_add(1)) run_fold(f);
      });
    }
    for (auto& th : threads) th.join();
  } else {
    for (int f = 0; f < folds; ++f) run_fold(f);
  }

  EvalReport report;
  report.model = spec.name;
  for (auto& out : outputs) {
    report.rows.insert(report.rows.end(), out.rows.begin(), out.rows.end());
    report.excluded.insert(report.excluded.end(), out.excluded.begin(), out.excluded.end());
  }
  std::sort(report.rows.begin(), report.rows.end(),
            [](const PredRow& a, const PredRow& b) { return a.id < b.id; });
  std::sort(report.excluded.begin(), report.excluded.end(),
            [](const Excluded& a, const Excluded& b) { return a.id < b.id; });
  report.n_scored = static_cast<long long>(report.rows.size());
  report.n_excluded = static_cast<long long>(report.excluded.size());
  if (report.rows.empty()) throw std::runtime_error("cv: no record could be scored");

  std::vector<double> actual, predicted, lo50, hi50, lo95, hi95;
  for (const auto& row : report.rows) {
    actual.push_back(row.actual_price);
    predicted.push_back(row.pred_price);
    lo50.push_back(row.lo50);
    hi50.push_back(row.hi50);
    lo95.push_back(row.lo95);
    hi95.push_back(row.hi95);
  }
  report.metrics = compute_metrics(actual, predicted, lo50, hi50, lo95, hi95);

  // Moran's I of held-out log-scale residuals on 10-NN weights
  std::unordered_map<std::int64_t, PlanarCoord> coord_of;
  coord_of.reserve(records.size());
  for (const auto& rec : records) coord_of[rec.id] = rec.xy;
  std::vector<PlanarCoord> coords;
  Eigen::VectorXd residuals(report.rows.size());
  for (std::size_t t = 0; t < report.rows.size(); ++t) {
    coords.push_back(coord_of.at(report.rows[t].id));
    residuals[static_cast<Eigen::Index>(t)] = report.rows[t].log_residual;
  }
  report.morans_i = morans_i(residuals, knn_weights(coords));
  return report;
}

const std::vector<std::string>& band_labels() {
  static const std::vector<std::string> labels = {
      "Under €250,000",
      "€250,001 - €300,000",
      "€300,001 - €350,000",
      "€350,001 - €400,000",
      "€400,001 - €450,000",
      "€450,001 - €500,000",
      "€500,001 - €550,000",
      "€550,001 - €600,000",
      "€600,001 - €650,000",
      "€650,001 - €700,000",
      "€700,001 - €800,000",
      "€800,001 - €900,000",
      "€900,001 - €1,000,000",
      "€1,000,001 - €1,100,000",
      "€1,100,001 - €1,500,000",
      "€1,500,001 - €2,000,000",
      "€2,000,001 - €3,500,000",
      "€3,500,001 - €5,000,000",
  };
  return labels;
}

std::vector<BandRow> band_table(std::span<const double> actual,
                                std::span<const double> predicted) {
  if (actual.size() != predicted.size()) throw std::invalid_argument("band_table: length mismatch");
  static const std::vector<double> upper = {250000,  300000,  350000,  400000,  450000,
                                            500000,  550000,  600000,  650000,  700000,
                                            800000,  900000,  1000000, 1100000, 1500000,
                                            2000000, 3500000, 5000000};
  const auto& labels = band_labels();
  const std::size_t nbands = labels.size();

  std::vector<std::vector<double>> band_ape(nbands + 1);  // +1 overflow
  for (std::size_t i = 0; i < actual.size(); ++i) {
    if (actual[i] == 0.0) throw std::invalid_argument("band_table: zero actual price");
    const double ape = std::abs(actual[i] - predicted[i]) / std::abs(actual[i]);
    std::size_t b = 0;
    while (b < nbands && actual[i] > upper[b]) ++b;
    band_ape[b].push_back(ape);
  }

  const bool overflow = !band_ape[nbands].empty();
  std::vector<BandRow> rows;
  std::vector<double> cumulative;
  for (std::size_t b = 0; b < nbands + (overflow ? 1 : 0); ++b) {
    BandRow row;
    row.label = b < nbands ? labels[b] : "Over €5,000,000";
    row.count = static_cast<long long>(band_ape[b].size());
    if (row.count > 0) {
      row.defined = true;
      long long w5 = 0, w10 = 0, w20 = 0;
      for (double a : band_ape[b]) {
        if (a <= 0.05) ++w5;
        if (a <= 0.10) ++w10;
        if (a <= 0.20) ++w20;
      }
      row.mdape = median_of(band_ape[b]);
      row.within5 = static_cast<double>(w5) / static_cast<double>(row.count);
      row.within10 = static_cast<double>(w10) / static_cast<double>(row.count);
      row.within20 = static_cast<double>(w20) / static_cast<double>(row.count);
    }
    cumulative.insert(cumulative.end(), band_ape[b].begin(), band_ape[b].end());
    if (!cumulative.empty()) {
      row.cumulative_defined = true;
      row.cumulative_mdape = median_of(cumulative);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

SweepResult knot_sweep(std::span<const PropertyRecord> records, const fit::ModelSpec& spec,
                       const std::vector<int>& k_values, int folds, std::uint64_t seed,
                       int jobs) {
  if (!spec.spatial) throw std::invalid_argument("knot_sweep: spec has no spatial term");
  if (!std::is_sorted(k_values.begin(), k_values.end())) {
    throw std::invalid_argument("knot_sweep: k values must be ascending");
  }

  // distinct locations bound the usable knot count
  std::vector<std::pair<double, double>> seen;
  for (const auto& r : records) {
    const std::pair<double, double> p{r.xy.x_km, r.xy.y_km};
    if (std::find(seen.begin(), seen.end(), p) == seen.end()) seen.push_back(p);
  }
  const int max_k = static_cast<int>(seen.size());

  SweepResult result;
  for (int k : k_values) {
    if (k > max_k) {
      result.warnings.push_back("k=" + std::to_string(k) + " exceeds " +
                                std::to_string(max_k) + " distinct locations; skipped");
      continue;
    }
    fit::ModelSpec sk = spec;
    sk.spatial_knots = k;
    const EvalReport report = kfold_cv(records, sk, folds, seed, jobs);
    result.rows.push_back(
        {k, report.metrics.r2, report.metrics.rmse, report.metrics.coverage95});
  }
  if (result.rows.empty()) throw std::runtime_error("knot_sweep: no usable k value");

  const double r2_at_max = result.rows.back().r2;
  result.elbow_k = result.rows.back().k;
  for (const auto& row : result.rows) {
    if (row.r2 >= r2_at_max - 0.005) {
      result.elbow_k = row.k;
      break;
    }
  }
  return result;
}

}  // namespace hedonic::eval
