#include "hedonic/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace hedonic::fit {

namespace {

// Canonical level order for a categorical term; observed extras (possible
// for postcode_change on arbitrary inputs) follow sorted.
std::vector<std::string> canonical_levels(const std::string& term) {
  if (term == "property_type") {
    const auto& a = property_type_labels();
    return {a.begin(), a.end()};
  }
  if (term == "ber") {
    const auto& a = ber_labels();
    return {a.begin(), a.end()};
  }
  if (term == "postcode") return postcode_labels();
  if (term == "postcode_change") {
    std::vector<std::string> levels = {"none"};
    const auto& changes = postcode_change_labels();
    levels.insert(levels.end(), changes.begin(), changes.end());
    return levels;
  }
  throw std::invalid_argument("unknown categorical term '" + term + "'");
}

}  // namespace

Eigen::RowVectorXd DesignLayout::row(const PropertyRecord& rec) const {
  Eigen::RowVectorXd out = Eigen::RowVectorXd::Zero(ncols);
  int c = 0;
  out[c++] = 1.0;
  for (const auto& name : binary_cols) out[c++] = covariate_value(rec, name);
  for (const auto& name : linear_cols) out[c++] = covariate_value(rec, name);
  for (const auto& cat : cats) {
    const std::string level = categorical_level(rec, cat.name, postcode_mode);
    const auto it = std::find(cat.enc.levels.begin(), cat.enc.levels.end(), level);
    if (it == cat.enc.levels.end()) throw UnseenLevelError(cat.name, level);
    const int idx = static_cast<int>(it - cat.enc.levels.begin());
    out.segment(cat.col0, cat.enc.dim()) = cat.enc.row(idx);
    c = cat.col0 + cat.enc.dim();
  }
  for (const auto& sp : splines) {
    out.segment(sp.col0, sp.spline.dim()) =
        sp.spline.row(covariate_value(rec, sp.covariate)) - sp.centers;
    c = sp.col0 + sp.spline.dim();
  }
  if (spatial) {
    out.segment(spatial->col0, spatial->gp.dim()) =
        spatial->gp.row(rec.xy.x_km, rec.xy.y_km) - spatial->centers;
  }
  return out;
}

Design build_design(std::span<const PropertyRecord> records, const ModelSpec& spec) {
  const auto n = static_cast<Eigen::Index>(records.size());
  if (n < 1) throw std::invalid_argument("build_design: no records");

  Design design;
  DesignLayout& layout = design.layout;
  layout.postcode_mode = spec.postcode_mode;

  design.y.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) design.y[i] = records[i].log_ppm2;

  auto column_values = [&](const std::string& name) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = covariate_value(records[i], name);
    return v;
  };
  auto is_constant = [](const Eigen::VectorXd& v) {
    return v.maxCoeff() == v.minCoeff();
  };

  std::vector<std::pair<std::string, Eigen::VectorXd>> binary_vals, linear_vals;
  for (const auto& name : spec.binary_terms) {
    Eigen::VectorXd v = column_values(name);
    if (is_constant(v)) {
      design.warnings.push_back("binary term '" + name + "' is constant in training data; dropped");
      continue;
    }
    layout.binary_cols.push_back(name);
    binary_vals.emplace_back(name, std::move(v));
  }
  for (const auto& name : spec.linear_terms) {
    Eigen::VectorXd v = column_values(name);
    if (is_constant(v)) {
      design.warnings.push_back("linear term '" + name + "' is constant in training data; dropped");
      continue;
    }
    layout.linear_cols.push_back(name);
    linear_vals.emplace_back(name, std::move(v));
  }

  // categorical encodings on observed levels, canonical order
  std::vector<std::vector<int>> cat_level_of_record;
  for (const auto& term : spec.categorical_terms) {
    std::vector<std::string> canon = canonical_levels(term);
    std::vector<std::string> observed_levels;
    std::map<std::string, int> counts;
    std::vector<std::string> record_levels(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      record_levels[i] = categorical_level(records[i], term, spec.postcode_mode);
      counts[record_levels[i]]++;
    }
    std::vector<std::string> dropped;
    for (const auto& level : canon) {
      if (counts.count(level)) {
        observed_levels.push_back(level);
      } else {
        dropped.push_back(level);
      }
    }
    for (const auto& [level, cnt] : counts) {  // extras beyond the canonical list
      if (std::find(canon.begin(), canon.end(), level) == canon.end()) {
        observed_levels.push_back(level);
      }
    }
    for (const auto& level : dropped) {
      design.warnings.push_back("categorical '" + term + "': level '" + level +
                                "' unobserved; dropped");
    }
    if (observed_levels.size() < 2) {
      design.warnings.push_back("categorical '" + term + "' has < 2 observed levels; dropped");
      continue;
    }
    CatTermLayout cat;
    cat.name = term;
    cat.enc = smooth::SumToZero::build(observed_levels);
    cat.dropped_levels = dropped;
    std::vector<int> level_idx(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto it = std::find(observed_levels.begin(), observed_levels.end(), record_levels[i]);
      level_idx[i] = static_cast<int>(it - observed_levels.begin());
    }
    cat_level_of_record.push_back(std::move(level_idx));
    layout.cats.push_back(std::move(cat));
  }

  // 1-D smooths: knots at covariate quantiles, centered basis
  std::vector<Eigen::MatrixXd> spline_bases;
  for (const auto& sterm : spec.spline_terms) {
    Eigen::VectorXd x = column_values(sterm.covariate);
    Eigen::VectorXd knots = smooth::quantile_knots(x, sterm.knots);
    if (knots.size() < sterm.knots) {
      design.warnings.push_back("smooth '" + sterm.covariate + "': quantile ties reduced knots to " +
                                std::to_string(knots.size()));
    }
    SplineTermLayout sp;
    sp.covariate = sterm.covariate;
    sp.spline = smooth::CrSpline::from_knots(knots);
    Eigen::MatrixXd b = sp.spline.basis(x);
    sp.centers = b.colwise().mean();
    b.rowwise() -= sp.centers;
    spline_bases.push_back(std::move(b));
    layout.splines.push_back(std::move(sp));
  }

  // spatial smooth
  Eigen::MatrixXd spatial_basis;
  if (spec.spatial) {
    Eigen::MatrixXd coords(n, 2);
    for (Eigen::Index i = 0; i < n; ++i) {
      coords(i, 0) = records[i].xy.x_km;
      coords(i, 1) = records[i].xy.y_km;
    }
    Eigen::MatrixXd knots = smooth::maximin_knots(coords, spec.spatial_knots, spec.knot_seed);
    if (knots.rows() < spec.spatial_knots) {
      design.warnings.push_back("spatial smooth: fewer distinct locations than requested knots (" +
                                std::to_string(knots.rows()) + ")");
    }
    const double rho = spec.spatial_rho_km > 0.0 ? spec.spatial_rho_km
                                                 : smooth::max_pairwise_distance(knots);
    SpatialTermLayout sl;
    sl.gp = smooth::GpSmooth::build(std::move(knots), rho);
    spatial_basis = sl.gp.basis(coords);
    sl.centers = spatial_basis.colwise().mean();
    spatial_basis.rowwise() -= sl.centers;
    layout.spatial = std::move(sl);
  }

  // column layout: intercept | binaries | linear | categoricals | smooths | spatial
  int c = 1 + static_cast<int>(layout.binary_cols.size()) +
          static_cast<int>(layout.linear_cols.size());
  for (auto& cat : layout.cats) {
    cat.col0 = c;
    c += cat.enc.dim();
  }
  for (auto& sp : layout.splines) {
    sp.col0 = c;
    c += sp.spline.dim();
  }
  if (layout.spatial) {
    layout.spatial->col0 = c;
    c += layout.spatial->gp.dim();
  }
  layout.ncols = c;

  design.x = Eigen::MatrixXd::Zero(n, c);
  design.x.col(0).setOnes();
  int col = 1;
  for (auto& [name, v] : binary_vals) design.x.col(col++) = v;
  for (auto& [name, v] : linear_vals) design.x.col(col++) = v;
  for (std::size_t t = 0; t < layout.cats.size(); ++t) {
    const auto& cat = layout.cats[t];
    for (Eigen::Index i = 0; i < n; ++i) {
      design.x.block(i, cat.col0, 1, cat.enc.dim()) = cat.enc.row(cat_level_of_record[t][i]);
    }
  }
  for (std::size_t t = 0; t < layout.splines.size(); ++t) {
    const auto& sp = layout.splines[t];
    design.x.block(0, sp.col0, n, sp.spline.dim()) = spline_bases[t];
  }
  if (layout.spatial) {
    design.x.block(0, layout.spatial->col0, n, layout.spatial->gp.dim()) = spatial_basis;
  }

  for (const auto& sp : layout.splines) {
    design.penalties.push_back({sp.covariate, sp.col0, sp.spline.penalty()});
  }
  if (layout.spatial) {
    design.penalties.push_back({"spatial", layout.spatial->col0, layout.spatial->gp.penalty()});
  }
  return design;
}

// ---------------------------------------------------------------------------
// Penalized least squares core
// ---------------------------------------------------------------------------

namespace {

struct FitCore {
  Eigen::MatrixXd xtx;
  Eigen::VectorXd xty;
  double yty = 0.0;
  Eigen::Index n = 0;
  const std::vector<PenaltyBlock>* penalties = nullptr;

  FitCore(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
          const std::vector<PenaltyBlock>& pen)
      : xtx(x.transpose() * x), xty(x.transpose() * y), yty(y.squaredNorm()), n(y.size()),
        penalties(&pen) {}

  PenalizedFit at(const std::vector<double>& lambda, bool want_minv) const {
    const auto p = xtx.rows();
    Eigen::MatrixXd m = xtx;
    for (std::size_t j = 0; j < penalties->size(); ++j) {
      const auto& blk = (*penalties)[j];
      m.block(blk.col0, blk.col0, blk.s.rows(), blk.s.cols()) += lambda[j] * blk.s;
    }
    PenalizedFit fit;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(m);
    if (ldlt.info() != Eigen::Success) {
      fit.gcv = std::numeric_limits<double>::infinity();
      return fit;
    }
    fit.beta = ldlt.solve(xty);
    const Eigen::MatrixXd w = ldlt.solve(xtx);  // M^-1 X'X
    fit.edf_diag = w.diagonal();
    fit.tr_influence = fit.edf_diag.sum();
    fit.rss = std::max(0.0, yty - 2.0 * fit.beta.dot(xty) + fit.beta.dot(xtx * fit.beta));
    const double denom = static_cast<double>(n) - fit.tr_influence;
    if (!(denom > 1e-8) || !fit.beta.allFinite()) {
      fit.gcv = std::numeric_limits<double>::infinity();
      return fit;
    }
    fit.sigma2 = fit.rss / denom;
    fit.gcv = static_cast<double>(n) * fit.rss / (denom * denom);
    if (want_minv) {
      fit.m_inv = ldlt.solve(Eigen::MatrixXd::Identity(p, p));
    }
    return fit;
  }
};

}  // namespace

PenalizedFit fit_at_lambda(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                           const std::vector<PenaltyBlock>& penalties,
                           const std::vector<double>& lambda) {
  return FitCore(x, y, penalties).at(lambda, true);
}

FittedModel fit_penalized(const Design& design, const ModelSpec& spec) {
  if (design.y.size() < 10) throw std::invalid_argument("fit: need n >= 10");
  if (!design.y.allFinite()) throw std::invalid_argument("fit: non-finite response");

  const FitCore core(design.x, design.y, design.penalties);
  const auto nblocks = design.penalties.size();
  std::vector<double> lambda(nblocks, 1.0);
  bool converged = true;

  if (nblocks > 0) {
    auto gcv_at = [&](const std::vector<double>& l) { return core.at(l, false).gcv; };
    double current = gcv_at(lambda);
    converged = false;
    constexpr double kGolden = 0.6180339887498949;
    for (int cycle = 0; cycle < 50 && !converged; ++cycle) {
      const double start = current;
      for (std::size_t j = 0; j < nblocks; ++j) {
        auto f = [&](double t) {
          std::vector<double> l = lambda;
          l[j] = std::pow(10.0, t);
          return gcv_at(l);
        };
        double a = -8.0, b = 8.0;
        double c = b - kGolden * (b - a);
        double d = a + kGolden * (b - a);
        double fc = f(c), fd = f(d);
        while (b - a > 1e-3) {
          if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kGolden * (b - a);
            fc = f(c);
          } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kGolden * (b - a);
            fd = f(d);
          }
        }
        const double t_best = fc < fd ? c : d;
        const double f_best = std::min(fc, fd);
        if (f_best < current) {
          lambda[j] = std::pow(10.0, t_best);
          current = f_best;
        }
      }
      if (std::abs(start - current) < 1e-7 * std::max(1.0, std::abs(start))) converged = true;
    }
  }

  const PenalizedFit fit = core.at(lambda, true);
  if (!std::isfinite(fit.gcv)) throw std::runtime_error("fit: singular normal equations");

  FittedModel model;
  model.spec = spec;
  model.layout = design.layout;
  model.beta = fit.beta;
  model.sigma2 = fit.sigma2;
  model.covariance = fit.sigma2 * fit.m_inv;
  model.gcv = fit.gcv;
  model.gcv_converged = converged;
  model.lambda = lambda;
  model.edf_total = fit.tr_influence;
  model.n_train = static_cast<long long>(design.y.size());
  model.warnings = design.warnings;
  if (!converged) model.warnings.push_back("gcv: search did not converge in 50 cycles");
  for (std::size_t j = 0; j < nblocks; ++j) {
    const auto& blk = design.penalties[j];
    model.penalty_terms.push_back(blk.term);
    model.edf.push_back(fit.edf_diag.segment(blk.col0, blk.s.rows()).sum());
  }
  return model;
}

FittedModel fit_model(std::span<const PropertyRecord> records, const ModelSpec& spec) {
  const Design design = build_design(records, spec);
  FittedModel model = fit_penalized(design, spec);
  if (!records.empty()) {
    double x0 = records[0].xy.x_km, x1 = x0, y0 = records[0].xy.y_km, y1 = y0;
    for (const auto& r : records) {
      x0 = std::min(x0, r.xy.x_km);
      x1 = std::max(x1, r.xy.x_km);
      y0 = std::min(y0, r.xy.y_km);
      y1 = std::max(y1, r.xy.y_km);
    }
    model.train_bbox = {x0, x1, y0, y1};
  }
  return model;
}

double penalized_objective(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                           const std::vector<PenaltyBlock>& penalties,
                           const std::vector<double>& lambda, const Eigen::VectorXd& beta) {
  double obj = (y - x * beta).squaredNorm();
  for (std::size_t j = 0; j < penalties.size(); ++j) {
    const auto& blk = penalties[j];
    const Eigen::VectorXd seg = beta.segment(blk.col0, blk.s.rows());
    obj += lambda[j] * seg.dot(blk.s * seg);
  }
  return obj;
}

Eigen::VectorXd penalized_gradient(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                   const std::vector<PenaltyBlock>& penalties,
                                   const std::vector<double>& lambda,
                                   const Eigen::VectorXd& beta) {
  Eigen::VectorXd grad = 2.0 * (x.transpose() * (x * beta - y));
  for (std::size_t j = 0; j < penalties.size(); ++j) {
    const auto& blk = penalties[j];
    grad.segment(blk.col0, blk.s.rows()) +=
        2.0 * lambda[j] * (blk.s * beta.segment(blk.col0, blk.s.rows()));
  }
  return grad;
}

// ---------------------------------------------------------------------------
// Prediction and interpretation
// ---------------------------------------------------------------------------

Prediction predict(const FittedModel& model, const PropertyRecord& rec) {
  const Eigen::RowVectorXd row = model.layout.row(rec);
  Prediction pred;
  pred.log_point = row.dot(model.beta);
  const double var = (row * model.covariance).dot(row) + model.sigma2;
  pred.se = std::sqrt(std::max(0.0, var));
  pred.log_lo50 = pred.log_point - kZ50 * pred.se;
  pred.log_hi50 = pred.log_point + kZ50 * pred.se;
  pred.log_lo95 = pred.log_point - kZ95 * pred.se;
  pred.log_hi95 = pred.log_point + kZ95 * pred.se;
  const double size = rec.raw.size_m2;
  pred.price_point = std::exp(pred.log_point) * size;
  pred.price_lo50 = std::exp(pred.log_lo50) * size;
  pred.price_hi50 = std::exp(pred.log_hi50) * size;
  pred.price_lo95 = std::exp(pred.log_lo95) * size;
  pred.price_hi95 = std::exp(pred.log_hi95) * size;
  return pred;
}

std::vector<Scaling> coefficient_scalings(const FittedModel& model) {
  std::vector<Scaling> out;
  int col = 1;
  for (const auto& name : model.layout.binary_cols) {
    Scaling s;
    s.group = "binary";
    s.name = name;
    s.coefficient = model.beta[col];
    s.se = std::sqrt(std::max(0.0, model.covariance(col, col)));
    s.scaling = std::exp(s.coefficient);
    s.lo = std::exp(s.coefficient - 1.96 * s.se);
    s.hi = std::exp(s.coefficient + 1.96 * s.se);
    out.push_back(std::move(s));
    ++col;
  }
  for (const auto& cat : model.layout.cats) {
    const int d = cat.enc.dim();
    const Eigen::VectorXd theta = model.beta.segment(cat.col0, d);
    const Eigen::VectorXd alpha = cat.enc.contrast * theta;
    const Eigen::MatrixXd cov_alpha = cat.enc.contrast *
                                      model.covariance.block(cat.col0, cat.col0, d, d) *
                                      cat.enc.contrast.transpose();
    for (std::size_t i = 0; i < cat.enc.levels.size(); ++i) {
      Scaling s;
      s.group = cat.name;
      s.name = cat.enc.levels[i];
      s.coefficient = alpha[static_cast<Eigen::Index>(i)];
      s.se = std::sqrt(std::max(0.0, cov_alpha(i, i)));
      s.scaling = std::exp(s.coefficient);
      s.lo = std::exp(s.coefficient - 1.96 * s.se);
      s.hi = std::exp(s.coefficient + 1.96 * s.se);
      out.push_back(std::move(s));
    }
  }
  return out;
}

double premium_percent(double scaling_a, double scaling_b) {
  if (!(scaling_a > 0.0) || !(scaling_b > 0.0)) {
    throw std::invalid_argument("premium: scalings must be positive");
  }
  return 100.0 * (1.0 - scaling_b / scaling_a);
}

CurveBand smooth_band(const FittedModel& model, const std::string& covariate,
                      const Eigen::VectorXd& xs) {
  for (const auto& sp : model.layout.splines) {
    if (sp.covariate != covariate) continue;
    const int d = sp.spline.dim();
    const Eigen::VectorXd beta = model.beta.segment(sp.col0, d);
    const Eigen::MatrixXd cov = model.covariance.block(sp.col0, sp.col0, d, d);
    CurveBand band;
    band.fit.resize(xs.size());
    band.se.resize(xs.size());
    for (Eigen::Index i = 0; i < xs.size(); ++i) {
      const Eigen::RowVectorXd row = sp.spline.row(xs[i]) - sp.centers;
      band.fit[i] = row.dot(beta);
      band.se[i] = std::sqrt(std::max(0.0, (row * cov).dot(row)));
    }
    return band;
  }
  throw std::invalid_argument("no spline term for covariate '" + covariate + "'");
}

SpatialValue spatial_value(const FittedModel& model, double x_km, double y_km) {
  if (!model.layout.spatial) throw std::invalid_argument("model has no spatial term");
  const auto& sl = *model.layout.spatial;
  const int d = sl.gp.dim();
  const Eigen::RowVectorXd row = sl.gp.row(x_km, y_km) - sl.centers;
  SpatialValue v;
  v.fit = row.dot(model.beta.segment(sl.col0, d));
  v.se = std::sqrt(std::max(
      0.0, (row * model.covariance.block(sl.col0, sl.col0, d, d)).dot(row)));
  return v;
}

}  // namespace hedonic::fit
