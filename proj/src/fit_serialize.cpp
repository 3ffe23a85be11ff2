#include <fstream>
#include <sstream>

#include "hedonic/fit.hpp"
#include "json.hpp"

namespace hedonic::fit {

namespace {

using json = nlohmann::ordered_json;

json vec_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json rowvec_to_json(const Eigen::RowVectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json mat_to_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

Eigen::VectorXd vec_from_json(const json& j) {
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

Eigen::RowVectorXd rowvec_from_json(const json& j) {
  Eigen::RowVectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

Eigen::MatrixXd mat_from_json(const json& j) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows > 0 ? static_cast<Eigen::Index>(j[0].size()) : 0;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = j[i][c].get<double>();
  }
  return m;
}

}  // namespace

std::string model_to_json(const FittedModel& model) {
  json j;
  j["format"] = "hedonic-model";
  j["version"] = 1;

  json spec;
  spec["name"] = model.spec.name;
  spec["postcode_mode"] = to_string(model.spec.postcode_mode);
  spec["binary_terms"] = model.spec.binary_terms;
  spec["linear_terms"] = model.spec.linear_terms;
  json splines = json::array();
  for (const auto& s : model.spec.spline_terms) {
    splines.push_back({{"covariate", s.covariate}, {"knots", s.knots}});
  }
  spec["spline_terms"] = std::move(splines);
  spec["categorical_terms"] = model.spec.categorical_terms;
  spec["spatial"] = model.spec.spatial;
  spec["spatial_knots"] = model.spec.spatial_knots;
  spec["spatial_rho_km"] = model.spec.spatial_rho_km;
  spec["knot_seed"] = model.spec.knot_seed;
  j["spec"] = std::move(spec);

  json layout;
  layout["binary_cols"] = model.layout.binary_cols;
  layout["linear_cols"] = model.layout.linear_cols;
  json cats = json::array();
  for (const auto& cat : model.layout.cats) {
    cats.push_back({{"name", cat.name},
                    {"levels", cat.enc.levels},
                    {"dropped_levels", cat.dropped_levels},
                    {"col0", cat.col0}});
  }
  layout["cats"] = std::move(cats);
  json spl = json::array();
  for (const auto& sp : model.layout.splines) {
    json e;
    e["covariate"] = sp.covariate;
    e["knots"] = vec_to_json(sp.spline.knots());
    e["centers"] = rowvec_to_json(sp.centers);
    e["col0"] = sp.col0;
    spl.push_back(std::move(e));
  }
  layout["splines"] = std::move(spl);
  if (model.layout.spatial) {
    const auto& s = *model.layout.spatial;
    json e;
    e["knots"] = mat_to_json(s.gp.knots());
    e["rho"] = s.gp.rho();
    e["sigma2"] = s.gp.sigma2();
    e["centers"] = rowvec_to_json(s.centers);
    e["col0"] = s.col0;
    layout["spatial"] = std::move(e);
  }
  layout["ncols"] = model.layout.ncols;
  j["layout"] = std::move(layout);

  j["beta"] = vec_to_json(model.beta);
  j["covariance"] = mat_to_json(model.covariance);
  j["sigma2"] = model.sigma2;
  j["gcv"] = model.gcv;
  j["gcv_converged"] = model.gcv_converged;
  j["penalty_terms"] = model.penalty_terms;
  j["lambda"] = model.lambda;
  j["edf"] = model.edf;
  j["edf_total"] = model.edf_total;
  j["n_train"] = model.n_train;
  j["train_bbox"] = model.train_bbox;
  j["warnings"] = model.warnings;
  return j.dump(1);
}

FittedModel model_from_json(const std::string& text) {
  const json j = json::parse(text);
  if (j.value("format", "") != "hedonic-model") {
    throw std::runtime_error("model file: unrecognized format");
  }

  FittedModel model;
  const json& spec = j.at("spec");
  model.spec.name = spec.at("name").get<std::string>();
  model.spec.postcode_mode = postcode_mode_from_string(spec.at("postcode_mode").get<std::string>());
  model.spec.binary_terms = spec.at("binary_terms").get<std::vector<std::string>>();
  model.spec.linear_terms = spec.at("linear_terms").get<std::vector<std::string>>();
  for (const auto& e : spec.at("spline_terms")) {
    model.spec.spline_terms.push_back(
        {e.at("covariate").get<std::string>(), e.at("knots").get<int>()});
  }
  model.spec.categorical_terms = spec.at("categorical_terms").get<std::vector<std::string>>();
  model.spec.spatial = spec.at("spatial").get<bool>();
  model.spec.spatial_knots = spec.at("spatial_knots").get<int>();
  model.spec.spatial_rho_km = spec.at("spatial_rho_km").get<double>();
  model.spec.knot_seed = spec.at("knot_seed").get<std::uint64_t>();

  const json& layout = j.at("layout");
  model.layout.postcode_mode = model.spec.postcode_mode;
  model.layout.binary_cols = layout.at("binary_cols").get<std::vector<std::string>>();
  model.layout.linear_cols = layout.at("linear_cols").get<std::vector<std::string>>();
  for (const auto& e : layout.at("cats")) {
    CatTermLayout cat;
    cat.name = e.at("name").get<std::string>();
    cat.enc = smooth::SumToZero::build(e.at("levels").get<std::vector<std::string>>());
    cat.dropped_levels = e.at("dropped_levels").get<std::vector<std::string>>();
    cat.col0 = e.at("col0").get<int>();
    model.layout.cats.push_back(std::move(cat));
  }
  for (const auto& e : layout.at("splines")) {
    SplineTermLayout sp;
    sp.covariate = e.at("covariate").get<std::string>();
    sp.spline = smooth::CrSpline::from_knots(vec_from_json(e.at("knots")));
    sp.centers = rowvec_from_json(e.at("centers"));
    sp.col0 = e.at("col0").get<int>();
    model.layout.splines.push_back(std::move(sp));
  }
  if (layout.contains("spatial")) {
    const auto& e = layout.at("spatial");
    SpatialTermLayout sl;
    sl.gp = smooth::GpSmooth::build(mat_from_json(e.at("knots")), e.at("rho").get<double>(),
                                    e.at("sigma2").get<double>());
    sl.centers = rowvec_from_json(e.at("centers"));
    sl.col0 = e.at("col0").get<int>();
    model.layout.spatial = std::move(sl);
  }
  model.layout.ncols = layout.at("ncols").get<int>();

  model.beta = vec_from_json(j.at("beta"));
  model.covariance = mat_from_json(j.at("covariance"));
  model.sigma2 = j.at("sigma2").get<double>();
  model.gcv = j.at("gcv").get<double>();
  model.gcv_converged = j.at("gcv_converged").get<bool>();
  model.penalty_terms = j.at("penalty_terms").get<std::vector<std::string>>();
  model.lambda = j.at("lambda").get<std::vector<double>>();
  model.edf = j.at("edf").get<std::vector<double>>();
  model.edf_total = j.at("edf_total").get<double>();
  model.n_train = j.at("n_train").get<long long>();
  model.train_bbox = j.at("train_bbox").get<std::array<double, 4>>();
  model.warnings = j.at("warnings").get<std::vector<std::string>>();
  return model;
}

void save_model(const std::string& path, const FittedModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_model: cannot open " + path);
  out << model_to_json(model);
}

FittedModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_model: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

}  // namespace hedonic::fit
