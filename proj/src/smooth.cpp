#include "hedonic/smooth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hedonic/rng.hpp"

namespace hedonic::smooth {

double kernel(double r, double rho, double sigma2) {
  if (!(rho > 0.0)) throw std::invalid_argument("kernel: rho must be > 0");
  if (!(sigma2 > 0.0)) throw std::invalid_argument("kernel: sigma2 must be > 0");
  const double a = std::abs(r) / rho;
  return sigma2 * (1.0 + a) * std::exp(-a);
}

Eigen::VectorXd quantile_knots(const Eigen::VectorXd& x, int k) {
  if (k < 2) throw std::invalid_argument("quantile_knots: k must be >= 2");
  if (x.size() < 2) throw std::invalid_argument("quantile_knots: need >= 2 values");
  std::vector<double> sorted(x.data(), x.data() + x.size());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() == sorted.back()) {
    throw std::invalid_argument("quantile_knots: covariate is constant");
  }
  const auto n = static_cast<double>(sorted.size());
  std::vector<double> knots;
  knots.reserve(k);
  for (int i = 0; i < k; ++i) {
    const double p = static_cast<double>(i) / (k - 1);
    // type-7: h = (n-1)p, linear interpolation between order statistics
    const double h = (n - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double q = sorted[lo] + (h - std::floor(h)) * (sorted[hi] - sorted[lo]);
    if (knots.empty() || q > knots.back()) knots.push_back(q);
  }
  return Eigen::Map<Eigen::VectorXd>(knots.data(), static_cast<Eigen::Index>(knots.size()));
}

CrSpline CrSpline::from_knots(Eigen::VectorXd knots) {
  std::vector<double> sorted(knots.data(), knots.data() + knots.size());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  const int k = static_cast<int>(sorted.size());
  if (k < 3) throw std::invalid_argument("cr_spline: need >= 3 distinct knots");

  CrSpline s;
  s.knots_ = Eigen::Map<Eigen::VectorXd>(sorted.data(), k);

  Eigen::VectorXd h(k - 1);
  for (int j = 0; j + 1 < k; ++j) h[j] = sorted[j + 1] - sorted[j];

  // D maps knot values to scaled second differences, B couples adjacent
  // curvatures; curvature at interior knots is B^-1 D beta, zero at the ends.
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(k - 2, k);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(k - 2, k - 2);
  for (int i = 0; i < k - 2; ++i) {
    d(i, i) = 1.0 / h[i];
    d(i, i + 1) = -1.0 / h[i] - 1.0 / h[i + 1];
    d(i, i + 2) = 1.0 / h[i + 1];
    b(i, i) = (h[i] + h[i + 1]) / 3.0;
    if (i + 1 < k - 2) {
      b(i, i + 1) = h[i + 1] / 6.0;
      b(i + 1, i) = h[i + 1] / 6.0;
    }
  }
  const Eigen::MatrixXd f = b.ldlt().solve(d);  // (k-2) x k

  s.value_to_curvature_ = Eigen::MatrixXd::Zero(k, k);
  s.value_to_curvature_.block(1, 0, k - 2, k) = f;

  s.penalty_ = d.transpose() * f;
  s.penalty_ = 0.5 * (s.penalty_ + s.penalty_.transpose().eval());  // exact symmetry
  return s;
}

Eigen::RowVectorXd CrSpline::row(double x) const {
  const int k = dim();
  Eigen::RowVectorXd out = Eigen::RowVectorXd::Zero(k);
  const double x0 = knots_[0], xk = knots_[k - 1];

  if (x <= x0) {
    const double h0 = knots_[1] - knots_[0];
    out[0] = 1.0;
    Eigen::RowVectorXd slope = -(h0 / 6.0) * value_to_curvature_.row(1);
    slope[0] -= 1.0 / h0;
    slope[1] += 1.0 / h0;
    out += (x - x0) * slope;
    return out;
  }
  if (x >= xk) {
    const double hl = knots_[k - 1] - knots_[k - 2];
    out[k - 1] = 1.0;
    Eigen::RowVectorXd slope = (hl / 6.0) * value_to_curvature_.row(k - 2);
    slope[k - 2] -= 1.0 / hl;
    slope[k - 1] += 1.0 / hl;
    out += (x - xk) * slope;
    return out;
  }

  // interval index j with knots[j] <= x < knots[j+1]
  int j = static_cast<int>(std::upper_bound(knots_.data(), knots_.data() + k, x) - knots_.data()) - 1;
  j = std::clamp(j, 0, k - 2);
  const double h = knots_[j + 1] - knots_[j];
  const double left = knots_[j + 1] - x;
  const double right = x - knots_[j];
  const double a_minus = left / h;
  const double a_plus = right / h;
  const double c_minus = (left * left * left / h - h * left) / 6.0;
  const double c_plus = (right * right * right / h - h * right) / 6.0;
  out[j] += a_minus;
  out[j + 1] += a_plus;
  out += c_minus * value_to_curvature_.row(j) + c_plus * value_to_curvature_.row(j + 1);
  return out;
}

Eigen::RowVectorXd CrSpline::second_deriv_row(double x) const {
  const int k = dim();
  if (x <= knots_[0] || x >= knots_[k - 1]) return Eigen::RowVectorXd::Zero(k);
  int j = static_cast<int>(std::upper_bound(knots_.data(), knots_.data() + k, x) - knots_.data()) - 1;
  j = std::clamp(j, 0, k - 2);
  const double h = knots_[j + 1] - knots_[j];
  const double a_minus = (knots_[j + 1] - x) / h;
  const double a_plus = (x - knots_[j]) / h;
  return a_minus * value_to_curvature_.row(j) + a_plus * value_to_curvature_.row(j + 1);
}

Eigen::MatrixXd CrSpline::basis(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd out(x.size(), dim());
  for (Eigen::Index i = 0; i < x.size(); ++i) out.row(i) = row(x[i]);
  return out;
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> cr_basis(const Eigen::VectorXd& x,
                                                     const Eigen::VectorXd& knots) {
  const CrSpline s = CrSpline::from_knots(knots);
  return {s.basis(x), s.penalty()};
}

Eigen::MatrixXd maximin_knots(const Eigen::MatrixXd& coords, int k, std::uint64_t seed) {
  if (coords.cols() != 2) throw std::invalid_argument("maximin_knots: coords must be n x 2");
  if (k < 1) throw std::invalid_argument("maximin_knots: k must be >= 1");

  // distinct rows, keeping first occurrence order
  std::vector<Eigen::Index> distinct;
  for (Eigen::Index i = 0; i < coords.rows(); ++i) {
    bool dup = false;
    for (Eigen::Index j : distinct) {
      if (coords(j, 0) == coords(i, 0) && coords(j, 1) == coords(i, 1)) {
        dup = true;
        break;
      }
    }
    if (!dup) distinct.push_back(i);
  }
  const auto m = static_cast<Eigen::Index>(distinct.size());
  if (m == 0) throw std::invalid_argument("maximin_knots: no points");

  const auto take = std::min<Eigen::Index>(k, m);
  std::vector<Eigen::Index> chosen;
  chosen.reserve(take);
  if (take == m) {
    chosen = distinct;
  } else {
    Rng rng(seed);
    chosen.push_back(distinct[static_cast<std::size_t>(rng.uniform_int(0, m - 1))]);
    std::vector<double> min_dist(m, std::numeric_limits<double>::infinity());
    while (static_cast<Eigen::Index>(chosen.size()) < take) {
      const Eigen::Index last = chosen.back();
      Eigen::Index best = -1;
      double best_dist = -1.0;
      for (Eigen::Index ii = 0; ii < m; ++ii) {
        const Eigen::Index i = distinct[ii];
        const double dx = coords(i, 0) - coords(last, 0);
        const double dy = coords(i, 1) - coords(last, 1);
        min_dist[ii] = std::min(min_dist[ii], std::sqrt(dx * dx + dy * dy));
        if (min_dist[ii] > best_dist) {
          best_dist = min_dist[ii];
          best = i;
        }
      }
      chosen.push_back(best);
    }
  }

  Eigen::MatrixXd out(static_cast<Eigen::Index>(chosen.size()), 2);
  for (Eigen::Index i = 0; i < out.rows(); ++i) out.row(i) = coords.row(chosen[i]);
  return out;
}

GpSmooth GpSmooth::build(Eigen::MatrixXd knots, double rho, double sigma2) {
  if (!(rho > 0.0)) throw std::invalid_argument("gp: rho must be > 0");
  if (knots.cols() != 2 || knots.rows() < 1) {
    throw std::invalid_argument("gp: knots must be k x 2 with k >= 1");
  }
  GpSmooth g;
  g.knots_ = std::move(knots);
  g.rho_ = rho;
  g.sigma2_ = sigma2;
  const int k = g.dim();
  g.penalty_.resize(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double dx = g.knots_(i, 0) - g.knots_(j, 0);
      const double dy = g.knots_(i, 1) - g.knots_(j, 1);
      const double v = kernel(std::sqrt(dx * dx + dy * dy), rho, sigma2);
      g.penalty_(i, j) = v;
      g.penalty_(j, i) = v;
    }
  }
  const double jitter = 1e-8 * g.penalty_.trace() / k;
  g.penalty_.diagonal().array() += jitter;
  return g;
}

Eigen::RowVectorXd GpSmooth::row(double x_km, double y_km) const {
  Eigen::RowVectorXd out(dim());
  for (int j = 0; j < dim(); ++j) {
    const double dx = x_km - knots_(j, 0);
    const double dy = y_km - knots_(j, 1);
    out[j] = kernel(std::sqrt(dx * dx + dy * dy), rho_, sigma2_);
  }
  return out;
}

Eigen::MatrixXd GpSmooth::basis(const Eigen::MatrixXd& coords) const {
  if (coords.cols() != 2) throw std::invalid_argument("gp: coords must be n x 2");
  Eigen::MatrixXd out(coords.rows(), dim());
  for (Eigen::Index i = 0; i < coords.rows(); ++i) out.row(i) = row(coords(i, 0), coords(i, 1));
  return out;
}

GpTerm gp_term(const Eigen::MatrixXd& coords, Eigen::MatrixXd knots, double rho) {
  GpTerm term{GpSmooth::build(std::move(knots), rho), {}};
  term.basis = term.smooth.basis(coords);
  return term;
}

double max_pairwise_distance(const Eigen::MatrixXd& knots) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < knots.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < knots.rows(); ++j) {
      const double dx = knots(i, 0) - knots(j, 0);
      const double dy = knots(i, 1) - knots(j, 1);
      best = std::max(best, std::sqrt(dx * dx + dy * dy));
    }
  }
  return best;
}

SumToZero SumToZero::build(std::vector<std::string> levels) {
  const int m = static_cast<int>(levels.size());
  if (m < 2) throw std::invalid_argument("sum_to_zero: need >= 2 levels");
  SumToZero enc;
  enc.levels = std::move(levels);
  enc.contrast = Eigen::MatrixXd::Zero(m, m - 1);
  enc.contrast.topRows(m - 1) = Eigen::MatrixXd::Identity(m - 1, m - 1);
  enc.contrast.row(m - 1).setConstant(-1.0);
  return enc;
}

}  // namespace hedonic::smooth
