#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace hedonic::smooth {

// Spatial covariance kernel: sigma2 * (1 + r/rho) * exp(-r/rho).
// One range parameter; r in km. Throws for rho <= 0 or sigma2 <= 0.
double kernel(double r, double rho, double sigma2);

// Knots at equally spaced quantile levels 0, 1/(k-1), ..., 1 of x
// (type-7 quantiles, linear interpolation), deduplicated. Throws when x
// has fewer than two distinct values. The returned knot count may be
// below k when quantiles tie; callers treat that as a warning.
Eigen::VectorXd quantile_knots(const Eigen::VectorXd& x, int k);

// Natural cubic regression spline on a fixed knot set, cardinal
// (value-at-knot) parameterization: basis function j is 1 at knot j and 0
// at the others. The penalty is the integrated squared second derivative,
// whose null space is exactly the affine functions of the covariate.
// Evaluation outside the knot range extrapolates linearly.
class CrSpline {
 public:
  static CrSpline from_knots(Eigen::VectorXd knots);  // dedupes; throws if < 3 remain

  int dim() const { return static_cast<int>(knots_.size()); }
  const Eigen::VectorXd& knots() const { return knots_; }
  const Eigen::MatrixXd& penalty() const { return penalty_; }

  Eigen::RowVectorXd row(double x) const;
  Eigen::MatrixXd basis(const Eigen::VectorXd& x) const;

  // Second derivative of the fitted spline at x for coefficient recovery
  // checks: f''(x) = second_deriv_row(x) . coefficients.
  Eigen::RowVectorXd second_deriv_row(double x) const;

 private:
  Eigen::VectorXd knots_;
  Eigen::MatrixXd value_to_curvature_;  // k x k, rows 0 and k-1 zero
  Eigen::MatrixXd penalty_;             // k x k PSD
};

// Convenience mirroring the basis/penalty pair contract.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> cr_basis(const Eigen::VectorXd& x,
                                                     const Eigen::VectorXd& knots);

// Farthest-point (maximin) subset of size k from the distinct rows of
// coords (n x 2). The first point is seeded; every further point maximizes
// its minimum distance to the chosen set. Returns all distinct points when
// fewer than k exist.
Eigen::MatrixXd maximin_knots(const Eigen::MatrixXd& coords, int k, std::uint64_t seed);

// Low-rank Gaussian-process smooth: basis column j evaluates the kernel
// against knot j, the penalty is the kernel Gram matrix at the knots with
// a ridge of 1e-8 * trace/k on the diagonal.
class GpSmooth {
 public:
  static GpSmooth build(Eigen::MatrixXd knots, double rho, double sigma2 = 1.0);

  int dim() const { return static_cast<int>(knots_.rows()); }
  const Eigen::MatrixXd& knots() const { return knots_; }
  double rho() const { return rho_; }
  double sigma2() const { return sigma2_; }
  const Eigen::MatrixXd& penalty() const { return penalty_; }

  Eigen::RowVectorXd row(double x_km, double y_km) const;
  Eigen::MatrixXd basis(const Eigen::MatrixXd& coords) const;

 private:
  Eigen::MatrixXd knots_;  // k x 2 planar km
  double rho_ = 0.0;
  double sigma2_ = 1.0;
  Eigen::MatrixXd penalty_;
};

// Full term as assembled for a data set (spec-facing wrapper).
struct GpTerm {
  GpSmooth smooth;
  Eigen::MatrixXd basis;  // n x k at the coords the term was built from
};
GpTerm gp_term(const Eigen::MatrixXd& coords, Eigen::MatrixXd knots, double rho);

// Largest pairwise distance among knot rows; the default kernel range.
double max_pairwise_distance(const Eigen::MatrixXd& knots);

// Sum-to-zero categorical encoding: free coefficients theta (m-1) map to
// full-level coefficients via `contrast`, and the recovered coefficients
// always sum to zero.
struct SumToZero {
  std::vector<std::string> levels;
  Eigen::MatrixXd contrast;  // m x (m-1): [I; -1^T]

  static SumToZero build(std::vector<std::string> levels);
  int dim() const { return static_cast<int>(contrast.cols()); }
  Eigen::RowVectorXd row(int level_index) const { return contrast.row(level_index); }
};

}  // namespace hedonic::smooth
