#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ecoinv/types.hpp"

namespace ecoinv {

/// Quadrature nodes of a closed curve: equispaced parameters t_j = 2 pi j / n,
/// points x(t_j) and trapezoid weights |x'(t_j)| 2 pi / n.
struct CurveNodes {
  std::vector<double> params;
  std::vector<Vec2> points;
  std::vector<double> weights;

  std::size_t size() const { return points.size(); }
  double length() const;
};

/// A smooth closed curve t -> x(t), t in [0, 2 pi), with its tangent.
class ClosedCurve {
 public:
  using Map = std::function<Vec2(double)>;

  ClosedCurve(Map point, Map tangent) : point_(std::move(point)), tangent_(std::move(tangent)) {}

  Vec2 point(double t) const { return point_(t); }
  Vec2 tangent(double t) const { return tangent_(t); }

  /// n equispaced nodes with trapezoid weights. Throws ValidationError for n < 3.
  CurveNodes discretize(std::size_t n) const;

  /// Homothetic copy about the origin.
  ClosedCurve scaled(double factor) const;
  /// Copy rotated about the origin by `angle`.
  ClosedCurve rotated(double angle) const;

  /// Winding-number test against a fine polygonal approximation.
  bool contains(const Vec2& x) const;
  /// Distance from x to a fine polygonal approximation of the curve.
  double distance(const Vec2& x) const;

 private:
  Map point_;
  Map tangent_;
};

namespace geometry {

ClosedCurve circle(double radius, const Vec2& center = Vec2::Zero());

/// (1 + 0.2 cos L t)(cos t, sin t).
ClosedCurve l_leaf(int leaves);

/// (cos t + 0.65 cos 2t - 0.65, 1.5 sin t).
ClosedCurve kite();

/// Obstacles addressable by name: "circle" (param = radius), "leaf" /
/// "L-leaf" (param = L, 3 or 5), "kite". Throws ValidationError otherwise.
ClosedCurve make_named_shape(const std::string& name, double param = 0.0);

/// Equispaced receiver ring: nodes at angle 2 pi i / count, weights 2 pi radius / count.
CurveNodes ring(double radius, std::size_t count);

/// Trapezoid rule with the nodes' weights.
cplx integrate(const CurveNodes& nodes, const std::vector<cplx>& values);

}  // namespace geometry

/// C^2 periodic cubic spline through equispaced knots on [0, 2 pi).
class PeriodicCubicSpline {
 public:
  explicit PeriodicCubicSpline(std::vector<double> knot_values);

  double operator()(double t) const;
  double derivative(double t) const;

  const std::vector<double>& knot_values() const { return values_; }
  std::size_t knot_count() const { return values_.size(); }
  double knot(std::size_t i) const;

 private:
  std::vector<double> values_;
  std::vector<double> second_;  // second derivatives at the knots
  double h_ = 0.0;
};

/// Star-like curve r(t)(cos t, sin t) with a trigonometric radial function
///   r(t) = a_0 + sum_{l=1}^M (a_l cos l t + b_l sin l t).
/// Coefficients are stored as (a_0, a_1..a_M, b_1..b_M).
class StarShape {
 public:
  /// Points checked when enforcing positivity of the radial function.
  static constexpr std::size_t kCheckPoints = 512;

  /// Throws GeometryError unless r(t) > 0 on the check grid.
  explicit StarShape(Eigen::VectorXd coefficients);

  static StarShape circle(double radius, int degree);

  int degree() const { return static_cast<int>((coeffs_.size() - 1) / 2); }
  const Eigen::VectorXd& coefficients() const { return coeffs_; }

  double radius(double t) const;
  double radius_derivative(double t) const;
  /// Row B(t) = (1, cos t, .., cos M t, sin t, .., sin M t) with r(t) = B(t) c.
  Eigen::RowVectorXd basis_row(double t) const;
  /// Minimum of r over the check grid.
  double min_radius() const;

  Vec2 point(double t) const;
  ClosedCurve to_curve() const;

 private:
  Eigen::VectorXd coeffs_;
};

/// Positivity test used by the constructor and by callers that want to probe
/// a candidate without throwing.
double min_radius_on_grid(const Eigen::VectorXd& coefficients, std::size_t points = StarShape::kCheckPoints);
Eigen::RowVectorXd fourier_row(double t, int degree);

namespace geometry {

/// Evaluates the star shape at n equispaced parameters.
CurveNodes shape_to_curve(const StarShape& shape, std::size_t n_nodes);

/// Least-squares fit of a degree-M radial function to points sampled on a
/// star-like curve; angles and radii are taken in polar coordinates about
/// the origin. Throws ValidationError if fewer than 2M+1 samples are given.
StarShape fit_star(const std::vector<Vec2>& samples, int degree);

/// Obstacles of the random-shape experiment: N_t uniformly in {8..20},
/// knots T_t = 2 pi t / N_t, radii U[0.8, 1.8], periodic cubic spline.
struct RandomStar {
  std::uint64_t seed = 0;
  PeriodicCubicSpline spline;
  ClosedCurve curve;
};
RandomStar random_star_shape(std::uint64_t seed);

/// Radius of a curve that is star-like about the origin, along the ray at
/// polar angle theta (found by bisection on the curve parameter).
double polar_radius(const ClosedCurve& curve, double theta);

}  // namespace geometry

/// Rectangular lattice of sampling points with both endpoints included.
class SamplingGrid {
 public:
  SamplingGrid(double xmin, double xmax, double ymin, double ymax, std::size_t nx, std::size_t ny);

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  std::size_t size() const { return nx_ * ny_; }
  double xmin() const { return xmin_; }
  double xmax() const { return xmax_; }
  double ymin() const { return ymin_; }
  double ymax() const { return ymax_; }

  /// Linear index = iy * nx + ix.
  Vec2 point(std::size_t index) const;
  Vec2 point(std::size_t ix, std::size_t iy) const;

  /// Throws GeometryError unless every point lies strictly inside the circle of `radius`.
  void require_inside(double radius) const;

 private:
  double xmin_, xmax_, ymin_, ymax_;
  std::size_t nx_, ny_;
};

}  // namespace ecoinv
