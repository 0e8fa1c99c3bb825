#pragma once

// Error measures between a reconstructed and a true boundary.

#include <vector>

#include "ecoinv/geometry.hpp"

namespace ecoinv::metrics {

inline constexpr std::size_t kMetricPoints = 512;

/// ||r~ - r||_2 / ||r||_2 over equispaced polar angles. Both curves must be
/// star-like about the origin.
double radial_relative_error(const ClosedCurve& reconstructed, const ClosedCurve& truth,
                             std::size_t angles = kMetricPoints);

/// Radial error restricted to the angles with cos(theta - center) >= 0, and
/// to the complementary half. Both are relative to ||r||_2 on their half.
struct HalfErrors {
  double facing = 0.0;
  double opposite = 0.0;
};
HalfErrors half_radial_errors(const ClosedCurve& reconstructed, const ClosedCurve& truth, double center_angle,
                              std::size_t angles = kMetricPoints);

/// Pointwise |r~(theta) - r(theta)| at equispaced angles.
std::vector<double> radial_deviation(const ClosedCurve& reconstructed, const ClosedCurve& truth,
                                     std::size_t angles = kMetricPoints);

/// Symmetric Hausdorff distance between the closed polylines through
/// `points` equispaced parameter samples of each curve.
double hausdorff(const ClosedCurve& a, const ClosedCurve& b, std::size_t points = kMetricPoints);
double hausdorff(const std::vector<Vec2>& a, const std::vector<Vec2>& b);

/// Smallest angle between two undirected polarizations, in [0, pi/2].
double polarization_angle_error(const Vec2& estimate, const Vec2& truth);

}  // namespace ecoinv::metrics

namespace ecoinv::metrics {

/// Mean distance from truth samples to the reconstructed polyline, split by
/// the sign of the truth curvature.
struct ArcSplit {
  double convex_mean = 0.0;
  double concave_mean = 0.0;
  std::size_t convex_count = 0;
  std::size_t concave_count = 0;
};
ArcSplit convexity_split(const ClosedCurve& reconstructed, const ClosedCurve& truth,
                         std::size_t points = kMetricPoints);

}  // namespace ecoinv::metrics
