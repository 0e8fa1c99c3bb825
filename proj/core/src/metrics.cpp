#include "ecoinv/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ecoinv/errors.hpp"

namespace ecoinv::metrics {
namespace detail {

double theta_at(std::size_t j, std::size_t n) { return kTwoPi * static_cast<double>(j) / static_cast<double>(n); }

std::vector<Vec2> sample(const ClosedCurve& c, std::size_t n) {
  std::vector<Vec2> pts(n);
  for (std::size_t j = 0; j < n; ++j) pts[j] = c.point(theta_at(j, n));
  return pts;
}

double segment_distance(const Vec2& x, const Vec2& a, const Vec2& b) {
  const Vec2 d = b - a;
  const double len2 = d.squaredNorm();
  const double t = len2 > 0.0 ? std::clamp((x - a).dot(d) / len2, 0.0, 1.0) : 0.0;
  return (x - (a + t * d)).norm();
}

double directed(const std::vector<Vec2>& from, const std::vector<Vec2>& to) {
  double worst = 0.0;
  for (const Vec2& x : from) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < to.size(); ++j) {
      best = std::min(best, segment_distance(x, to[j], to[(j + 1) % to.size()]));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace detail

using namespace detail;

std::vector<double> radial_deviation(const ClosedCurve& reconstructed, const ClosedCurve& truth, std::size_t angles) {
  if (angles < 3) throw ValidationError("need at least 3 angles");
  std::vector<double> out(angles);
  for (std::size_t j = 0; j < angles; ++j) {
    const double th = theta_at(j, angles);
    out[j] = std::abs(geometry::polar_radius(reconstructed, th) - geometry::polar_radius(truth, th));
  }
  return out;
}

double radial_relative_error(const ClosedCurve& reconstructed, const ClosedCurve& truth, std::size_t angles) {
  if (angles < 3) throw ValidationError("need at least 3 angles");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < angles; ++j) {
    const double th = theta_at(j, angles);
    const double r = geometry::polar_radius(truth, th);
    const double d = geometry::polar_radius(reconstructed, th) - r;
    num += d * d;
    den += r * r;
  }
  return std::sqrt(num / den);
}

HalfErrors half_radial_errors(const ClosedCurve& reconstructed, const ClosedCurve& truth, double center_angle,
                              std::size_t angles) {
  if (angles < 4) throw ValidationError("need at least 4 angles");
  double num[2] = {0.0, 0.0};
  double den[2] = {0.0, 0.0};
  for (std::size_t j = 0; j < angles; ++j) {
    const double th = theta_at(j, angles);
    const int side = std::cos(th - center_angle) >= 0.0 ? 0 : 1;
    const double r = geometry::polar_radius(truth, th);
    const double d = geometry::polar_radius(reconstructed, th) - r;
    num[side] += d * d;
    den[side] += r * r;
  }
  return {std::sqrt(num[0] / den[0]), std::sqrt(num[1] / den[1])};
}

double hausdorff(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  if (a.size() < 2 || b.size() < 2) throw ValidationError("polylines need at least 2 points");
  return std::max(directed(a, b), directed(b, a));
}

double hausdorff(const ClosedCurve& a, const ClosedCurve& b, std::size_t points) {
  return hausdorff(sample(a, points), sample(b, points));
}

double polarization_angle_error(const Vec2& estimate, const Vec2& truth) {
  const double na = estimate.norm();
  const double nb = truth.norm();
  if (!(na > 0.0) || !(nb > 0.0)) throw ValidationError("polarizations must be nonzero");
  const double c = std::min(1.0, std::abs(estimate.dot(truth)) / (na * nb));
  return std::acos(c);
}

}  // namespace ecoinv::metrics

namespace ecoinv::metrics {

ArcSplit convexity_split(const ClosedCurve& reconstructed, const ClosedCurve& truth, std::size_t points) {
  using namespace detail;
  if (points < 8) throw ValidationError("need at least 8 points");
  const std::vector<Vec2> rec = sample(reconstructed, points);
  const double h = 1e-4;
  ArcSplit out;
  double sums[2] = {0.0, 0.0};
  for (std::size_t j = 0; j < points; ++j) {
    const double t = theta_at(j, points);
    const Vec2 d1 = truth.tangent(t);
    const Vec2 d2 = (truth.tangent(t + h) - truth.tangent(t - h)) / (2.0 * h);
    const double cross = d1.x() * d2.y() - d1.y() * d2.x();
    double best = std::numeric_limits<double>::infinity();
    const Vec2 x = truth.point(t);
    for (std::size_t k = 0; k < rec.size(); ++k) best = std::min(best, segment_distance(x, rec[k], rec[(k + 1) % rec.size()]));
    if (cross >= 0.0) {
      sums[0] += best;
      ++out.convex_count;
    } else {
      sums[1] += best;
      ++out.concave_count;
    }
  }
  if (out.convex_count) out.convex_mean = sums[0] / static_cast<double>(out.convex_count);
  if (out.concave_count) out.concave_mean = sums[1] / static_cast<double>(out.concave_count);
  return out;
}

}  // namespace ecoinv::metrics
