#include "ecoinv/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "ecoinv/errors.hpp"

namespace ecoinv {
namespace {

constexpr std::size_t kPolygonPoints = 2048;

double wrap_angle(double a) {
  a = std::fmod(a + kPi, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a - kPi;
}

double segment_distance(const Vec2& x, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  double s = len2 > 0.0 ? (x - a).dot(ab) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return (x - (a + s * ab)).norm();
}

}  // namespace

double CurveNodes::length() const {
  double sum = 0.0;
  for (double w : weights) sum += w;
  return sum;
}

CurveNodes ClosedCurve::discretize(std::size_t n) const {
  if (n < 3) throw ValidationError("a closed curve needs at least 3 nodes");
  CurveNodes nodes;
  nodes.params.resize(n);
  nodes.points.resize(n);
  nodes.weights.resize(n);
  const double dt = kTwoPi / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = dt * static_cast<double>(j);
    nodes.params[j] = t;
    nodes.points[j] = point(t);
    nodes.weights[j] = tangent(t).norm() * dt;
  }
  return nodes;
}

ClosedCurve ClosedCurve::scaled(double factor) const {
  auto p = point_;
  auto d = tangent_;
  return ClosedCurve([p, factor](double t) { return Vec2(factor * p(t)); },
                     [d, factor](double t) { return Vec2(factor * d(t)); });
}

ClosedCurve ClosedCurve::rotated(double angle) const {
  const Eigen::Matrix2d rot = Eigen::Rotation2Dd(angle).toRotationMatrix();
  auto p = point_;
  auto d = tangent_;
  return ClosedCurve([p, rot](double t) { return Vec2(rot * p(t)); },
                     [d, rot](double t) { return Vec2(rot * d(t)); });
}

bool ClosedCurve::contains(const Vec2& x) const {
  double winding = 0.0;
  Vec2 prev = point(0.0) - x;
  for (std::size_t j = 1; j <= kPolygonPoints; ++j) {
    const double t = kTwoPi * static_cast<double>(j) / static_cast<double>(kPolygonPoints);
    const Vec2 cur = point(t) - x;
    winding += std::atan2(prev.x() * cur.y() - prev.y() * cur.x(), prev.dot(cur));
    prev = cur;
  }
  return std::abs(winding) > kPi;
}

double ClosedCurve::distance(const Vec2& x) const {
  double best = std::numeric_limits<double>::infinity();
  Vec2 prev = point(0.0);
  for (std::size_t j = 1; j <= kPolygonPoints; ++j) {
    const double t = kTwoPi * static_cast<double>(j) / static_cast<double>(kPolygonPoints);
    const Vec2 cur = point(t);
    best = std::min(best, segment_distance(x, prev, cur));
    prev = cur;
  }
  return best;
}

namespace geometry {

ClosedCurve circle(double radius, const Vec2& center) {
  if (!(radius > 0.0)) throw ValidationError("circle radius must be positive");
  return ClosedCurve(
      [radius, center](double t) { return Vec2(center + radius * Vec2(std::cos(t), std::sin(t))); },
      [radius](double t) { return Vec2(radius * Vec2(-std::sin(t), std::cos(t))); });
}

ClosedCurve l_leaf(int leaves) {
  if (leaves < 1) throw ValidationError("leaf count must be positive");
  const double l = leaves;
  return ClosedCurve(
      [l](double t) {
        const double r = 1.0 + 0.2 * std::cos(l * t);
        return Vec2(r * std::cos(t), r * std::sin(t));
      },
      [l](double t) {
        const double r = 1.0 + 0.2 * std::cos(l * t);
        const double dr = -0.2 * l * std::sin(l * t);
        return Vec2(dr * std::cos(t) - r * std::sin(t), dr * std::sin(t) + r * std::cos(t));
      });
}

ClosedCurve kite() {
  return ClosedCurve(
      [](double t) {
        return Vec2(std::cos(t) + 0.65 * std::cos(2.0 * t) - 0.65, 1.5 * std::sin(t));
      },
      [](double t) { return Vec2(-std::sin(t) - 1.3 * std::sin(2.0 * t), 1.5 * std::cos(t)); });
}

ClosedCurve make_named_shape(const std::string& name, double param) {
  if (name == "circle") return circle(param > 0.0 ? param : 1.0);
  if (name == "kite") return kite();
  if (name == "leaf" || name == "L-leaf" || name == "l-leaf") {
    const int l = static_cast<int>(std::lround(param));
    if (l != 3 && l != 5) throw ValidationError("L-leaf obstacle supports L = 3 or 5");
    return l_leaf(l);
  }
  if (name == "3-leaf") return l_leaf(3);
  if (name == "5-leaf") return l_leaf(5);
  throw ValidationError("unknown obstacle shape '" + name + "'");
}

CurveNodes ring(double radius, std::size_t count) {
  if (!(radius > 0.0)) throw ValidationError("ring radius must be positive");
  if (count < 8) throw ValidationError("ring needs at least 8 nodes");
  CurveNodes nodes;
  const double dt = kTwoPi / static_cast<double>(count);
  const double w = kTwoPi * radius / static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = dt * static_cast<double>(i);
    nodes.params.push_back(t);
    nodes.points.emplace_back(radius * std::cos(t), radius * std::sin(t));
    nodes.weights.push_back(w);
  }
  return nodes;
}

cplx integrate(const CurveNodes& nodes, const std::vector<cplx>& values) {
  if (values.size() != nodes.size()) throw ValidationError("integrand size does not match nodes");
  cplx sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) sum += nodes.weights[i] * values[i];
  return sum;
}

}  // namespace geometry

PeriodicCubicSpline::PeriodicCubicSpline(std::vector<double> knot_values)
    : values_(std::move(knot_values)) {
  const std::size_t n = values_.size();
  if (n < 3) throw ValidationError("periodic spline needs at least 3 knots");
  h_ = kTwoPi / static_cast<double>(n);
  // Cyclic tridiagonal system M_{i-1} + 4 M_i + M_{i+1} = 6 (y_{i+1} - 2 y_i + y_{i-1}) / h^2.
  const auto ni = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(ni, ni);
  Eigen::VectorXd rhs(ni);
  for (Eigen::Index i = 0; i < ni; ++i) {
    const Eigen::Index im = (i + ni - 1) % ni;
    const Eigen::Index ip = (i + 1) % ni;
    a(i, i) += 4.0;
    a(i, im) += 1.0;
    a(i, ip) += 1.0;
    const auto ui = static_cast<std::size_t>(i);
    rhs(i) = 6.0 * (values_[static_cast<std::size_t>(ip)] - 2.0 * values_[ui] +
                    values_[static_cast<std::size_t>(im)]) / (h_ * h_);
  }
  const Eigen::VectorXd m = a.partialPivLu().solve(rhs);
  second_.assign(m.data(), m.data() + m.size());
}

double PeriodicCubicSpline::knot(std::size_t i) const { return h_ * static_cast<double>(i); }

double PeriodicCubicSpline::operator()(double t) const {
  const std::size_t n = values_.size();
  double u = std::fmod(t, kTwoPi);
  if (u < 0.0) u += kTwoPi;
  auto i = static_cast<std::size_t>(u / h_);
  if (i >= n) i = n - 1;
  const std::size_t ip = (i + 1) % n;
  const double s = u - h_ * static_cast<double>(i);
  const double b = s / h_;
  const double a = 1.0 - b;
  return a * values_[i] + b * values_[ip] +
         ((a * a * a - a) * second_[i] + (b * b * b - b) * second_[ip]) * h_ * h_ / 6.0;
}

double PeriodicCubicSpline::derivative(double t) const {
  const std::size_t n = values_.size();
  double u = std::fmod(t, kTwoPi);
  if (u < 0.0) u += kTwoPi;
  auto i = static_cast<std::size_t>(u / h_);
  if (i >= n) i = n - 1;
  const std::size_t ip = (i + 1) % n;
  const double s = u - h_ * static_cast<double>(i);
  const double b = s / h_;
  const double a = 1.0 - b;
  return (values_[ip] - values_[i]) / h_ - (3.0 * a * a - 1.0) / 6.0 * h_ * second_[i] +
         (3.0 * b * b - 1.0) / 6.0 * h_ * second_[ip];
}

Eigen::RowVectorXd fourier_row(double t, int degree) {
  Eigen::RowVectorXd row(2 * degree + 1);
  row(0) = 1.0;
  for (int l = 1; l <= degree; ++l) {
    row(l) = std::cos(l * t);
    row(degree + l) = std::sin(l * t);
  }
  return row;
}

double min_radius_on_grid(const Eigen::VectorXd& coefficients, std::size_t points) {
  const int degree = static_cast<int>((coefficients.size() - 1) / 2);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < points; ++j) {
    const double t = kTwoPi * static_cast<double>(j) / static_cast<double>(points);
    best = std::min(best, fourier_row(t, degree).dot(coefficients));
  }
  return best;
}

StarShape::StarShape(Eigen::VectorXd coefficients) : coeffs_(std::move(coefficients)) {
  if (coeffs_.size() < 3 || coeffs_.size() % 2 == 0)
    throw ValidationError("star shape needs 2M+1 coefficients with M >= 1");
  if (!coeffs_.allFinite()) throw GeometryError("star shape coefficients must be finite");
  if (!(min_radius_on_grid(coeffs_) > 0.0)) throw GeometryError("star shape radial function is not positive");
}

StarShape StarShape::circle(double radius, int degree) {
  if (degree < 1) throw ValidationError("Fourier degree must be at least 1");
  Eigen::VectorXd c = Eigen::VectorXd::Zero(2 * degree + 1);
  c(0) = radius;
  return StarShape(std::move(c));
}

double StarShape::radius(double t) const { return basis_row(t).dot(coeffs_); }

double StarShape::radius_derivative(double t) const {
  const int m = degree();
  double d = 0.0;
  for (int l = 1; l <= m; ++l) {
    d += -l * coeffs_(l) * std::sin(l * t) + l * coeffs_(m + l) * std::cos(l * t);
  }
  return d;
}

Eigen::RowVectorXd StarShape::basis_row(double t) const { return fourier_row(t, degree()); }

double StarShape::min_radius() const { return min_radius_on_grid(coeffs_); }

Vec2 StarShape::point(double t) const {
  const double r = radius(t);
  return {r * std::cos(t), r * std::sin(t)};
}

ClosedCurve StarShape::to_curve() const {
  const StarShape self = *this;
  return ClosedCurve([self](double t) { return self.point(t); },
                     [self](double t) {
                       const double r = self.radius(t);
                       const double dr = self.radius_derivative(t);
                       return Vec2(dr * std::cos(t) - r * std::sin(t), dr * std::sin(t) + r * std::cos(t));
                     });
}

namespace geometry {

CurveNodes shape_to_curve(const StarShape& shape, std::size_t n_nodes) {
  return shape.to_curve().discretize(n_nodes);
}

StarShape fit_star(const std::vector<Vec2>& samples, int degree) {
  if (degree < 1) throw ValidationError("Fourier degree must be at least 1");
  const auto n = static_cast<Eigen::Index>(samples.size());
  if (n < 2 * degree + 1) throw ValidationError("fit_star needs at least 2M+1 samples");
  Eigen::MatrixXd a(n, 2 * degree + 1);
  Eigen::VectorXd r(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vec2& x = samples[static_cast<std::size_t>(i)];
    a.row(i) = fourier_row(std::atan2(x.y(), x.x()), degree);
    r(i) = x.norm();
  }
  Eigen::VectorXd c = a.colPivHouseholderQr().solve(r);
  return StarShape(std::move(c));
}

RandomStar random_star_shape(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> count(8, 20);
  std::uniform_real_distribution<double> radius(0.8, 1.8);
  const int nt = count(rng);
  std::vector<double> knots(static_cast<std::size_t>(nt));
  for (double& k : knots) k = radius(rng);
  PeriodicCubicSpline spline(std::move(knots));
  ClosedCurve curve(
      [spline](double t) {
        const double r = spline(t);
        return Vec2(r * std::cos(t), r * std::sin(t));
      },
      [spline](double t) {
        const double r = spline(t);
        const double dr = spline.derivative(t);
        return Vec2(dr * std::cos(t) - r * std::sin(t), dr * std::sin(t) + r * std::cos(t));
      });
  return RandomStar{seed, spline, curve};
}

double polar_radius(const ClosedCurve& curve, double theta) {
  constexpr std::size_t samples = 1024;
  auto offset = [&](double t) {
    const Vec2 x = curve.point(t);
    return wrap_angle(std::atan2(x.y(), x.x()) - theta);
  };
  double t_prev = 0.0;
  double f_prev = offset(0.0);
  for (std::size_t j = 1; j <= samples; ++j) {
    const double t = kTwoPi * static_cast<double>(j) / static_cast<double>(samples);
    const double f = offset(t);
    // Crossing from below through zero (not the +-pi branch jump).
    if (f_prev <= 0.0 && f >= 0.0 && f - f_prev < kPi) {
      double lo = t_prev;
      double hi = t;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (offset(mid) < 0.0) lo = mid; else hi = mid;
      }
      return curve.point(0.5 * (lo + hi)).norm();
    }
    t_prev = t;
    f_prev = f;
  }
  throw GeometryError("curve is not star-like about the origin");
}

}  // namespace geometry

SamplingGrid::SamplingGrid(double xmin, double xmax, double ymin, double ymax, std::size_t nx, std::size_t ny)
    : xmin_(xmin), xmax_(xmax), ymin_(ymin), ymax_(ymax), nx_(nx), ny_(ny) {
  if (nx == 0 || ny == 0) throw ValidationError("sampling grid must be nonempty");
  if (xmax < xmin || ymax < ymin) throw ValidationError("sampling grid bounds are inverted");
}

Vec2 SamplingGrid::point(std::size_t ix, std::size_t iy) const {
  const double x = nx_ == 1 ? 0.5 * (xmin_ + xmax_)
                            : xmin_ + (xmax_ - xmin_) * static_cast<double>(ix) / static_cast<double>(nx_ - 1);
  const double y = ny_ == 1 ? 0.5 * (ymin_ + ymax_)
                            : ymin_ + (ymax_ - ymin_) * static_cast<double>(iy) / static_cast<double>(ny_ - 1);
  return {x, y};
}

Vec2 SamplingGrid::point(std::size_t index) const { return point(index % nx_, index / nx_); }

void SamplingGrid::require_inside(double radius) const {
  for (double x : {xmin_, xmax_}) {
    for (double y : {ymin_, ymax_}) {
      if (!(std::hypot(x, y) < radius)) throw GeometryError("sampling grid is not inside the receiver ring");
    }
  }
}

}  // namespace ecoinv
