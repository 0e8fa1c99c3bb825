#include <doctest.h>

#include <cmath>
#include <set>

#include "ecoinv/errors.hpp"
#include "ecoinv/geometry.hpp"

using namespace ecoinv;

namespace {

bool close(const Vec2& a, const Vec2& b, double tol = 1e-14) { return (a - b).norm() <= tol; }

std::vector<Vec2> samples(const ClosedCurve& c, std::size_t n) {
  std::vector<Vec2> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(c.point(kTwoPi * static_cast<double>(i) / static_cast<double>(n)));
  return out;
}

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("named shapes") {
    CHECK(close(geometry::make_named_shape("leaf", 3).point(0.0), Vec2(1.2, 0.0)));
    CHECK(close(geometry::make_named_shape("L-leaf", 5).point(0.0), Vec2(1.2, 0.0)));
    CHECK(close(geometry::kite().point(0.0), Vec2(1.0, 0.0)));
    CHECK(close(geometry::kite().point(kPi / 2), Vec2(-1.3, 1.5)));
    CHECK(close(geometry::make_named_shape("circle", 2.0).point(kPi), Vec2(-2.0, 0.0)));
    CHECK_THROWS_AS(geometry::make_named_shape("pear"), ValidationError);
    CHECK_THROWS_AS(geometry::make_named_shape("leaf", 4), ValidationError);
  }

  TEST_CASE("tangents agree with finite differences") {
    for (const ClosedCurve& c : {geometry::kite(), geometry::l_leaf(3), geometry::circle(0.7, Vec2(1, 2))}) {
      for (double t : {0.0, 1.1, 3.0, 5.9}) {
        const Vec2 fd = (c.point(t + 1e-6) - c.point(t - 1e-6)) / 2e-6;
        CHECK((fd - c.tangent(t)).norm() < 1e-8);
      }
    }
  }

  TEST_CASE("ring nodes and weights") {
    const CurveNodes r = geometry::ring(10.0, 120);
    CHECK(r.size() == 120);
    CHECK(close(r.points[30], Vec2(0.0, 10.0), 1e-13));
    double sum = 0.0;
    for (double w : r.weights) sum += w;
    CHECK(sum == doctest::Approx(kTwoPi * 10.0).epsilon(1e-14));

    const CurveNodes aux = geometry::ring(0.7, 100);
    for (double w : aux.weights) CHECK(w == doctest::Approx(kTwoPi * 0.7 / 100).epsilon(1e-15));
  }

  TEST_CASE("discretized length of smooth curves") {
    const ClosedCurve k = geometry::kite();
    const double fine = k.discretize(4096).length();
    CHECK(std::abs(k.discretize(64).length() - fine) < 0.01 * fine);
    CHECK(geometry::circle(2.0).discretize(64).length() == doctest::Approx(4.0 * kPi).epsilon(1e-13));
    CHECK_THROWS_AS(k.discretize(2), ValidationError);
  }

  TEST_CASE("trapezoid rule is exact for trigonometric polynomials") {
    const std::size_t n = 32;
    const CurveNodes ring = geometry::ring(1.5, n);
    for (int deg = 0; deg < static_cast<int>(n); ++deg) {
      std::vector<cplx> vals;
      for (double t : ring.params) vals.push_back(std::exp(kI * (deg * t)));
      const cplx got = geometry::integrate(ring, vals);
      const cplx want = deg == 0 ? cplx(kTwoPi * 1.5, 0.0) : cplx(0.0, 0.0);
      CHECK(std::abs(got - want) < 1e-12);
    }
  }

  TEST_CASE("containment and distance") {
    const ClosedCurve k = geometry::kite();
    CHECK(k.contains(Vec2(0.0, 0.0)));
    CHECK(k.contains(Vec2(-1.3, 1.4)));
    CHECK_FALSE(k.contains(Vec2(3.0, 0.0)));
    CHECK(k.distance(Vec2(3.0, 0.0)) == doctest::Approx(2.0).epsilon(1e-4));
    CHECK(geometry::circle(1.0).rotated(0.7).contains(Vec2(0.5, 0.5)));
    CHECK(close(geometry::l_leaf(3).scaled(2.0).point(0.0), Vec2(2.4, 0.0)));
  }

  TEST_CASE("star shape basics") {
    const StarShape c = StarShape::circle(1.3, 8);
    CHECK(c.degree() == 8);
    CHECK(c.coefficients().size() == 17);
    CHECK(c.radius(2.0) == doctest::Approx(1.3));
    CHECK(c.min_radius() == doctest::Approx(1.3));
    Eigen::VectorXd bad = Eigen::VectorXd::Zero(5);
    bad[0] = 0.1;
    bad[1] = 0.5;
    CHECK_THROWS_AS(StarShape{bad}, GeometryError);
    CHECK(min_radius_on_grid(bad) < 0.0);

    Eigen::VectorXd co = Eigen::VectorXd::Zero(9);
    co << 1.0, 0.1, 0.0, 0.2, -0.05, 0.03, 0.0, 0.0, 0.07;
    const StarShape s(co);
    for (double t : {0.2, 2.9, 4.4}) {
      CHECK(s.basis_row(t).dot(co) == doctest::Approx(s.radius(t)).epsilon(1e-14));
      const double fd = (s.radius(t + 1e-6) - s.radius(t - 1e-6)) / 2e-6;
      CHECK(s.radius_derivative(t) == doctest::Approx(fd).epsilon(1e-7));
      CHECK(close(s.point(t), s.radius(t) * Vec2(std::cos(t), std::sin(t))));
    }
  }

  TEST_CASE("fit_star") {
    std::vector<Vec2> unit;
    for (int i = 0; i < 64; ++i) unit.push_back(Vec2(std::cos(i * kTwoPi / 64), std::sin(i * kTwoPi / 64)));
    const StarShape one = geometry::fit_star(unit, 6);
    CHECK(std::abs(one.coefficients()[0] - 1.0) < 1e-12);
    CHECK(one.coefficients().tail(12).cwiseAbs().maxCoeff() < 1e-12);

    Eigen::VectorXd co = Eigen::VectorXd::Zero(17);
    co[0] = 1.1;
    co[2] = -0.12;
    co[5] = 0.04;
    co[9] = 0.08;
    co[16] = -0.02;
    const StarShape s(co);
    const CurveNodes nodes = geometry::shape_to_curve(s, 512);
    CHECK((geometry::fit_star(nodes.points, 8).coefficients() - co).cwiseAbs().maxCoeff() < 1e-10);

    for (int m : {3, 5, 8}) {
      const StarShape leaf = geometry::fit_star(samples(geometry::l_leaf(3), 256), m);
      Eigen::VectorXd want = Eigen::VectorXd::Zero(2 * m + 1);
      want[0] = 1.0;
      want[3] = 0.2;
      CHECK((leaf.coefficients() - want).cwiseAbs().maxCoeff() < 1e-12);
    }
    CHECK_THROWS_AS(geometry::fit_star(samples(geometry::circle(1.0), 10), 8), ValidationError);
  }

  TEST_CASE("periodic cubic spline") {
    const std::vector<double> knots = {1.0, 1.4, 0.9, 1.7, 1.2, 0.85, 1.1, 1.6};
    const PeriodicCubicSpline sp(knots);
    for (std::size_t i = 0; i < knots.size(); ++i) CHECK(std::abs(sp(sp.knot(i)) - knots[i]) < 1e-12);
    CHECK(std::abs(sp(0.0) - sp(kTwoPi)) < 1e-12);
    CHECK(std::abs(sp.derivative(1e-9) - sp.derivative(kTwoPi - 1e-9)) < 1e-6);
    // C^2 across a knot: one-sided second differences agree
    const double t = sp.knot(3), h = 1e-4;
    const double left = (sp(t) - 2 * sp(t - h) + sp(t - 2 * h)) / (h * h);
    const double right = (sp(t + 2 * h) - 2 * sp(t + h) + sp(t)) / (h * h);
    CHECK(std::abs(left - right) < 1e-2 * std::max(1.0, std::abs(left)));
  }

  TEST_CASE("random star shapes") {
    std::set<std::size_t> counts;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const geometry::RandomStar r = geometry::random_star_shape(seed);
      const std::size_t n = r.spline.knot_count();
      CHECK(n >= 8);
      CHECK(n <= 20);
      counts.insert(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double v = r.spline.knot_values()[i];
        CHECK(v >= 0.8);
        CHECK(v <= 1.8);
        CHECK(std::abs(r.spline(kTwoPi * static_cast<double>(i) / static_cast<double>(n)) - v) < 1e-12);
      }
      CHECK((r.curve.point(0.0) - r.curve.point(kTwoPi)).norm() < 1e-12);
    }
    CHECK(counts.size() > 5);
    const geometry::RandomStar a = geometry::random_star_shape(11), b = geometry::random_star_shape(11);
    CHECK(a.spline.knot_values() == b.spline.knot_values());
    CHECK(close(a.curve.point(1.234), b.curve.point(1.234), 0.0));
  }

  TEST_CASE("polar radius") {
    const ClosedCurve leaf = geometry::l_leaf(3);
    for (double th : {0.0, 0.7, 2.0, 4.2}) CHECK(geometry::polar_radius(leaf, th) == doctest::Approx(1.0 + 0.2 * std::cos(3 * th)).epsilon(1e-9));
  }

  TEST_CASE("sampling grid") {
    const SamplingGrid g(-5, 5, -5, 5, 200, 200);
    CHECK(g.size() == 40000);
    CHECK(close(g.point(0), Vec2(-5, -5)));
    CHECK(close(g.point(199, 199), Vec2(5, 5)));
    CHECK(close(g.point(3, 2), g.point(2 * 200 + 3)));
    CHECK_NOTHROW(g.require_inside(10.0));
    CHECK_THROWS_AS(g.require_inside(7.0), GeometryError);
    const SamplingGrid one(1, 1, 2, 2, 1, 1);
    CHECK(close(one.point(0), Vec2(1, 2)));
  }
}
