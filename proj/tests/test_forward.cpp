#include <doctest.h>

#include <cmath>

#include "ecoinv/errors.hpp"
#include "ecoinv/forward.hpp"
#include "oracles/fd.hpp"

using namespace ecoinv;

namespace {

ForwardSolverParams small_params(std::size_t charges) {
  ForwardSolverParams p;
  p.charge_count = charges;
  p.collocation_count = 2 * charges;
  return p;
}

Eigen::Matrix2d rotation(double a) {
  Eigen::Matrix2d r;
  r << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  return r;
}

}  // namespace

TEST_SUITE("forward") {
  TEST_CASE("incident field") {
    const ElasticMedium m(1.0, 1.0, 8.0);
    const Vec2 z(3.0, 0.5), x(-1.0, 2.0);
    const SourceSpec ex = SourceSpec::make(z, Vec2::UnitX());
    CHECK(forward::incident_field(m, ex, x) == CVec2(kernels::green(m, x, z).col(0)));

    const Vec2 p = Vec2(0.6, 0.8);
    SourceSpec scaled{z, 2.5 * p};  // bypasses normalization
    SourceSpec unit{z, p};
    CHECK(oracle::rel(forward::incident_field(m, scaled, x), CVec2(2.5 * forward::incident_field(m, unit, x))) < 1e-15);

    const Vec2 y = z + Vec2(0.0, 2.0);
    const auto f = [&](const Vec2& q) { return forward::incident_field(m, unit, q); };
    CHECK(oracle::navier_residual(f, m, y).norm() / oracle::navier_scale(f, m, y) < 1e-4);
    CHECK_THROWS_AS(forward::incident_field(m, unit, z), SingularityError);
  }

  TEST_CASE("parameter validation") {
    ForwardSolverParams p;
    CHECK_NOTHROW(p.validate());
    p.collocation_count = p.charge_count - 1;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = ForwardSolverParams{};
    p.charge_scale = 1.2;
    p.layout = ChargeLayout::scaled;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    CHECK(charge_layout_from_string(to_string(ChargeLayout::normal_offset)) == ChargeLayout::normal_offset);
    CHECK_THROWS_AS(charge_layout_from_string("grid"), ValidationError);
  }

  TEST_CASE("charges sit inside the obstacle") {
    for (const ClosedCurve& c : {geometry::kite(), geometry::l_leaf(3), geometry::circle(0.6)}) {
      for (ChargeLayout l : {ChargeLayout::normal_offset, ChargeLayout::scaled}) {
        ForwardSolverParams p;
        p.layout = l;
        for (const Vec2& y : forward::charge_points(c, p)) CHECK(c.contains(y));
      }
    }
  }

  TEST_CASE("circle certificate") {
    const ElasticMedium m(1.0, 1.0, 3.0);
    const SourceSpec s = SourceSpec::make(Vec2(3.0, 0.0), Vec2(0.5, 0.866));
    const ClosedCurve c = geometry::circle(1.0);
    const ChargeSolution sol = forward::solve_rigid_scattering(m, c, s, ForwardSolverParams{});
    CHECK(sol.check_residual <= 1e-6);

    // Dirichlet condition at off-node boundary points
    double worst = 0.0, ref = 0.0;
    for (double t = 0.013; t < kTwoPi; t += 0.19) {
      const Vec2 x = c.point(t);
      worst = std::max(worst, (forward::incident_field(m, s, x) + forward::scattered_at(sol, x)).cwiseAbs().maxCoeff());
      ref = std::max(ref, forward::incident_field(m, s, x).cwiseAbs().maxCoeff());
    }
    CHECK(worst <= 1e-6 * ref);

    // the scattered field is a Navier solution away from the charges
    const auto v = [&](const Vec2& x) { return forward::scattered_at(sol, x); };
    for (double a : {0.5, 2.0, 4.0}) {
      const Vec2 x = 5.0 * Vec2(std::cos(a), std::sin(a));
      CHECK(oracle::navier_residual(v, m, x).norm() / oracle::navier_scale(v, m, x) < 1e-4);
    }
  }

  TEST_CASE("refining the charges does not increase the residual") {
    const ElasticMedium m(1.0, 1.0, 3.0);
    const SourceSpec s = SourceSpec::make(Vec2(3.0, 0.0), Vec2(0.5, 0.866));
    const ClosedCurve c = geometry::circle(1.0);
    const double coarse = forward::solve_rigid_scattering(m, c, s, small_params(40)).check_residual;
    const double fine = forward::solve_rigid_scattering(m, c, s, small_params(80)).check_residual;
    CHECK(fine <= coarse);
  }

  TEST_CASE("kite and leaf meet the certificate") {
    const SourceSpec s = SourceSpec::make(Vec2(0.0, -3.0), Vec2(0.5, 0.866));
    CHECK(forward::solve_rigid_scattering(ElasticMedium(1, 1, 6), geometry::kite(), s, ForwardSolverParams{})
              .check_residual <= 1e-6);
    CHECK(forward::solve_rigid_scattering(ElasticMedium(1, 1, 8), geometry::l_leaf(3), s, ForwardSolverParams{})
              .check_residual <= 1e-6);
  }

  TEST_CASE("rotation equivariance") {
    const ElasticMedium m(1.0, 1.0, 4.0);
    const double theta = 0.9;
    const Eigen::Matrix2d r = rotation(theta);
    const ClosedCurve c = geometry::circle(1.0);
    const SourceSpec s = SourceSpec::make(Vec2(2.5, 0.4), Vec2(0.3, 0.95));
    const SourceSpec rs{r * s.z, r * s.p};
    const CurveNodes rx = geometry::ring(10.0, 120);
    CurveNodes rrx = rx;
    for (Vec2& x : rrx.points) x = r * x;
    const ForwardSolverParams p = small_params(160);
    const FieldRecord u = forward::total_record(m, c, s, rx, p);
    const FieldRecord ur = forward::total_record(m, c.rotated(theta), rs, rrx, p);
    double worst = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
      const CVec2 ru = r.cast<cplx>() * u.values[i];
      worst = std::max(worst, (ru - ur.values[i]).norm());
      ref = std::max(ref, u.values[i].norm());
    }
    CHECK(worst <= 1e-8 * ref);
  }

  TEST_CASE("source inside or on the obstacle") {
    const ElasticMedium m(1.0, 1.0, 3.0);
    const ClosedCurve c = geometry::circle(1.0);
    CHECK_THROWS_AS(forward::solve_rigid_scattering(m, c, SourceSpec::make(Vec2(1.0, 0.0), Vec2::UnitX()), {}),
                    ValidationError);
    CHECK_THROWS_AS(forward::solve_rigid_scattering(m, c, SourceSpec::make(Vec2(0.2, 0.1), Vec2::UnitX()), {}),
                    ValidationError);
  }

  TEST_CASE("records") {
    const ElasticMedium m(1.0, 1.0, 3.0);
    const SourceSpec s = SourceSpec::make(Vec2(3.0, 0.0), Vec2::UnitY());
    const CurveNodes rx = geometry::ring(10.0, 120);
    ChargeSolution sol{m, {}, {}, 0.0};
    const FieldRecord tot = forward::total_record(m, geometry::circle(1.0), s, rx, small_params(80), &sol);
    CHECK(tot.values.size() == 120);
    CHECK(tot.kind == FieldKind::total);
    CHECK(tot.stacked().size() == 240);
    const FieldRecord inc = forward::incident_record(m, s, rx);
    const FieldRecord sc = forward::scattered_record(sol, s, rx);
    CHECK(inc.kind == FieldKind::incident);
    CHECK(sc.kind == FieldKind::scattered);
    for (std::size_t i = 0; i < 120; ++i) CHECK(oracle::rel(tot.values[i], CVec2(inc.values[i] + sc.values[i])) < 1e-14);
    CHECK(tot.stacked()[3] == tot.values[1][1]);
    CHECK(field_kind_from_string("scattered") == FieldKind::scattered);
  }

  TEST_CASE("noise model") {
    const ElasticMedium m(1.0, 1.0, 8.0);
    const SourceSpec s = SourceSpec::make(Vec2(3.0, 0.0), Vec2(0.5, 0.866));
    FieldRecord rec = forward::incident_record(m, s, geometry::ring(10.0, 5000));

    const FieldRecord same = forward::add_noise(rec, 0.0, 9);
    for (std::size_t i = 0; i < rec.values.size(); ++i) CHECK(same.values[i] == rec.values[i]);

    const double eps = 0.05;
    const FieldRecord a = forward::add_noise(rec, eps, 9);
    const FieldRecord b = forward::add_noise(rec, eps, 9);
    const FieldRecord c = forward::add_noise(rec, eps, 10);
    double mean = 0.0;
    bool bounded = true, differs = false;
    for (std::size_t i = 0; i < rec.values.size(); ++i) {
      CHECK(a.values[i] == b.values[i]);
      differs = differs || a.values[i] != c.values[i];
      for (int k = 0; k < 2; ++k) {
        const double d = std::abs(a.values[i][k] - rec.values[i][k]);
        const double u = std::abs(rec.values[i][k]);
        bounded = bounded && d <= eps * u * (1.0 + 1e-12);
        mean += d / u;
      }
    }
    mean /= 2.0 * static_cast<double>(rec.values.size());
    CHECK(bounded);
    CHECK(differs);
    CHECK(std::abs(mean - eps / 2) < 0.05 * eps / 2);
    CHECK_THROWS_AS(forward::add_noise(rec, -0.1, 1), ValidationError);
  }
}
