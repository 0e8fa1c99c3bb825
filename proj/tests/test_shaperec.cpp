#include <doctest.h>

#include <cmath>
#include <random>

#include "ecoinv/errors.hpp"
#include "ecoinv/metrics.hpp"
#include "ecoinv/shaperec.hpp"
#include "ecoinv/srcrec.hpp"
#include "oracles/fd.hpp"

using namespace ecoinv;
using oracle::rel;

namespace {

struct CircleCase {
  ElasticMedium medium{1.0, 1.0, 3.0};
  std::vector<SourceSpec> sources;
  std::vector<FieldRecord> scattered;
};

// Exact scattered fields of the unit circle at omega = 3, eight sources on |z| = 3.
const CircleCase& circle_case() {
  static const CircleCase c = [] {
    CircleCase out;
    ForwardSolverParams fp;
    fp.charge_count = 120;
    fp.collocation_count = 240;
    const CurveNodes rx = geometry::ring(10.0, 120);
    for (int k = 0; k < 8; ++k) {
      const double a = kTwoPi * k / 8.0;
      const SourceSpec s = SourceSpec::make(3.0 * Vec2(std::cos(a), std::sin(a)), Vec2(0.5, 0.866));
      ChargeSolution sol{out.medium, {}, {}, 0.0};
      forward::total_record(out.medium, geometry::circle(1.0), s, rx, fp, &sol);
      out.sources.push_back(s);
      out.scattered.push_back(forward::scattered_record(sol, s, rx));
    }
    return out;
  }();
  return c;
}

AnsatzSystem small_system(const ElasticMedium& m) {
  return shaperec::assemble(m, geometry::circle(0.7).discretize(100), geometry::ring(10.0, 120));
}

}  // namespace

TEST_SUITE("shaperec") {
  TEST_CASE("assembled operator") {
    const ElasticMedium m(1.0, 1.0, 8.0);
    const AnsatzSystem sys = small_system(m);
    CHECK(sys.matrix.rows() == 240);
    CHECK(sys.matrix.cols() == 200);
    CHECK(sys.matrix.allFinite());

    // a point mass at node m reproduces w_m K(x_r, y_m)
    const Eigen::Index node = 17;
    Eigen::VectorXcd g = Eigen::VectorXcd::Zero(200);
    g[2 * node + 1] = 1.0;
    const Eigen::VectorXcd col = sys.matrix * g;
    for (Eigen::Index r = 0; r < 120; ++r) {
      const auto ur = static_cast<std::size_t>(r);
      const Mat2c k = sys.aux.weights[static_cast<std::size_t>(node)] *
                      kernels::kernel_K(m, sys.receivers.points[ur], sys.aux.points[static_cast<std::size_t>(node)]);
      CHECK(std::abs(col[2 * r] - k(0, 1)) <= 1e-15 * k.norm());
      CHECK(std::abs(col[2 * r + 1] - k(1, 1)) <= 1e-15 * k.norm());
    }

    // swapping two aux nodes swaps the column blocks
    CurveNodes swapped = sys.aux;
    std::swap(swapped.points[3], swapped.points[40]);
    std::swap(swapped.weights[3], swapped.weights[40]);
    std::swap(swapped.params[3], swapped.params[40]);
    const AnsatzSystem s2 = shaperec::assemble(m, swapped, sys.receivers);
    CHECK(s2.matrix.middleCols(6, 2) == sys.matrix.middleCols(80, 2));
    CHECK(s2.matrix.middleCols(80, 2) == sys.matrix.middleCols(6, 2));

    CHECK_THROWS_AS(shaperec::assemble(m, geometry::ring(10.0, 50), sys.receivers), GeometryError);
  }

  TEST_CASE("Tikhonov scalar case") {
    Eigen::MatrixXcd s(1, 1);
    s(0, 0) = 2.0;
    Eigen::VectorXcd v(1);
    v[0] = 4.0;
    const Eigen::VectorXcd g = shaperec::tikhonov_solve(s, v, 1.0);
    CHECK(std::abs(g[0] - 1.6) < 1e-14);
    CHECK_THROWS_AS(shaperec::tikhonov_solve(s, v, 0.0), ValidationError);
    CHECK_THROWS_AS(shaperec::tikhonov_solve(s, v, -1.0), ValidationError);
  }

  TEST_CASE("Tikhonov optimality and monotone norms") {
    const ElasticMedium m(1.0, 1.0, 8.0);
    const AnsatzSystem sys = small_system(m);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n01;
    Eigen::VectorXcd v(240);
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = cplx(n01(rng), n01(rng));
    const double rhs = (sys.matrix.adjoint() * v).norm();
    double prev_norm = std::numeric_limits<double>::infinity();
    double prev_res = 0.0;
    for (double xi : {1e-6, 1e-4, 1e-2, 1.0, 10.0, 100.0}) {
      const DensitySolution d = shaperec::tikhonov_solve(sys, v, xi, 4);
      CHECK(d.source_index == 4);
      CHECK(d.xi == xi);
      CHECK(shaperec::optimality_residual(sys.matrix, v, d.g, xi) <= 1e-10 * rhs);
      CHECK(d.g.norm() < prev_norm);
      CHECK(d.residual_norm >= prev_res);
      CHECK(std::abs(d.residual_norm - (sys.matrix * d.g - v).norm()) <= 1e-12 * v.norm());
      prev_norm = d.g.norm();
      prev_res = d.residual_norm;
    }
    // shared factorization gives the same answer
    const shaperec::TikhonovSolver solver(sys.matrix, 1e-2);
    CHECK((solver.solve(v) - shaperec::tikhonov_solve(sys.matrix, v, 1e-2)).norm() <= 1e-13 * prev_norm * 1e6);
  }

  TEST_CASE("data misfit shrinks with the regularization") {
    const CircleCase& c = circle_case();
    const AnsatzSystem sys = small_system(c.medium);
    double prev = std::numeric_limits<double>::infinity();
    for (double xi : {1e-2, 1e-4, 1e-6, 1e-8}) {
      const double misfit = shaperec::tikhonov_solve(sys, c.scattered[0].stacked(), xi).relative_residual();
      CHECK(misfit < prev);
      prev = misfit;
    }
    CHECK(prev < 0.05);
  }

  TEST_CASE("field gradient against finite differences") {
    const ElasticMedium m(1.0, 1.0, 6.0);
    const AnsatzSystem sys = small_system(m);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n01;
    DensitySolution d;
    d.g.resize(200);
    for (Eigen::Index i = 0; i < 200; ++i) d.g[i] = cplx(n01(rng), n01(rng));

    std::uniform_real_distribution<double> ur(1.0, 4.0), ua(0.0, kTwoPi);
    std::vector<DensitySolution> ds = {d};
    for (int k = 0; k < 20; ++k) {
      const double r = ur(rng), a = ua(rng);
      const Vec2 x = r * Vec2(std::cos(a), std::sin(a));
      const auto f = [&](const Vec2& p) { return shaperec::eval_field(sys, d, p); };
      const Mat2c g = shaperec::eval_grad(sys, d, x);
      CHECK(rel(oracle::fd_jacobian(f, x), g) < 1e-6);
      const auto jets = shaperec::eval_jets(sys, ds, x);
      CHECK(rel(jets[0].value, f(x)) < 1e-14);
      CHECK(rel(jets[0].grad, g) < 1e-14);
    }

    // Navier solution by construction, at distance >= 0.5 from the curve
    for (double a : {0.3, 2.0, 4.4}) {
      const Vec2 x = 1.6 * Vec2(std::cos(a), std::sin(a));
      const auto f = [&](const Vec2& p) { return shaperec::eval_field(sys, d, p); };
      CHECK(oracle::navier_residual(f, m, x).norm() / oracle::navier_scale(f, m, x) < 1e-4);
    }

    DensitySolution zero;
    zero.g = Eigen::VectorXcd::Zero(200);
    CHECK(shaperec::eval_field(sys, zero, Vec2(2, 1)).isZero(0.0));
    CHECK(shaperec::eval_grad(sys, zero, Vec2(2, 1)).isZero(0.0));
    CHECK_THROWS_AS(shaperec::eval_field(sys, d, sys.aux.points[5]), SingularityError);
  }

  TEST_CASE("total jets add the incident field") {
    const CircleCase& c = circle_case();
    const AnsatzSystem sys = small_system(c.medium);
    std::vector<DensitySolution> ds;
    for (const FieldRecord& r : c.scattered) ds.push_back(shaperec::tikhonov_solve(sys, r.stacked(), 1e-2));
    const Vec2 x(1.2, -0.4);
    const auto jets = shaperec::total_jets(sys, ds, c.sources, x);
    for (std::size_t k = 0; k < ds.size(); ++k) {
      const auto f = [&](const Vec2& p) {
        return CVec2(forward::incident_field(c.medium, c.sources[k], p) + shaperec::eval_field(sys, ds[k], p));
      };
      CHECK(rel(jets[k].value, f(x)) < 1e-13);
      CHECK(rel(jets[k].grad, oracle::fd_jacobian(f, x)) < 1e-6);
    }
  }

  TEST_CASE("radial L2 norm") {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(9);
    c[0] = 2.0;
    CHECK(shaperec::radial_l2_norm(c) == doctest::Approx(2.0 * std::sqrt(kTwoPi)).epsilon(1e-14));
    c[0] = 0.0;
    c[3] = 1.0;  // cos 3t
    CHECK(shaperec::radial_l2_norm(c) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
  }

  TEST_CASE("option validation") {
    NewtonOptions n;
    CHECK_NOTHROW(n.validate());
    n.damping = 0.0;
    CHECK_THROWS_AS(n.validate(), ValidationError);
    n = NewtonOptions{};
    n.damping = 1.5;
    CHECK_THROWS_AS(n.validate(), ValidationError);
    ReconstructionOptions r;
    r.xi = 0.0;
    CHECK_THROWS_AS(r.validate(), ValidationError);
    CHECK(std::string(to_string(NewtonStatus::converged)) == "converged");
  }

  TEST_CASE("Newton preconditions") {
    const CircleCase& c = circle_case();
    const AnsatzSystem sys = small_system(c.medium);
    std::vector<DensitySolution> ds;
    for (const FieldRecord& r : c.scattered) ds.push_back(shaperec::tikhonov_solve(sys, r.stacked(), 1e-2));
    NewtonState st{StarShape::circle(1.2, 8), 0, 0.0, {}, {}, {}, NewtonStatus::running, {}, 0};
    NewtonOptions opt;
    opt.collocation = 16;  // below 2M + 1
    CHECK_THROWS_AS(shaperec::newton_step(st, sys, ds, c.sources, opt), ValidationError);
    NewtonState big{StarShape::circle(3.5, 8), 0, 0.0, {}, {}, {}, NewtonStatus::running, {}, 0};
    CHECK_THROWS_AS(shaperec::newton_step(big, sys, ds, c.sources, NewtonOptions{}), ValidationError);
  }

  TEST_CASE("circle from a wrong radius") {
    const CircleCase& c = circle_case();
    for (double r0 : {0.85, 1.3}) {
      ReconstructionOptions opt;
      opt.newton.max_iter = 50;
      const ReconstructionResult res =
          shaperec::reconstruct(c.medium, c.scattered, c.sources, StarShape::circle(r0, 8), opt);
      INFO("r0 = " << r0 << " it " << res.state.iteration << " status " << std::string(to_string(res.state.status)));
      CHECK(res.state.converged());
      CHECK(res.state.update < 1e-3);
      CHECK(res.state.iteration <= 50);
      CHECK(res.state.update_history.size() == static_cast<std::size_t>(res.state.iteration));
      CHECK(res.state.coefficient_history.size() == res.state.update_history.size() + 1);
      const double err = metrics::radial_relative_error(res.state.shape.to_curve(), geometry::circle(1.0));
      CHECK(err < 0.05);
      REQUIRE_FALSE(res.state.boundary_residual_history.empty());
      CHECK(res.final_boundary_residual < res.state.boundary_residual_history.front());
    }
  }

  TEST_CASE("loose tolerance stops after one step") {
    const CircleCase& c = circle_case();
    ReconstructionOptions opt;
    opt.newton.epsilon = 10.0;
    const auto res = shaperec::reconstruct(c.medium, c.scattered, c.sources, StarShape::circle(1.2, 8), opt);
    CHECK(res.state.iteration == 1);
    CHECK(res.state.converged());
  }

  TEST_CASE("iteration budget is reported") {
    const CircleCase& c = circle_case();
    ReconstructionOptions opt;
    opt.newton.epsilon = 1e-14;
    opt.newton.max_iter = 3;
    const auto res = shaperec::reconstruct(c.medium, c.scattered, c.sources, StarShape::circle(1.2, 8), opt);
    CHECK(res.state.iteration == 3);
    CHECK(res.state.status == NewtonStatus::max_iterations);
    CHECK_FALSE(res.state.converged());
  }

  TEST_CASE("mismatched inputs") {
    const CircleCase& c = circle_case();
    CHECK_THROWS_AS(shaperec::reconstruct(c.medium, c.scattered, {c.sources[0]}, StarShape::circle(1.2, 8), {}),
                    ValidationError);
    CHECK_THROWS_AS(shaperec::reconstruct(c.medium, {}, {}, StarShape::circle(1.2, 8), {}), ValidationError);
  }
}
