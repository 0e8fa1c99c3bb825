#include "ecoinv/forward.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "ecoinv/eigenguard.hpp"
#include "ecoinv/errors.hpp"
#include "ecoinv/log.hpp"

namespace ecoinv {

const char* to_string(FieldKind kind) {
  switch (kind) {
    case FieldKind::incident: return "incident";
    case FieldKind::scattered: return "scattered";
    case FieldKind::total: return "total";
  }
  return "total";
}

FieldKind field_kind_from_string(const std::string& name) {
  if (name == "incident") return FieldKind::incident;
  if (name == "scattered") return FieldKind::scattered;
  if (name == "total") return FieldKind::total;
  throw ValidationError("unknown field kind '" + name + "'");
}

Eigen::VectorXcd FieldRecord::stacked() const {
  Eigen::VectorXcd v(2 * static_cast<Eigen::Index>(values.size()));
  for (std::size_t r = 0; r < values.size(); ++r) v.segment<2>(2 * static_cast<Eigen::Index>(r)) = values[r];
  return v;
}

double FieldRecord::max_abs() const {
  double m = 0.0;
  for (const CVec2& u : values) m = std::max({m, std::abs(u.x()), std::abs(u.y())});
  return m;
}

const char* to_string(ChargeLayout layout) {
  return layout == ChargeLayout::scaled ? "scaled" : "normal_offset";
}

ChargeLayout charge_layout_from_string(const std::string& name) {
  if (name == "scaled") return ChargeLayout::scaled;
  if (name == "normal_offset") return ChargeLayout::normal_offset;
  throw ValidationError("unknown charge layout '" + name + "'");
}

void ForwardSolverParams::validate() const {
  if (!(charge_scale > 0.0 && charge_scale < 1.0)) throw ValidationError("charge scale must lie in (0, 1)");
  if (!(offset_factor > 0.0)) throw ValidationError("offset factor must be positive");
  if (charge_count < 4) throw ValidationError("charge count must be at least 4");
  if (collocation_count < charge_count) throw ValidationError("collocation count must be >= charge count");
  if (!(ridge >= 0.0)) throw ValidationError("ridge must be nonnegative");
  if (!(residual_tolerance > 0.0)) throw ValidationError("residual tolerance must be positive");
}

namespace forward {
namespace {

// Radius of a point set lying on a circle about the origin, or 0.
double circular_radius(const std::vector<Vec2>& pts) {
  const double r0 = pts.front().norm();
  for (const Vec2& p : pts) {
    if (std::abs(p.norm() - r0) > 1e-12 * r0) return 0.0;
  }
  return r0;
}

// +1 for counterclockwise curves.
double orientation(const CurveNodes& nodes) {
  double area = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const Vec2& a = nodes.points[j];
    const Vec2& b = nodes.points[(j + 1) % nodes.size()];
    area += a.x() * b.y() - a.y() * b.x();
  }
  return area >= 0.0 ? 1.0 : -1.0;
}

}  // namespace

std::vector<Vec2> charge_points(const ClosedCurve& obstacle, const ForwardSolverParams& params) {
  params.validate();
  if (params.layout == ChargeLayout::scaled) return obstacle.scaled(params.charge_scale).discretize(params.charge_count).points;
  const CurveNodes nodes = obstacle.discretize(params.charge_count);
  const double sign = orientation(nodes);
  const double dt = kTwoPi / static_cast<double>(params.charge_count);
  std::vector<Vec2> pts(nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const Vec2 tg = obstacle.tangent(nodes.params[j]);
    const Vec2 outward = sign * Vec2(tg.y(), -tg.x()) / tg.norm();
    pts[j] = nodes.points[j] - params.offset_factor * tg.norm() * dt * outward;
  }
  return pts;
}

CVec2 incident_field(const ElasticMedium& medium, const SourceSpec& source, const Vec2& x) {
  return kernels::green(medium, x, source.z) * source.p.cast<cplx>();
}

ChargeSolution solve_rigid_scattering(const ElasticMedium& medium, const ClosedCurve& obstacle,
                                      const SourceSpec& source, const ForwardSolverParams& params) {
  params.validate();
  if (obstacle.distance(source.z) < 1e-6) throw ValidationError("source lies on the obstacle boundary");
  if (obstacle.contains(source.z)) throw ValidationError("source lies inside the obstacle");

  const std::vector<Vec2> charge_pts = charge_points(obstacle, params);
  for (const Vec2& y : charge_pts) {
    if (!obstacle.contains(y)) throw GeometryError("charge point outside the obstacle; reduce the charge offset");
  }
  if (const double rc = circular_radius(charge_pts); rc > 0.0) {
    if (eigenguard::near_eigenvalue(medium, rc)) {
      log::warn("omega^2 is close to a Dirichlet eigenvalue inside the charge circle");
    }
  } else {
    log::debug("charge curve is not a circle; interior resonance not checked");
  }

  const CurveNodes colloc = obstacle.discretize(params.collocation_count);
  const auto nq = static_cast<Eigen::Index>(charge_pts.size());
  const auto nc = static_cast<Eigen::Index>(colloc.size());

  Eigen::MatrixXcd a(2 * nc + 2 * nq, 2 * nq);
  a.setZero();
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(2 * nc + 2 * nq);
  for (Eigen::Index c = 0; c < nc; ++c) {
    const Vec2& x = colloc.points[static_cast<std::size_t>(c)];
    for (Eigen::Index m = 0; m < nq; ++m) {
      a.block<2, 2>(2 * c, 2 * m) = kernels::green(medium, x, charge_pts[static_cast<std::size_t>(m)]);
    }
    rhs.segment<2>(2 * c) = -incident_field(medium, source, x);
  }
  const double col_scale = a.topRows(2 * nc).colwise().squaredNorm().maxCoeff();
  const double damp = std::sqrt(params.ridge * col_scale);
  for (Eigen::Index i = 0; i < 2 * nq; ++i) a(2 * nc + i, i) = damp;

  // The ridge rows make the augmented matrix full column rank, so no pivoting is needed.
  const Eigen::VectorXcd coef = a.householderQr().solve(rhs);

  ChargeSolution sol{medium, charge_pts, {}, 0.0};
  sol.amplitudes.resize(charge_pts.size());
  for (Eigen::Index m = 0; m < nq; ++m) sol.amplitudes[static_cast<std::size_t>(m)] = coef.segment<2>(2 * m);

  const CurveNodes check = obstacle.discretize(2 * params.collocation_count);
  double res = 0.0;
  double inc = 0.0;
  for (const Vec2& x : check.points) {
    const CVec2 ui = incident_field(medium, source, x);
    const CVec2 u = ui + scattered_at(sol, x);
    inc = std::max({inc, std::abs(ui.x()), std::abs(ui.y())});
    res = std::max({res, std::abs(u.x()), std::abs(u.y())});
  }
  sol.check_residual = res / inc;
  if (!(sol.check_residual <= kFailureResidual)) {
    std::ostringstream msg;
    msg << "rigid scattering solve failed: boundary residual " << sol.check_residual << " relative";
    throw SolverFailure(msg.str());
  }
  if (sol.check_residual > params.residual_tolerance) {
    std::ostringstream msg;
    msg << "boundary residual " << sol.check_residual << " exceeds tolerance " << params.residual_tolerance;
    log::warn(msg.str());
  }
  return sol;
}

CVec2 scattered_at(const ChargeSolution& charges, const Vec2& x) {
  CVec2 v = CVec2::Zero();
  for (std::size_t m = 0; m < charges.points.size(); ++m) {
    v += kernels::green(charges.medium, x, charges.points[m]) * charges.amplitudes[m];
  }
  return v;
}

FieldRecord incident_record(const ElasticMedium& medium, const SourceSpec& source, const CurveNodes& receivers) {
  FieldRecord rec{source, receivers, {}, FieldKind::incident};
  rec.values.reserve(receivers.size());
  for (const Vec2& x : receivers.points) rec.values.push_back(incident_field(medium, source, x));
  return rec;
}

FieldRecord scattered_record(const ChargeSolution& charges, const SourceSpec& source, const CurveNodes& receivers) {
  FieldRecord rec{source, receivers, {}, FieldKind::scattered};
  rec.values.reserve(receivers.size());
  for (const Vec2& x : receivers.points) rec.values.push_back(scattered_at(charges, x));
  return rec;
}

FieldRecord total_record(const ElasticMedium& medium, const ClosedCurve& obstacle, const SourceSpec& source,
                         const CurveNodes& receivers, const ForwardSolverParams& params,
                         ChargeSolution* solution) {
  ChargeSolution sol = solve_rigid_scattering(medium, obstacle, source, params);
  FieldRecord rec{source, receivers, {}, FieldKind::total};
  rec.values.reserve(receivers.size());
  for (const Vec2& x : receivers.points) rec.values.push_back(incident_field(medium, source, x) + scattered_at(sol, x));
  if (solution != nullptr) *solution = std::move(sol);
  return rec;
}

FieldRecord add_noise(const FieldRecord& record, double eps, std::uint64_t seed) {
  if (!(eps >= 0.0)) throw ValidationError("noise level must be nonnegative");
  if (eps == 0.0) return record;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  FieldRecord out = record;
  for (CVec2& u : out.values) {
    for (Eigen::Index c = 0; c < 2; ++c) {
      const double r1 = unit(rng);
      const double r2 = unit(rng);
      u[c] += eps * r1 * std::abs(u[c]) * std::polar(1.0, kPi * r2);
    }
  }
  return out;
}

}  // namespace forward
}  // namespace ecoinv
