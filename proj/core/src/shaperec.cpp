#include "ecoinv/shaperec.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "ecoinv/eigenguard.hpp"
#include "ecoinv/errors.hpp"
#include "ecoinv/log.hpp"

namespace ecoinv {

const char* to_string(NewtonStatus status) {
  switch (status) {
    case NewtonStatus::running: return "running";
    case NewtonStatus::converged: return "converged";
    case NewtonStatus::max_iterations: return "max_iterations";
    case NewtonStatus::step_failure: return "step_failure";
  }
  return "running";
}

void NewtonOptions::validate() const {
  if (collocation < 3) throw ValidationError("Newton collocation count must be at least 3");
  if (!(damping > 0.0 && damping <= 1.0)) throw ValidationError("damping must lie in (0, 1]");
  if (!(epsilon > 0.0)) throw ValidationError("stopping tolerance must be positive");
  if (max_iter < 1) throw ValidationError("max_iter must be at least 1");
  if (!(min_radius > 0.0)) throw ValidationError("minimum radius must be positive");
}

void ReconstructionOptions::validate() const {
  if (!(xi > 0.0)) throw ValidationError("regularization parameter must be positive");
  if (!(aux_radius > 0.0)) throw ValidationError("auxiliary radius must be positive");
  if (aux_nodes < 3) throw ValidationError("auxiliary curve needs at least 3 nodes");
  newton.validate();
}

namespace shaperec {

AnsatzSystem assemble(const ElasticMedium& medium, const CurveNodes& aux, const CurveNodes& receivers) {
  for (const Vec2& y : aux.points) {
    for (const Vec2& x : receivers.points) {
      if ((x - y).norm() < 1e-9) throw GeometryError("auxiliary curve touches the receiver set");
    }
  }
  const auto nr = static_cast<Eigen::Index>(receivers.size());
  const auto na = static_cast<Eigen::Index>(aux.size());
  AnsatzSystem sys{medium, aux, receivers, Eigen::MatrixXcd(2 * nr, 2 * na)};
  for (Eigen::Index r = 0; r < nr; ++r) {
    for (Eigen::Index m = 0; m < na; ++m) {
      const auto um = static_cast<std::size_t>(m);
      sys.matrix.block<2, 2>(2 * r, 2 * m) =
          aux.weights[um] * kernels::kernel_K(medium, receivers.points[static_cast<std::size_t>(r)], aux.points[um]);
    }
  }
  return sys;
}

struct TikhonovSolver::Impl {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr;
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
};

TikhonovSolver::TikhonovSolver(const Eigen::MatrixXcd& s, double xi) : xi_(xi) {
  if (!(xi > 0.0)) throw ValidationError("regularization parameter must be positive");
  auto impl = std::make_shared<Impl>();
  impl->rows = s.rows();
  impl->cols = s.cols();
  Eigen::MatrixXcd aug(s.rows() + s.cols(), s.cols());
  aug.topRows(s.rows()) = s;
  aug.bottomRows(s.cols()).setZero();
  aug.bottomRows(s.cols()).diagonal().setConstant(std::sqrt(xi));
  impl->qr.compute(aug);
  impl_ = std::move(impl);
}

Eigen::VectorXcd TikhonovSolver::solve(const Eigen::VectorXcd& v) const {
  if (v.size() != impl_->rows) throw ValidationError("data size does not match the layer operator");
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(impl_->rows + impl_->cols);
  rhs.head(impl_->rows) = v;
  return impl_->qr.solve(rhs);
}

Eigen::VectorXcd tikhonov_solve(const Eigen::MatrixXcd& s, const Eigen::VectorXcd& v, double xi) {
  return TikhonovSolver(s, xi).solve(v);
}

DensitySolution tikhonov_solve(const AnsatzSystem& system, const Eigen::VectorXcd& v, double xi, int source_index) {
  DensitySolution d;
  d.xi = xi;
  d.g = tikhonov_solve(system.matrix, v, xi);
  d.residual_norm = (system.matrix * d.g - v).norm();
  d.data_norm = v.norm();
  d.source_index = source_index;
  return d;
}

double optimality_residual(const Eigen::MatrixXcd& s, const Eigen::VectorXcd& v, const Eigen::VectorXcd& g,
                           double xi) {
  return (xi * g + s.adjoint() * (s * g - v)).norm();
}

std::vector<FieldJet> eval_jets(const AnsatzSystem& system, const std::vector<DensitySolution>& densities,
                                const Vec2& x) {
  std::vector<FieldJet> jets(densities.size());
  for (std::size_t m = 0; m < system.aux.size(); ++m) {
    const auto kg = kernels::kernel_K_with_grad(system.medium, x, system.aux.points[m]);
    const double w = system.aux.weights[m];
    for (std::size_t k = 0; k < densities.size(); ++k) {
      const CVec2 g = w * densities[k].at(m);
      jets[k].value += kg.k * g;
      jets[k].grad.col(0) += kg.dk[0] * g;
      jets[k].grad.col(1) += kg.dk[1] * g;
    }
  }
  return jets;
}

CVec2 eval_field(const AnsatzSystem& system, const DensitySolution& density, const Vec2& x) {
  CVec2 v = CVec2::Zero();
  for (std::size_t m = 0; m < system.aux.size(); ++m) {
    v += system.aux.weights[m] * (kernels::kernel_K(system.medium, x, system.aux.points[m]) * density.at(m));
  }
  return v;
}

Mat2c eval_grad(const AnsatzSystem& system, const DensitySolution& density, const Vec2& x) {
  Mat2c grad = Mat2c::Zero();
  for (std::size_t m = 0; m < system.aux.size(); ++m) {
    const auto dk = kernels::kernel_K_grad(system.medium, x, system.aux.points[m]);
    const CVec2 g = system.aux.weights[m] * density.at(m);
    grad.col(0) += dk[0] * g;
    grad.col(1) += dk[1] * g;
  }
  return grad;
}

std::vector<FieldJet> total_jets(const AnsatzSystem& system, const std::vector<DensitySolution>& densities,
                                 const std::vector<SourceSpec>& sources, const Vec2& x) {
  if (sources.size() != densities.size()) throw ValidationError("sources and densities are not aligned");
  std::vector<FieldJet> jets = eval_jets(system, densities, x);
  for (std::size_t k = 0; k < sources.size(); ++k) {
    const auto gg = kernels::green_with_grad(system.medium, x, sources[k].z);
    const CVec2 p = sources[k].p.cast<cplx>();
    jets[k].value += gg.g * p;
    jets[k].grad.col(0) += gg.dg[0] * p;
    jets[k].grad.col(1) += gg.dg[1] * p;
  }
  return jets;
}

double radial_l2_norm(const Eigen::VectorXd& coefficients, std::size_t points) {
  const int degree = static_cast<int>((coefficients.size() - 1) / 2);
  double sum = 0.0;
  for (std::size_t j = 0; j < points; ++j) {
    const double t = kTwoPi * static_cast<double>(j) / static_cast<double>(points);
    const double r = fourier_row(t, degree).dot(coefficients);
    sum += r * r;
  }
  return std::sqrt(sum * kTwoPi / static_cast<double>(points));
}

double boundary_residual(const AnsatzSystem& system, const std::vector<DensitySolution>& densities,
                         const std::vector<SourceSpec>& sources, const StarShape& shape, std::size_t collocation) {
  double worst = 0.0;
  for (std::size_t j = 0; j < collocation; ++j) {
    const double t = kTwoPi * static_cast<double>(j) / static_cast<double>(collocation);
    for (const FieldJet& jet : total_jets(system, densities, sources, shape.point(t))) {
      worst = std::max({worst, std::abs(jet.value.x()), std::abs(jet.value.y())});
    }
  }
  return worst;
}

namespace {

void require_sources_outside(const StarShape& shape, const std::vector<SourceSpec>& sources) {
  for (const SourceSpec& s : sources) {
    const double theta = std::atan2(s.z.y(), s.z.x());
    if (!(s.z.norm() > shape.radius(theta))) throw ValidationError("a source lies inside the current iterate");
  }
}

}  // namespace

NewtonState newton_step(const NewtonState& state, const AnsatzSystem& system,
                        const std::vector<DensitySolution>& densities, const std::vector<SourceSpec>& sources,
                        const NewtonOptions& options) {
  options.validate();
  const StarShape& shape = state.shape;
  const int degree = shape.degree();
  const auto unknowns = static_cast<Eigen::Index>(2 * degree + 1);
  const std::size_t j_count = options.collocation;
  if (static_cast<Eigen::Index>(j_count) < unknowns) throw ValidationError("Newton collocation count must be >= 2M+1");
  require_sources_outside(shape, sources);

  // Real and imaginary parts of both components for every (t_j, source).
  const auto rows = static_cast<Eigen::Index>(4 * j_count * sources.size());
  Eigen::MatrixXd a(rows, unknowns);
  Eigen::VectorXd b(rows);
  double residual = 0.0;
  Eigen::Index row = 0;
  for (std::size_t j = 0; j < j_count; ++j) {
    const double t = kTwoPi * static_cast<double>(j) / static_cast<double>(j_count);
    const Vec2 dir(std::cos(t), std::sin(t));
    const Eigen::RowVectorXd basis = shape.basis_row(t);
    const auto jets = total_jets(system, densities, sources, shape.radius(t) * dir);
    for (const FieldJet& jet : jets) {
      const CVec2 slope = jet.grad * dir.cast<cplx>();
      for (Eigen::Index i = 0; i < 2; ++i) {
        a.row(row) = slope[i].real() * basis;
        b(row++) = -jet.value[i].real();
        a.row(row) = slope[i].imag() * basis;
        b(row++) = -jet.value[i].imag();
        residual = std::max(residual, std::abs(jet.value[i]));
      }
    }
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (qr.rank() < unknowns) {
    std::ostringstream msg;
    msg << "Newton system has rank " << qr.rank() << " < " << unknowns;
    throw StepFailure(msg.str());
  }
  const Eigen::VectorXd step = qr.solve(b);

  double tau = options.damping;
  Eigen::VectorXd next = shape.coefficients() + tau * step;
  int halvings = 0;
  while (!(min_radius_on_grid(next) > options.min_radius)) {
    if (++halvings > 40) throw StepFailure("positivity clamp could not find an admissible step");
    tau *= 0.5;
    next = shape.coefficients() + tau * step;
  }

  NewtonState out{StarShape(next), 0, 0.0, {}, {}, {}, NewtonStatus::running, {}, 0};
  out.iteration = state.iteration + 1;
  out.update = radial_l2_norm(tau * step) / radial_l2_norm(shape.coefficients());
  out.update_history = state.update_history;
  out.update_history.push_back(out.update);
  out.coefficient_history = state.coefficient_history;
  if (out.coefficient_history.empty()) out.coefficient_history.push_back(shape.coefficients());
  out.coefficient_history.push_back(next);
  out.boundary_residual_history = state.boundary_residual_history;
  out.boundary_residual_history.push_back(residual);
  out.clamped_steps = state.clamped_steps;
  if (halvings > 0) {
    ++out.clamped_steps;
    std::ostringstream msg;
    msg << "Newton step " << out.iteration << " clamped by 2^-" << halvings << " to keep r(t) > " << options.min_radius;
    log::warn(msg.str());
  }
  return out;
}

ReconstructionResult reconstruct(const ElasticMedium& medium, const std::vector<FieldRecord>& scattered,
                                 const std::vector<SourceSpec>& sources, const StarShape& initial,
                                 const ReconstructionOptions& options) {
  options.validate();
  if (scattered.empty()) throw ValidationError("no scattered records to invert");
  if (scattered.size() != sources.size()) throw ValidationError("records and sources are not aligned");
  if (eigenguard::near_eigenvalue(medium, options.aux_radius)) {
    log::warn("omega^2 is close to a Dirichlet eigenvalue inside the auxiliary circle");
  }

  const CurveNodes aux = geometry::circle(options.aux_radius).discretize(options.aux_nodes);
  const AnsatzSystem system = assemble(medium, aux, scattered.front().receivers);
  const TikhonovSolver solver(system.matrix, options.xi);

  ReconstructionResult result{NewtonState{initial, 0, 0.0, {}, {}, {}, NewtonStatus::running, {}, 0}, {}, 0.0};
  result.densities.reserve(scattered.size());
  for (std::size_t k = 0; k < scattered.size(); ++k) {
    if (scattered[k].values.size() != system.receivers.size())
      throw ValidationError("records use different receiver sets");
    const Eigen::VectorXcd v = scattered[k].stacked();
    DensitySolution d;
    d.xi = options.xi;
    d.g = solver.solve(v);
    d.residual_norm = (system.matrix * d.g - v).norm();
    d.data_norm = v.norm();
    d.source_index = static_cast<int>(k);
    result.densities.push_back(std::move(d));
  }

  NewtonState& state = result.state;
  state.coefficient_history.push_back(initial.coefficients());
  try {
    while (state.iteration < options.newton.max_iter) {
      state = newton_step(state, system, result.densities, sources, options.newton);
      if (state.update < options.newton.epsilon) {
        state.status = NewtonStatus::converged;
        break;
      }
    }
    if (state.status == NewtonStatus::running) {
      state.status = NewtonStatus::max_iterations;
      state.message = "max_iter reached before E_n < epsilon";
    }
  } catch (const NumericalError& e) {
    state.status = NewtonStatus::step_failure;
    state.message = e.what();
  } catch (const ValidationError& e) {
    state.status = NewtonStatus::step_failure;
    state.message = e.what();
  }
  result.final_boundary_residual =
      boundary_residual(system, result.densities, sources, state.shape, options.newton.collocation);
  return result;
}

}  // namespace shaperec
}  // namespace ecoinv
