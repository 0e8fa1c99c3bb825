#pragma once

// Obstacle reconstruction from scattered-field records.
//
// Each scattered field is represented on an auxiliary curve inside the
// obstacle as v = grad phi + curl psi with single-layer potentials phi, psi
// of densities g1, g2, i.e. v(x) = int K(x, y) g(y) ds(y). The densities are
// fitted to the receiver data by Tikhonov regularization. The boundary is
// then the zero set of u^i + v, located by a Gauss-Newton iteration on the
// Fourier coefficients of a star-like radial function.

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ecoinv/forward.hpp"
#include "ecoinv/geometry.hpp"
#include "ecoinv/kernels.hpp"

namespace ecoinv {

/// Quadrature-weighted collocation of the layer operator: block (r, m) is
/// w_m K(x_r, y_m).
struct AnsatzSystem {
  ElasticMedium medium;
  CurveNodes aux;
  CurveNodes receivers;
  Eigen::MatrixXcd matrix;  // (2 n_recv) x (2 n_aux)
};

struct DensitySolution {
  double xi = 0.0;
  Eigen::VectorXcd g;  // node-major (g1(y_0), g2(y_0), g1(y_1), ...)
  double residual_norm = 0.0;  // || S g - v ||
  double data_norm = 0.0;      // || v ||
  int source_index = -1;

  CVec2 at(std::size_t node) const { return g.segment<2>(2 * static_cast<Eigen::Index>(node)); }
  double relative_residual() const { return data_norm > 0.0 ? residual_norm / data_norm : 0.0; }
};

/// Value and Jacobian [i][l] = d u_i / d x_l of a field at one point.
struct FieldJet {
  CVec2 value = CVec2::Zero();
  Mat2c grad = Mat2c::Zero();
};

enum class NewtonStatus { running, converged, max_iterations, step_failure };
const char* to_string(NewtonStatus status);

struct NewtonState {
  StarShape shape;
  int iteration = 0;
  double update = 0.0;                       // E_n of the latest step
  std::vector<double> update_history;        // E_1, E_2, ...
  std::vector<Eigen::VectorXd> coefficient_history;  // c_0, c_1, ...
  std::vector<double> boundary_residual_history;     // max |u^xi| on the iterate, before each step
  NewtonStatus status = NewtonStatus::running;
  std::string message;
  int clamped_steps = 0;

  bool converged() const { return status == NewtonStatus::converged; }
};

struct NewtonOptions {
  std::size_t collocation = 64;  // J
  double damping = 1.0;
  double epsilon = 1e-3;
  int max_iter = 200;
  /// Updates that push r(t) to this value or below are halved until they do not.
  double min_radius = 0.05;

  void validate() const;
};

struct ReconstructionOptions {
  double xi = 1e-2;
  double aux_radius = 0.7;
  std::size_t aux_nodes = 100;
  NewtonOptions newton;

  void validate() const;
};

struct ReconstructionResult {
  NewtonState state;
  std::vector<DensitySolution> densities;
  double final_boundary_residual = 0.0;
};

namespace shaperec {

/// Throws GeometryError if an auxiliary node coincides with (or lies within
/// 1e-9 of) a receiver.
AnsatzSystem assemble(const ElasticMedium& medium, const CurveNodes& aux, const CurveNodes& receivers);

/// Minimizer of ||S g - v||^2 + xi ||g||^2, i.e. (xi I + S^H S) g = S^H v,
/// computed from an orthogonal factorization of [S; sqrt(xi) I].
Eigen::VectorXcd tikhonov_solve(const Eigen::MatrixXcd& s, const Eigen::VectorXcd& v, double xi);

/// Reusable factorization for many right-hand sides with one operator.
class TikhonovSolver {
 public:
  TikhonovSolver(const Eigen::MatrixXcd& s, double xi);
  Eigen::VectorXcd solve(const Eigen::VectorXcd& v) const;
  double xi() const { return xi_; }

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  double xi_;
};

DensitySolution tikhonov_solve(const AnsatzSystem& system, const Eigen::VectorXcd& v, double xi, int source_index = -1);

/// ||xi g + S^H (S g - v)||, the normal-equation residual.
double optimality_residual(const Eigen::MatrixXcd& s, const Eigen::VectorXcd& v, const Eigen::VectorXcd& g, double xi);

/// v^xi(x) = sum_m w_m K(x, y_m) g_m.
CVec2 eval_field(const AnsatzSystem& system, const DensitySolution& density, const Vec2& x);
/// grad(i, l) = d v^xi_i / d x_l.
Mat2c eval_grad(const AnsatzSystem& system, const DensitySolution& density, const Vec2& x);

/// Value and gradient of every density's field at x, sharing kernel evaluations.
std::vector<FieldJet> eval_jets(const AnsatzSystem& system, const std::vector<DensitySolution>& densities,
                                const Vec2& x);

/// Total field jet u^i + v^xi for source k at x.
std::vector<FieldJet> total_jets(const AnsatzSystem& system, const std::vector<DensitySolution>& densities,
                                 const std::vector<SourceSpec>& sources, const Vec2& x);

/// max over t_j and sources of |u^xi(r(t_j) xhat(t_j))| (component-wise max modulus).
double boundary_residual(const AnsatzSystem& system, const std::vector<DensitySolution>& densities,
                         const std::vector<SourceSpec>& sources, const StarShape& shape, std::size_t collocation);

/// One Gauss-Newton update of the radial Fourier coefficients.
/// Throws StepFailure if the stacked system has rank below 2M+1, and
/// ValidationError if a source is not outside the current iterate.
NewtonState newton_step(const NewtonState& state, const AnsatzSystem& system,
                        const std::vector<DensitySolution>& densities, const std::vector<SourceSpec>& sources,
                        const NewtonOptions& options);

/// Densities for every record, then Newton steps until E_n < epsilon or
/// max_iter. Non-convergence and step failures are reported in the state.
ReconstructionResult reconstruct(const ElasticMedium& medium, const std::vector<FieldRecord>& scattered,
                                 const std::vector<SourceSpec>& sources, const StarShape& initial,
                                 const ReconstructionOptions& options);

/// L2 norm of a radial function on [0, 2 pi] by the trapezoid rule.
double radial_l2_norm(const Eigen::VectorXd& coefficients, std::size_t points = 512);

}  // namespace shaperec
}  // namespace ecoinv
