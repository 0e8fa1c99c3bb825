#pragma once

// Synthetic measurements: incident fields of point sources, scattering by a
// rigid obstacle through a method-of-fundamental-solutions collocation
// solver, and the multiplicative noise model.

#include <cstdint>
#include <string>
#include <vector>

#include "ecoinv/geometry.hpp"
#include "ecoinv/kernels.hpp"

namespace ecoinv {

enum class FieldKind { incident, scattered, total };

const char* to_string(FieldKind kind);
FieldKind field_kind_from_string(const std::string& name);

/// Complex displacement sampled at every receiver for one source.
struct FieldRecord {
  SourceSpec source;
  CurveNodes receivers;
  std::vector<CVec2> values;
  FieldKind kind = FieldKind::total;

  /// Receiver-major stacking (u1(x_0), u2(x_0), u1(x_1), ...).
  Eigen::VectorXcd stacked() const;
  double max_abs() const;
};

/// Where the charges of the collocation solver sit.
///  scaled: on the homothetic copy charge_scale * x(t).
///  normal_offset: at x(t_j) - d_j n(t_j) with d_j = offset_factor * |x'(t_j)| 2 pi / charge_count,
///  i.e. a fixed multiple of the local node spacing.
enum class ChargeLayout { scaled, normal_offset };
const char* to_string(ChargeLayout layout);
ChargeLayout charge_layout_from_string(const std::string& name);

struct ForwardSolverParams {
  ChargeLayout layout = ChargeLayout::normal_offset;
  double charge_scale = 0.8;
  double offset_factor = 3.0;
  std::size_t collocation_count = 560;
  std::size_t charge_count = 280;
  double ridge = 1e-12;             // relative to the largest squared column norm
  double residual_tolerance = 1e-6; // certificate: max |u| / max |u^i| on the check grid

  void validate() const;
};

/// Point charges v(x) = sum_m G(x, y_m) a_m representing a scattered field.
struct ChargeSolution {
  ElasticMedium medium;
  std::vector<Vec2> points;
  std::vector<CVec2> amplitudes;
  /// max |u^i + v| / max |u^i| over a boundary grid twice as dense as the collocation grid.
  double check_residual = 0.0;
};

namespace forward {

/// Residual above this fraction of max |u^i| is a solver failure.
inline constexpr double kFailureResidual = 1e-3;

/// Charge locations for an obstacle under the given layout.
std::vector<Vec2> charge_points(const ClosedCurve& obstacle, const ForwardSolverParams& params);

CVec2 incident_field(const ElasticMedium& medium, const SourceSpec& source, const Vec2& x);

/// Throws ValidationError if the source is inside or on the obstacle,
/// SolverFailure if the boundary certificate exceeds kFailureResidual.
ChargeSolution solve_rigid_scattering(const ElasticMedium& medium, const ClosedCurve& obstacle,
                                      const SourceSpec& source, const ForwardSolverParams& params);

CVec2 scattered_at(const ChargeSolution& charges, const Vec2& x);

FieldRecord incident_record(const ElasticMedium& medium, const SourceSpec& source, const CurveNodes& receivers);
FieldRecord scattered_record(const ChargeSolution& charges, const SourceSpec& source, const CurveNodes& receivers);

/// Total field u^i + v at every receiver. `solution` receives the charges if non-null.
FieldRecord total_record(const ElasticMedium& medium, const ClosedCurve& obstacle, const SourceSpec& source,
                         const CurveNodes& receivers, const ForwardSolverParams& params,
                         ChargeSolution* solution = nullptr);

/// u + eps r1 |u| e^{i pi r2} per complex component, r1 and r2 independent U[-1, 1].
/// eps = 0 returns the record unchanged.
FieldRecord add_noise(const FieldRecord& record, double eps, std::uint64_t seed);

}  // namespace forward
}  // namespace ecoinv
