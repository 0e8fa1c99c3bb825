#pragma once

// Direct-sampling recovery of point sources from total-field records.
//
// For a record u and a sampling point y the indicator is the discrete L2
// pairing I^q(y) = sum_r w_r u(x_r) . conj(G(x_r, y) q). Since q is real,
// I^q(y) = q . A(y) with A(y) = sum_r w_r G(x_r, y)^H u(x_r), so a grid scan
// stores A once and any polarization is a 2-term dot product.

#include <array>
#include <vector>

#include "ecoinv/forward.hpp"
#include "ecoinv/geometry.hpp"
#include "ecoinv/kernels.hpp"

namespace ecoinv {

/// |I^q| over a sampling grid.
struct IndicatorMap {
  SamplingGrid grid;
  std::vector<double> values;  // linear grid index; excluded points hold 0
  std::vector<bool> excluded;  // too close to the receivers
  std::size_t argmax_index = 0;
  Vec2 argmax = Vec2::Zero();
  Vec2 q = Vec2::UnitX();
};

/// Per-grid-point pairing vectors A(y) of one record.
struct IndicatorField {
  SamplingGrid grid;
  std::vector<CVec2> pairing;
  std::vector<bool> excluded;

  IndicatorMap map(const Vec2& q) const;
};

struct SourceEstimate {
  Vec2 location = Vec2::Zero();
  /// Sweep polarization, angle l pi / N_q in [0, pi).
  Vec2 polarization = Vec2::UnitX();
  /// `polarization` with its sign chosen so that Re I(location) > 0.
  Vec2 oriented_polarization = Vec2::UnitX();
  std::array<Vec2, 2> candidates{Vec2::Zero(), Vec2::Zero()};
  std::array<int, 2> candidate_angle_index{0, 0};
  std::array<double, 2> candidate_peak{0.0, 0.0};
  int chosen_candidate = 0;  // i0, 0-based
  int angle_index = 0;       // l of the final polarization
  int n_q = 0;

  /// The estimate as an excitation (location, oriented polarization).
  SourceSpec as_source() const;
};

struct SourceRecoveryOptions {
  /// First auxiliary polarization angle in [0, pi/2); the second is pi - theta1.
  double theta1 = kPi / 4.0;
  int n_q = 40;
  /// Grid points closer than this to a receiver are left out of the argmax.
  double receiver_exclusion = 0.15;

  void validate() const;
};

struct SourceRecovery {
  SourceEstimate estimate;
  std::array<IndicatorMap, 2> maps;  // one per auxiliary polarization
};

namespace srcrec {

/// Polarization (cos(l pi / n_q), sin(l pi / n_q)).
Vec2 sweep_polarization(int l, int n_q);

CVec2 pairing(const ElasticMedium& medium, const FieldRecord& record, const Vec2& y);

/// I^q(y). Throws SingularityError if y coincides with a receiver.
cplx indicator(const ElasticMedium& medium, const FieldRecord& record, const Vec2& y, const Vec2& q);

/// Pairing vectors of several records on one grid, sharing the Green tensor
/// evaluations. All records must use the same receivers.
std::vector<IndicatorField> indicator_fields(const ElasticMedium& medium, const std::vector<FieldRecord>& records,
                                             const SamplingGrid& grid, double receiver_exclusion = 0.15);

/// |I^q| at every grid point and its argmax (ties go to the lowest index).
IndicatorMap locate_candidates(const ElasticMedium& medium, const FieldRecord& record, const SamplingGrid& grid,
                               const Vec2& q, double receiver_exclusion = 0.15);

/// Polarization sweep at two candidate locations and the final choice of
/// location and polarization. Throws ValidationError for n_q < 2.
SourceEstimate recover_polarization(const ElasticMedium& medium, const FieldRecord& record, const Vec2& z1,
                                    const Vec2& z2, int n_q);

/// Full recovery for every record: two location scans, polarization sweep,
/// final choice.
std::vector<SourceRecovery> recover_sources(const ElasticMedium& medium, const std::vector<FieldRecord>& records,
                                            const SamplingGrid& grid, const SourceRecoveryOptions& options);

/// v~(x_r) = u(x_r) - G(x_r, z~) q~.
FieldRecord approximate_scattered(const ElasticMedium& medium, const FieldRecord& record, const SourceSpec& estimate);

}  // namespace srcrec
}  // namespace ecoinv
