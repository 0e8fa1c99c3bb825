#include "ecoinv/srcrec.hpp"

#include <cmath>

#include "ecoinv/errors.hpp"

namespace ecoinv {
namespace {

bool too_close(const CurveNodes& receivers, const Vec2& y, double tol) {
  for (const Vec2& x : receivers.points) {
    if ((x - y).norm() < tol) return true;
  }
  return false;
}

}  // namespace

IndicatorMap IndicatorField::map(const Vec2& q) const {
  IndicatorMap out{grid, std::vector<double>(pairing.size(), 0.0), excluded, 0, Vec2::Zero(), q};
  double best = -1.0;
  for (std::size_t i = 0; i < pairing.size(); ++i) {
    if (excluded[i]) continue;
    const double v = std::abs(q.x() * pairing[i].x() + q.y() * pairing[i].y());
    out.values[i] = v;
    if (v > best) {
      best = v;
      out.argmax_index = i;
    }
  }
  if (best < 0.0) throw ValidationError("every sampling point is excluded");
  out.argmax = grid.point(out.argmax_index);
  return out;
}

SourceSpec SourceEstimate::as_source() const { return SourceSpec::make(location, oriented_polarization); }

void SourceRecoveryOptions::validate() const {
  if (!(theta1 >= 0.0 && theta1 < kPi / 2.0)) throw ValidationError("theta1 must lie in [0, pi/2)");
  if (n_q < 2) throw ValidationError("N_q must be at least 2");
  if (!(receiver_exclusion >= 0.0)) throw ValidationError("receiver exclusion must be nonnegative");
}

namespace srcrec {

Vec2 sweep_polarization(int l, int n_q) {
  const double a = kPi * static_cast<double>(l) / static_cast<double>(n_q);
  return {std::cos(a), std::sin(a)};
}

CVec2 pairing(const ElasticMedium& medium, const FieldRecord& record, const Vec2& y) {
  CVec2 a = CVec2::Zero();
  for (std::size_t r = 0; r < record.values.size(); ++r) {
    const Vec2& x = record.receivers.points[r];
    a += record.receivers.weights[r] * (kernels::green(medium, x, y).adjoint() * record.values[r]);
  }
  return a;
}

cplx indicator(const ElasticMedium& medium, const FieldRecord& record, const Vec2& y, const Vec2& q) {
  const CVec2 a = pairing(medium, record, y);
  return q.x() * a.x() + q.y() * a.y();
}

std::vector<IndicatorField> indicator_fields(const ElasticMedium& medium, const std::vector<FieldRecord>& records,
                                             const SamplingGrid& grid, double receiver_exclusion) {
  std::vector<IndicatorField> out;
  if (records.empty()) return out;
  const CurveNodes& receivers = records.front().receivers;
  for (const FieldRecord& rec : records) {
    if (rec.values.size() != receivers.size()) throw ValidationError("records use different receiver sets");
  }
  out.reserve(records.size());
  for (std::size_t k = 0; k < records.size(); ++k) {
    out.push_back({grid, std::vector<CVec2>(grid.size(), CVec2::Zero()), std::vector<bool>(grid.size(), false)});
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec2 y = grid.point(i);
    if (too_close(receivers, y, std::max(receiver_exclusion, kernels::kSingularityGuard))) {
      for (auto& f : out) f.excluded[i] = true;
      continue;
    }
    for (std::size_t r = 0; r < receivers.size(); ++r) {
      const Mat2c gh = receivers.weights[r] * kernels::green(medium, receivers.points[r], y).adjoint();
      for (std::size_t k = 0; k < records.size(); ++k) out[k].pairing[i] += gh * records[k].values[r];
    }
  }
  return out;
}

IndicatorMap locate_candidates(const ElasticMedium& medium, const FieldRecord& record, const SamplingGrid& grid,
                               const Vec2& q, double receiver_exclusion) {
  return indicator_fields(medium, {record}, grid, receiver_exclusion).front().map(q);
}

SourceEstimate recover_polarization(const ElasticMedium& medium, const FieldRecord& record, const Vec2& z1,
                                    const Vec2& z2, int n_q) {
  if (n_q < 2) throw ValidationError("N_q must be at least 2");
  SourceEstimate est;
  est.n_q = n_q;
  est.candidates = {z1, z2};
  const std::array<CVec2, 2> a = {pairing(medium, record, z1), pairing(medium, record, z2)};
  for (std::size_t i = 0; i < 2; ++i) {
    double best = -1.0;
    for (int l = 0; l < n_q; ++l) {
      const Vec2 q = sweep_polarization(l, n_q);
      const double v = std::abs(q.x() * a[i].x() + q.y() * a[i].y());
      if (v > best) {
        best = v;
        est.candidate_angle_index[i] = l;
      }
    }
    est.candidate_peak[i] = best;
  }
  est.chosen_candidate = est.candidate_peak[1] > est.candidate_peak[0] ? 1 : 0;
  est.angle_index = est.candidate_angle_index[static_cast<std::size_t>(est.chosen_candidate)];
  est.polarization = sweep_polarization(est.angle_index, n_q);

  // Location: the candidate with the larger indicator under the final polarization.
  const Vec2& q = est.polarization;
  const cplx i1 = q.x() * a[0].x() + q.y() * a[0].y();
  const cplx i2 = q.x() * a[1].x() + q.y() * a[1].y();
  const bool second = std::abs(i2) > std::abs(i1);
  est.location = second ? z2 : z1;

  // At the source the pairing is dominated by a positive multiple of (p . q).
  const double re = (second ? i2 : i1).real();
  est.oriented_polarization = re < 0.0 ? Vec2(-q) : q;
  return est;
}

std::vector<SourceRecovery> recover_sources(const ElasticMedium& medium, const std::vector<FieldRecord>& records,
                                            const SamplingGrid& grid, const SourceRecoveryOptions& options) {
  options.validate();
  if (records.empty()) throw ValidationError("no records to process");
  const auto fields = indicator_fields(medium, records, grid, options.receiver_exclusion);
  const Vec2 q1(std::cos(options.theta1), std::sin(options.theta1));
  const Vec2 q2(std::cos(kPi - options.theta1), std::sin(kPi - options.theta1));
  std::vector<SourceRecovery> out;
  out.reserve(records.size());
  for (std::size_t k = 0; k < records.size(); ++k) {
    std::array<IndicatorMap, 2> maps{fields[k].map(q1), fields[k].map(q2)};
    SourceEstimate est = recover_polarization(medium, records[k], maps[0].argmax, maps[1].argmax, options.n_q);
    out.push_back(SourceRecovery{est, std::move(maps)});
  }
  return out;
}

FieldRecord approximate_scattered(const ElasticMedium& medium, const FieldRecord& record, const SourceSpec& estimate) {
  FieldRecord out = record;
  out.kind = FieldKind::scattered;
  for (std::size_t r = 0; r < out.values.size(); ++r) {
    out.values[r] -= forward::incident_field(medium, estimate, record.receivers.points[r]);
  }
  return out;
}

}  // namespace srcrec
}  // namespace ecoinv
