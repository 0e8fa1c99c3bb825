#pragma once

// Experiment configuration: one JSON document whose missing fields take the
// defaults of the standard numerical setup (lambda = mu = 1, receivers on
// the circle of radius 10, 5% noise, 200 x 200 grid on [-5, 5]^2).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ecoinv/forward.hpp"
#include "ecoinv/shaperec.hpp"
#include "ecoinv/srcrec.hpp"

namespace ecoinv {

struct ObstacleSpec {
  /// "circle", "leaf", "kite" or "random".
  std::string shape = "leaf";
  double param = 3.0;  // radius for "circle", number of leaves for "leaf"
  std::uint64_t random_seed = 0;
  /// Rotation about the origin applied after construction.
  double rotation = 0.0;

  ClosedCurve curve() const;
  /// Whether the shape is star-like about the origin, so radial errors are meaningful.
  bool star_like() const;
};

struct SourceRingSpec {
  std::size_t count = 12;
  double radius = 3.0;
  /// Angles start + (sector / count) (k + 1/2) for a sector, start + 2 pi k / count for the full ring.
  double start_angle = 0.0;
  double sector = kTwoPi;
  Vec2 polarization{0.5, 0.8660254037844386};
};

struct ExperimentConfig {
  std::string name = "experiment";
  double lambda = 1.0;
  double mu = 1.0;
  double omega = 8.0;

  ObstacleSpec obstacle;
  /// If non-empty, used as is; otherwise sources come from `ring`.
  std::vector<SourceSpec> sources;
  SourceRingSpec ring;

  double receiver_radius = 10.0;
  std::size_t receiver_count = 120;

  double noise = 0.05;
  std::uint64_t seed = 1;

  double grid_min = -5.0;
  double grid_max = 5.0;
  std::size_t grid_points = 200;

  SourceRecoveryOptions locate;
  ReconstructionOptions inversion;
  int degree = 8;  // M
  double initial_radius = 1.0;

  ForwardSolverParams forward;

  std::string output_dir = "out";

  ElasticMedium medium() const { return ElasticMedium(lambda, mu, omega); }
  std::vector<SourceSpec> source_list() const;
  CurveNodes receivers() const { return geometry::ring(receiver_radius, receiver_count); }
  SamplingGrid grid() const {
    return SamplingGrid(grid_min, grid_max, grid_min, grid_max, grid_points, grid_points);
  }
  /// Per-source noise seeds, a fixed function of `seed`.
  std::vector<std::uint64_t> noise_seeds() const;

  /// Throws ValidationError for out-of-range fields.
  void validate() const;
};

namespace config {

/// Missing fields take the defaults above. Throws ValidationError on unknown
/// keys, wrong types or out-of-range values.
ExperimentConfig from_json(const std::string& text);
std::string to_json(const ExperimentConfig& cfg);
ExperimentConfig load(const std::string& path);

}  // namespace config
}  // namespace ecoinv
