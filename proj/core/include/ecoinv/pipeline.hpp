#pragma once

// End-to-end runs: simulate a dataset, locate its sources, subtract the
// estimated incident fields and reconstruct the obstacle.

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ecoinv/config.hpp"
#include "ecoinv/metrics.hpp"
#include "ecoinv/shaperec.hpp"
#include "ecoinv/srcrec.hpp"

namespace ecoinv {

inline constexpr int kReportSchemaVersion = 1;

/// Noisy total-field records with the truth that produced them.
struct Dataset {
  ExperimentConfig config;
  std::vector<SourceSpec> sources;
  std::vector<FieldRecord> records;
  std::vector<double> certificates;  // boundary check residual per source
  std::vector<std::uint64_t> noise_seeds;
};

struct SourceReport {
  SourceSpec truth;
  SourceEstimate estimate;
  double location_error = 0.0;
  double angle_error = 0.0;  // between undirected polarizations
};

struct ShapeReport {
  NewtonState state;
  double final_boundary_residual = 0.0;
  double max_density_residual = 0.0;  // largest relative Tikhonov data misfit
  double hausdorff = 0.0;
  std::optional<double> radial_error;
  /// Illumination direction: polar angle of the mean source direction.
  double illumination_angle = 0.0;
  std::optional<metrics::HalfErrors> halves;
  std::optional<metrics::ArcSplit> arcs;
};

struct RunReport {
  int schema_version = kReportSchemaVersion;
  std::string mode;
  std::string name;
  std::vector<SourceReport> sources;
  std::optional<ShapeReport> shape;
  std::vector<std::pair<std::string, double>> timings;  // seconds per phase, in execution order
  std::vector<std::string> failures;

  /// Indicator maps and the reconstruction, kept for the CSV artifacts.
  std::vector<SourceRecovery> recoveries;

  bool ok() const { return failures.empty(); }
  double timing(const std::string& phase) const;
};

namespace pipeline {

/// Solves every forward problem and adds noise. Throws SolverFailure with
/// the source index if a solve fails.
Dataset simulate(const ExperimentConfig& config);

/// manifest.json (config, truth, seeds, certificates), record_<k>.json and
/// record_<k>.csv for every source, truth_boundary.csv.
void write_dataset(const std::filesystem::path& dir, const Dataset& data);
Dataset read_dataset(const std::filesystem::path& dir);

Dataset run_simulate(const ExperimentConfig& config, const std::filesystem::path& dir);

/// Source recovery only.
RunReport run_locate(const ExperimentConfig& config, const Dataset& data);
/// Source recovery, subtraction of the estimated incident fields, then the
/// shape iteration on all records.
RunReport run_coinvert(const ExperimentConfig& config, const Dataset& data);
/// Shape iteration with the true incident fields subtracted.
RunReport run_obstacle_only(const ExperimentConfig& config, const Dataset& data);

std::string report_to_json(const RunReport& report);
/// report.json plus the plot tables for whatever phases ran.
void write_report(const std::filesystem::path& dir, const RunReport& report, const ExperimentConfig& config);

}  // namespace pipeline
}  // namespace ecoinv
