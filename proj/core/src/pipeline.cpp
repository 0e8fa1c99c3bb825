#include "ecoinv/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "ecoinv/errors.hpp"
#include "ecoinv/io.hpp"
#include "ecoinv/log.hpp"

namespace ecoinv {

using nlohmann::json;

double RunReport::timing(const std::string& phase) const {
  for (const auto& [name, seconds] : timings) {
    if (name == phase) return seconds;
  }
  return 0.0;
}

namespace pipeline {
namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

json vec(const Vec2& v) { return json::array({v.x(), v.y()}); }
Vec2 vec_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

std::string record_name(std::size_t k, const char* ext) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "record_%03zu.%s", k, ext);
  return buf;
}

void require_data(const Dataset& data) {
  if (data.records.empty()) throw ValidationError("dataset has no records");
  if (data.sources.size() != data.records.size()) throw ValidationError("dataset truth and records are not aligned");
}

void require_match(const ExperimentConfig& config, const Dataset& data) {
  const ExperimentConfig& d = data.config;
  if (config.lambda != d.lambda || config.mu != d.mu || config.omega != d.omega)
    throw ValidationError("config medium does not match the dataset manifest");
  if (config.receiver_count != d.receiver_count || config.receiver_radius != d.receiver_radius)
    throw ValidationError("config receivers do not match the dataset manifest");
}

double illumination_angle(const std::vector<SourceSpec>& sources) {
  Vec2 mean = Vec2::Zero();
  for (const SourceSpec& s : sources) mean += s.z.normalized();
  return std::atan2(mean.y(), mean.x());
}

ShapeReport shape_report(const ExperimentConfig& config, const Dataset& data, const ReconstructionResult& result) {
  ShapeReport rep{result.state, result.final_boundary_residual, 0.0, 0.0, std::nullopt, 0.0, std::nullopt, std::nullopt};
  for (const DensitySolution& d : result.densities) {
    rep.max_density_residual = std::max(rep.max_density_residual, d.relative_residual());
  }
  const ClosedCurve truth = data.config.obstacle.curve();
  const ClosedCurve recon = result.state.shape.to_curve();
  rep.hausdorff = metrics::hausdorff(recon, truth);
  rep.illumination_angle = illumination_angle(data.sources);
  if (data.config.obstacle.star_like()) {
    rep.radial_error = metrics::radial_relative_error(recon, truth);
    rep.halves = metrics::half_radial_errors(recon, truth, rep.illumination_angle);
  }
  if (data.config.obstacle.shape == "random") rep.arcs = metrics::convexity_split(recon, truth);
  (void)config;
  return rep;
}

StarShape initial_shape(const ExperimentConfig& config) { return StarShape::circle(config.initial_radius, config.degree); }

void reconstruct_into(RunReport& report, const ExperimentConfig& config, const Dataset& data,
                      const std::vector<FieldRecord>& scattered, const std::vector<SourceSpec>& sources) {
  Stopwatch sw;
  try {
    const ReconstructionResult result =
        shaperec::reconstruct(config.medium(), scattered, sources, initial_shape(config), config.inversion);
    report.shape = shape_report(config, data, result);
    if (!result.state.converged()) {
      report.failures.push_back(std::string("reconstruct: ") + to_string(result.state.status) +
                                (result.state.message.empty() ? "" : ": " + result.state.message));
    }
  } catch (const Error& e) {
    report.failures.push_back(std::string("reconstruct: ") + e.what());
  }
  report.timings.emplace_back("reconstruct", sw.seconds());
}

}  // namespace

Dataset simulate(const ExperimentConfig& config) {
  config.validate();
  Dataset data;
  data.config = config;
  data.sources = config.source_list();
  data.noise_seeds = config.noise_seeds();
  const ElasticMedium medium = config.medium();
  const ClosedCurve obstacle = config.obstacle.curve();
  const CurveNodes receivers = config.receivers();
  for (std::size_t k = 0; k < data.sources.size(); ++k) {
    ChargeSolution sol{medium, {}, {}, 0.0};
    FieldRecord rec;
    try {
      rec = forward::total_record(medium, obstacle, data.sources[k], receivers, config.forward, &sol);
    } catch (const SolverFailure& e) {
      throw SolverFailure("source " + std::to_string(k) + ": " + e.what());
    }
    data.certificates.push_back(sol.check_residual);
    data.records.push_back(forward::add_noise(rec, config.noise, data.noise_seeds[k]));
  }
  return data;
}

void write_dataset(const std::filesystem::path& dir, const Dataset& data) {
  require_data(data);
  json m;
  m["schema_version"] = kReportSchemaVersion;
  m["config"] = json::parse(config::to_json(data.config));
  json truth = json::array();
  for (std::size_t k = 0; k < data.sources.size(); ++k) {
    truth.push_back({{"z", vec(data.sources[k].z)},
                     {"p", vec(data.sources[k].p)},
                     {"noise_seed", data.noise_seeds[k]},
                     {"certificate", data.certificates[k]},
                     {"record", record_name(k, "json")}});
  }
  m["truth"] = {{"obstacle", m["config"]["obstacle"]}, {"sources", truth}};
  io::write_text(dir / "manifest.json", m.dump(2));
  for (std::size_t k = 0; k < data.records.size(); ++k) {
    io::write_record(dir / record_name(k, "json"), data.records[k]);
    io::write_record_csv(dir / record_name(k, "csv"), data.records[k]);
  }
  io::write_polyline_csv(dir / "truth_boundary.csv",
                         data.config.obstacle.curve().discretize(metrics::kMetricPoints).points);
}

Dataset read_dataset(const std::filesystem::path& dir) {
  json m;
  try {
    m = json::parse(io::read_text(dir / "manifest.json"));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed manifest: ") + e.what());
  }
  Dataset data;
  try {
    data.config = config::from_json(m.at("config").dump());
    for (const json& t : m.at("truth").at("sources")) {
      data.sources.push_back(SourceSpec{vec_from(t.at("z")), vec_from(t.at("p"))});
      data.noise_seeds.push_back(t.at("noise_seed").get<std::uint64_t>());
      data.certificates.push_back(t.at("certificate").get<double>());
      data.records.push_back(io::read_record(dir / t.at("record").get<std::string>()));
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed manifest: ") + e.what());
  }
  return data;
}

Dataset run_simulate(const ExperimentConfig& config, const std::filesystem::path& dir) {
  Dataset data = simulate(config);
  write_dataset(dir, data);
  return data;
}

RunReport run_locate(const ExperimentConfig& config, const Dataset& data) {
  config.validate();
  require_data(data);
  require_match(config, data);
  RunReport report;
  report.mode = "locate";
  report.name = config.name;
  Stopwatch sw;
  try {
    report.recoveries = srcrec::recover_sources(config.medium(), data.records, config.grid(), config.locate);
    for (std::size_t k = 0; k < report.recoveries.size(); ++k) {
      SourceReport s;
      s.truth = data.sources[k];
      s.estimate = report.recoveries[k].estimate;
      s.location_error = (s.estimate.location - s.truth.z).norm();
      s.angle_error = metrics::polarization_angle_error(s.estimate.polarization, s.truth.p);
      report.sources.push_back(s);
    }
  } catch (const Error& e) {
    report.failures.push_back(std::string("locate: ") + e.what());
  }
  report.timings.emplace_back("locate", sw.seconds());
  return report;
}

RunReport run_coinvert(const ExperimentConfig& config, const Dataset& data) {
  RunReport report = run_locate(config, data);
  report.mode = "coinvert";
  if (report.sources.size() != data.records.size()) return report;

  Stopwatch sw;
  std::vector<FieldRecord> scattered;
  std::vector<SourceSpec> estimates;
  for (std::size_t k = 0; k < data.records.size(); ++k) {
    estimates.push_back(report.sources[k].estimate.as_source());
    scattered.push_back(srcrec::approximate_scattered(config.medium(), data.records[k], estimates.back()));
  }
  report.timings.emplace_back("subtract", sw.seconds());
  reconstruct_into(report, config, data, scattered, estimates);
  return report;
}

RunReport run_obstacle_only(const ExperimentConfig& config, const Dataset& data) {
  config.validate();
  require_data(data);
  require_match(config, data);
  RunReport report;
  report.mode = "obstacle-only";
  report.name = config.name;
  Stopwatch sw;
  std::vector<FieldRecord> scattered;
  for (std::size_t k = 0; k < data.records.size(); ++k) {
    scattered.push_back(srcrec::approximate_scattered(config.medium(), data.records[k], data.sources[k]));
  }
  report.timings.emplace_back("subtract", sw.seconds());
  reconstruct_into(report, config, data, scattered, data.sources);
  return report;
}

std::string report_to_json(const RunReport& r) {
  json j;
  j["schema_version"] = r.schema_version;
  j["mode"] = r.mode;
  j["name"] = r.name;
  json sources = json::array();
  for (const SourceReport& s : r.sources) {
    const SourceEstimate& e = s.estimate;
    sources.push_back({{"truth", {{"z", vec(s.truth.z)}, {"p", vec(s.truth.p)}}},
                       {"location", vec(e.location)},
                       {"polarization", vec(e.polarization)},
                       {"oriented_polarization", vec(e.oriented_polarization)},
                       {"angle_index", e.angle_index},
                       {"n_q", e.n_q},
                       {"candidates", {vec(e.candidates[0]), vec(e.candidates[1])}},
                       {"candidate_angle_index", {e.candidate_angle_index[0], e.candidate_angle_index[1]}},
                       {"candidate_peak", {e.candidate_peak[0], e.candidate_peak[1]}},
                       {"chosen_candidate", e.chosen_candidate + 1},
                       {"location_error", s.location_error},
                       {"angle_error", s.angle_error}});
  }
  j["sources"] = sources;
  if (r.shape) {
    const ShapeReport& s = *r.shape;
    json shape;
    shape["coefficients"] = std::vector<double>(s.state.shape.coefficients().data(),
                                                s.state.shape.coefficients().data() + s.state.shape.coefficients().size());
    shape["status"] = to_string(s.state.status);
    shape["message"] = s.state.message;
    shape["iterations"] = s.state.iteration;
    shape["clamped_steps"] = s.state.clamped_steps;
    shape["update_history"] = s.state.update_history;
    shape["boundary_residual_history"] = s.state.boundary_residual_history;
    shape["final_boundary_residual"] = s.final_boundary_residual;
    shape["max_density_residual"] = s.max_density_residual;
    shape["hausdorff"] = s.hausdorff;
    shape["illumination_angle"] = s.illumination_angle;
    if (s.radial_error) shape["radial_error"] = *s.radial_error;
    if (s.halves) shape["half_radial_errors"] = {{"illuminated", s.halves->facing}, {"shadow", s.halves->opposite}};
    if (s.arcs) {
      shape["arc_errors"] = {{"convex_mean", s.arcs->convex_mean},
                             {"concave_mean", s.arcs->concave_mean},
                             {"convex_count", s.arcs->convex_count},
                             {"concave_count", s.arcs->concave_count}};
    }
    j["shape"] = shape;
  }
  json timings = json::object();
  for (const auto& [name, seconds] : r.timings) timings[name] = seconds;
  j["timings_s"] = timings;
  j["failures"] = r.failures;
  return j.dump(2);
}

void write_report(const std::filesystem::path& dir, const RunReport& report, const ExperimentConfig& config) {
  io::write_text(dir / "report.json", report_to_json(report));
  for (std::size_t k = 0; k < report.recoveries.size(); ++k) {
    for (int i = 0; i < 2; ++i) {
      char buf[48];
      std::snprintf(buf, sizeof buf, "indicator_%03zu_q%d.csv", k, i + 1);
      io::write_indicator_csv(dir / buf, report.recoveries[k].maps[static_cast<std::size_t>(i)]);
    }
  }
  if (report.shape) {
    io::write_polyline_csv(dir / "boundary_reconstructed.csv",
                           geometry::shape_to_curve(report.shape->state.shape, metrics::kMetricPoints).points);
    io::write_polyline_csv(dir / "boundary_truth.csv",
                           config.obstacle.curve().discretize(metrics::kMetricPoints).points);
    io::write_newton_history_csv(dir / "newton_history.csv", report.shape->state);
  }
}

}  // namespace pipeline
}  // namespace ecoinv
