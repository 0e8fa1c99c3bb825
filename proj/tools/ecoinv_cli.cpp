// Command-line front end: ecoinv <simulate|locate|coinvert|obstacle-only|eigencount> [options]

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ecoinv/config.hpp"
#include "ecoinv/eigenguard.hpp"
#include "ecoinv/errors.hpp"
#include "ecoinv/io.hpp"
#include "ecoinv/log.hpp"
#include "ecoinv/pipeline.hpp"

namespace fs = std::filesystem;
using namespace ecoinv;

namespace {

struct Common {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string data;
  bool verbose = false;
};

void add_common(CLI::App* cmd, Common& c, bool with_data) {
  cmd->add_option("--config", c.config, "experiment config (JSON); defaults apply to missing fields");
  cmd->add_option("--out", c.out, "output directory (overrides the config)");
  cmd->add_option("--seed", c.seed, "noise seed (overrides the config)");
  if (with_data) cmd->add_option("--data", c.data, "dataset directory from `simulate`; simulated in memory if absent");
  cmd->add_flag("-v,--verbose", c.verbose, "log progress to stderr");
}

ExperimentConfig load_config(const Common& c) {
  ExperimentConfig cfg = c.config.empty() ? config::from_json("{}") : config::load(c.config);
  if (!c.out.empty()) cfg.output_dir = c.out;
  if (c.seed) cfg.seed = *c.seed;
  cfg.validate();
  return cfg;
}

Dataset dataset_for(const Common& c, const ExperimentConfig& cfg) {
  if (!c.data.empty()) return pipeline::read_dataset(c.data);
  return pipeline::run_simulate(cfg, fs::path(cfg.output_dir) / "data");
}

void print_summary(const RunReport& r) {
  for (std::size_t k = 0; k < r.sources.size(); ++k) {
    const auto& s = r.sources[k];
    std::printf("source %zu: location (%.4f, %.4f) error %.4f, polarization (%.4f, %.4f) angle error %.4f\n", k,
                s.estimate.location.x(), s.estimate.location.y(), s.location_error, s.estimate.polarization.x(),
                s.estimate.polarization.y(), s.angle_error);
  }
  if (r.shape) {
    std::printf("shape: %s after %d iterations, Hausdorff %.4f", to_string(r.shape->state.status),
                r.shape->state.iteration, r.shape->hausdorff);
    if (r.shape->radial_error) std::printf(", radial error %.4f", *r.shape->radial_error);
    std::printf("\n");
  }
  for (const auto& f : r.failures) std::printf("failure: %s\n", f.c_str());
}

int run_report(const Common& c, RunReport (*fn)(const ExperimentConfig&, const Dataset&)) {
  const ExperimentConfig cfg = load_config(c);
  const Dataset data = dataset_for(c, cfg);
  const RunReport report = fn(cfg, data);
  pipeline::write_report(cfg.output_dir, report, cfg);
  print_summary(report);
  return report.ok() ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elastic co-inversion of point sources and a rigid obstacle"};
  app.require_subcommand(1);

  Common sim, loc, coi, obs, eig;
  auto* simulate = app.add_subcommand("simulate", "generate noisy total-field records");
  add_common(simulate, sim, false);
  auto* locate = app.add_subcommand("locate", "recover source locations and polarizations");
  add_common(locate, loc, true);
  auto* coinvert = app.add_subcommand("coinvert", "recover sources, then the obstacle");
  add_common(coinvert, coi, true);
  auto* obstacle = app.add_subcommand("obstacle-only", "recover the obstacle with the true sources");
  add_common(obstacle, obs, true);
  auto* eigencount = app.add_subcommand("eigencount", "count Dirichlet eigenvalues below omega^2 inside a disk");
  add_common(eigencount, eig, false);
  double radius = 0.0;
  int n_max = -1;
  eigencount->add_option("--radius", radius, "disk radius (default: the auxiliary radius of the config)");
  eigencount->add_option("--n-max", n_max, "largest Bessel order scanned");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  for (const Common* c : {&sim, &loc, &coi, &obs, &eig}) {
    if (c->verbose) log::set_min_level(log::Level::info);
  }

  try {
    if (*simulate) {
      const ExperimentConfig cfg = load_config(sim);
      const Dataset data = pipeline::run_simulate(cfg, cfg.output_dir);
      for (std::size_t k = 0; k < data.records.size(); ++k) {
        std::printf("source %zu at (%.4f, %.4f): boundary residual %.3e\n", k, data.sources[k].z.x(),
                    data.sources[k].z.y(), data.certificates[k]);
      }
      return 0;
    }
    if (*locate) return run_report(loc, pipeline::run_locate);
    if (*coinvert) return run_report(coi, pipeline::run_coinvert);
    if (*obstacle) return run_report(obs, pipeline::run_obstacle_only);
    if (*eigencount) {
      const ExperimentConfig cfg = load_config(eig);
      const ElasticMedium medium = cfg.medium();
      const double r = radius > 0.0 ? radius : cfg.inversion.aux_radius;
      const int nm = n_max >= 0 ? n_max : eigenguard::suggested_n_max(medium, r);
      const EigencountResult res = eigenguard::count_n0(medium, r, nm);
      nlohmann::json j;
      j["omega"] = cfg.omega;
      j["radius"] = r;
      j["n_max"] = res.n_max;
      j["scan_step"] = res.scan_step;
      j["n0"] = res.n0;
      nlohmann::json zeros = nlohmann::json::array();
      for (std::size_t n = 0; n < res.zeros.size(); ++n) {
        for (const EigenZero& z : res.zeros[n]) zeros.push_back({{"n", n}, {"r", z.r}});
      }
      j["zeros"] = zeros;
      io::write_text(fs::path(cfg.output_dir) / "eigencount.json", j.dump(2));
      std::printf("N0 = %lld (orders 0..%d, radius %.6g)\n", res.n0, res.n_max, r);
      return 0;
    }
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return 2;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
