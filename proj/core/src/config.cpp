#include "ecoinv/config.hpp"

#include <cmath>
#include <random>
#include <set>

#include <json.hpp>

#include "ecoinv/errors.hpp"
#include "ecoinv/io.hpp"

namespace ecoinv {

using nlohmann::json;

ClosedCurve ObstacleSpec::curve() const {
  ClosedCurve c = shape == "random" ? geometry::random_star_shape(random_seed).curve
                                    : geometry::make_named_shape(shape, param);
  return rotation == 0.0 ? c : c.rotated(rotation);
}

bool ObstacleSpec::star_like() const { return shape == "circle" || shape == "leaf" || shape == "L-leaf" || shape == "random"; }

std::vector<SourceSpec> ExperimentConfig::source_list() const {
  if (!sources.empty()) return sources;
  std::vector<SourceSpec> out;
  const bool full = std::abs(ring.sector - kTwoPi) < 1e-12;
  for (std::size_t k = 0; k < ring.count; ++k) {
    const double kk = static_cast<double>(k);
    const double n = static_cast<double>(ring.count);
    const double a = full ? ring.start_angle + kTwoPi * kk / n : ring.start_angle + ring.sector * (kk + 0.5) / n;
    out.push_back(SourceSpec::make(ring.radius * Vec2(std::cos(a), std::sin(a)), ring.polarization));
  }
  return out;
}

std::vector<std::uint64_t> ExperimentConfig::noise_seeds() const {
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> out(source_list().size());
  for (auto& s : out) s = rng();
  return out;
}

void ExperimentConfig::validate() const {
  medium();
  if (!(receiver_radius > 0.0)) throw ValidationError("receiver radius must be positive");
  if (receiver_count < 3) throw ValidationError("need at least 3 receivers");
  if (!(noise >= 0.0 && noise < 1.0)) throw ValidationError("noise level must lie in [0, 1)");
  if (!(grid_max > grid_min)) throw ValidationError("grid bounds are reversed");
  if (grid_points < 2) throw ValidationError("grid needs at least 2 points per axis");
  if (degree < 1) throw ValidationError("Fourier degree must be at least 1");
  if (!(initial_radius > 0.0)) throw ValidationError("initial radius must be positive");
  if (sources.empty()) {
    if (ring.count < 1) throw ValidationError("source ring needs at least one source");
    if (!(ring.radius > 0.0 && ring.radius < receiver_radius))
      throw ValidationError("source ring must lie inside the receiver circle");
    if (!(ring.sector > 0.0 && ring.sector <= kTwoPi + 1e-12)) throw ValidationError("sector must lie in (0, 2 pi]");
    if (!(ring.polarization.norm() > 0.0)) throw ValidationError("ring polarization must be nonzero");
  }
  for (const SourceSpec& s : source_list()) {
    if (!(s.z.norm() < receiver_radius)) throw ValidationError("sources must lie inside the receiver circle");
  }
  if (obstacle.shape == "circle" && !(obstacle.param > 0.0)) throw ValidationError("circle radius must be positive");
  if (obstacle.shape != "random") geometry::make_named_shape(obstacle.shape, obstacle.param);
  grid().require_inside(receiver_radius);
  locate.validate();
  inversion.validate();
  forward.validate();
  if (static_cast<int>(inversion.newton.collocation) < 2 * degree + 1)
    throw ValidationError("Newton collocation count must be at least 2M+1");
}

namespace config {
namespace {

Vec2 vec2(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ValidationError(std::string(what) + " must be a 2-vector");
  return {j[0].get<double>(), j[1].get<double>()};
}

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + " must be an object");
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) throw ValidationError("unknown key '" + item.key() + "' in " + where);
  }
}

template <class T>
void take(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(std::string("wrong type for '") + key + "'");
  }
}

void take_size(const json& j, const char* key, std::size_t& out) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw ValidationError(std::string("'") + key + "' must be a nonnegative integer");
  out = v.get<std::size_t>();
}

}  // namespace

ExperimentConfig from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(j, {"name", "medium", "obstacle", "sources", "ring", "receivers", "noise", "seed", "grid", "locate",
                 "inversion", "forward", "output_dir", "description"},
             "config");
  ExperimentConfig c;
  take(j, "name", c.name);
  take(j, "output_dir", c.output_dir);
  take(j, "seed", c.seed);
  take(j, "noise", c.noise);
  if (j.contains("medium")) {
    const json& m = j["medium"];
    check_keys(m, {"lambda", "mu", "omega"}, "medium");
    take(m, "lambda", c.lambda);
    take(m, "mu", c.mu);
    take(m, "omega", c.omega);
  }
  if (j.contains("obstacle")) {
    const json& o = j["obstacle"];
    check_keys(o, {"shape", "param", "random_seed", "rotation"}, "obstacle");
    take(o, "shape", c.obstacle.shape);
    take(o, "param", c.obstacle.param);
    take(o, "random_seed", c.obstacle.random_seed);
    take(o, "rotation", c.obstacle.rotation);
  }
  if (j.contains("sources")) {
    if (!j["sources"].is_array()) throw ValidationError("sources must be an array");
    for (const json& s : j["sources"]) {
      check_keys(s, {"z", "p"}, "source");
      if (!s.contains("z") || !s.contains("p")) throw ValidationError("each source needs z and p");
      const Vec2 p = vec2(s["p"], "source polarization");
      if (!(p.norm() > 0.0)) throw ValidationError("source polarization must be nonzero");
      c.sources.push_back(SourceSpec::make(vec2(s["z"], "source location"), p));
    }
  }
  if (j.contains("ring")) {
    const json& r = j["ring"];
    check_keys(r, {"count", "radius", "start_angle", "sector", "polarization"}, "ring");
    take_size(r, "count", c.ring.count);
    take(r, "radius", c.ring.radius);
    take(r, "start_angle", c.ring.start_angle);
    take(r, "sector", c.ring.sector);
    if (r.contains("polarization")) c.ring.polarization = vec2(r["polarization"], "ring polarization");
  }
  if (j.contains("receivers")) {
    const json& r = j["receivers"];
    check_keys(r, {"radius", "count"}, "receivers");
    take(r, "radius", c.receiver_radius);
    take_size(r, "count", c.receiver_count);
  }
  if (j.contains("grid")) {
    const json& g = j["grid"];
    check_keys(g, {"min", "max", "points"}, "grid");
    take(g, "min", c.grid_min);
    take(g, "max", c.grid_max);
    take_size(g, "points", c.grid_points);
  }
  if (j.contains("locate")) {
    const json& l = j["locate"];
    check_keys(l, {"n_q", "theta1", "receiver_exclusion"}, "locate");
    take(l, "n_q", c.locate.n_q);
    take(l, "theta1", c.locate.theta1);
    take(l, "receiver_exclusion", c.locate.receiver_exclusion);
  }
  if (j.contains("inversion")) {
    const json& v = j["inversion"];
    check_keys(v, {"xi", "degree", "collocation", "epsilon", "max_iter", "damping", "aux_radius", "aux_nodes",
                   "initial_radius", "min_radius"},
               "inversion");
    take(v, "xi", c.inversion.xi);
    take(v, "degree", c.degree);
    take_size(v, "collocation", c.inversion.newton.collocation);
    take(v, "epsilon", c.inversion.newton.epsilon);
    take(v, "max_iter", c.inversion.newton.max_iter);
    take(v, "damping", c.inversion.newton.damping);
    take(v, "aux_radius", c.inversion.aux_radius);
    take_size(v, "aux_nodes", c.inversion.aux_nodes);
    take(v, "initial_radius", c.initial_radius);
    take(v, "min_radius", c.inversion.newton.min_radius);
  }
  if (j.contains("forward")) {
    const json& f = j["forward"];
    check_keys(f, {"layout", "charge_scale", "offset_factor", "charge_count", "collocation_count", "ridge",
                   "residual_tolerance"},
               "forward");
    if (f.contains("layout")) c.forward.layout = charge_layout_from_string(f["layout"].get<std::string>());
    take(f, "charge_scale", c.forward.charge_scale);
    take(f, "offset_factor", c.forward.offset_factor);
    take_size(f, "charge_count", c.forward.charge_count);
    take_size(f, "collocation_count", c.forward.collocation_count);
    take(f, "ridge", c.forward.ridge);
    take(f, "residual_tolerance", c.forward.residual_tolerance);
  }
  c.validate();
  return c;
}

std::string to_json(const ExperimentConfig& c) {
  json j;
  j["name"] = c.name;
  j["medium"] = {{"lambda", c.lambda}, {"mu", c.mu}, {"omega", c.omega}};
  j["obstacle"] = {{"shape", c.obstacle.shape},
                   {"param", c.obstacle.param},
                   {"random_seed", c.obstacle.random_seed},
                   {"rotation", c.obstacle.rotation}};
  if (!c.sources.empty()) {
    json s = json::array();
    for (const SourceSpec& src : c.sources) {
      s.push_back({{"z", {src.z.x(), src.z.y()}}, {"p", {src.p.x(), src.p.y()}}});
    }
    j["sources"] = s;
  }
  j["ring"] = {{"count", c.ring.count},
               {"radius", c.ring.radius},
               {"start_angle", c.ring.start_angle},
               {"sector", c.ring.sector},
               {"polarization", {c.ring.polarization.x(), c.ring.polarization.y()}}};
  j["receivers"] = {{"radius", c.receiver_radius}, {"count", c.receiver_count}};
  j["noise"] = c.noise;
  j["seed"] = c.seed;
  j["grid"] = {{"min", c.grid_min}, {"max", c.grid_max}, {"points", c.grid_points}};
  j["locate"] = {{"n_q", c.locate.n_q}, {"theta1", c.locate.theta1}, {"receiver_exclusion", c.locate.receiver_exclusion}};
  j["inversion"] = {{"xi", c.inversion.xi},
                    {"degree", c.degree},
                    {"collocation", c.inversion.newton.collocation},
                    {"epsilon", c.inversion.newton.epsilon},
                    {"max_iter", c.inversion.newton.max_iter},
                    {"damping", c.inversion.newton.damping},
                    {"aux_radius", c.inversion.aux_radius},
                    {"aux_nodes", c.inversion.aux_nodes},
                    {"initial_radius", c.initial_radius},
                    {"min_radius", c.inversion.newton.min_radius}};
  j["forward"] = {{"layout", to_string(c.forward.layout)},
                  {"charge_scale", c.forward.charge_scale},
                  {"offset_factor", c.forward.offset_factor},
                  {"charge_count", c.forward.charge_count},
                  {"collocation_count", c.forward.collocation_count},
                  {"ridge", c.forward.ridge},
                  {"residual_tolerance", c.forward.residual_tolerance}};
  j["output_dir"] = c.output_dir;
  return j.dump(2);
}

ExperimentConfig load(const std::string& path) { return from_json(io::read_text(path)); }

}  // namespace config
}  // namespace ecoinv
