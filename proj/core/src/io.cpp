#include "ecoinv/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "ecoinv/errors.hpp"

namespace ecoinv::io {

using nlohmann::json;

namespace {

json vec_json(const Vec2& v) { return json::array({v.x(), v.y()}); }

Vec2 vec_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ValidationError("expected a 2-vector");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open " + path.string() + " for writing");
  out << std::setprecision(17);
  return out;
}

}  // namespace

std::string record_to_json(const FieldRecord& record) {
  json j;
  j["kind"] = to_string(record.kind);
  j["source"] = {{"z", vec_json(record.source.z)}, {"p", vec_json(record.source.p)}};
  json rx = json::array();
  for (std::size_t r = 0; r < record.receivers.size(); ++r) {
    rx.push_back({record.receivers.params[r], record.receivers.points[r].x(), record.receivers.points[r].y(),
                  record.receivers.weights[r]});
  }
  j["receivers"] = {{"columns", {"t", "x", "y", "weight"}}, {"nodes", rx}};
  json vals = json::array();
  for (const CVec2& u : record.values) vals.push_back({u.x().real(), u.x().imag(), u.y().real(), u.y().imag()});
  j["values"] = vals;
  return j.dump(1);
}

FieldRecord record_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed record: ") + e.what());
  }
  try {
    FieldRecord rec{SourceSpec{vec_from(j.at("source").at("z")), vec_from(j.at("source").at("p"))}, {}, {},
                    field_kind_from_string(j.at("kind").get<std::string>())};
    for (const auto& node : j.at("receivers").at("nodes")) {
      if (node.size() != 4) throw ValidationError("receiver rows need 4 columns");
      rec.receivers.params.push_back(node.at(0).get<double>());
      rec.receivers.points.emplace_back(node.at(1).get<double>(), node.at(2).get<double>());
      rec.receivers.weights.push_back(node.at(3).get<double>());
    }
    for (const auto& row : j.at("values")) {
      if (row.size() != 4) throw ValidationError("value rows need 4 columns");
      rec.values.emplace_back(cplx(row.at(0).get<double>(), row.at(1).get<double>()),
                              cplx(row.at(2).get<double>(), row.at(3).get<double>()));
    }
    if (rec.values.size() != rec.receivers.size()) throw ValidationError("record has one value per receiver");
    return rec;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed record: ") + e.what());
  }
}

void write_record(const std::filesystem::path& path, const FieldRecord& record) {
  write_text(path, record_to_json(record));
}

FieldRecord read_record(const std::filesystem::path& path) { return record_from_json(read_text(path)); }

void write_record_csv(const std::filesystem::path& path, const FieldRecord& record) {
  auto out = open_out(path);
  out << "x,y,re_u1,im_u1,re_u2,im_u2\n";
  for (std::size_t r = 0; r < record.values.size(); ++r) {
    const Vec2& x = record.receivers.points[r];
    const CVec2& u = record.values[r];
    out << x.x() << ',' << x.y() << ',' << u.x().real() << ',' << u.x().imag() << ',' << u.y().real() << ','
        << u.y().imag() << '\n';
  }
}

void write_indicator_csv(const std::filesystem::path& path, const IndicatorMap& map) {
  auto out = open_out(path);
  out << "x,y,value\n";
  for (std::size_t i = 0; i < map.grid.size(); ++i) {
    const Vec2 y = map.grid.point(i);
    out << y.x() << ',' << y.y() << ',' << map.values[i] << '\n';
  }
}

void write_polyline_csv(const std::filesystem::path& path, const std::vector<Vec2>& points) {
  auto out = open_out(path);
  out << "x,y\n";
  for (const Vec2& p : points) out << p.x() << ',' << p.y() << '\n';
  if (!points.empty()) out << points.front().x() << ',' << points.front().y() << '\n';
}

void write_newton_history_csv(const std::filesystem::path& path, const NewtonState& state) {
  auto out = open_out(path);
  out << "iteration,update,boundary_residual\n";
  for (std::size_t i = 0; i < state.update_history.size(); ++i) {
    out << i + 1 << ',' << state.update_history[i] << ',';
    if (i < state.boundary_residual_history.size()) out << state.boundary_residual_history[i];
    out << '\n';
  }
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw ValidationError("cannot open " + tmp.string() + " for writing");
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace ecoinv::io
