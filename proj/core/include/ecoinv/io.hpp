#pragma once

// Persistence of records, shapes and results. JSON for anything read back,
// CSV for plot tables.

#include <filesystem>
#include <string>
#include <vector>

#include "ecoinv/forward.hpp"
#include "ecoinv/shaperec.hpp"
#include "ecoinv/srcrec.hpp"

namespace ecoinv::io {

/// Receiver geometry header plus one [Re u1, Im u1, Re u2, Im u2] row per receiver.
std::string record_to_json(const FieldRecord& record);
FieldRecord record_from_json(const std::string& text);

void write_record(const std::filesystem::path& path, const FieldRecord& record);
FieldRecord read_record(const std::filesystem::path& path);

/// x, y, re_u1, im_u1, re_u2, im_u2 per receiver.
void write_record_csv(const std::filesystem::path& path, const FieldRecord& record);

/// x, y, value per grid point (excluded points written as 0).
void write_indicator_csv(const std::filesystem::path& path, const IndicatorMap& map);

/// Closed polyline as x, y rows (first point repeated at the end).
void write_polyline_csv(const std::filesystem::path& path, const std::vector<Vec2>& points);

/// iteration, E_n, boundary residual.
void write_newton_history_csv(const std::filesystem::path& path, const NewtonState& state);

std::string read_text(const std::filesystem::path& path);
/// Writes through a temporary file and renames, so readers never see a partial file.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace ecoinv::io
