#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "landau/beam_dynamics.hpp"
#include "landau/field_grid.hpp"
#include "landau/guiding_center.hpp"
#include "landau/observables.hpp"

namespace landau {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kJsonSchemaVersion = 1;

/// Column order of the current-field CSV.
const std::vector<std::string>& current_csv_columns();

/// Writes X, Y (or R, PHI on polar grids) followed by `channels` in the given order.
void write_field_csv(const FieldGrid& grid, const std::vector<std::string>& channels,
                     const std::filesystem::path& path);

/// Columns: t, x, y, vx, vy, X, Y, r_c
void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path);

void write_json(const nlohmann::json& doc, const std::filesystem::path& path);
nlohmann::json read_json(const std::filesystem::path& path);

/// Fixed-format number rendering shared by CSV and JSON writers.
std::string format_number(double v);

nlohmann::json to_json(const ClosedFormTable& t);
nlohmann::json to_json(const GuidingExpectations& e);
nlohmann::json to_json(const RotationReport& r);

}  // namespace landau
