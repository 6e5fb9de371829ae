#include "landau/export.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace landau {

const std::vector<std::string>& current_csv_columns() {
  static const std::vector<std::string> cols{"rho",      "jx_can",   "jy_can", "jx_gauge",
                                             "jy_gauge", "jx_tot", "jy_tot"};
  return cols;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

}  // namespace

void write_field_csv(const FieldGrid& grid, const std::vector<std::string>& channels,
                     const std::filesystem::path& path) {
  auto out = open_out(path);
  const bool polar = grid.layout() == GridLayout::polar;
  out << (polar ? "R,PHI" : "X,Y");
  for (const auto& c : channels) out << ',' << c;
  out << '\n';
  std::vector<const std::vector<double>*> data;
  for (const auto& c : channels) data.push_back(&grid.channel(c));
  for (int i1 = 0; i1 < grid.n1(); ++i1) {
    for (int i0 = 0; i0 < grid.n0(); ++i0) {
      const std::size_t idx = static_cast<std::size_t>(i1) * grid.n0() + i0;
      out << format_number(grid.axis0()[i0]) << ',' << format_number(grid.axis1()[i1]);
      for (const auto* d : data) out << ',' << format_number((*d)[idx]);
      out << '\n';
    }
  }
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "t,x,y,vx,vy,X,Y,r_c\n";
  for (const auto& s : traj.samples) {
    out << format_number(s.t) << ',' << format_number(s.state.x) << ',' << format_number(s.state.y)
        << ',' << format_number(s.state.vx) << ',' << format_number(s.state.vy) << ','
        << format_number(s.X) << ',' << format_number(s.Y) << ',' << format_number(s.r_c) << '\n';
  }
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

void write_json(const nlohmann::json& doc, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError("malformed JSON in '" + path.string() + "': " + e.what());
  }
}

namespace {

nlohmann::json nan_safe(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

}  // namespace

nlohmann::json to_json(const ClosedFormTable& t) {
  return {{"norm", t.norm},   {"l_can", t.l_can}, {"l_gauge", t.l_gauge},
          {"l_pot", t.l_pot}, {"l_mech", t.l_mech}, {"r2", t.r2},
          {"rc2", t.rc2},     {"R2", t.gc2},       {"inv_r2", nan_safe(t.inv_r2)},
          {"omega", t.omega}};
}

nlohmann::json to_json(const GuidingExpectations& e) {
  return {{"norm", e.norm},
          {"X", e.X},
          {"Y", e.Y},
          {"R2", e.R2},
          {"rc2", e.rc2},
          {"L_can", e.L_can},
          {"commutator", {{"re", e.commutator.real()}, {"im", e.commutator.imag()}}},
          {"estimated_error", e.estimated_error},
          {"accuracy_warning", e.accuracy_warning},
          {"warning", e.warning}};
}

nlohmann::json to_json(const RotationReport& r) {
  return {{"source", {{"n_r", r.source.n_r}, {"m", r.source.m}}},
          {"captured_norm", r.captured_norm},
          {"times", r.times},
          {"angles", r.angles},
          {"fitted_rate", r.rate},
          {"intercept", r.intercept},
          {"residual", r.residual},
          {"bohmian_rate", r.bohmian_rate},
          {"classification", to_string(r.classification)},
          {"estimator", "intensity-weighted circular mean azimuth, least-squares linear fit"}};
}

}  // namespace landau
