#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "landau/export.hpp"
#include "landau/raster.hpp"
#include "landau/verification.hpp"

using namespace landau;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "landau_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("export") {
  TEST_CASE("current CSV") {
    const auto g = field_grid(LandauState({0, 2}), GridSpec{11, 4.0});
    const auto path = scratch("currents.csv");
    write_field_csv(g, current_csv_columns(), path);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "X,Y,rho,jx_can,jy_can,jx_gauge,jy_gauge,jx_tot,jy_tot");
    int rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    CHECK(rows == 121);
    // deterministic bytes
    const auto again = scratch("currents2.csv");
    write_field_csv(g, current_csv_columns(), again);
    CHECK(slurp(path) == slurp(again));
    CHECK_THROWS_AS(write_field_csv(g, {"nope"}, scratch("x.csv")), std::out_of_range);
  }

  TEST_CASE("polar CSV and trajectory CSV") {
    auto g = FieldGrid::polar(PolarGridSpec{4, 8, 2.0});
    g.add_channel("intensity");
    const auto path = scratch("polar.csv");
    write_field_csv(g, {"intensity"}, path);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "R,PHI,intensity");

    const auto traj = classical_integrate({0, 0, 1, 0}, 1.0, 1.0, 0.25);
    const auto tp = scratch("traj.csv");
    write_trajectory_csv(traj, tp);
    std::ifstream t(tp);
    std::getline(t, header);
    CHECK(header == "t,x,y,vx,vy,X,Y,r_c");
  }

  TEST_CASE("JSON round trip") {
    const auto t = expect_closed_form(LandauState::from_landau({10, 10}));
    const auto j = to_json(t);
    CHECK(j.at("R2").get<double>() == 1.0);
    CHECK(j.at("rc2").get<double>() == 21.0);
    const auto path = scratch("table.json");
    write_json(j, path);
    CHECK(read_json(path) == j);
    CHECK(format_number(0.5) == "5.000000000000e-01");
    CHECK_THROWS_AS(read_json(scratch("missing.json")), IoError);
  }

  TEST_CASE("PNG output") {
    raster::Image img(20, 10);
    img.line(0, 0, 19, 9, raster::kRed);
    img.circle(10, 5, 4, raster::kBlue, true);
    CHECK(img.get(0, 0).r == raster::kRed.r);
    const auto path = scratch("img.png");
    raster::write_png(img, path);
    const auto bytes = slurp(path);
    REQUIRE(bytes.size() > 8);
    CHECK(bytes.substr(1, 3) == "PNG");
    CHECK(static_cast<unsigned char>(bytes[0]) == 0x89);

    const auto g = field_grid(LandauState({0, -3}), GridSpec{61, 6.0});
    const auto fig = raster::density_with_arrows(g, "rho", "jx_tot", "jy_tot", 6, 3);
    CHECK(fig.width() == 183);
    CHECK_NOTHROW(raster::write_png(raster::guiding_schematic(2.0, 1.0), scratch("gc.png")));
  }

  TEST_CASE("I/O failures") {
    const fs::path bad = "/proc/definitely/not/here.json";
    CHECK_THROWS_AS(write_json(nlohmann::json::object(), bad), IoError);
    CHECK_THROWS_AS(raster::write_png(raster::Image(2, 2), bad), IoError);
    const auto g = field_grid(LandauState({0, 0}), GridSpec{5, 2.0});
    CHECK_THROWS_AS(write_field_csv(g, {"rho"}, bad), IoError);
  }

  TEST_CASE("verification suite passes") {
    const auto results = run_verification(false);
    CHECK(results.size() == 7);
    for (const auto& r : results) {
      CAPTURE(r.name);
      CAPTURE(r.detail);
      CHECK(r.passed);
    }
  }
}
