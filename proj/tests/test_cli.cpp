#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "landau/export.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "landau");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = landau::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string dir(const std::string& name) {
  const auto p = fs::temp_directory_path() / "landau_cli_tests" / name;
  fs::remove_all(p);
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("expect table for n=10, m=10") {
    const auto d = dir("expect");
    const auto r = run({"expect", "--n", "10", "--m", "10", "--out", d});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("R2        1.000000000000e+00") != std::string::npos);
    const auto j = landau::read_json(fs::path(d) / "expect.json");
    for (const auto& row : j["result"]["table"])
      if (row["quantity"] == "R2") CHECK(row["quadrature"].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
    const auto m = landau::read_json(fs::path(d) / "manifest.json");
    CHECK(m["version"] == LANDAU_VERSION);
    CHECK(m["schema_version"] == landau::kJsonSchemaVersion);
    CHECK(m["config"]["n_r"] == 0);
    CHECK(m["config"]["m"] == 10);
    CHECK(m.contains("constants"));
  }

  TEST_CASE("knife-edge classification") {
    const auto d = dir("knife");
    const auto r = run({"knife-edge", "--m", "-5", "--format", "json", "--out", d});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("classification: zero-rotation") != std::string::npos);
    const auto j = landau::read_json(fs::path(d) / "knife_edge.json");
    CHECK(j["result"]["classification"] == "zero-rotation");
    CHECK(std::abs(j["result"]["fitted_rate"].get<double>()) <= 0.1);  // in omega_L
  }

  TEST_CASE("exit codes") {
    const auto bad = run({"state", "--n", "2", "--m", "5", "--out", dir("bad")});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("n - (|m|+m)/2") != std::string::npos);
    CHECK(run({"state", "--n-r", "-1", "--out", dir("neg")}).code == 1);
    CHECK(run({"state", "--n", "1", "--n-r", "1", "--out", dir("both")}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"state", "--format", "gif", "--out", dir("fmt")}).code == 1);
    CHECK(run({"state", "--out", "/proc/not/writable"}).code == 2);
    CHECK(run({"replay", "/nonexistent/manifest.json"}).code == 2);
    CHECK(run({"--version"}).code == 0);
  }

  TEST_CASE("deterministic outputs and manifest replay") {
    const auto a = dir("det_a"), b = dir("det_b"), c = dir("det_c");
    const std::vector<std::string> args{"currents", "--n-r", "1", "--m", "-3", "--grid", "61", "--format", "csv,json"};
    auto with = [&](const std::string& out) {
      auto v = args;
      v.push_back("--out");
      v.push_back(out);
      return v;
    };
    REQUIRE(run(with(a)).code == 0);
    REQUIRE(run(with(b)).code == 0);
    for (const char* f : {"currents.csv", "currents.json"})
      CHECK(slurp(fs::path(a) / f) == slurp(fs::path(b) / f));
    const auto text = slurp(fs::path(a) / "currents.csv");
    const auto header = text.substr(0, text.find('\n'));
    CHECK(header == "X,Y,rho,jx_can,jy_can,jx_gauge,jy_gauge,jx_tot,jy_tot");

    REQUIRE(run({"replay", (fs::path(a) / "manifest.json").string(), "--out", c}).code == 0);
    for (const char* f : {"currents.csv", "currents.json"})
      CHECK(slurp(fs::path(a) / f) == slurp(fs::path(c) / f));
    auto ma = landau::read_json(fs::path(a) / "manifest.json");
    auto mc = landau::read_json(fs::path(c) / "manifest.json");
    ma["config"].erase("out_dir");
    mc["config"].erase("out_dir");
    CHECK(ma == mc);
  }

  TEST_CASE("every subcommand runs") {
    for (const auto& cmd : std::vector<std::vector<std::string>>{
             {"state", "--n-r", "1", "--m", "2", "--grid", "41"},
             {"oam", "--n-r", "0", "--m", "-2", "--grid", "41"},
             {"classical", "--vx0", "0.5", "--periods", "2"},
             {"guiding", "--n-r", "0", "--m", "1", "--grid", "128"}}) {
      auto args = cmd;
      args.push_back("--out");
      args.push_back(dir("sub_" + cmd.front()));
      const auto r = run(args);
      CAPTURE(cmd.front());
      CAPTURE(r.err);
      CHECK(r.code == 0);
      CHECK(fs::exists(fs::path(args.back()) / "manifest.json"));
    }
    const auto gd = landau::read_json(fs::path(dir("unused")).parent_path() / "sub_guiding" / "guiding.json");
    CHECK(gd["result"]["expectations"]["commutator"]["im"].get<double>() == doctest::Approx(1.0).epsilon(1e-3));
  }

  TEST_CASE("SI scales and default output directory") {
    const auto d = dir("env");
    ::setenv("LANDAU_OUT", d.c_str(), 1);
    const auto r = run({"classical", "--si", "1.0", "--format", "json"});
    ::unsetenv("LANDAU_OUT");
    REQUIRE(r.code == 0);
    const auto m = landau::read_json(fs::path(d) / "manifest.json");
    // l_B = 25.66 nm at 1 T
    CHECK(m["si"]["l_B_m"].get<double>() == doctest::Approx(2.5656e-8).epsilon(1e-3));
    CHECK(m["si"]["B_tesla"] == 1.0);
    CHECK(run({"classical", "--si", "-1", "--out", dir("si_bad")}).code == 1);
  }

  TEST_CASE("verify") {
    const auto r = run({"verify", "--format", "json", "--out", dir("verify")});
    CHECK(r.code == 0);
    CHECK(r.out.find("all checks passed") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
  }
}
