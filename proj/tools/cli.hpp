#pragma once
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace landau::cli {

enum ExitCode { kOk = 0, kUsage = 1, kIo = 2, kVerifyFailed = 3 };

struct RunConfig {
  std::string command;
  int n_r = 0;
  int m = 0;
  int grid = 0;          // 0: per-command default
  double extent = 0.0;   // half width in l_B; 0: from the state
  std::string out_dir;
  std::vector<std::string> formats{"csv", "json", "png"};
  double b_tesla = 0.0;  // 0: natural units only

  // expect
  std::string scheme = "adaptive-simpson";
  int points = 64;
  double tolerance = 1e-14;
  double r_max = 0.0;

  // classical
  double x0 = 0.0, y0 = 0.0, vx0 = 1.0, vy0 = 0.0;
  double periods = 1.0;
  int steps_per_period = 1000;

  // guiding
  int stencil = 8;

  // knife-edge
  double edge_angle = 0.0;
  int frames = 6;
  double window = 0.05;  // fraction of a cyclotron period
  int max_n_r = 25;
  int max_dm = 25;
  bool adaptive = false;

  // verify
  bool thorough = false;

  bool wants(const std::string& fmt) const;
};

nlohmann::json to_json(const RunConfig& c);
RunConfig config_from_json(const nlohmann::json& j);

/// Executes one resolved configuration, writing artifacts and manifest.json.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (including program name) and runs it.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace landau::cli
