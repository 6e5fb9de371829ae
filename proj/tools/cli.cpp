#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "landau/beam_dynamics.hpp"
#include "landau/export.hpp"
#include "landau/guiding_center.hpp"
#include "landau/kernels.hpp"
#include "landau/observables.hpp"
#include "landau/raster.hpp"
#include "landau/verification.hpp"

namespace landau::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// CODATA 2018 (exact in the SI except m_e)
constexpr double kHbar = 1.054571817e-34;
constexpr double kElementaryCharge = 1.602176634e-19;
constexpr double kElectronMass = 9.1093837015e-31;

const std::vector<std::string> kCommands{"state",    "currents", "oam",        "expect",
                                         "classical", "guiding", "knife-edge", "verify"};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Context {
  const RunConfig& cfg;
  fs::path dir;
  std::ostream& out;
  std::ostream& err;
  std::vector<std::string> artifacts;
  json report = json::object();

  fs::path file(const std::string& name) {
    artifacts.push_back(name);
    return dir / name;
  }
};

std::string num(double v) { return format_number(v); }

LandauState make_state(const RunConfig& c) { return LandauState({c.n_r, c.m}); }

GridSpec cartesian_grid(const RunConfig& c, const LandauState& s, int default_n) {
  GridSpec g{c.grid > 0 ? c.grid : default_n, c.extent > 0.0 ? c.extent : s.default_extent()};
  g.validate();
  return g;
}

json state_json(const LandauState& s) {
  return {{"n_r", s.n_r()}, {"m", s.m()}, {"n", s.n()}, {"energy_omega_L", 2.0 * s.n() + 1.0}};
}

// Radii in (0, r_max] where f changes sign, refined by bisection.
std::vector<double> sign_changes(const std::function<double(double)>& f, double r_max, int cells) {
  std::vector<double> roots;
  double a = r_max / cells, fa = f(a);
  for (int i = 2; i <= cells; ++i) {
    double b = r_max * i / cells, fb = f(b);
    if (fa != 0.0 && fb != 0.0 && (fa < 0.0) != (fb < 0.0)) {
      double lo = a, hi = b, flo = fa;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi), fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    a = b;
    fa = fb;
  }
  return roots;
}

void cmd_state(Context& ctx) {
  const auto s = make_state(ctx.cfg);
  const auto g = cartesian_grid(ctx.cfg, s, 201);
  const auto psi = kernels::sample_state(s, g);
  auto grid = FieldGrid::cartesian(g);
  auto& rho = grid.add_channel("rho");
  auto& re = grid.add_channel("re_psi");
  auto& im = grid.add_channel("im_psi");
  for (std::size_t i = 0; i < psi.data.size(); ++i) {
    rho[i] = std::norm(psi.data[i]);
    re[i] = psi.data[i].real();
    im[i] = psi.data[i].imag();
  }
  ctx.report = {{"state", state_json(s)},
                {"grid", {{"n", g.n}, {"half_extent", g.half_extent}}},
                {"grid_norm", grid.integrate("rho")},
                {"peak_density", grid.max_abs("rho")}};
  if (ctx.cfg.wants("csv")) write_field_csv(grid, {"rho", "re_psi", "im_psi"}, ctx.file("state.csv"));
  if (ctx.cfg.wants("png")) raster::write_png(raster::density_image(grid, "rho"), ctx.file("state.png"));
  ctx.out << "state n_r=" << s.n_r() << " m=" << s.m() << " n=" << s.n() << "  energy "
          << 2 * s.n() + 1 << " omega_L  grid norm " << num(ctx.report["grid_norm"]) << "\n";
}

void cmd_currents(Context& ctx) {
  const auto s = make_state(ctx.cfg);
  const auto g = cartesian_grid(ctx.cfg, s, 201);
  const auto grid = field_grid(s, g);
  const double r_max = default_r_max(s);
  const auto roots =
      sign_changes([&](double r) { return current_decomposition(s, r).j_total_phi; }, r_max, 4000);
  // sense of rotation of the total current on each side of every sign change
  json bands = json::array();
  std::vector<double> edges{0.0};
  edges.insert(edges.end(), roots.begin(), roots.end());
  edges.push_back(r_max);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double mid = 0.5 * (edges[i] + edges[i + 1]);
    const double j = current_decomposition(s, mid).j_total_phi;
    bands.push_back({{"r_from", edges[i]},
                     {"r_to", edges[i + 1]},
                     {"sense", j > 0.0 ? "counter-clockwise" : j < 0.0 ? "clockwise" : "none"}});
  }
  ctx.report = {{"state", state_json(s)},
                {"grid", {{"n", g.n}, {"half_extent", g.half_extent}}},
                {"total_current_sign_changes", roots},
                {"bands", bands},
                {"columns", current_csv_columns()}};
  if (ctx.cfg.wants("csv")) write_field_csv(grid, current_csv_columns(), ctx.file("currents.csv"));
  if (ctx.cfg.wants("png")) {
    const int stride = std::max(4, g.n / 24);
    raster::write_png(raster::density_with_arrows(grid, "rho", "jx_tot", "jy_tot", stride, 2),
                      ctx.file("currents.png"));
    raster::write_png(raster::density_with_arrows(grid, "rho", "jx_can", "jy_can", stride, 2),
                      ctx.file("currents_canonical.png"));
    raster::write_png(raster::density_with_arrows(grid, "rho", "jx_gauge", "jy_gauge", stride, 2),
                      ctx.file("currents_gauge.png"));
  }
  ctx.out << "total azimuthal current sign changes: " << roots.size() << "\n";
  for (double r : roots) ctx.out << "  r = " << num(r) << " l_B\n";
  for (const auto& b : bands)
    ctx.out << "  " << num(b["r_from"]) << " .. " << num(b["r_to"]) << "  "
            << b["sense"].get<std::string>() << "\n";
}

void cmd_oam(Context& ctx) {
  const auto s = make_state(ctx.cfg);
  const auto g = cartesian_grid(ctx.cfg, s, 201);
  auto grid = field_grid(s, g, true);
  auto& pot = grid.add_channel("l_pot");
  const auto& gauge = grid.channel("l_gauge");
  for (std::size_t i = 0; i < pot.size(); ++i) pot[i] = -gauge[i];

  // radial distributions 2 pi r l(r)
  const double r_max = default_r_max(s);
  const int samples = 400;
  std::vector<double> rs(samples), lc(samples), lg(samples), lp(samples), lm(samples);
  for (int i = 0; i < samples; ++i) {
    const double r = r_max * i / (samples - 1);
    const auto l = oam_decomposition(s, r);
    const double w = 2.0 * kPi * r;
    rs[i] = r;
    lc[i] = w * l.l_can;
    lg[i] = w * l.l_gauge;
    lp[i] = w * l.l_pot();
    lm[i] = w * l.l_mech;
  }
  const auto cf = expect_closed_form(s);
  json totals = json::object();
  for (auto which : {Expectation::l_can, Expectation::l_gauge, Expectation::l_pot, Expectation::l_mech})
    totals[to_string(which)] = expect_quadrature(s, which);
  ctx.report = {{"state", state_json(s)},
                {"grid", {{"n", g.n}, {"half_extent", g.half_extent}}},
                {"quadrature", totals},
                {"closed_form",
                 {{"l_can", cf.l_can}, {"l_gauge", cf.l_gauge}, {"l_pot", cf.l_pot}, {"l_mech", cf.l_mech}}}};
  if (ctx.cfg.wants("csv")) {
    write_field_csv(grid, {"rho", "l_can", "l_gauge", "l_pot", "l_mech"}, ctx.file("oam.csv"));
    std::ofstream f(ctx.file("oam_profile.csv"));
    if (!f) throw IoError("cannot write oam_profile.csv");
    f << "r,l_can,l_gauge,l_pot,l_mech\n";
    for (int i = 0; i < samples; ++i)
      f << num(rs[i]) << ',' << num(lc[i]) << ',' << num(lg[i]) << ',' << num(lp[i]) << ',' << num(lm[i])
        << '\n';
    if (!f) throw IoError("failed writing oam_profile.csv");
  }
  if (ctx.cfg.wants("png")) {
    raster::write_png(raster::line_plot(rs, {{lc, raster::kBlue}, {lg, raster::kGreen}, {lp, raster::kGray},
                                             {lm, raster::kRed}}),
                      ctx.file("oam_profile.png"));
  }
  ctx.out << "OAM per particle (hbar):\n";
  for (const auto& [k, v] : totals.items())
    ctx.out << "  " << std::left << std::setw(8) << k << num(v.get<double>()) << "\n";
}

void cmd_expect(Context& ctx) {
  const auto s = make_state(ctx.cfg);
  QuadratureSpec q;
  q.scheme = quadrature_scheme_from_string(ctx.cfg.scheme);
  q.n_points = ctx.cfg.points;
  q.tolerance = ctx.cfg.tolerance;
  q.r_max = ctx.cfg.r_max;
  const auto cf = expect_closed_form(s);
  const std::vector<std::pair<Expectation, double>> rows{
      {Expectation::norm, cf.norm},   {Expectation::l_can, cf.l_can}, {Expectation::l_gauge, cf.l_gauge},
      {Expectation::l_pot, cf.l_pot}, {Expectation::l_mech, cf.l_mech}, {Expectation::r2, cf.r2},
      {Expectation::rc2, cf.rc2},     {Expectation::gc2, cf.gc2},     {Expectation::inv_r2, cf.inv_r2}};
  json table = json::array();
  std::ostringstream csv;
  csv << "quantity,closed_form,quadrature,relative_error\n";
  ctx.out << "state n_r=" << s.n_r() << " m=" << s.m() << " n=" << s.n()
          << "  (lengths in l_B, angular momenta in hbar)\n";
  ctx.out << std::left << std::setw(10) << "quantity" << std::setw(22) << "closed form" << std::setw(22)
          << "quadrature"
          << "rel. error\n";
  for (const auto& [which, exact] : rows) {
    const std::string name = to_string(which);
    if (which == Expectation::inv_r2 && s.m() == 0) {
      table.push_back({{"quantity", name}, {"closed_form", nullptr}, {"quadrature", nullptr},
                       {"note", "divergent for m = 0"}});
      csv << name << ",inf,inf,nan\n";
      ctx.out << std::setw(10) << name << "divergent for m = 0\n";
      continue;
    }
    const double value = expect_quadrature(s, which, q);
    const double rel = exact == 0.0 ? std::abs(value) : std::abs(value - exact) / std::abs(exact);
    table.push_back({{"quantity", name}, {"closed_form", exact}, {"quadrature", value}, {"relative_error", rel}});
    csv << name << ',' << num(exact) << ',' << num(value) << ',' << num(rel) << '\n';
    ctx.out << std::setw(10) << name << std::setw(22) << num(exact) << std::setw(22) << num(value) << num(rel)
            << "\n";
  }
  const auto w = angular_velocity(s);
  const double wl = s.units().omega_L();
  ctx.out << "omega = " << w.total() / wl << " omega_L (canonical " << w.canonical / wl << ", gauge "
          << w.gauge / wl << ")\n";
  ctx.report = {{"state", state_json(s)},
                {"quadrature", {{"scheme", to_string(q.scheme)}, {"n_points", q.n_points},
                                {"tolerance", q.tolerance}, {"r_max", q.r_max > 0 ? q.r_max : default_r_max(s)}}},
                {"table", table},
                {"omega_omega_L",
                 {{"total", w.total() / wl}, {"canonical", w.canonical / wl}, {"gauge", w.gauge / wl}}},
                {"magnitude_class", to_string(magnitude_classification(s))}};
  if (ctx.cfg.wants("csv")) {
    std::ofstream f(ctx.file("expect.csv"));
    f << csv.str();
    if (!f) throw IoError("failed writing expect.csv");
  }
}

void cmd_classical(Context& ctx) {
  const auto& c = ctx.cfg;
  if (!(c.periods > 0.0) || c.steps_per_period < 1) throw UsageError("--periods and --steps must be positive");
  const PhysicalUnits u;
  const PhaseSpacePoint p0{c.x0, c.y0, c.vx0, c.vy0};
  const ClassicalOrbit orbit(p0, u.omega_c());
  const double T = orbit.period();
  const auto traj = classical_integrate(p0, u.omega_c(), c.periods * T, T / c.steps_per_period);
  ctx.report = {{"initial", {{"x", c.x0}, {"y", c.y0}, {"vx", c.vx0}, {"vy", c.vy0}}},
                {"guiding_centre", {{"X", orbit.X()}, {"Y", orbit.Y()}}},
                {"r_c", orbit.r_c()},
                {"R2", orbit.R2()},
                {"period_omega_L", T * u.omega_L()},
                {"steps", traj.samples.size() - 1},
                {"max_position_error", traj.max_position_error},
                {"max_guiding_drift", traj.max_guiding_drift},
                {"max_energy_drift", traj.max_energy_drift},
                {"max_rc_drift", traj.max_rc_drift}};
  if (c.wants("csv")) write_trajectory_csv(traj, ctx.file("trajectory.csv"));
  if (c.wants("png")) {
    const int size = 360;
    raster::Image img(size, size);
    const double half = std::max(orbit.r_c(), 1e-3) * 1.3;
    auto px = [&](double x) { return (x - orbit.X() + half) / (2 * half) * (size - 1); };
    auto py = [&](double y) { return (size - 1) - (y - orbit.Y() + half) / (2 * half) * (size - 1); };
    for (std::size_t i = 1; i < traj.samples.size(); ++i) {
      const auto& a = traj.samples[i - 1].state;
      const auto& b = traj.samples[i].state;
      img.line(px(a.x), py(a.y), px(b.x), py(b.y), raster::kBlue);
    }
    img.disc(px(orbit.X()), py(orbit.Y()), 3, raster::kRed);
    img.disc(px(c.x0), py(c.y0), 3, raster::kGreen);
    raster::write_png(img, ctx.file("trajectory.png"));
  }
  ctx.out << "guiding centre (X, Y) = (" << num(orbit.X()) << ", " << num(orbit.Y()) << ")  r_c = "
          << num(orbit.r_c()) << "\n"
          << "max |x - x_exact| = " << num(traj.max_position_error)
          << "  guiding-centre drift = " << num(traj.max_guiding_drift) << "\n";
}

void cmd_guiding(Context& ctx) {
  const auto s = make_state(ctx.cfg);
  GridSpec g = guiding_grid(s, ctx.cfg.grid > 0 ? ctx.cfg.grid : 512);
  if (ctx.cfg.extent > 0.0) g.half_extent = ctx.cfg.extent;
  g.validate();
  const auto check = l_can_relation_check(s, g, ctx.cfg.stencil);
  const auto& e = check.expectations;
  const auto cf = expect_closed_form(s);
  ctx.report = {{"state", state_json(s)},
                {"grid", {{"n", g.n}, {"half_extent", g.half_extent}, {"stencil_order", ctx.cfg.stencil}}},
                {"expectations", to_json(e)},
                {"closed_form", {{"R2", cf.gc2}, {"rc2", cf.rc2}, {"L_can", cf.l_can}}},
                {"l_can_relation_residual", check.residual},
                {"magnitude_class", to_string(magnitude_classification(s))}};
  if (ctx.cfg.wants("png"))
    raster::write_png(raster::guiding_schematic(std::sqrt(e.rc2), std::sqrt(std::max(e.R2, 0.0))),
                      ctx.file("guiding.png"));
  ctx.out << "<X> = " << num(e.X) << "  <Y> = " << num(e.Y) << "\n"
          << "<R^2> = " << num(e.R2) << " (closed form " << num(cf.gc2) << ")\n"
          << "<r_c^2> = " << num(e.rc2) << " (closed form " << num(cf.rc2) << ")\n"
          << "<[X,Y]> = " << num(e.commutator.real()) << " + " << num(e.commutator.imag()) << " i  l_B^2\n"
          << "L_can relation residual = " << num(check.residual) << "\n";
  if (e.accuracy_warning) ctx.err << "warning: " << e.warning << "\n";
}

void cmd_knife_edge(Context& ctx) {
  const auto& c = ctx.cfg;
  const auto s = make_state(c);
  const PhysicalUnits& u = s.units();
  if (c.frames < 2) throw UsageError("--frames must be at least 2");
  if (!(c.window > 0.0)) throw UsageError("--window must be positive");
  RotationOptions opt;
  opt.truncation.max_n_r = std::max(c.max_n_r, s.n_r());
  opt.truncation.max_dm = c.max_dm;
  opt.truncation.adaptive = c.adaptive;
  if (c.grid > 0) opt.grid.n_r = c.grid;
  if (c.extent > 0.0) opt.grid.r_max = c.extent;
  const MaskSpec mask{c.edge_angle};
  const auto times = short_time_window(u, c.frames, c.window);
  const auto rep = rotation_rate(s, mask, times, opt);

  const double wl = u.omega_L();
  json j = to_json(rep);
  j["fitted_rate"] = rep.rate / wl;
  j["bohmian_rate"] = rep.bohmian_rate / wl;
  std::vector<double> tw;
  for (double t : rep.times) tw.push_back(t * wl);
  j["times"] = tw;
  j["intercept"] = rep.intercept;
  j["units"] = {{"rates", "omega_L"}, {"times", "1/omega_L"}, {"angles", "rad"}};
  j["edge_angle"] = c.edge_angle;
  ctx.report = j;

  if (c.wants("csv") || c.wants("png")) {
    const auto proj = project_masked(s, mask, opt.truncation);
    const double r_max = opt.grid.r_max > 0.0 ? opt.grid.r_max : 1.25 * s.default_extent();
    const PolarGridSpec pg{opt.grid.n_r, opt.grid.n_phi, r_max};
    for (std::size_t k = 0; k < times.size(); ++k) {
      const auto sup = proj.superposition.evolve(times[k]);
      char name[32];
      if (c.wants("csv")) {
        std::snprintf(name, sizeof name, "frame_%03zu.csv", k);
        write_field_csv(intensity(sup, pg), {"intensity"}, ctx.file(name));
      }
      if (c.wants("png")) {
        std::snprintf(name, sizeof name, "frame_%03zu.png", k);
        raster::write_png(raster::density_image(intensity(sup, GridSpec{201, r_max}), "intensity"),
                          ctx.file(name));
      }
    }
  }
  ctx.out << "source n_r=" << s.n_r() << " m=" << s.m() << "  captured norm " << num(rep.captured_norm) << "\n"
          << "fitted rate " << num(rep.rate / wl) << " omega_L  (Bohmian half-plane " << num(rep.bohmian_rate / wl)
          << " omega_L)\n"
          << "classification: " << to_string(rep.classification) << "\n";
}

bool cmd_verify(Context& ctx) {
  const auto results = run_verification(ctx.cfg.thorough);
  json arr = json::array();
  bool ok = true;
  for (const auto& r : results) {
    ok = ok && r.passed;
    arr.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    ctx.out << (r.passed ? "PASS " : "FAIL ") << std::left << std::setw(30) << r.name << r.detail << "\n";
  }
  ctx.out << (ok ? "all checks passed" : "verification FAILED") << "\n";
  ctx.report = {{"thorough", ctx.cfg.thorough}, {"checks", arr}, {"passed", ok}};
  return ok;
}

json manifest(const RunConfig& c, const std::vector<std::string>& artifacts) {
  const PhysicalUnits u;
  json m = {{"tool", "landau"},
            {"version", LANDAU_VERSION},
            {"schema_version", kJsonSchemaVersion},
            {"config", to_json(c)},
            {"units",
             {{"length", "l_B"}, {"frequency", "omega_L"}, {"energy", "hbar omega_L"}, {"angular_momentum", "hbar"}}},
            {"constants",
             {{"l_B", u.l_B()}, {"m_e", u.m_e()}, {"hbar", 1.0}, {"omega_c", u.omega_c()},
              {"omega_L", u.omega_L()}, {"b", u.b()}}},
            {"artifacts", artifacts}};
  if (c.b_tesla > 0.0) {
    const double eb = kElementaryCharge * c.b_tesla;
    const double wc = eb / kElectronMass;
    m["si"] = {{"B_tesla", c.b_tesla},
               {"hbar_J_s", kHbar},
               {"e_C", kElementaryCharge},
               {"m_e_kg", kElectronMass},
               {"l_B_m", std::sqrt(kHbar / eb)},
               {"omega_c_rad_s", wc},
               {"omega_L_rad_s", 0.5 * wc},
               {"hbar_omega_L_J", 0.5 * kHbar * wc}};
  }
  return m;
}

}  // namespace

bool RunConfig::wants(const std::string& fmt) const {
  return std::find(formats.begin(), formats.end(), fmt) != formats.end();
}

json to_json(const RunConfig& c) {
  return {{"command", c.command},
          {"n_r", c.n_r},
          {"m", c.m},
          {"grid", c.grid},
          {"extent", c.extent},
          {"out_dir", c.out_dir},
          {"formats", c.formats},
          {"si_tesla", c.b_tesla},
          {"quadrature", {{"scheme", c.scheme}, {"points", c.points}, {"tolerance", c.tolerance}, {"r_max", c.r_max}}},
          {"classical",
           {{"x0", c.x0}, {"y0", c.y0}, {"vx0", c.vx0}, {"vy0", c.vy0}, {"periods", c.periods},
            {"steps_per_period", c.steps_per_period}}},
          {"stencil", c.stencil},
          {"knife_edge",
           {{"edge_angle", c.edge_angle}, {"frames", c.frames}, {"window", c.window}, {"max_n_r", c.max_n_r},
            {"max_dm", c.max_dm}, {"adaptive", c.adaptive}}},
          {"thorough", c.thorough}};
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  c.command = j.at("command").get<std::string>();
  c.n_r = j.at("n_r");
  c.m = j.at("m");
  c.grid = j.at("grid");
  c.extent = j.at("extent");
  c.out_dir = j.at("out_dir").get<std::string>();
  c.formats = j.at("formats").get<std::vector<std::string>>();
  c.b_tesla = j.at("si_tesla");
  const auto& q = j.at("quadrature");
  c.scheme = q.at("scheme").get<std::string>();
  c.points = q.at("points");
  c.tolerance = q.at("tolerance");
  c.r_max = q.at("r_max");
  const auto& k = j.at("classical");
  c.x0 = k.at("x0");
  c.y0 = k.at("y0");
  c.vx0 = k.at("vx0");
  c.vy0 = k.at("vy0");
  c.periods = k.at("periods");
  c.steps_per_period = k.at("steps_per_period");
  c.stencil = j.at("stencil");
  const auto& e = j.at("knife_edge");
  c.edge_angle = e.at("edge_angle");
  c.frames = e.at("frames");
  c.window = e.at("window");
  c.max_n_r = e.at("max_n_r");
  c.max_dm = e.at("max_dm");
  c.adaptive = e.at("adaptive");
  c.thorough = j.at("thorough");
  return c;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (std::find(kCommands.begin(), kCommands.end(), config.command) == kCommands.end())
      throw UsageError("unknown command '" + config.command + "'");
    for (const auto& f : config.formats)
      if (f != "csv" && f != "json" && f != "png") throw UsageError("unknown format '" + f + "'");
    if (config.n_r < 0)
      throw InvalidQuantumNumbers("invalid quantum numbers: n_r = " + std::to_string(config.n_r) +
                                  " must be non-negative");

    Context ctx{config, fs::path(config.out_dir), out, err, {}, json::object()};
    std::error_code ec;
    fs::create_directories(ctx.dir, ec);
    if (ec || !fs::is_directory(ctx.dir))
      throw IoError("cannot create output directory '" + config.out_dir + "'");

    bool ok = true;
    const auto& cmd = config.command;
    if (cmd == "state") cmd_state(ctx);
    else if (cmd == "currents") cmd_currents(ctx);
    else if (cmd == "oam") cmd_oam(ctx);
    else if (cmd == "expect") cmd_expect(ctx);
    else if (cmd == "classical") cmd_classical(ctx);
    else if (cmd == "guiding") cmd_guiding(ctx);
    else if (cmd == "knife-edge") cmd_knife_edge(ctx);
    else ok = cmd_verify(ctx);

    if (config.wants("json")) {
      const std::string name = (cmd == "knife-edge" ? std::string("knife_edge") : cmd) + ".json";
      json doc = {{"schema_version", kJsonSchemaVersion}, {"command", cmd}, {"result", ctx.report}};
      write_json(doc, ctx.file(name));
    }
    write_json(manifest(config, ctx.artifacts), ctx.dir / "manifest.json");
    return ok ? kOk : kVerifyFailed;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const fs::filesystem_error& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DegenerateFit& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Landau states, helical electron beams and their currents", "landau"};
  app.set_version_flag("--version", std::string(LANDAU_VERSION));
  app.require_subcommand(1);

  RunConfig cfg;
  const char* env_out = std::getenv("LANDAU_OUT");
  cfg.out_dir = env_out && *env_out ? env_out : "landau_out";
  std::optional<int> n_landau, n_radial;
  std::string formats = "csv,json,png";

  auto add_common = [&](CLI::App* sub, bool quantum) {
    if (quantum) {
      auto* on = sub->add_option("--n", n_landau, "Landau index n = n_r + (|m|+m)/2");
      auto* onr = sub->add_option("--n-r", n_radial, "radial quantum number n_r");
      on->excludes(onr);
      sub->add_option("--m", cfg.m, "azimuthal quantum number");
      sub->add_option("--grid", cfg.grid, "grid points per axis");
      sub->add_option("--extent", cfg.extent, "grid half width in l_B");
    }
    sub->add_option("--out", cfg.out_dir, "output directory (default $LANDAU_OUT or ./landau_out)");
    sub->add_option("--format", formats, "comma separated subset of csv,json,png");
    sub->add_option("--si", cfg.b_tesla, "magnetic field in tesla; SI scales go to the manifest")
        ->check(CLI::PositiveNumber);
  };

  for (const char* name : {"state", "currents", "oam"}) add_common(app.add_subcommand(name, ""), true);
  app.get_subcommand("state")->description("probability density and wavefunction on a grid");
  app.get_subcommand("currents")->description("canonical, gauge and total current fields");
  app.get_subcommand("oam")->description("orbital angular momentum densities");

  auto* expect = app.add_subcommand("expect", "closed-form vs quadrature expectation table");
  add_common(expect, true);
  expect->add_option("--scheme", cfg.scheme, "adaptive-simpson | gauss-legendre-mapped");
  expect->add_option("--points", cfg.points, "Gauss-Legendre points");
  expect->add_option("--tol", cfg.tolerance, "adaptive tolerance");
  expect->add_option("--r-max", cfg.r_max, "radial cutoff in l_B (0: automatic)");

  auto* classical = app.add_subcommand("classical", "classical cyclotron orbit (RK4 vs analytic)");
  add_common(classical, false);
  classical->add_option("--x0", cfg.x0);
  classical->add_option("--y0", cfg.y0);
  classical->add_option("--vx0", cfg.vx0);
  classical->add_option("--vy0", cfg.vy0);
  classical->add_option("--periods", cfg.periods);
  classical->add_option("--steps", cfg.steps_per_period, "RK4 steps per period");

  auto* guiding = app.add_subcommand("guiding", "guiding-centre operator expectations on a grid");
  add_common(guiding, true);
  guiding->add_option("--stencil", cfg.stencil, "finite-difference order (2, 4, 6, 8)");

  auto* knife = app.add_subcommand("knife-edge", "masked beam rotation experiment");
  add_common(knife, true);
  knife->add_option("--edge-angle", cfg.edge_angle, "direction of the visible half (rad)");
  knife->add_option("--frames", cfg.frames);
  knife->add_option("--window", cfg.window, "time window as a fraction of the cyclotron period");
  knife->add_option("--max-n-r", cfg.max_n_r);
  knife->add_option("--max-dm", cfg.max_dm);
  knife->add_flag("--adaptive", cfg.adaptive, "grow the truncation until the captured norm settles");

  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  add_common(verify, false);
  verify->add_flag("--thorough", cfg.thorough, "full quantum-number ranges and 512^2 grids");

  std::string manifest_path;
  std::optional<std::string> replay_out;
  auto* replay = app.add_subcommand("replay", "rerun the configuration stored in a manifest");
  replay->add_option("manifest", manifest_path)->required();
  replay->add_option("--out", replay_out, "override the output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    out << LANDAU_VERSION << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run 'landau --help' for usage\n";
    return kUsage;
  }

  if (replay->parsed()) {
    RunConfig c;
    try {
      c = config_from_json(read_json(manifest_path).at("config"));
    } catch (const IoError& e) {
      err << "I/O error: " << e.what() << "\n";
      return kIo;
    } catch (const nlohmann::json::exception& e) {
      err << "usage error: malformed manifest: " << e.what() << "\n";
      return kUsage;
    }
    if (replay_out) c.out_dir = *replay_out;
    return run(c, out, err);
  }

  cfg.command = app.get_subcommands().front()->get_name();
  cfg.formats.clear();
  std::stringstream ss(formats);
  for (std::string f; std::getline(ss, f, ',');)
    if (!f.empty()) cfg.formats.push_back(f);

  if (n_radial) {
    cfg.n_r = *n_radial;
  } else if (n_landau) {
    const int shift = (std::abs(cfg.m) + cfg.m) / 2;
    if (*n_landau - shift < 0) {
      err << "usage error: invalid quantum numbers: n - (|m|+m)/2 = " << *n_landau - shift
          << " < 0; for m = " << cfg.m << " the Landau index must be at least " << shift << "\n";
      return kUsage;
    }
    cfg.n_r = *n_landau - shift;
  }
  return run(cfg, out, err);
}

}  // namespace landau::cli
