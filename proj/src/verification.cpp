#include "landau/verification.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "landau/beam_dynamics.hpp"
#include "landau/guiding_center.hpp"
#include "landau/kernels.hpp"
#include "landau/observables.hpp"

namespace landau {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

CheckResult check_normalization(int max_q) {
  double worst_norm = 0.0, worst_sym = 0.0;
  bool mirror_exact = true;
  QuadratureSpec gl;
  gl.scheme = QuadratureScheme::gauss_legendre_mapped;
  gl.n_points = 64;
  for (int nr = 0; nr <= max_q; ++nr) {
    for (int m = -max_q; m <= max_q; ++m) {
      const LandauState s({nr, m});
      worst_norm = std::max(worst_norm, std::abs(expect_quadrature(s, Expectation::norm, gl) - 1.0));
      const LandauState mirror({nr, -m});
      // R_{n-m,-m} = R_{n,m} in Landau labels, defined for m >= 0
      const bool partner_valid = m >= 0;
      const LandauState partner = partner_valid ? LandauState::from_landau({s.n() - m, -m}) : s;
      for (int i = 0; i <= 200; ++i) {
        const double r = s.default_extent() * i / 200.0;
        if (s.radial(r) != mirror.radial(r)) mirror_exact = false;
        if (partner_valid)
          worst_sym = std::max(worst_sym, std::abs(partner.radial(r) - s.radial(r)));
      }
    }
  }
  const bool ok = worst_norm <= 1e-10 && mirror_exact && worst_sym <= 1e-12;
  return {"normalization-and-symmetry", ok,
          "max |norm-1| " + fmt(worst_norm) + ", mirror exact " + (mirror_exact ? "yes" : "no") +
              ", max index-symmetry deviation " + fmt(worst_sym)};
}

CheckResult check_expectations(int max_q) {
  double worst = 0.0;
  for (int nr = 0; nr <= max_q; ++nr) {
    for (int m = -max_q; m <= max_q; ++m) {
      const LandauState s({nr, m});
      const auto cf = expect_closed_form(s);
      auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
      worst = std::max(worst, rel(expect_quadrature(s, Expectation::l_can), cf.l_can));
      worst = std::max(worst, rel(expect_quadrature(s, Expectation::l_gauge), cf.l_gauge));
      worst = std::max(worst, rel(expect_quadrature(s, Expectation::l_mech), cf.l_mech));
      worst = std::max(worst, rel(expect_quadrature(s, Expectation::rc2), cf.rc2));
      worst = std::max(worst, rel(expect_quadrature(s, Expectation::gc2), cf.gc2));
      if (m != 0) worst = std::max(worst, rel(expect_quadrature(s, Expectation::inv_r2), cf.inv_r2));
    }
  }
  return {"expectation-table", worst <= 1e-8, "max relative deviation " + fmt(worst)};
}

CheckResult check_angular_velocity() {
  const PhysicalUnits u;
  bool ok = true;
  for (int m = -6; m <= 6; ++m) {
    const auto w = angular_velocity(LandauState({0, m}));
    const double expected = m < 0 ? 0.0 : (m == 0 ? u.omega_L() : u.omega_c());
    ok = ok && w.total() == expected && w.gauge == u.omega_L();
  }
  return {"angular-velocity-classes", ok, "{0, omega_L, omega_c} for m {<0, =0, >0}"};
}

CheckResult check_current_sign_change() {
  const LandauState neg({0, -10}), pos({0, 10});
  int changes_neg = 0, changes_pos = 0;
  double prev_neg = 0.0, prev_pos = 0.0;
  const double r_max = neg.default_extent();
  for (int i = 1; i <= 4000; ++i) {
    const double r = r_max * i / 4000.0;
    const double jn = current_decomposition(neg, r).j_total_phi;
    const double jp = current_decomposition(pos, r).j_total_phi;
    if (i > 1 && jn * prev_neg < 0.0) ++changes_neg;
    if (i > 1 && jp * prev_pos < 0.0) ++changes_pos;
    if (jn != 0.0) prev_neg = jn;
    if (jp != 0.0) prev_pos = jp;
  }
  const bool ok = changes_neg == 1 && changes_pos == 0;
  return {"current-sign-structure", ok,
          "sign changes m=-10: " + std::to_string(changes_neg) + ", m=+10: " + std::to_string(changes_pos)};
}

CheckResult check_guiding(int grid_n) {
  const LandauState s({0, 3});
  const auto e = apply_guiding_ops(kernels::sample_state(s, guiding_grid(s, grid_n)));
  const double comm_err = std::abs(e.commutator - cplx(0.0, 1.0));
  double worst_rel = 0.0;
  for (const QuantumNumbers qn : {QuantumNumbers{0, 0}, QuantumNumbers{0, -4}, QuantumNumbers{2, 3}}) {
    const LandauState st(qn);
    worst_rel = std::max(worst_rel, l_can_relation_check(st, guiding_grid(st, grid_n)).residual);
  }
  const auto traj = classical_integrate({0.3, -0.2, 1.0, 0.5}, 1.0, 2.0 * kPi, 2.0 * kPi / 1000.0);
  const bool ok = comm_err <= 1e-4 && worst_rel <= 1e-6 && traj.max_position_error <= 1e-8;
  return {"guiding-centre", ok,
          "|<[X,Y]> - i| " + fmt(comm_err) + ", relation residual " + fmt(worst_rel) +
              ", RK4 error " + fmt(traj.max_position_error)};
}

CheckResult check_knife_edge() {
  const PhysicalUnits u;
  const auto times = short_time_window(u);
  const MaskSpec mask;
  std::ostringstream detail;
  bool ok = true;
  for (const QuantumNumbers qn : {QuantumNumbers{0, -5}, QuantumNumbers{1, 0}, QuantumNumbers{0, 5}}) {
    const auto rep = rotation_rate(LandauState(qn), mask, times);
    const RotationClass expected =
        qn.m < 0 ? RotationClass::zero : (qn.m == 0 ? RotationClass::larmor : RotationClass::cyclotron);
    ok = ok && rep.classification == expected;
    detail << "m=" << qn.m << ": " << fmt(rep.rate) << " (" << to_string(rep.classification) << ") ";
  }
  std::string d = detail.str();
  if (!d.empty()) d.pop_back();
  return {"knife-edge-splitting", ok, d};
}

CheckResult check_revival() {
  const PhysicalUnits u;
  Truncation tr;
  tr.max_n_r = 10;
  tr.max_dm = 10;
  const auto proj = project_masked(LandauState({0, 5}), MaskSpec{}, tr, 0.0);
  const PolarGridSpec grid{120, 128, 16.0};
  const auto i0 = intensity(proj.superposition, grid);
  const auto i1 = intensity(proj.superposition.evolve(2.0 * kPi / u.omega_L()), grid);
  const auto& a = i0.channel("intensity");
  const auto& b = i1.channel("intensity");
  double diff = 0.0, ref = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    diff += (a[k] - b[k]) * (a[k] - b[k]);
    ref += a[k] * a[k];
  }
  const double rel = std::sqrt(diff / ref);
  return {"revival", rel <= 1e-6, "L2 relative difference " + fmt(rel)};
}

}  // namespace

std::vector<CheckResult> run_verification(bool thorough) {
  std::vector<CheckResult> out;
  out.push_back(check_normalization(thorough ? 20 : 8));
  out.push_back(check_expectations(thorough ? 15 : 5));
  out.push_back(check_angular_velocity());
  out.push_back(check_current_sign_change());
  out.push_back(check_guiding(thorough ? 512 : 256));
  out.push_back(check_knife_edge());
  out.push_back(check_revival());
  return out;
}

}  // namespace landau
