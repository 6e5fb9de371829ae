#include "landau/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "landau/kernels.hpp"

namespace landau {

double density(const LandauState& state, double r) {
  const double radial = state.radial(r);
  return radial * radial / (2.0 * kPi);
}

CurrentDecomposition current_decomposition(const LandauState& state, double r) {
  const double rho = density(state, r);
  const auto& u = state.units();
  CurrentDecomposition j;
  // rho ~ r^{2|m|} at the origin, so the canonical piece tends to zero there.
  j.j_can_phi = (r == 0.0) ? 0.0 : state.m() / (u.m_e() * r) * rho;
  j.j_gauge_phi = r / (2.0 * u.l_B() * u.l_B() * u.m_e()) * rho;
  j.j_total_phi = j.j_can_phi + j.j_gauge_phi;
  return j;
}

OAMDecomposition oam_decomposition(const LandauState& state, double r) {
  const double rho = density(state, r);
  const double lb = state.units().l_B();
  OAMDecomposition l;
  l.l_can = state.m() * rho;
  l.l_gauge = r * r / (2.0 * lb * lb) * rho;
  l.l_mech = l.l_can + l.l_gauge;
  return l;
}

ClosedFormTable expect_closed_form(const LandauState& state) {
  const int n = state.n();
  const int m = state.m();
  const double lb2 = state.units().l_B() * state.units().l_B();
  ClosedFormTable t;
  t.l_can = m;
  t.l_gauge = 2.0 * n + 1.0 - m;
  t.l_pot = -t.l_gauge;
  t.l_mech = 2.0 * n + 1.0;
  t.rc2 = (2.0 * n + 1.0) * lb2;
  t.gc2 = (2.0 * n - 2.0 * m + 1.0) * lb2;
  t.r2 = t.rc2 + t.gc2;
  t.inv_r2 = m == 0 ? std::numeric_limits<double>::quiet_NaN() : 1.0 / (2.0 * lb2 * std::abs(m));
  t.omega = angular_velocity(state).total();
  return t;
}

std::string to_string(Expectation e) {
  switch (e) {
    case Expectation::norm: return "norm";
    case Expectation::l_can: return "l_can";
    case Expectation::l_gauge: return "l_gauge";
    case Expectation::l_pot: return "l_pot";
    case Expectation::l_mech: return "l_mech";
    case Expectation::r2: return "r2";
    case Expectation::inv_r2: return "inv_r2";
    case Expectation::rc2: return "rc2";
    case Expectation::gc2: return "R2";
  }
  return "unknown";
}

double default_r_max(const LandauState& state) {
  double r_max = state.default_extent();
  auto weight = [&](double r) {
    const double radial = state.radial(r);
    return radial * radial * r * (1.0 + r * r);
  };
  double peak = 0.0;
  for (int i = 1; i <= 400; ++i) peak = std::max(peak, weight(r_max * i / 400.0));
  while (weight(r_max) > 1e-14 * peak) r_max *= 1.25;
  return r_max;
}

namespace {

// Radial integrand f(r) such that the expectation value is the integral of f over [0, r_max].
double radial_integrand(const LandauState& state, Expectation which, double r) {
  const double radial = state.radial(r);
  const double r2dens = radial * radial * r;  // 2 pi r rho
  const auto& u = state.units();
  const double lb2 = u.l_B() * u.l_B();
  const int m = state.m();
  switch (which) {
    case Expectation::norm: return r2dens;
    case Expectation::l_can: return m * r2dens;
    case Expectation::l_gauge: return r * r / (2.0 * lb2) * r2dens;
    case Expectation::l_pot: return -r * r / (2.0 * lb2) * r2dens;
    case Expectation::l_mech:
      // l = m_e (r x j)_z integrated over the plane
      return 2.0 * kPi * r * u.m_e() * r * current_decomposition(state, r).j_total_phi;
    case Expectation::r2: return r * r * r2dens;
    case Expectation::inv_r2: return r == 0.0 ? 0.0 : radial * radial / r;
    case Expectation::rc2:
    case Expectation::gc2: {
      // |Pi psi|^2 (rc2) or |(p - eA) psi|^2 (gc2), scaled by 1/(eB)^2
      const double dr = state.radial_derivative(r);
      const double sign = which == Expectation::rc2 ? 1.0 : -1.0;
      const double azimuthal = (r == 0.0 ? 0.0 : m / r) + sign * u.eB() * r / 2.0;
      const double pi2 = (dr * dr + (r == 0.0 ? 0.0 : azimuthal * azimuthal * radial * radial)) * r;
      return pi2 / (u.eB() * u.eB());
    }
  }
  throw std::logic_error("radial_integrand: unhandled expectation");
}

}  // namespace

double expect_quadrature(const LandauState& state, Expectation which, const QuadratureSpec& spec) {
  if (which == Expectation::inv_r2 && state.m() == 0)
    throw std::domain_error("<rho/r^2> diverges for m = 0");
  const double r_max = spec.r_max > 0.0 ? spec.r_max : default_r_max(state);
  auto f = [&](double r) { return radial_integrand(state, which, r); };
  if (spec.scheme == QuadratureScheme::adaptive_simpson) {
    // absolute tolerance scaled to the size of the answer
    const double scale = std::abs(composite_gauss_legendre(0.0, r_max, 16).apply(f));
    return adaptive_simpson(f, 0.0, r_max, spec.tolerance * std::max(1.0, scale));
  }
  return integrate(f, 0.0, r_max, spec);
}

AngularVelocity angular_velocity(const LandauState& state) {
  const double wl = state.units().omega_L();
  const int m = state.m();
  AngularVelocity w;
  w.gauge = wl;
  w.canonical = m > 0 ? wl : (m < 0 ? -wl : 0.0);
  return w;
}

double bohmian_omega(const LandauState& state, double r) {
  const auto& u = state.units();
  if (r == 0.0) return state.m() == 0 ? u.omega_L() : std::numeric_limits<double>::infinity();
  return (state.m() / (r * r) + 1.0 / (2.0 * u.l_B() * u.l_B())) / u.m_e();
}

double bohmian_half_plane_average(const LandauState& state, const QuadratureSpec& spec) {
  const double r_max = spec.r_max > 0.0 ? spec.r_max : default_r_max(state);
  QuadratureSpec s = spec;
  s.r_max = r_max;
  auto weighted = [&](double r) {
    if (r == 0.0) return 0.0;
    const double radial = state.radial(r);
    return radial * radial * r * bohmian_omega(state, r);
  };
  auto mass = [&](double r) {
    const double radial = state.radial(r);
    return radial * radial * r;
  };
  return integrate(weighted, 0.0, r_max, s) / integrate(mass, 0.0, r_max, s);
}

FieldGrid field_grid(const LandauState& state, const GridSpec& grid, bool with_oam) {
  FieldGrid g = FieldGrid::cartesian(grid);
  kernels::sample_currents(state, g);
  if (with_oam) {
    const auto& rho = g.channel("rho");
    auto& l_can = g.add_channel("l_can");
    auto& l_gauge = g.add_channel("l_gauge");
    auto& l_mech = g.add_channel("l_mech");
    const double lb2 = state.units().l_B() * state.units().l_B();
#pragma omp parallel for
    for (int iy = 0; iy < g.n1(); ++iy) {
      for (int ix = 0; ix < g.n0(); ++ix) {
        const std::size_t idx = static_cast<std::size_t>(iy) * g.n0() + ix;
        const double x = g.axis0()[ix], y = g.axis1()[iy];
        l_can[idx] = state.m() * rho[idx];
        l_gauge[idx] = (x * x + y * y) / (2.0 * lb2) * rho[idx];
        l_mech[idx] = l_can[idx] + l_gauge[idx];
      }
    }
  }
  g.metadata()["n_r"] = std::to_string(state.n_r());
  g.metadata()["m"] = std::to_string(state.m());
  g.metadata()["units"] = "lengths in l_B";
  return g;
}

}  // namespace landau
