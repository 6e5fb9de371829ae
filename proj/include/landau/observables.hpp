#pragma once

#include <string>

#include "landau/field_grid.hpp"
#include "landau/landau_core.hpp"
#include "landau/quadrature.hpp"

namespace landau {

/// Azimuthal probability-current pieces at radius r. Radial and z components of an
/// eigenstate current vanish identically and are carried as zeros.
struct CurrentDecomposition {
  double j_can_phi = 0.0;
  double j_gauge_phi = 0.0;
  double j_total_phi = 0.0;
  double j_r = 0.0;
  double j_z = 0.0;
};

struct OAMDecomposition {
  double l_can = 0.0;
  double l_gauge = 0.0;
  double l_mech = 0.0;

  double l_pot() const { return -l_gauge; }
};

double density(const LandauState& state, double r);
CurrentDecomposition current_decomposition(const LandauState& state, double r);
OAMDecomposition oam_decomposition(const LandauState& state, double r);

/// Closed-form expectation values. Lengths squared in units of l_B^2 times l_B^2,
/// i.e. they carry the state's physical units.
struct ClosedFormTable {
  double norm = 1.0;
  double l_can = 0.0;
  double l_gauge = 0.0;
  double l_pot = 0.0;
  double l_mech = 0.0;
  double r2 = 0.0;
  double rc2 = 0.0;   // <r_c^2>, squared cyclotron radius
  double gc2 = 0.0;   // <R^2>, squared guiding-centre distance
  double inv_r2 = 0.0;  // <rho/r^2>; NaN for m = 0 (divergent)
  double omega = 0.0;
};

ClosedFormTable expect_closed_form(const LandauState& state);

enum class Expectation { norm, l_can, l_gauge, l_pot, l_mech, r2, inv_r2, rc2, gc2 };

std::string to_string(Expectation e);

/// Radial truncation used when spec.r_max <= 0: three classical turning radii,
/// widened until the integrand tail is below 1e-14 of its peak.
double default_r_max(const LandauState& state);

/// Plane integral of the density belonging to `which`, by radial quadrature.
/// inv_r2 with m = 0 throws std::domain_error.
double expect_quadrature(const LandauState& state, Expectation which,
                         const QuadratureSpec& spec = {});

/// <omega> = canonical + gauge. The m = 0 value is the gauge part alone.
struct AngularVelocity {
  double canonical = 0.0;
  double gauge = 0.0;

  double total() const { return canonical + gauge; }
};

AngularVelocity angular_velocity(const LandauState& state);

/// Bohmian angular velocity v_phi / r = j_phi / (r rho) at radius r.
double bohmian_omega(const LandauState& state, double r);

/// Density-weighted mean of bohmian_omega over a half plane through the origin.
/// Both density and omega are axially symmetric, so the azimuthal integral cancels
/// and only the radial quadrature remains.
double bohmian_half_plane_average(const LandauState& state, const QuadratureSpec& spec = {});

/// Cartesian samples of rho and the current decomposition; with `with_oam` also
/// l_can, l_gauge, l_mech.
FieldGrid field_grid(const LandauState& state, const GridSpec& grid, bool with_oam = false);

}  // namespace landau
