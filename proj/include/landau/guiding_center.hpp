#pragma once

#include <string>
#include <vector>

#include "landau/field_grid.hpp"
#include "landau/landau_core.hpp"

namespace landau {

// ---- classical cyclotron motion (charge -e, B along +z: counter-clockwise) ----

struct PhaseSpacePoint {
  double x = 0.0, y = 0.0, vx = 0.0, vy = 0.0;
};

class ClassicalOrbit {
 public:
  ClassicalOrbit(PhaseSpacePoint initial, double omega_c);

  PhaseSpacePoint at(double t) const;

  double omega_c() const { return omega_c_; }
  double X() const { return X_; }
  double Y() const { return Y_; }
  double v0() const { return v0_; }
  double alpha() const { return alpha_; }
  double r_c() const { return v0_ / omega_c_; }
  double R2() const { return X_ * X_ + Y_ * Y_; }
  double period() const;

 private:
  double omega_c_;
  double X_, Y_;
  double v0_, alpha_;
};

PhaseSpacePoint classical_solve(PhaseSpacePoint initial, double omega_c, double t);

struct TrajectorySample {
  double t = 0.0;
  PhaseSpacePoint state;
  double X = 0.0, Y = 0.0, r_c = 0.0;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  double max_position_error = 0.0;   // against the analytic orbit
  double max_guiding_drift = 0.0;    // max |(X,Y)(t) - (X,Y)(0)|
  double max_energy_drift = 0.0;     // relative
  double max_rc_drift = 0.0;
};

/// Classical RK4 integration of m dv/dt = -e v x B, monitoring X, Y, r_c per step.
Trajectory classical_integrate(PhaseSpacePoint initial, double omega_c, double t_end, double dt);

// ---- quantum guiding-centre operators on sampled wavefunctions ----

/// X = x - Pi_y/(eB), Y = y + Pi_x/(eB), Pi = -i grad + eA with A = (B/2)(-y, x),
/// derivatives by central finite differences (zero outside the grid).
class GuidingOperators {
 public:
  explicit GuidingOperators(PhysicalUnits units = {}, int stencil_order = 8);

  ComplexField X(const ComplexField& psi) const;
  ComplexField Y(const ComplexField& psi) const;
  ComplexField Pi_x(const ComplexField& psi) const;
  ComplexField Pi_y(const ComplexField& psi) const;
  ComplexField L_can(const ComplexField& psi) const;

  int stencil_order() const { return order_; }
  const PhysicalUnits& units() const { return units_; }

 private:
  PhysicalUnits units_;
  int order_;
};

struct GuidingExpectations {
  double norm = 0.0;
  double X = 0.0;
  double Y = 0.0;
  double R2 = 0.0;       // <X^2 + Y^2>
  double rc2 = 0.0;      // <r_c^2> = <Pi^2>/(eB)^2
  double L_can = 0.0;
  cplx commutator{};     // <[X, Y]>
  double estimated_error = 0.0;  // relative, from the next-lower stencil order
  bool accuracy_warning = false;
  std::string warning;
};

GuidingExpectations apply_guiding_ops(const ComplexField& psi, const PhysicalUnits& units = {},
                                      int stencil_order = 8, double warn_threshold = 1e-4);

/// Square grid with n points per axis whose half width is the radius where
/// r^2 (1 + r^2) |R(r)|^2 drops to `tail` times its peak.
GridSpec guiding_grid(const LandauState& state, int n = 512, double tail = 1e-16);

struct RelationCheck {
  GuidingExpectations expectations;
  double residual = 0.0;  // |<L_can> - (<r_c^2> - <R^2>)/(2 l_B^2)|
};

RelationCheck l_can_relation_check(const ComplexField& psi, const PhysicalUnits& units = {},
                                   int stencil_order = 8);
RelationCheck l_can_relation_check(const LandauState& state, const GridSpec& grid,
                                   int stencil_order = 8);

enum class MagnitudeClass { rc_gt_R, rc_eq_R, rc_lt_R };

std::string to_string(MagnitudeClass c);
MagnitudeClass magnitude_classification(const LandauState& state);

}  // namespace landau
