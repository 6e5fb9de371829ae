#include "landau/guiding_center.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "landau/kernels.hpp"
#include "landau/observables.hpp"

namespace landau {

ClassicalOrbit::ClassicalOrbit(PhaseSpacePoint initial, double omega_c) : omega_c_(omega_c) {
  if (!(omega_c > 0.0)) throw std::domain_error("cyclotron frequency must be positive");
  // x(t) = X + v_y(t)/w, y(t) = Y - v_x(t)/w evaluated at t = 0
  X_ = initial.x - initial.vy / omega_c;
  Y_ = initial.y + initial.vx / omega_c;
  v0_ = std::hypot(initial.vx, initial.vy);
  alpha_ = std::atan2(initial.vy, initial.vx);
}

PhaseSpacePoint ClassicalOrbit::at(double t) const {
  const double theta = omega_c_ * t + alpha_;
  PhaseSpacePoint p;
  p.vx = v0_ * std::cos(theta);
  p.vy = v0_ * std::sin(theta);
  p.x = X_ + p.vy / omega_c_;
  p.y = Y_ - p.vx / omega_c_;
  return p;
}

double ClassicalOrbit::period() const { return 2.0 * kPi / omega_c_; }

PhaseSpacePoint classical_solve(PhaseSpacePoint initial, double omega_c, double t) {
  return ClassicalOrbit(initial, omega_c).at(t);
}

namespace {

PhaseSpacePoint rhs(const PhaseSpacePoint& s, double w) {
  return {s.vx, s.vy, -w * s.vy, w * s.vx};
}

PhaseSpacePoint axpy(const PhaseSpacePoint& s, double a, const PhaseSpacePoint& k) {
  return {s.x + a * k.x, s.y + a * k.y, s.vx + a * k.vx, s.vy + a * k.vy};
}

PhaseSpacePoint rk4_step(const PhaseSpacePoint& s, double w, double dt) {
  const auto k1 = rhs(s, w);
  const auto k2 = rhs(axpy(s, 0.5 * dt, k1), w);
  const auto k3 = rhs(axpy(s, 0.5 * dt, k2), w);
  const auto k4 = rhs(axpy(s, dt, k3), w);
  PhaseSpacePoint out = s;
  out.x += dt / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
  out.y += dt / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y);
  out.vx += dt / 6.0 * (k1.vx + 2.0 * k2.vx + 2.0 * k3.vx + k4.vx);
  out.vy += dt / 6.0 * (k1.vy + 2.0 * k2.vy + 2.0 * k3.vy + k4.vy);
  return out;
}

TrajectorySample monitor(double t, const PhaseSpacePoint& s, double w) {
  TrajectorySample out;
  out.t = t;
  out.state = s;
  out.X = s.x - s.vy / w;
  out.Y = s.y + s.vx / w;
  out.r_c = std::hypot(s.x - out.X, s.y - out.Y);
  return out;
}

bool finite(const PhaseSpacePoint& p) {
  return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.vx) && std::isfinite(p.vy);
}

}  // namespace

Trajectory classical_integrate(PhaseSpacePoint initial, double omega_c, double t_end, double dt) {
  if (!finite(initial) || !std::isfinite(omega_c) || !std::isfinite(t_end) || !std::isfinite(dt))
    throw std::domain_error("classical_integrate: non-finite input");
  if (!(dt > 0.0)) throw std::domain_error("classical_integrate: dt must be positive");
  if (t_end < 0.0) throw std::domain_error("classical_integrate: t_end must be non-negative");
  const ClassicalOrbit exact(initial, omega_c);

  Trajectory traj;
  const long steps = std::max(1L, std::lround(std::ceil(t_end / dt - 1e-9)));
  traj.samples.reserve(steps + 1);
  PhaseSpacePoint s = initial;
  traj.samples.push_back(monitor(0.0, s, omega_c));
  const auto& first = traj.samples.front();
  const double e0 = initial.vx * initial.vx + initial.vy * initial.vy;
  double t = 0.0;
  for (long i = 0; i < steps; ++i) {
    const double h = std::min(dt, t_end - t);
    if (h <= 0.0) break;
    s = rk4_step(s, omega_c, h);
    t = (i + 1 == steps) ? t_end : t + h;
    traj.samples.push_back(monitor(t, s, omega_c));
    const auto& cur = traj.samples.back();
    const auto ref = exact.at(t);
    traj.max_position_error = std::max(traj.max_position_error, std::hypot(s.x - ref.x, s.y - ref.y));
    traj.max_guiding_drift =
        std::max(traj.max_guiding_drift, std::hypot(cur.X - first.X, cur.Y - first.Y));
    traj.max_rc_drift = std::max(traj.max_rc_drift, std::abs(cur.r_c - first.r_c));
    if (e0 > 0.0) {
      const double e = s.vx * s.vx + s.vy * s.vy;
      traj.max_energy_drift = std::max(traj.max_energy_drift, std::abs(e - e0) / e0);
    }
  }
  return traj;
}

GuidingOperators::GuidingOperators(PhysicalUnits units, int stencil_order)
    : units_(units), order_(stencil_order) {
  kernels::central_stencil(stencil_order);  // validates the order
}

namespace {

// out = a(x,y) * psi + c * d
template <class Coef>
ComplexField combine(const ComplexField& psi, const ComplexField& d, cplx c, Coef a) {
  ComplexField out(psi.grid);
  const int n = psi.grid.n;
#pragma omp parallel for schedule(static)
  for (int iy = 0; iy < n; ++iy) {
    const double y = psi.grid.coord(iy);
    for (int ix = 0; ix < n; ++ix)
      out.at(ix, iy) = a(psi.grid.coord(ix), y) * psi.at(ix, iy) + c * d.at(ix, iy);
  }
  return out;
}

const cplx kI{0.0, 1.0};

}  // namespace

ComplexField GuidingOperators::X(const ComplexField& psi) const {
  const double eb = units_.eB();
  return combine(psi, kernels::derivative_y(psi, order_), kI / eb,
                 [](double x, double) { return 0.5 * x; });
}

ComplexField GuidingOperators::Y(const ComplexField& psi) const {
  const double eb = units_.eB();
  return combine(psi, kernels::derivative_x(psi, order_), -kI / eb,
                 [](double, double y) { return 0.5 * y; });
}

ComplexField GuidingOperators::Pi_x(const ComplexField& psi) const {
  const double eb = units_.eB();
  return combine(psi, kernels::derivative_x(psi, order_), -kI,
                 [eb](double, double y) { return -0.5 * eb * y; });
}

ComplexField GuidingOperators::Pi_y(const ComplexField& psi) const {
  const double eb = units_.eB();
  return combine(psi, kernels::derivative_y(psi, order_), -kI,
                 [eb](double x, double) { return 0.5 * eb * x; });
}

ComplexField GuidingOperators::L_can(const ComplexField& psi) const {
  const auto dx = kernels::derivative_x(psi, order_);
  const auto dy = kernels::derivative_y(psi, order_);
  ComplexField out(psi.grid);
  const int n = psi.grid.n;
#pragma omp parallel for schedule(static)
  for (int iy = 0; iy < n; ++iy) {
    const double y = psi.grid.coord(iy);
    for (int ix = 0; ix < n; ++ix) {
      const double x = psi.grid.coord(ix);
      out.at(ix, iy) = -kI * (x * dy.at(ix, iy) - y * dx.at(ix, iy));
    }
  }
  return out;
}

namespace {

double norm2(const ComplexField& f) { return kernels::inner_product(f, f).real(); }

double rc2_with(const ComplexField& psi, const GuidingOperators& ops, double norm) {
  const double eb = ops.units().eB();
  return (norm2(ops.Pi_x(psi)) + norm2(ops.Pi_y(psi))) / (eb * eb) / norm;
}

}  // namespace

GuidingExpectations apply_guiding_ops(const ComplexField& psi, const PhysicalUnits& units,
                                      int stencil_order, double warn_threshold) {
  const GuidingOperators ops(units, stencil_order);
  GuidingExpectations e;
  e.norm = norm2(psi);
  if (!(e.norm > 0.0)) throw std::domain_error("apply_guiding_ops: zero wavefunction");

  const auto x_psi = ops.X(psi);
  const auto y_psi = ops.Y(psi);
  e.X = kernels::inner_product(psi, x_psi).real() / e.norm;
  e.Y = kernels::inner_product(psi, y_psi).real() / e.norm;
  e.R2 = (norm2(x_psi) + norm2(y_psi)) / e.norm;
  e.rc2 = rc2_with(psi, ops, e.norm);
  e.L_can = kernels::inner_product(psi, ops.L_can(psi)).real() / e.norm;

  const auto xy = ops.X(y_psi);
  const auto yx = ops.Y(x_psi);
  e.commutator = (kernels::inner_product(psi, xy) - kernels::inner_product(psi, yx)) / e.norm;

  if (stencil_order > 2) {
    const GuidingOperators lower(units, stencil_order - 2);
    const double rc2_low = rc2_with(psi, lower, e.norm);
    e.estimated_error = std::abs(rc2_low - e.rc2) / std::max(std::abs(e.rc2), 1e-300);
  }
  if (e.estimated_error > warn_threshold) {
    e.accuracy_warning = true;
    e.warning = "grid too coarse for the requested accuracy: estimated relative error " +
                std::to_string(e.estimated_error);
  }
  return e;
}

GridSpec guiding_grid(const LandauState& state, int n, double tail) {
  // walk inwards from well outside until r^2 (1 + r^2) |R|^2 reaches tail * peak
  auto w = [&](double r) {
    const double radial = state.radial(r);
    return radial * radial * r * (1.0 + r * r);
  };
  const double hi = state.default_extent();
  const int steps = 2000;
  const double step = hi / steps;
  double peak = 0.0;
  for (int i = 1; i <= steps; ++i) peak = std::max(peak, w(i * step));
  double r = 3.0 * hi;
  while (r > step && w(r) < tail * peak) r -= step;
  return GridSpec{n, r};
}

RelationCheck l_can_relation_check(const ComplexField& psi, const PhysicalUnits& units,
                                   int stencil_order) {
  RelationCheck c;
  c.expectations = apply_guiding_ops(psi, units, stencil_order);
  const double lb2 = units.l_B() * units.l_B();
  c.residual = std::abs(c.expectations.L_can - (c.expectations.rc2 - c.expectations.R2) / (2.0 * lb2));
  return c;
}

RelationCheck l_can_relation_check(const LandauState& state, const GridSpec& grid, int stencil_order) {
  return l_can_relation_check(kernels::sample_state(state, grid), state.units(), stencil_order);
}

std::string to_string(MagnitudeClass c) {
  switch (c) {
    case MagnitudeClass::rc_gt_R: return "rc_gt_R";
    case MagnitudeClass::rc_eq_R: return "rc_eq_R";
    case MagnitudeClass::rc_lt_R: return "rc_lt_R";
  }
  return "unknown";
}

MagnitudeClass magnitude_classification(const LandauState& state) {
  const auto t = expect_closed_form(state);
  if (t.rc2 > t.gc2) return MagnitudeClass::rc_gt_R;
  if (t.rc2 < t.gc2) return MagnitudeClass::rc_lt_R;
  return MagnitudeClass::rc_eq_R;
}

}  // namespace landau
