#include "landau/landau_core.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "landau/specfun.hpp"

namespace landau {

LandauIndex to_landau_index(QuantumNumbers qn) {
  const int abs_m = qn.m < 0 ? -qn.m : qn.m;
  return {qn.n_r + (abs_m + qn.m) / 2, qn.m};
}

QuantumNumbers from_landau_index(LandauIndex idx) {
  const int abs_m = idx.m < 0 ? -idx.m : idx.m;
  const int n_r = idx.n - (abs_m + idx.m) / 2;
  if (n_r < 0)
    throw InvalidQuantumNumbers("no state with n=" + std::to_string(idx.n) + ", m=" +
                                std::to_string(idx.m) + ": need n >= (|m|+m)/2");
  return {n_r, idx.m};
}

PhysicalUnits::PhysicalUnits(double magnetic_length) : l_B_(magnetic_length) {
  if (!(magnetic_length > 0.0) || !std::isfinite(magnetic_length))
    throw std::domain_error("magnetic length must be positive and finite");
}

LandauState::LandauState(QuantumNumbers qn, PhysicalUnits units) : qn_(qn), units_(units) {
  if (qn.n_r < 0) throw InvalidQuantumNumbers("n_r must be non-negative");
  log_norm_ = specfun::log_norm_ratio(qn.n_r, abs_m()) - std::log(units_.b());
}

LandauState LandauState::from_landau(LandauIndex idx, PhysicalUnits units) {
  return LandauState(from_landau_index(idx), units);
}

double LandauState::radial(double r) const {
  const double b = units_.b();
  const double x = (r * r) / (b * b);
  const int am = abs_m();
  // Power, Gaussian and normalization combined in log space; x = 0 only needs care for am = 0.
  double log_mag = log_norm_ - 0.5 * x;
  if (am > 0) {
    if (x == 0.0) return 0.0;
    log_mag += 0.5 * am * std::log(x);
  }
  return std::exp(log_mag) * specfun::laguerre(qn_.n_r, am, x);
}

double LandauState::radial_derivative(double r) const {
  const double b = units_.b();
  const double x = (r * r) / (b * b);
  const int am = abs_m();
  if (r == 0.0) {
    // R ~ r^{|m|}: slope only survives for |m| = 1.
    if (am != 1) return 0.0;
    return std::exp(log_norm_) / b * specfun::laguerre(qn_.n_r, 1, 0.0);
  }
  double log_mag = log_norm_ - 0.5 * x;
  if (am > 0) log_mag += 0.5 * am * std::log(x);
  const double envelope = std::exp(log_mag);
  const double lag = specfun::laguerre(qn_.n_r, am, x);
  // d/dx L_n^a = -L_{n-1}^{a+1}
  const double dlag = qn_.n_r > 0 ? -specfun::laguerre(qn_.n_r - 1, am + 1, x) : 0.0;
  return envelope * ((am / r - r / (b * b)) * lag + dlag * 2.0 * r / (b * b));
}

cplx LandauState::value(double r, double phi) const {
  const double phase = qn_.m * phi;
  return (radial(r) / std::sqrt(2.0 * kPi)) * cplx(std::cos(phase), std::sin(phase));
}

cplx LandauState::value_xy(double x, double y) const {
  return value(std::hypot(x, y), std::atan2(y, x));
}

double LandauState::energy() const { return (2.0 * n() + 1.0) * units_.omega_L(); }

double LandauState::default_extent() const {
  return 3.0 * std::sqrt(2.0 * (2.0 * n() + abs_m() + 1.0)) * units_.l_B();
}

double radial_wavefunction(const LandauState& state, double r) { return state.radial(r); }
cplx wavefunction(const LandauState& state, double r, double phi) { return state.value(r, phi); }
double energy(const LandauState& state) { return state.energy(); }

double LGBeamParams::width(double z) const { return w0 * std::sqrt(1.0 + (z * z) / (zR * zR)); }

double LGBeamParams::curvature_radius(double z) const {
  if (z == 0.0) return std::numeric_limits<double>::infinity();
  return z * (1.0 + (zR * zR) / (z * z));
}

double LGBeamParams::gouy_phase(double z) const {
  const int am = m < 0 ? -m : m;
  return -(2.0 * n_r + am + 1.0) * std::atan(z / zR);
}

cplx lg_beam(const LGBeamParams& p, double r, double phi, double z) {
  if (p.n_r < 0) throw InvalidQuantumNumbers("LG beam: n_r must be non-negative");
  const int am = p.m < 0 ? -p.m : p.m;
  const double w = p.width(z);
  const double s = (r * r) / (w * w);
  const double amplitude =
      (am == 0 ? 1.0 : std::pow(s, 0.5 * am)) * specfun::laguerre(p.n_r, am, 2.0 * s) * std::exp(-s);
  const double rc = p.curvature_radius(z);
  const double curvature = std::isinf(rc) ? 0.0 : p.k * r * r / (2.0 * rc);
  const double phase = curvature + p.m * phi + p.k * z + p.gouy_phase(z);
  return amplitude * cplx(std::cos(phase), std::sin(phase));
}

}  // namespace landau
