#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace landau {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Radial node count and canonical OAM eigenvalue of a symmetric-gauge eigenstate.
struct QuantumNumbers {
  int n_r = 0;
  int m = 0;

  friend bool operator==(const QuantumNumbers&, const QuantumNumbers&) = default;
};

/// Landau-level labelling (n, m) with n = n_r + (|m| + m)/2.
struct LandauIndex {
  int n = 0;
  int m = 0;

  friend bool operator==(const LandauIndex&, const LandauIndex&) = default;
};

/// Thrown for quantum numbers that do not label a state (n_r < 0 after conversion).
class InvalidQuantumNumbers : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

LandauIndex to_landau_index(QuantumNumbers qn);
QuantumNumbers from_landau_index(LandauIndex idx);

/// Unit system with hbar = m_e = 1. Everything follows from the magnetic length:
/// omega_c = 1/l_B^2, omega_L = omega_c/2, oscillator length b = sqrt(2) l_B.
class PhysicalUnits {
 public:
  PhysicalUnits() = default;
  explicit PhysicalUnits(double magnetic_length);

  static PhysicalUnits natural() { return PhysicalUnits{}; }

  double l_B() const { return l_B_; }
  double m_e() const { return 1.0; }
  double eB() const { return 1.0 / (l_B_ * l_B_); }
  double omega_c() const { return 1.0 / (l_B_ * l_B_); }
  double omega_L() const { return 0.5 * omega_c(); }
  double b() const { return std::sqrt(2.0) * l_B_; }

 private:
  double l_B_ = 1.0;
};

/// Normalized Landau eigenstate psi = e^{i m phi}/sqrt(2 pi) R(r) in the symmetric gauge.
class LandauState {
 public:
  explicit LandauState(QuantumNumbers qn, PhysicalUnits units = PhysicalUnits::natural());
  static LandauState from_landau(LandauIndex idx, PhysicalUnits units = PhysicalUnits::natural());

  const QuantumNumbers& qn() const { return qn_; }
  const PhysicalUnits& units() const { return units_; }
  int n_r() const { return qn_.n_r; }
  int m() const { return qn_.m; }
  int abs_m() const { return qn_.m < 0 ? -qn_.m : qn_.m; }
  int n() const { return to_landau_index(qn_).n; }

  double radial(double r) const;
  double radial_derivative(double r) const;
  cplx value(double r, double phi) const;
  cplx value_xy(double x, double y) const;
  double energy() const;

  /// Outer radius beyond which the state is negligible: 3 sqrt(2(2n+|m|+1)) l_B.
  double default_extent() const;

 private:
  QuantumNumbers qn_;
  PhysicalUnits units_;
  double log_norm_;  // log of sqrt(2 n_r!/(n_r+|m|)!) / b
};

double radial_wavefunction(const LandauState& state, double r);
cplx wavefunction(const LandauState& state, double r, double phi);
double energy(const LandauState& state);

/// Paraxial Laguerre-Gauss mode, unnormalized.
struct LGBeamParams {
  int n_r = 0;
  int m = 0;
  double w0 = 2.0;
  double zR = 1.0;
  double k = 1.0;

  double width(double z) const;
  double curvature_radius(double z) const;  // +inf at z = 0
  double gouy_phase(double z) const;        // -(2 n_r + |m| + 1) atan(z/zR)
};

cplx lg_beam(const LGBeamParams& params, double r, double phi, double z);

}  // namespace landau
