#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "landau/field_grid.hpp"
#include "landau/kernels.hpp"
#include "landau/landau_core.hpp"
#include "landau/quadrature.hpp"

namespace landau {

/// Ideal half-plane stop. The visible half is |phi - edge_angle| < pi/2, so
/// edge_angle = 0 keeps x > 0.
struct MaskSpec {
  double edge_angle = 0.0;

  bool visible(double phi) const;
  double apply(double x, double y) const { return visible(std::atan2(y, x)) ? 1.0 : 0.0; }
};

/// (1/2pi) * integral over the visible half of exp(i dm phi), dm = m - m'.
cplx azimuthal_factor(int dm, double edge_angle = 0.0);

/// Basis window: 0 <= n_r' <= max_n_r and |m' - m_source| <= max_dm. With `adaptive`,
/// both limits grow in steps of 5 until the captured norm changes by less than
/// adaptive_tol (or `cap` is reached).
struct Truncation {
  int max_n_r = 25;
  int max_dm = 25;
  bool adaptive = false;
  double adaptive_tol = 1e-3;
  int cap = 60;
};

/// Coefficients over psi_{n_r, m} for m in [m_min, m_max], n_r in [0, max_n_r].
class Superposition {
 public:
  Superposition(int m_min, int m_max, int max_n_r, PhysicalUnits units = {});

  int m_min() const { return m_min_; }
  int m_max() const { return m_max_; }
  int max_n_r() const { return max_n_r_; }
  const PhysicalUnits& units() const { return units_; }
  double time() const { return time_; }

  cplx coefficient(int n_r, int m) const;
  void set_coefficient(int n_r, int m, cplx value);
  bool contains(int n_r, int m) const;

  double norm2() const;
  std::span<const kernels::ModeBlock> blocks() const { return blocks_; }

  /// Every component picks up exp(-i E t), E = (2n+1) omega_L.
  Superposition evolve(double t) const;

 private:
  int m_min_, m_max_, max_n_r_;
  PhysicalUnits units_;
  double time_ = 0.0;
  std::vector<kernels::ModeBlock> blocks_;
};

struct ProjectionResult {
  Superposition superposition;
  double captured_norm = 0.0;
  Truncation truncation;  // the limits actually used
  bool truncation_warning = false;
  std::string warning;
};

/// Projects M psi onto the truncated Landau basis: radial overlaps by Gauss-Legendre
/// quadrature, azimuthal factors in closed form. Warns when the captured norm falls
/// below `warn_below` (the exact value is 1/2).
ProjectionResult project_masked(const LandauState& source, const MaskSpec& mask,
                                const Truncation& truncation = {}, double warn_below = 0.45);

/// Projects M applied to an arbitrary superposition back onto the same basis.
Superposition project_masked(const Superposition& in, const MaskSpec& mask);

Superposition evolve(const Superposition& sup, double t);

/// |sum c psi|^2 as channel "intensity".
FieldGrid intensity(const Superposition& sup, const GridSpec& grid);
FieldGrid intensity(const Superposition& sup, const PolarGridSpec& grid);

/// Fraction of the intensity on the obstructed half plane.
double leakage(const FieldGrid& polar_intensity, const MaskSpec& mask);

enum class RotationClass { zero, larmor, cyclotron };

std::string to_string(RotationClass c);  // "zero-rotation", "larmor", "cyclotron"
RotationClass classify_rate(double rate, const PhysicalUnits& units);

class DegenerateFit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RotationOptions {
  Truncation truncation{};
  PolarGridSpec grid{200, 256, 0.0};  // r_max <= 0: 1.25 * source default extent
};

struct RotationReport {
  QuantumNumbers source;
  double captured_norm = 0.0;
  std::vector<double> times;
  std::vector<double> angles;  // unwrapped intensity-weighted circular mean azimuth
  double rate = 0.0;           // fitted d(angle)/dt
  double intercept = 0.0;
  double residual = 0.0;       // rms of the linear fit
  double bohmian_rate = 0.0;   // half-plane density-weighted <omega>
  RotationClass classification = RotationClass::zero;
  double z_per_t = 0.0;        // paraxial t -> z factor k_z/m_e; 0 when unspecified
};

/// Times spanning `fraction` of a cyclotron period, `frames` samples starting at 0.
std::vector<double> short_time_window(const PhysicalUnits& units, int frames = 6,
                                      double fraction = 0.05);

/// Intensity-weighted circular mean azimuth: arg of the integral of I e^{i phi}.
/// Throws DegenerateFit when the pattern has no preferred direction.
double circular_mean_azimuth(const FieldGrid& polar_intensity);

RotationReport rotation_rate(const LandauState& source, const MaskSpec& mask,
                             std::span<const double> times, const RotationOptions& options = {});

}  // namespace landau
