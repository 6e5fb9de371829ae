#pragma once

#include <functional>
#include <string>
#include <vector>

namespace landau {

enum class QuadratureScheme { adaptive_simpson, gauss_legendre_mapped };

std::string to_string(QuadratureScheme s);
QuadratureScheme quadrature_scheme_from_string(const std::string& s);

/// Radial integration settings. r_max <= 0 selects the state-dependent default.
struct QuadratureSpec {
  double r_max = 0.0;
  int n_points = 64;  // panel count for the Gauss-Legendre scheme
  QuadratureScheme scheme = QuadratureScheme::adaptive_simpson;
  double tolerance = 1e-14;  // absolute, adaptive scheme only
};

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  double apply(const std::function<double(double)>& f) const;
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on the Legendre recurrence).
QuadratureRule gauss_legendre(int n);

/// Composite Gauss-Legendre rule: `panels` equal panels on [a, b], `order` points each.
QuadratureRule composite_gauss_legendre(double a, double b, int panels, int order = 16);

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tolerance, int max_depth = 48);

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec);

}  // namespace landau
