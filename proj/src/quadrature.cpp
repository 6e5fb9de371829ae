#include "landau/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace landau {

std::string to_string(QuadratureScheme s) {
  switch (s) {
    case QuadratureScheme::adaptive_simpson: return "adaptive-simpson";
    case QuadratureScheme::gauss_legendre_mapped: return "gauss-legendre-mapped";
  }
  return "unknown";
}

QuadratureScheme quadrature_scheme_from_string(const std::string& s) {
  if (s == "adaptive-simpson") return QuadratureScheme::adaptive_simpson;
  if (s == "gauss-legendre-mapped") return QuadratureScheme::gauss_legendre_mapped;
  throw std::invalid_argument("unknown quadrature scheme '" + s + "'");
}

double QuadratureRule::apply(const std::function<double(double)>& f) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
  return sum;
}

namespace {

// P_n(x) and P_n'(x)
std::pair<double, double> legendre_with_derivative(int n, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  if (n == 1) return {{0.0}, {2.0}};
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double pi = std::acos(-1.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre_with_derivative(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre_with_derivative(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

QuadratureRule composite_gauss_legendre(double a, double b, int panels, int order) {
  if (panels < 1) throw std::invalid_argument("composite_gauss_legendre: panels < 1");
  const QuadratureRule base = gauss_legendre(order);
  QuadratureRule rule;
  rule.nodes.reserve(static_cast<std::size_t>(panels) * order);
  rule.weights.reserve(rule.nodes.capacity());
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    for (int i = 0; i < order; ++i) {
      rule.nodes.push_back(lo + 0.5 * h * (base.nodes[i] + 1.0));
      rule.weights.push_back(0.5 * h * base.weights[i]);
    }
  }
  return rule;
}

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double fa, double m,
                    double fm, double b, double fb, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tolerance, int max_depth) {
  // Start from a fixed subdivision so narrow peaks are not missed by the first estimate.
  constexpr int kSeedPanels = 16;
  const double h = (b - a) / kSeedPanels;
  double total = 0.0;
  for (int i = 0; i < kSeedPanels; ++i) {
    const double lo = a + i * h, hi = lo + h, mid = 0.5 * (lo + hi);
    const double flo = f(lo), fmid = f(mid), fhi = f(hi);
    const double whole = h / 6.0 * (flo + 4.0 * fmid + fhi);
    total += simpson_step(f, lo, flo, mid, fmid, hi, fhi, whole, tolerance / kSeedPanels, max_depth);
  }
  return total;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec) {
  switch (spec.scheme) {
    case QuadratureScheme::adaptive_simpson: return adaptive_simpson(f, a, b, spec.tolerance);
    case QuadratureScheme::gauss_legendre_mapped:
      return composite_gauss_legendre(a, b, spec.n_points).apply(f);
  }
  throw std::logic_error("integrate: unhandled scheme");
}

}  // namespace landau
