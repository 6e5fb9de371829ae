#pragma once

// Test-only reference computations, independent of the library code paths.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <functional>
#include <random>

namespace oracle {

using boost::multiprecision::cpp_int;
using big_float = boost::multiprecision::cpp_bin_float_50;

inline cpp_int factorial(int n) {
  cpp_int f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

inline cpp_int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

/// L_n^a(x) = sum_k (-1)^k C(n+a, n-k) x^k / k!, in 50-digit arithmetic.
inline double laguerre_series(int n, int a, double x) {
  big_float sum = 0, xk = 1;
  for (int k = 0; k <= n; ++k) {
    big_float term = big_float(binomial(n + a, n - k)) * xk / big_float(factorial(k));
    sum += (k % 2 == 0) ? term : -term;
    xk *= x;
  }
  return static_cast<double>(sum);
}

/// log sqrt(2 n! / (n+m)!) from exact factorials.
inline double log_norm_ratio_exact(int n, int m) {
  const big_float ratio = big_float(2 * factorial(n)) / big_float(factorial(n + m));
  return static_cast<double>(0.5 * log(ratio));
}

/// argmax of f on a uniform grid of `points` samples in [a, b].
inline double grid_argmax(const std::function<double(double)>& f, double a, double b, int points) {
  double best_x = a, best = f(a);
  for (int i = 1; i < points; ++i) {
    const double x = a + (b - a) * i / (points - 1);
    const double v = f(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  return best_x;
}

/// Root of f in [a, b] by bisection; requires a sign change.
inline double bisect(const std::function<double(double)>& f, double a, double b, double tol = 1e-14) {
  double fa = f(a);
  for (int it = 0; it < 200 && b - a > tol; ++it) {
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    if ((fm < 0) == (fa < 0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

/// Composite Simpson rule with `panels` (even) subintervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

/// Central difference with Richardson extrapolation.
inline double derivative(const std::function<double(double)>& f, double x, double h = 1e-3) {
  const double d1 = (f(x + h) - f(x - h)) / (2 * h);
  const double d2 = (f(x + h / 2) - f(x - h / 2)) / h;
  return (4 * d2 - d1) / 3.0;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240917);
  return gen;
}

}  // namespace oracle
