#include "landau/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace landau::specfun {

namespace {

void check_x(double x) {
  if (!std::isfinite(x)) throw std::domain_error("laguerre: non-finite argument");
}

}  // namespace

double laguerre(int n, int alpha, double x) {
  if (n < 0 || alpha < 0)
    throw std::domain_error("laguerre: negative degree or order (n=" + std::to_string(n) +
                            ", alpha=" + std::to_string(alpha) + ")");
  check_x(x);
  if (n == 0) return 1.0;
  double prev = 1.0;
  double curr = 1.0 + alpha - x;
  for (int k = 1; k < n; ++k) {
    // (k+1) L_{k+1} = (2k+1+a-x) L_k - (k+a) L_{k-1}
    const double next = ((2.0 * k + 1.0 + alpha - x) * curr - (k + alpha) * prev) / (k + 1.0);
    prev = curr;
    curr = next;
  }
  return curr;
}

void laguerre_sweep(int alpha, double x, std::span<double> out) {
  if (alpha < 0) throw std::domain_error("laguerre_sweep: negative order");
  check_x(x);
  if (out.empty()) return;
  out[0] = 1.0;
  if (out.size() == 1) return;
  out[1] = 1.0 + alpha - x;
  for (std::size_t k = 1; k + 1 < out.size(); ++k) {
    const double kk = static_cast<double>(k);
    out[k + 1] = ((2.0 * kk + 1.0 + alpha - x) * out[k] - (kk + alpha) * out[k - 1]) / (kk + 1.0);
  }
}

double log_norm_ratio(int n_r, int abs_m) {
  if (n_r < 0 || abs_m < 0) throw std::domain_error("log_norm_ratio: negative input");
  // lgamma(k+1) = log k!
  return 0.5 * (std::log(2.0) + std::lgamma(n_r + 1.0) - std::lgamma(n_r + abs_m + 1.0));
}

}  // namespace landau::specfun
