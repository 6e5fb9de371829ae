#pragma once

#include <span>

namespace landau::specfun {

/// Associated Laguerre polynomial L_n^alpha(x) by upward three-term recurrence.
/// Throws std::domain_error for negative n or alpha, or non-finite x.
double laguerre(int n, int alpha, double x);

/// Fills out[k] = L_k^alpha(x) for k = 0..out.size()-1 in a single recurrence sweep.
void laguerre_sweep(int alpha, double x, std::span<double> out);

/// log sqrt(2 n_r! / (n_r + |m|)!), assembled from lgamma.
double log_norm_ratio(int n_r, int abs_m);

}  // namespace landau::specfun
