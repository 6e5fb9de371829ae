#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "landau/specfun.hpp"
#include "oracles.hpp"

using landau::specfun::laguerre;
using landau::specfun::laguerre_sweep;
using landau::specfun::log_norm_ratio;

TEST_SUITE("specfun") {
  TEST_CASE("laguerre low-order values") {
    CHECK(laguerre(0, 3, 7.5) == 1.0);
    CHECK(laguerre(1, 2, 1.0) == 2.0);
    // frozen from the finite-series oracle
    REQUIRE(oracle::laguerre_series(2, 1, 2.0) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(laguerre(2, 1, 2.0) == doctest::Approx(-1.0).epsilon(1e-14));
  }

  TEST_CASE("laguerre matches the series oracle") {
    for (int n : {3, 7, 12, 20})
      for (int a : {0, 1, 5, 10})
        for (double x : {0.0, 0.3, 2.0, 9.5, 25.0}) {
          const double ref = oracle::laguerre_series(n, a, x);
          CHECK(laguerre(n, a, x) == doctest::Approx(ref).epsilon(1e-10).scale(1.0));
        }
  }

  TEST_CASE("domain errors") {
    CHECK_THROWS_AS(laguerre(-1, 0, 1.0), std::domain_error);
    CHECK_THROWS_AS(laguerre(2, -1, 1.0), std::domain_error);
    CHECK_THROWS_AS(laguerre(2, 1, std::nan("")), std::domain_error);
    CHECK_THROWS_AS(laguerre(2, 1, INFINITY), std::domain_error);
    CHECK_THROWS_AS(log_norm_ratio(-1, 0), std::domain_error);
    CHECK_THROWS_AS(log_norm_ratio(0, -2), std::domain_error);
  }

  TEST_CASE("recurrence residual over random arguments") {
    std::uniform_int_distribution<int> deg(1, 63), ord(0, 64);
    std::uniform_real_distribution<double> arg(0.0, 400.0);
    for (int trial = 0; trial < 2000; ++trial) {
      const int n = deg(oracle::rng()), a = ord(oracle::rng());
      const double x = arg(oracle::rng());
      const double lp = laguerre(n + 1, a, x), l0 = laguerre(n, a, x), lm = laguerre(n - 1, a, x);
      REQUIRE(std::isfinite(lp));
      const double residual = std::abs((n + 1) * lp - (2.0 * n + 1 + a - x) * l0 + (n + a) * lm);
      CHECK(residual <= 1e-10 * std::max(1.0, std::abs(lp)));
    }
  }

  TEST_CASE("value at zero is a binomial coefficient") {
    for (int n = 0; n <= 30; ++n)
      for (int a = 0; a <= 30; ++a) {
        const double exact = static_cast<double>(oracle::binomial(n + a, n));
        CHECK(std::abs(laguerre(n, a, 0.0) - exact) <= 1e-12 * exact);
      }
  }

  TEST_CASE("sweep agrees with single evaluation") {
    std::vector<double> out(26);
    laguerre_sweep(7, 3.25, out);
    for (int k = 0; k < 26; ++k) CHECK(out[k] == laguerre(k, 7, 3.25));
  }

  TEST_CASE("orthogonality by Gauss-Legendre on a truncated interval") {
    // x^a e^-x L_n L_n' integrated on [0, 300] with 64 panels x 20 points
    std::vector<double> nodes, weights;
    const int panels = 64, order = 20;
    const double hi = 300.0, h = hi / panels;
    // Golub-Welsch-free: nodes from the library would not be independent, so use
    // Legendre roots by bisection on P_order.
    auto legendre = [&](double x) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      return std::pair{p1, order * (p0 - x * p1) / (1 - x * x)};
    };
    std::vector<double> roots;
    for (int i = 0; i < 4000; ++i) {
      const double a = -1 + 2.0 * i / 4000, b = -1 + 2.0 * (i + 1) / 4000;
      if (legendre(a).first * legendre(b).first < 0)
        roots.push_back(oracle::bisect([&](double x) { return legendre(x).first; }, a, b, 1e-16));
    }
    REQUIRE(roots.size() == static_cast<std::size_t>(order));
    for (int p = 0; p < panels; ++p)
      for (double t : roots) {
        const double dp = legendre(t).second;
        nodes.push_back(p * h + 0.5 * h * (t + 1));
        weights.push_back(0.5 * h * 2.0 / ((1 - t * t) * dp * dp));
      }
    for (int a = 0; a <= 10; a += 2)
      for (int n = 0; n <= 12; ++n)
        for (int np = n; np <= 12; np += 3) {
          double sum = 0;
          for (std::size_t i = 0; i < nodes.size(); ++i) {
            const double x = nodes[i];
            sum += weights[i] * std::exp(a * std::log(x) - x) * laguerre(n, a, x) * laguerre(np, a, x);
          }
          const double norm_n = static_cast<double>(oracle::factorial(n + a) / oracle::factorial(n));
          const double norm_np = static_cast<double>(oracle::factorial(np + a) / oracle::factorial(np));
          const double expected = n == np ? norm_n : 0.0;
          CHECK(std::abs(sum - expected) <= 1e-8 * std::sqrt(norm_n * norm_np));
        }
  }

  TEST_CASE("log_norm_ratio against exact factorials") {
    CHECK(log_norm_ratio(0, 0) == doctest::Approx(std::log(std::sqrt(2.0))).epsilon(1e-15));
    CHECK(log_norm_ratio(0, 10) == doctest::Approx(oracle::log_norm_ratio_exact(0, 10)).epsilon(1e-13));
    CHECK(log_norm_ratio(3, 4) == doctest::Approx(oracle::log_norm_ratio_exact(3, 4)).epsilon(1e-13));
    for (int n : {0, 5, 30, 64})
      for (int m : {0, 7, 40, 64})
        CHECK(log_norm_ratio(n, m) == doctest::Approx(oracle::log_norm_ratio_exact(n, m)).epsilon(1e-12));
    CHECK(std::isfinite(log_norm_ratio(64, 64)));
  }
}
