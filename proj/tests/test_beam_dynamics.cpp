#include <cmath>

#include "doctest.h"
#include "landau/beam_dynamics.hpp"
#include "landau/observables.hpp"
#include "oracles.hpp"

using namespace landau;

namespace {

double distance(const Superposition& a, const Superposition& b) {
  double d = 0.0;
  for (int m = a.m_min(); m <= a.m_max(); ++m)
    for (int k = 0; k <= a.max_n_r(); ++k) d += std::norm(a.coefficient(k, m) - b.coefficient(k, m));
  return std::sqrt(d);
}

double l2_relative(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST_SUITE("beam_dynamics") {
  TEST_CASE("mask geometry") {
    const MaskSpec m;
    CHECK(m.apply(1.0, 0.3) == 1.0);
    CHECK(m.apply(-1.0, 0.3) == 0.0);
    const MaskSpec up{0.5 * kPi};
    CHECK(up.apply(0.1, 2.0) == 1.0);
    CHECK(up.apply(0.1, -2.0) == 0.0);
  }

  TEST_CASE("azimuthal factor matches quadrature") {
    for (double edge : {0.0, 0.4, -2.0}) {
      for (int dm = -9; dm <= 9; ++dm) {
        const double lo = edge - 0.5 * kPi, hi = edge + 0.5 * kPi;
        const double re = oracle::simpson([&](double p) { return std::cos(dm * p); }, lo, hi, 4000) / (2 * kPi);
        const double im = oracle::simpson([&](double p) { return std::sin(dm * p); }, lo, hi, 4000) / (2 * kPi);
        const cplx f = azimuthal_factor(dm, edge);
        CHECK(std::abs(f - cplx(re, im)) <= 1e-12);
      }
    }
    CHECK(azimuthal_factor(0) == cplx(0.5, 0.0));
    for (int dm : {-6, -2, 2, 4, 10}) CHECK(azimuthal_factor(dm) == cplx(0.0, 0.0));
    CHECK(azimuthal_factor(1).real() == doctest::Approx(1.0 / kPi));
  }

  TEST_CASE("projection of an eigenstate") {
    const LandauState s({0, -5});
    const auto p = project_masked(s, MaskSpec{});
    CHECK(p.captured_norm >= 0.45);
    CHECK(p.captured_norm <= 0.5 + 1e-12);
    CHECK_FALSE(p.truncation_warning);
    CHECK(std::abs(p.superposition.coefficient(0, -5) - 0.5) <= 1e-13);
    CHECK(std::abs(p.superposition.coefficient(2, -5)) <= 1e-14);  // orthogonal radial functions
    for (int dm : {-4, -2, 2, 4}) {
      for (int k = 0; k <= p.superposition.max_n_r(); ++k)
        CHECK(std::abs(p.superposition.coefficient(k, -5 + dm)) <= 1e-15);
    }
    CHECK(p.captured_norm == doctest::Approx(p.superposition.norm2()));

    Truncation narrow;
    narrow.max_dm = 0;
    narrow.max_n_r = 3;
    const auto q = project_masked(LandauState({0, 2}), MaskSpec{}, narrow);
    CHECK(q.truncation_warning);
    CHECK_FALSE(q.warning.empty());

    Truncation tiny;
    tiny.max_n_r = 1;
    CHECK_THROWS_AS(project_masked(LandauState({3, 0}), MaskSpec{}, tiny), std::invalid_argument);

    Truncation grow{5, 5, true};
    const auto a = project_masked(LandauState({0, 1}), MaskSpec{}, grow);
    CHECK(a.truncation.max_dm > 5);
    CHECK(a.captured_norm > q.captured_norm);
  }

  TEST_CASE("evolution") {
    const auto p = project_masked(LandauState({1, 0}), MaskSpec{});
    const auto& sup = p.superposition;
    CHECK(distance(sup.evolve(0.0), sup) == 0.0);
    const auto later = sup.evolve(3.7);
    CHECK(later.time() == 3.7);
    CHECK(std::abs(later.norm2() - sup.norm2()) <= 1e-14);
    CHECK(distance(later.evolve(-3.7), sup) <= 1e-13);
    CHECK(distance(evolve(sup, 1.0), sup.evolve(1.0)) == 0.0);

    // revival after one Larmor period
    const double T_L = 2.0 * kPi / sup.units().omega_L();
    const PolarGridSpec g{120, 128, 12.0};
    const auto i0 = intensity(sup, g).channel("intensity");
    const auto i1 = intensity(sup.evolve(T_L), g).channel("intensity");
    CHECK(l2_relative(i1, i0) <= 1e-6 * p.captured_norm);
    // half a cyclotron period is not a revival of the masked pattern
    const auto ih = intensity(sup.evolve(0.5 * kPi / sup.units().omega_c()), g).channel("intensity");
    CHECK(l2_relative(ih, i0) > 1e-2);
  }

  TEST_CASE("single modes are static and reproduce the density") {
    const LandauState s({2, 3});
    Superposition one(3, 3, 2);
    one.set_coefficient(2, 3, 1.0);
    const GridSpec g{101, 8.0};
    const auto a = intensity(one, g).channel("intensity");
    const auto b = intensity(one.evolve(5.3), g).channel("intensity");
    const auto f = field_grid(s, g);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i] == doctest::Approx(f.channel("rho")[i]).epsilon(1e-12).scale(1e-300));
      CHECK(b[i] == doctest::Approx(a[i]).epsilon(1e-12).scale(1e-300));
    }
    CHECK_FALSE(one.contains(3, 3));
    CHECK_THROWS(one.set_coefficient(0, 4, 1.0));
  }

  TEST_CASE("Parseval and leakage") {
    for (auto qn : {QuantumNumbers{0, -5}, QuantumNumbers{1, 0}, QuantumNumbers{0, 5}}) {
      const LandauState s(qn);
      const auto p = project_masked(s, MaskSpec{});
      const PolarGridSpec g{240, 256, 1.6 * s.default_extent()};
      const auto I = intensity(p.superposition, g);
      CHECK(I.integrate("intensity") == doctest::Approx(p.captured_norm).epsilon(1e-3));
      CHECK(leakage(I, MaskSpec{}) <= 0.02);
    }
  }

  TEST_CASE("re-masking is nearly idempotent") {
    Truncation t;
    t.max_n_r = 12;
    t.max_dm = 12;
    const auto p = project_masked(LandauState({0, 2}), MaskSpec{}, t);
    const auto twice = project_masked(p.superposition, MaskSpec{});
    const double tol = std::sqrt(0.5 - p.captured_norm);
    CHECK(distance(twice, p.superposition) <= tol);
    CHECK(twice.norm2() <= p.superposition.norm2() + 1e-12);
    // the opposite half removes almost everything
    const auto other = project_masked(p.superposition, MaskSpec{kPi});
    CHECK(other.norm2() <= tol * tol + 1e-12);
  }

  TEST_CASE("rotation rates of masked beams") {
    const PhysicalUnits u;
    const auto times = short_time_window(u);
    CHECK(times.size() == 6);
    CHECK(times.front() == 0.0);
    CHECK(times.back() == doctest::Approx(0.05 * 2 * kPi / u.omega_c()));

    const auto neg = rotation_rate(LandauState({0, -5}), MaskSpec{}, times);
    CHECK(std::abs(neg.rate) <= 0.1 * u.omega_L());
    CHECK(neg.classification == RotationClass::zero);
    CHECK(to_string(neg.classification) == "zero-rotation");

    const auto zero = rotation_rate(LandauState({1, 0}), MaskSpec{}, times);
    CHECK(std::abs(zero.rate - u.omega_L()) <= 0.1 * u.omega_c());
    CHECK(zero.classification == RotationClass::larmor);

    const auto pos = rotation_rate(LandauState({0, 5}), MaskSpec{}, times);
    CHECK(std::abs(pos.rate - u.omega_c()) <= 0.1 * u.omega_c());
    CHECK(pos.classification == RotationClass::cyclotron);

    // the half-plane Bohmian average agrees
    CHECK(std::abs(zero.bohmian_rate - zero.rate) <= 0.1 * zero.bohmian_rate);
    CHECK(std::abs(pos.bohmian_rate - pos.rate) <= 0.1 * pos.bohmian_rate);
    CHECK(std::abs(neg.bohmian_rate) <= 1e-8);

    // a rotated edge gives the same rate
    const auto tilted = rotation_rate(LandauState({0, 5}), MaskSpec{1.0}, times);
    CHECK(tilted.rate == doctest::Approx(pos.rate).epsilon(1e-6));
  }

  TEST_CASE("classification and degenerate patterns") {
    const PhysicalUnits u(2.0);
    CHECK(classify_rate(0.01, u) == RotationClass::zero);
    CHECK(classify_rate(u.omega_L() * 1.1, u) == RotationClass::larmor);
    CHECK(classify_rate(u.omega_c() * 0.95, u) == RotationClass::cyclotron);
    Superposition ring(4, 4, 0);
    ring.set_coefficient(0, 4, 1.0);
    const auto I = intensity(ring, PolarGridSpec{80, 64, 8.0});
    CHECK_THROWS_AS(circular_mean_azimuth(I), DegenerateFit);
  }
}
