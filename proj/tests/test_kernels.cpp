#include <cmath>
#include <vector>

#include "doctest.h"
#include "landau/kernels.hpp"
#include "landau/observables.hpp"
#include "oracles.hpp"

using namespace landau;

namespace {

std::vector<kernels::ModeBlock> random_blocks(int m_lo, int m_hi, int n_r) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<kernels::ModeBlock> out;
  for (int m = m_lo; m <= m_hi; ++m) {
    kernels::ModeBlock b{m, {}};
    for (int k = 0; k < n_r; ++k) b.coeffs.emplace_back(u(oracle::rng()), u(oracle::rng()));
    out.push_back(std::move(b));
  }
  return out;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double max_abs(const std::vector<cplx>& a) {
  double d = 0.0;
  for (auto v : a) d = std::max(d, std::abs(v));
  return d;
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("stencil weights") {
    for (int order : {2, 4, 6, 8}) {
      const auto c = kernels::central_stencil(order);
      CHECK(static_cast<int>(c.size()) == order / 2);
      // exact on x: sum 2 k c_k = 1; zero on x^3
      double s1 = 0.0, s3 = 0.0;
      for (std::size_t k = 1; k <= c.size(); ++k) {
        s1 += 2.0 * k * c[k - 1];
        s3 += 2.0 * k * k * k * c[k - 1];
      }
      CHECK(s1 == doctest::Approx(1.0).epsilon(1e-15));
      if (order > 2) CHECK(std::abs(s3) < 1e-14);
    }
    CHECK_THROWS(kernels::central_stencil(3));
    CHECK_THROWS(kernels::central_stencil(10));
  }

  TEST_CASE("stencil convergence order") {
    // d/dx of a Gaussian packet well inside the grid
    auto err = [](int n, int order) {
      const GridSpec g{n, 6.0};
      ComplexField f(g);
      for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
          const double x = g.coord(ix), y = g.coord(iy);
          f.at(ix, iy) = std::exp(-x * x - y * y) * cplx(std::cos(x), std::sin(y));
        }
      const auto d = kernels::derivative_x(f, order);
      double e = 0.0;
      for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
          const double x = g.coord(ix), y = g.coord(iy);
          const cplx exact = std::exp(-x * x - y * y) *
                             (-2.0 * x * cplx(std::cos(x), std::sin(y)) + cplx(-std::sin(x), 0.0));
          e = std::max(e, std::abs(d.at(ix, iy) - exact));
        }
      return e;
    };
    for (int order : {2, 4, 6, 8}) {
      const double e1 = err(61, order), e2 = err(121, order);
      const double p = std::log2(e1 / e2);
      CHECK(p == doctest::Approx(order).epsilon(0.1));
    }
  }

  TEST_CASE("parallel and serial sample_state agree") {
    const GridSpec g{151, 7.0};
    for (auto qn : {QuantumNumbers{0, 0}, QuantumNumbers{3, -4}, QuantumNumbers{1, 6}}) {
      const LandauState s(qn);
      const auto a = kernels::sample_state(s, g);
      const auto b = kernels::serial::sample_state(s, g);
      CHECK(a.data == b.data);
    }
  }

  TEST_CASE("parallel and serial currents agree") {
    const LandauState s({2, -3});
    auto a = FieldGrid::cartesian({121, 8.0});
    auto b = FieldGrid::cartesian({121, 8.0});
    kernels::sample_currents(s, a);
    kernels::serial::sample_currents(s, b);
    CHECK(a.channel_names() == b.channel_names());
    for (const auto& name : a.channel_names()) CHECK(a.channel(name) == b.channel(name));
  }

  TEST_CASE("parallel and serial derivatives and inner products agree") {
    const GridSpec g{97, 5.0};
    const auto f = kernels::sample_state(LandauState({1, 2}), g);
    for (int order : {2, 4, 6, 8}) {
      CHECK(kernels::derivative_x(f, order).data == kernels::serial::derivative_x(f, order).data);
      CHECK(kernels::derivative_y(f, order).data == kernels::serial::derivative_y(f, order).data);
    }
    const auto h = kernels::sample_state(LandauState({0, 2}), g);
    CHECK(kernels::inner_product(f, h) == kernels::serial::inner_product(f, h));
    const auto wide = kernels::sample_state(LandauState({1, 2}), GridSpec{161, 9.0});
    const auto n = kernels::inner_product(wide, wide);
    CHECK(n.real() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(n.imag() == 0.0);
    // real-span derivative matches the complex one
    std::vector<double> re(f.data.size());
    for (std::size_t i = 0; i < re.size(); ++i) re[i] = f.data[i].real();
    const auto dre = kernels::derivative_y(re, g, 6);
    const auto dc = kernels::derivative_y(f, 6);
    for (std::size_t i = 0; i < re.size(); ++i) CHECK(dre[i] == doctest::Approx(dc.data[i].real()).scale(1e-14));
    CHECK_THROWS(kernels::derivative_x(std::span<const double>(re.data(), 10), g, 4));
  }

  TEST_CASE("mode evaluation matches direct evaluation") {
    const PhysicalUnits u(1.3);
    const auto blocks = random_blocks(-6, 6, 5);
    const GridSpec g{81, 9.0};
    const auto a = kernels::evaluate_modes(blocks, u, g);
    const auto b = kernels::serial::evaluate_modes(blocks, u, g);
    CHECK(max_diff(a.data, b.data) <= 1e-12 * max_abs(b.data));

    const PolarGridSpec p{60, 64, 10.0};
    const auto pa = kernels::evaluate_modes(blocks, u, p);
    const auto pb = kernels::serial::evaluate_modes(blocks, u, p);
    CHECK(pa.size() == static_cast<std::size_t>(p.n_r) * p.n_phi);
    CHECK(max_diff(pa, pb) <= 1e-12 * max_abs(pb));

    // large indices where the naive normalisation would overflow
    const auto big = random_blocks(38, 40, 30);
    const auto ga = kernels::evaluate_modes(big, u, g);
    const auto gb = kernels::serial::evaluate_modes(big, u, g);
    CHECK(max_diff(ga.data, gb.data) <= 1e-10 * max_abs(gb.data));
  }

  TEST_CASE("single mode equals the state") {
    const LandauState s({2, -3});
    const std::vector<kernels::ModeBlock> blk{{-3, {0.0, 0.0, 1.0}}};
    const GridSpec g{41, 6.0};
    const auto a = kernels::evaluate_modes(blk, s.units(), g);
    const auto b = kernels::sample_state(s, g);
    CHECK(max_diff(a.data, b.data) <= 1e-13);
  }
}
