#include "landau/kernels.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "landau/observables.hpp"
#include "landau/specfun.hpp"

namespace landau::kernels {

namespace {

constexpr std::array<double, 1> kStencil2{0.5};
constexpr std::array<double, 2> kStencil4{2.0 / 3.0, -1.0 / 12.0};
constexpr std::array<double, 3> kStencil6{3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0};
constexpr std::array<double, 4> kStencil8{4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};

// Stencil along one axis of an n x n row-major array; samples outside the grid are zero.
template <class T>
void apply_stencil(const T* in, T* out, int n, double h, std::span<const double> c, bool along_x,
                   bool parallel) {
  const int half = static_cast<int>(c.size());
  auto row = [&](int iy) {
    for (int ix = 0; ix < n; ++ix) {
      T acc{};
      for (int k = 1; k <= half; ++k) {
        T plus{}, minus{};
        if (along_x) {
          if (ix + k < n) plus = in[static_cast<std::size_t>(iy) * n + ix + k];
          if (ix - k >= 0) minus = in[static_cast<std::size_t>(iy) * n + ix - k];
        } else {
          if (iy + k < n) plus = in[static_cast<std::size_t>(iy + k) * n + ix];
          if (iy - k >= 0) minus = in[static_cast<std::size_t>(iy - k) * n + ix];
        }
        acc += c[k - 1] * (plus - minus);
      }
      out[static_cast<std::size_t>(iy) * n + ix] = acc / h;
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (int iy = 0; iy < n; ++iy) row(iy);
  } else {
    for (int iy = 0; iy < n; ++iy) row(iy);
  }
}

ComplexField derivative(const ComplexField& in, int order, bool along_x, bool parallel) {
  ComplexField out(in.grid);
  apply_stencil(in.data.data(), out.data.data(), in.grid.n, in.grid.spacing(),
                central_stencil(order), along_x, parallel);
  return out;
}

std::vector<double> derivative(std::span<const double> in, const GridSpec& grid, int order,
                               bool along_x) {
  if (in.size() != static_cast<std::size_t>(grid.n) * grid.n)
    throw std::invalid_argument("derivative: field size does not match grid");
  std::vector<double> out(in.size());
  apply_stencil(in.data(), out.data(), grid.n, grid.spacing(), central_stencil(order), along_x, true);
  return out;
}

void fill_currents_row(const LandauState& state, FieldGrid& grid, int iy) {
  const int n0 = grid.n0();
  auto& rho = grid.channel("rho");
  auto& jxc = grid.channel("jx_can");
  auto& jyc = grid.channel("jy_can");
  auto& jxg = grid.channel("jx_gauge");
  auto& jyg = grid.channel("jy_gauge");
  auto& jxt = grid.channel("jx_tot");
  auto& jyt = grid.channel("jy_tot");
  const double y = grid.axis1()[iy];
  for (int ix = 0; ix < n0; ++ix) {
    const double x = grid.axis0()[ix];
    const double r = std::hypot(x, y);
    const std::size_t idx = static_cast<std::size_t>(iy) * n0 + ix;
    const CurrentDecomposition j = current_decomposition(state, r);
    // e_phi = (-y, x)/r
    const double ex = r == 0.0 ? 0.0 : -y / r;
    const double ey = r == 0.0 ? 0.0 : x / r;
    rho[idx] = density(state, r);
    jxc[idx] = j.j_can_phi * ex;
    jyc[idx] = j.j_can_phi * ey;
    jxg[idx] = j.j_gauge_phi * ex;
    jyg[idx] = j.j_gauge_phi * ey;
    jxt[idx] = j.j_total_phi * ex;
    jyt[idx] = j.j_total_phi * ey;
  }
}

void add_current_channels(FieldGrid& grid) {
  if (grid.layout() != GridLayout::cartesian)
    throw std::invalid_argument("sample_currents: Cartesian grid required");
  for (const char* name : {"rho", "jx_can", "jy_can", "jx_gauge", "jy_gauge", "jx_tot", "jy_tot"})
    grid.add_channel(name);
}

// Radial factor sum_k c_k R_{k,|m|}(r) of one block via a single Laguerre sweep.
// `scaled` holds c_k * sqrt(k! |m|! / (k+|m|)!), i.e. normalization relative to k = 0.
struct PreparedBlock {
  int m = 0;
  int abs_m = 0;
  double log_norm0 = 0.0;  // log(sqrt(2/|m|!)/b)
  std::vector<cplx> scaled;
};

std::vector<PreparedBlock> prepare(std::span<const ModeBlock> blocks, const PhysicalUnits& units) {
  std::vector<PreparedBlock> out;
  out.reserve(blocks.size());
  for (const auto& blk : blocks) {
    PreparedBlock p;
    p.m = blk.m;
    p.abs_m = blk.m < 0 ? -blk.m : blk.m;
    p.log_norm0 = specfun::log_norm_ratio(0, p.abs_m) - std::log(units.b());
    p.scaled.resize(blk.coeffs.size());
    for (std::size_t k = 0; k < blk.coeffs.size(); ++k) {
      const double rel = specfun::log_norm_ratio(static_cast<int>(k), p.abs_m) -
                         specfun::log_norm_ratio(0, p.abs_m);
      p.scaled[k] = blk.coeffs[k] * std::exp(rel);
    }
    out.push_back(std::move(p));
  }
  return out;
}

cplx radial_sum(const PreparedBlock& blk, double r, double b, std::vector<double>& lag) {
  if (blk.scaled.empty()) return {};
  const double x = r * r / (b * b);
  if (blk.abs_m > 0 && x == 0.0) return {};
  lag.resize(blk.scaled.size());
  specfun::laguerre_sweep(blk.abs_m, x, lag);
  cplx acc{};
  for (std::size_t k = 0; k < lag.size(); ++k) acc += blk.scaled[k] * lag[k];
  double log_env = blk.log_norm0 - 0.5 * x;
  if (blk.abs_m > 0) log_env += 0.5 * blk.abs_m * std::log(x);
  return acc * std::exp(log_env);
}

}  // namespace

std::span<const double> central_stencil(int order) {
  switch (order) {
    case 2: return kStencil2;
    case 4: return kStencil4;
    case 6: return kStencil6;
    case 8: return kStencil8;
    default: throw std::invalid_argument("central_stencil: order must be 2, 4, 6 or 8");
  }
}

ComplexField sample_state(const LandauState& state, const GridSpec& grid) {
  grid.validate();
  ComplexField out(grid);
  const int n = grid.n;
#pragma omp parallel for schedule(static)
  for (int iy = 0; iy < n; ++iy) {
    const double y = grid.coord(iy);
    for (int ix = 0; ix < n; ++ix) out.at(ix, iy) = state.value_xy(grid.coord(ix), y);
  }
  return out;
}

void sample_currents(const LandauState& state, FieldGrid& grid) {
  add_current_channels(grid);
#pragma omp parallel for schedule(static)
  for (int iy = 0; iy < grid.n1(); ++iy) fill_currents_row(state, grid, iy);
}

ComplexField derivative_x(const ComplexField& in, int order) {
  return derivative(in, order, true, true);
}
ComplexField derivative_y(const ComplexField& in, int order) {
  return derivative(in, order, false, true);
}
std::vector<double> derivative_x(std::span<const double> in, const GridSpec& grid, int order) {
  return derivative(in, grid, order, true);
}
std::vector<double> derivative_y(std::span<const double> in, const GridSpec& grid, int order) {
  return derivative(in, grid, order, false);
}

cplx inner_product(const ComplexField& a, const ComplexField& b) {
  if (a.data.size() != b.data.size()) throw std::invalid_argument("inner_product: size mismatch");
  const int n = a.grid.n;
  std::vector<cplx> rows(n);
#pragma omp parallel for schedule(static)
  for (int iy = 0; iy < n; ++iy) {
    cplx acc{};
    for (int ix = 0; ix < n; ++ix) acc += std::conj(a.at(ix, iy)) * b.at(ix, iy);
    rows[iy] = acc;
  }
  cplx total{};
  for (const cplx& v : rows) total += v;
  const double h = a.grid.spacing();
  return total * h * h;
}

ComplexField evaluate_modes(std::span<const ModeBlock> blocks, const PhysicalUnits& units,
                            const GridSpec& grid) {
  grid.validate();
  const auto prepared = prepare(blocks, units);
  ComplexField out(grid);
  const double b = units.b();
  const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * kPi);
  const int n = grid.n;
#pragma omp parallel
  {
    std::vector<double> lag;
#pragma omp for schedule(static)
    for (int iy = 0; iy < n; ++iy) {
      const double y = grid.coord(iy);
      for (int ix = 0; ix < n; ++ix) {
        const double x = grid.coord(ix);
        const double r = std::hypot(x, y);
        const double phi = std::atan2(y, x);
        cplx acc{};
        for (const auto& blk : prepared) {
          const cplx radial = radial_sum(blk, r, b, lag);
          acc += radial * cplx(std::cos(blk.m * phi), std::sin(blk.m * phi));
        }
        out.at(ix, iy) = acc * inv_sqrt_2pi;
      }
    }
  }
  return out;
}

std::vector<cplx> evaluate_modes(std::span<const ModeBlock> blocks, const PhysicalUnits& units,
                                 const PolarGridSpec& grid) {
  grid.validate();
  const auto prepared = prepare(blocks, units);
  const double b = units.b();
  const int nr = grid.n_r, nphi = grid.n_phi;
  const std::size_t nb = prepared.size();
  // radial[k * nb + j]: radial factor of block j at radius k
  std::vector<cplx> radial(static_cast<std::size_t>(nr) * nb);
#pragma omp parallel
  {
    std::vector<double> lag;
#pragma omp for schedule(static)
    for (int k = 0; k < nr; ++k)
      for (std::size_t j = 0; j < nb; ++j)
        radial[k * nb + j] = radial_sum(prepared[j], grid.radius(k), b, lag);
  }
  const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * kPi);
  std::vector<cplx> out(static_cast<std::size_t>(nr) * nphi);
#pragma omp parallel for schedule(static)
  for (int l = 0; l < nphi; ++l) {
    const double phi = grid.angle(l);
    std::vector<cplx> phase(nb);
    for (std::size_t j = 0; j < nb; ++j)
      phase[j] = cplx(std::cos(prepared[j].m * phi), std::sin(prepared[j].m * phi));
    for (int k = 0; k < nr; ++k) {
      cplx acc{};
      for (std::size_t j = 0; j < nb; ++j) acc += radial[k * nb + j] * phase[j];
      out[static_cast<std::size_t>(l) * nr + k] = acc * inv_sqrt_2pi;
    }
  }
  return out;
}

namespace serial {

ComplexField sample_state(const LandauState& state, const GridSpec& grid) {
  grid.validate();
  ComplexField out(grid);
  for (int iy = 0; iy < grid.n; ++iy)
    for (int ix = 0; ix < grid.n; ++ix) out.at(ix, iy) = state.value_xy(grid.coord(ix), grid.coord(iy));
  return out;
}

void sample_currents(const LandauState& state, FieldGrid& grid) {
  add_current_channels(grid);
  for (int iy = 0; iy < grid.n1(); ++iy) fill_currents_row(state, grid, iy);
}

ComplexField derivative_x(const ComplexField& in, int order) {
  return derivative(in, order, true, false);
}
ComplexField derivative_y(const ComplexField& in, int order) {
  return derivative(in, order, false, false);
}

cplx inner_product(const ComplexField& a, const ComplexField& b) {
  if (a.data.size() != b.data.size()) throw std::invalid_argument("inner_product: size mismatch");
  const int n = a.grid.n;
  cplx total{};
  for (int iy = 0; iy < n; ++iy) {
    cplx acc{};
    for (int ix = 0; ix < n; ++ix) acc += std::conj(a.at(ix, iy)) * b.at(ix, iy);
    total += acc;
  }
  const double h = a.grid.spacing();
  return total * h * h;
}

ComplexField evaluate_modes(std::span<const ModeBlock> blocks, const PhysicalUnits& units,
                            const GridSpec& grid) {
  grid.validate();
  ComplexField out(grid);
  for (const auto& blk : blocks) {
    for (std::size_t k = 0; k < blk.coeffs.size(); ++k) {
      if (blk.coeffs[k] == cplx{}) continue;
      const LandauState basis({static_cast<int>(k), blk.m}, units);
      for (int iy = 0; iy < grid.n; ++iy)
        for (int ix = 0; ix < grid.n; ++ix)
          out.at(ix, iy) += blk.coeffs[k] * basis.value_xy(grid.coord(ix), grid.coord(iy));
    }
  }
  return out;
}

std::vector<cplx> evaluate_modes(std::span<const ModeBlock> blocks, const PhysicalUnits& units,
                                 const PolarGridSpec& grid) {
  grid.validate();
  std::vector<cplx> out(static_cast<std::size_t>(grid.n_r) * grid.n_phi);
  for (const auto& blk : blocks) {
    for (std::size_t k = 0; k < blk.coeffs.size(); ++k) {
      if (blk.coeffs[k] == cplx{}) continue;
      const LandauState basis({static_cast<int>(k), blk.m}, units);
      for (int l = 0; l < grid.n_phi; ++l)
        for (int i = 0; i < grid.n_r; ++i)
          out[static_cast<std::size_t>(l) * grid.n_r + i] +=
              blk.coeffs[k] * basis.value(grid.radius(i), grid.angle(l));
    }
  }
  return out;
}

}  // namespace serial

}  // namespace landau::kernels
