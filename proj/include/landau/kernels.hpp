#pragma once

// Grid kernels. The functions in landau::kernels are OpenMP-parallel over grid rows;
// landau::kernels::serial holds single-threaded reference versions that the tests
// compare against and the benchmark times.

#include <complex>
#include <span>
#include <vector>

#include "landau/field_grid.hpp"
#include "landau/landau_core.hpp"

namespace landau::kernels {

/// Weights c_1..c_{order/2} of the antisymmetric first-derivative stencil
/// f'(x_i) ~ sum_k c_k (f_{i+k} - f_{i-k}) / h. Supported orders: 2, 4, 6, 8.
std::span<const double> central_stencil(int order);

/// Amplitudes of psi_{n_r, m} for n_r = 0 .. coeffs.size()-1 at a fixed m.
struct ModeBlock {
  int m = 0;
  std::vector<cplx> coeffs;
};

ComplexField sample_state(const LandauState& state, const GridSpec& grid);

/// Adds channels rho, jx_can, jy_can, jx_gauge, jy_gauge, jx_tot, jy_tot to a Cartesian grid.
void sample_currents(const LandauState& state, FieldGrid& grid);

ComplexField derivative_x(const ComplexField& in, int order);
ComplexField derivative_y(const ComplexField& in, int order);
std::vector<double> derivative_x(std::span<const double> in, const GridSpec& grid, int order);
std::vector<double> derivative_y(std::span<const double> in, const GridSpec& grid, int order);

/// sum conj(a) b h^2, accumulated per row then summed in row order.
cplx inner_product(const ComplexField& a, const ComplexField& b);

/// Superposition sum_{m, n_r} c psi_{n_r,m} on a Cartesian grid.
ComplexField evaluate_modes(std::span<const ModeBlock> blocks, const PhysicalUnits& units,
                            const GridSpec& grid);
/// Same on a polar grid; result indexed l * n_r + k.
std::vector<cplx> evaluate_modes(std::span<const ModeBlock> blocks, const PhysicalUnits& units,
                                 const PolarGridSpec& grid);

namespace serial {

ComplexField sample_state(const LandauState& state, const GridSpec& grid);
void sample_currents(const LandauState& state, FieldGrid& grid);
ComplexField derivative_x(const ComplexField& in, int order);
ComplexField derivative_y(const ComplexField& in, int order);
cplx inner_product(const ComplexField& a, const ComplexField& b);
/// Direct evaluation, one LandauState per basis function.
ComplexField evaluate_modes(std::span<const ModeBlock> blocks, const PhysicalUnits& units,
                            const GridSpec& grid);
std::vector<cplx> evaluate_modes(std::span<const ModeBlock> blocks, const PhysicalUnits& units,
                                 const PolarGridSpec& grid);

}  // namespace serial

}  // namespace landau::kernels
