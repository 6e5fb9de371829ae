#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace landau {

/// Square Cartesian grid centred on the origin, n points per axis including both edges.
struct GridSpec {
  int n = 201;
  double half_extent = 8.0;  // in units of l_B

  double spacing() const { return 2.0 * half_extent / (n - 1); }
  double coord(int i) const { return -half_extent + i * spacing(); }
  void validate() const;
};

/// Cell-centred polar grid: r_k = (k + 1/2) dr, phi_l = l * 2 pi / n_phi.
struct PolarGridSpec {
  int n_r = 160;
  int n_phi = 256;
  double r_max = 12.0;

  double dr() const { return r_max / n_r; }
  double dphi() const;
  double radius(int k) const { return (k + 0.5) * dr(); }
  double angle(int l) const { return l * dphi(); }
  void validate() const;
};

enum class GridLayout { cartesian, polar };

/// Named real-valued channels sampled on a common grid. Index (i0, i1) is stored at
/// i1 * n0 + i0 where axis 0 is X (or r) and axis 1 is Y (or phi).
class FieldGrid {
 public:
  static FieldGrid cartesian(const GridSpec& spec);
  static FieldGrid polar(const PolarGridSpec& spec);

  GridLayout layout() const { return layout_; }
  int n0() const { return static_cast<int>(axis0_.size()); }
  int n1() const { return static_cast<int>(axis1_.size()); }
  std::size_t size() const { return axis0_.size() * axis1_.size(); }
  const std::vector<double>& axis0() const { return axis0_; }
  const std::vector<double>& axis1() const { return axis1_; }

  /// Integration weight of a cell: h^2 on Cartesian grids, r dr dphi on polar grids.
  double weight(int i0, int i1) const;

  std::vector<double>& add_channel(const std::string& name);
  bool has_channel(const std::string& name) const;
  const std::vector<double>& channel(const std::string& name) const;
  std::vector<double>& channel(const std::string& name);
  const std::vector<std::string>& channel_names() const { return order_; }

  double integrate(const std::string& name) const;
  double max_abs(const std::string& name) const;

  std::map<std::string, std::string>& metadata() { return metadata_; }
  const std::map<std::string, std::string>& metadata() const { return metadata_; }

 private:
  GridLayout layout_ = GridLayout::cartesian;
  std::vector<double> axis0_, axis1_;
  double d0_ = 0.0, d1_ = 0.0;
  std::vector<std::string> order_;
  std::map<std::string, std::vector<double>> channels_;
  std::map<std::string, std::string> metadata_;
};

/// Complex field on a square Cartesian grid, row-major (iy * n + ix).
struct ComplexField {
  GridSpec grid;
  std::vector<std::complex<double>> data;

  ComplexField() = default;
  explicit ComplexField(const GridSpec& g) : grid(g), data(static_cast<std::size_t>(g.n) * g.n) {}

  std::complex<double>& at(int ix, int iy) { return data[static_cast<std::size_t>(iy) * grid.n + ix]; }
  const std::complex<double>& at(int ix, int iy) const {
    return data[static_cast<std::size_t>(iy) * grid.n + ix];
  }
};

}  // namespace landau
