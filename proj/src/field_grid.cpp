#include "landau/field_grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace landau {

void GridSpec::validate() const {
  if (n < 3) throw std::invalid_argument("grid needs at least 3 points per axis");
  if (!(half_extent > 0.0) || !std::isfinite(half_extent))
    throw std::invalid_argument("grid extent must be positive");
}

double PolarGridSpec::dphi() const { return 2.0 * std::acos(-1.0) / n_phi; }

void PolarGridSpec::validate() const {
  if (n_r < 2 || n_phi < 4) throw std::invalid_argument("polar grid too small");
  if (!(r_max > 0.0) || !std::isfinite(r_max))
    throw std::invalid_argument("polar grid radius must be positive");
}

FieldGrid FieldGrid::cartesian(const GridSpec& spec) {
  spec.validate();
  FieldGrid g;
  g.layout_ = GridLayout::cartesian;
  g.axis0_.resize(spec.n);
  for (int i = 0; i < spec.n; ++i) g.axis0_[i] = spec.coord(i);
  g.axis1_ = g.axis0_;
  g.d0_ = g.d1_ = spec.spacing();
  return g;
}

FieldGrid FieldGrid::polar(const PolarGridSpec& spec) {
  spec.validate();
  FieldGrid g;
  g.layout_ = GridLayout::polar;
  g.axis0_.resize(spec.n_r);
  g.axis1_.resize(spec.n_phi);
  for (int k = 0; k < spec.n_r; ++k) g.axis0_[k] = spec.radius(k);
  for (int l = 0; l < spec.n_phi; ++l) g.axis1_[l] = spec.angle(l);
  g.d0_ = spec.dr();
  g.d1_ = spec.dphi();
  return g;
}

double FieldGrid::weight(int i0, int /*i1*/) const {
  if (layout_ == GridLayout::cartesian) return d0_ * d1_;
  return axis0_[i0] * d0_ * d1_;
}

std::vector<double>& FieldGrid::add_channel(const std::string& name) {
  auto [it, inserted] = channels_.try_emplace(name, size(), 0.0);
  if (inserted) order_.push_back(name);
  return it->second;
}

bool FieldGrid::has_channel(const std::string& name) const { return channels_.contains(name); }

const std::vector<double>& FieldGrid::channel(const std::string& name) const {
  auto it = channels_.find(name);
  if (it == channels_.end()) throw std::out_of_range("no channel '" + name + "'");
  return it->second;
}

std::vector<double>& FieldGrid::channel(const std::string& name) {
  auto it = channels_.find(name);
  if (it == channels_.end()) throw std::out_of_range("no channel '" + name + "'");
  return it->second;
}

double FieldGrid::integrate(const std::string& name) const {
  const auto& values = channel(name);
  double total = 0.0;
  for (int i1 = 0; i1 < n1(); ++i1) {
    double row = 0.0;
    for (int i0 = 0; i0 < n0(); ++i0)
      row += values[static_cast<std::size_t>(i1) * n0() + i0] * weight(i0, i1);
    total += row;
  }
  return total;
}

double FieldGrid::max_abs(const std::string& name) const {
  double peak = 0.0;
  for (double v : channel(name)) peak = std::max(peak, std::abs(v));
  return peak;
}

}  // namespace landau
