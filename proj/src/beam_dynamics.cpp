#include "landau/beam_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "landau/observables.hpp"

namespace landau {

bool MaskSpec::visible(double phi) const {
  return std::cos(phi - edge_angle) > 0.0;
}

cplx azimuthal_factor(int dm, double edge_angle) {
  if (dm == 0) return {0.5, 0.0};
  // sin(dm pi/2) is exactly 0, +1 or -1 for integer dm
  const int r = ((dm % 4) + 4) % 4;
  if (r == 0 || r == 2) return {};
  const double s = r == 1 ? 1.0 : -1.0;
  const double mag = s / (kPi * dm);
  return mag * cplx(std::cos(dm * edge_angle), std::sin(dm * edge_angle));
}

Superposition::Superposition(int m_min, int m_max, int max_n_r, PhysicalUnits units)
    : m_min_(m_min), m_max_(m_max), max_n_r_(max_n_r), units_(units) {
  if (m_max < m_min || max_n_r < 0) throw std::invalid_argument("Superposition: empty basis");
  blocks_.resize(static_cast<std::size_t>(m_max - m_min + 1));
  for (int m = m_min; m <= m_max; ++m) {
    auto& blk = blocks_[m - m_min];
    blk.m = m;
    blk.coeffs.assign(static_cast<std::size_t>(max_n_r) + 1, cplx{});
  }
}

bool Superposition::contains(int n_r, int m) const {
  return m >= m_min_ && m <= m_max_ && n_r >= 0 && n_r <= max_n_r_;
}

cplx Superposition::coefficient(int n_r, int m) const {
  if (!contains(n_r, m)) return {};
  return blocks_[m - m_min_].coeffs[n_r];
}

void Superposition::set_coefficient(int n_r, int m, cplx value) {
  if (!contains(n_r, m)) throw std::out_of_range("Superposition: (n_r, m) outside the basis");
  blocks_[m - m_min_].coeffs[n_r] = value;
}

double Superposition::norm2() const {
  double total = 0.0;
  for (const auto& blk : blocks_)
    for (const cplx& c : blk.coeffs) total += std::norm(c);
  return total;
}

Superposition Superposition::evolve(double t) const {
  Superposition out = *this;
  out.time_ = time_ + t;
  const double wl = units_.omega_L();
  for (auto& blk : out.blocks_) {
    for (std::size_t k = 0; k < blk.coeffs.size(); ++k) {
      const int n = to_landau_index({static_cast<int>(k), blk.m}).n;
      const double phase = -(2.0 * n + 1.0) * wl * t;
      blk.coeffs[k] *= cplx(std::cos(phase), std::sin(phase));
    }
  }
  return out;
}

Superposition evolve(const Superposition& sup, double t) { return sup.evolve(t); }

namespace {

constexpr int kOverlapPanels = 96;

ProjectionResult project_once(const LandauState& source, const MaskSpec& mask, int max_n_r,
                              int max_dm) {
  const int m = source.m();
  Superposition sup(m - max_dm, m + max_dm, max_n_r, source.units());
  const auto rule = composite_gauss_legendre(0.0, default_r_max(source), kOverlapPanels);
  std::vector<double> src(rule.nodes.size());
  for (std::size_t i = 0; i < src.size(); ++i)
    src[i] = source.radial(rule.nodes[i]) * rule.nodes[i] * rule.weights[i];

  for (int mp = sup.m_min(); mp <= sup.m_max(); ++mp) {
    const cplx az = azimuthal_factor(m - mp, mask.edge_angle);
    if (az == cplx{}) continue;
    for (int k = 0; k <= max_n_r; ++k) {
      const LandauState basis({k, mp}, source.units());
      double overlap = 0.0;
      for (std::size_t i = 0; i < src.size(); ++i) overlap += basis.radial(rule.nodes[i]) * src[i];
      sup.set_coefficient(k, mp, az * overlap);
    }
  }
  ProjectionResult res{sup, sup.norm2(), {}, false, {}};
  res.truncation.max_n_r = max_n_r;
  res.truncation.max_dm = max_dm;
  return res;
}

}  // namespace

ProjectionResult project_masked(const LandauState& source, const MaskSpec& mask,
                                const Truncation& truncation, double warn_below) {
  if (truncation.max_n_r < source.n_r() || truncation.max_dm < 0)
    throw std::invalid_argument("project_masked: truncation does not cover the source state");
  ProjectionResult res = project_once(source, mask, truncation.max_n_r, truncation.max_dm);
  if (truncation.adaptive) {
    int nr = truncation.max_n_r, dm = truncation.max_dm;
    while (nr < truncation.cap || dm < truncation.cap) {
      nr = std::min(nr + 5, truncation.cap);
      dm = std::min(dm + 5, truncation.cap);
      ProjectionResult next = project_once(source, mask, nr, dm);
      const double change = std::abs(next.captured_norm - res.captured_norm);
      res = std::move(next);
      if (change < truncation.adaptive_tol) break;
    }
  }
  res.truncation.adaptive = truncation.adaptive;
  res.truncation.adaptive_tol = truncation.adaptive_tol;
  res.truncation.cap = truncation.cap;
  if (res.captured_norm < warn_below) {
    res.truncation_warning = true;
    res.warning = "captured norm " + std::to_string(res.captured_norm) + " below " +
                  std::to_string(warn_below) + "; raise the truncation";
  }
  return res;
}

Superposition project_masked(const Superposition& in, const MaskSpec& mask) {
  const PhysicalUnits& units = in.units();
  // quadrature range large enough for every basis function
  double r_max = 0.0;
  for (int m = in.m_min(); m <= in.m_max(); ++m)
    r_max = std::max(r_max, default_r_max(LandauState({in.max_n_r(), m}, units)));
  const auto rule = composite_gauss_legendre(0.0, r_max, 2 * kOverlapPanels);
  const std::size_t nq = rule.nodes.size();
  const int nm = in.m_max() - in.m_min() + 1;
  const int nk = in.max_n_r() + 1;
  // table[(mi * nk + k) * nq + i] = R_{k,m}(r_i) sqrt(w_i r_i)
  std::vector<double> table(static_cast<std::size_t>(nm) * nk * nq);
#pragma omp parallel for schedule(dynamic)
  for (int mi = 0; mi < nm; ++mi) {
    for (int k = 0; k < nk; ++k) {
      const LandauState basis({k, in.m_min() + mi}, units);
      double* row = &table[(static_cast<std::size_t>(mi) * nk + k) * nq];
      for (std::size_t i = 0; i < nq; ++i)
        row[i] = basis.radial(rule.nodes[i]) * std::sqrt(rule.weights[i] * rule.nodes[i]);
    }
  }
  Superposition out = in;
  std::vector<cplx> result(static_cast<std::size_t>(nm) * nk);
#pragma omp parallel for schedule(dynamic)
  for (int bi = 0; bi < nm; ++bi) {
    const int mb = in.m_min() + bi;
    for (int kb = 0; kb < nk; ++kb) {
      const double* rb = &table[(static_cast<std::size_t>(bi) * nk + kb) * nq];
      cplx acc{};
      for (int ai = 0; ai < nm; ++ai) {
        const int ma = in.m_min() + ai;
        const cplx az = azimuthal_factor(ma - mb, mask.edge_angle);
        if (az == cplx{}) continue;
        for (int ka = 0; ka < nk; ++ka) {
          const cplx c = in.coefficient(ka, ma);
          if (c == cplx{}) continue;
          const double* ra = &table[(static_cast<std::size_t>(ai) * nk + ka) * nq];
          double overlap = 0.0;
          for (std::size_t i = 0; i < nq; ++i) overlap += ra[i] * rb[i];
          acc += az * overlap * c;
        }
      }
      result[static_cast<std::size_t>(bi) * nk + kb] = acc;
    }
  }
  for (int bi = 0; bi < nm; ++bi)
    for (int kb = 0; kb < nk; ++kb)
      out.set_coefficient(kb, in.m_min() + bi, result[static_cast<std::size_t>(bi) * nk + kb]);
  return out;
}

FieldGrid intensity(const Superposition& sup, const GridSpec& grid) {
  FieldGrid g = FieldGrid::cartesian(grid);
  const auto psi = kernels::evaluate_modes(sup.blocks(), sup.units(), grid);
  auto& ch = g.add_channel("intensity");
  for (std::size_t i = 0; i < ch.size(); ++i) ch[i] = std::norm(psi.data[i]);
  g.metadata()["t"] = std::to_string(sup.time());
  return g;
}

FieldGrid intensity(const Superposition& sup, const PolarGridSpec& grid) {
  FieldGrid g = FieldGrid::polar(grid);
  const auto psi = kernels::evaluate_modes(sup.blocks(), sup.units(), grid);
  auto& ch = g.add_channel("intensity");
  for (std::size_t i = 0; i < ch.size(); ++i) ch[i] = std::norm(psi[i]);
  g.metadata()["t"] = std::to_string(sup.time());
  return g;
}

double leakage(const FieldGrid& g, const MaskSpec& mask) {
  if (g.layout() != GridLayout::polar) throw std::invalid_argument("leakage: polar grid required");
  const auto& ch = g.channel("intensity");
  double hidden = 0.0, total = 0.0;
  for (int l = 0; l < g.n1(); ++l) {
    const bool vis = mask.visible(g.axis1()[l]);
    for (int k = 0; k < g.n0(); ++k) {
      const double v = ch[static_cast<std::size_t>(l) * g.n0() + k] * g.weight(k, l);
      total += v;
      if (!vis) hidden += v;
    }
  }
  return total > 0.0 ? hidden / total : 0.0;
}

std::string to_string(RotationClass c) {
  switch (c) {
    case RotationClass::zero: return "zero-rotation";
    case RotationClass::larmor: return "larmor";
    case RotationClass::cyclotron: return "cyclotron";
  }
  return "unknown";
}

RotationClass classify_rate(double rate, const PhysicalUnits& units) {
  const double candidates[] = {0.0, units.omega_L(), units.omega_c()};
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(rate - candidates[i]) < std::abs(rate - candidates[best])) best = i;
  return static_cast<RotationClass>(best);
}

std::vector<double> short_time_window(const PhysicalUnits& units, int frames, double fraction) {
  if (frames < 2) throw std::invalid_argument("short_time_window: need at least two frames");
  const double t_end = fraction * 2.0 * kPi / units.omega_c();
  std::vector<double> t(frames);
  for (int i = 0; i < frames; ++i) t[i] = t_end * i / (frames - 1);
  return t;
}

double circular_mean_azimuth(const FieldGrid& g) {
  if (g.layout() != GridLayout::polar)
    throw std::invalid_argument("circular_mean_azimuth: polar grid required");
  const auto& ch = g.channel("intensity");
  std::vector<cplx> rows(g.n1());
  double total = 0.0;
  for (int l = 0; l < g.n1(); ++l) {
    double ring = 0.0;
    for (int k = 0; k < g.n0(); ++k) ring += ch[static_cast<std::size_t>(l) * g.n0() + k] * g.weight(k, l);
    const double phi = g.axis1()[l];
    rows[l] = ring * cplx(std::cos(phi), std::sin(phi));
    total += ring;
  }
  const cplx s = std::accumulate(rows.begin(), rows.end(), cplx{});
  if (!(total > 0.0) || std::abs(s) < 1e-3 * total)
    throw DegenerateFit("intensity pattern has no preferred azimuth (|<e^{i phi}>| = " +
                        std::to_string(total > 0.0 ? std::abs(s) / total : 0.0) + ")");
  return std::arg(s);
}

RotationReport rotation_rate(const LandauState& source, const MaskSpec& mask,
                             std::span<const double> times, const RotationOptions& options) {
  if (times.size() < 2) throw std::invalid_argument("rotation_rate: need at least two times");
  RotationReport rep;
  rep.source = source.qn();
  const auto proj = project_masked(source, mask, options.truncation);
  rep.captured_norm = proj.captured_norm;

  PolarGridSpec grid = options.grid;
  if (grid.r_max <= 0.0) grid.r_max = 1.25 * source.default_extent();

  rep.times.assign(times.begin(), times.end());
  rep.angles.resize(times.size());
  for (std::size_t i = 0; i < times.size(); ++i)
    rep.angles[i] = circular_mean_azimuth(intensity(proj.superposition.evolve(times[i]), grid));
  for (std::size_t i = 1; i < rep.angles.size(); ++i) {
    double d = rep.angles[i] - rep.angles[i - 1];
    while (d > kPi) d -= 2.0 * kPi;
    while (d < -kPi) d += 2.0 * kPi;
    rep.angles[i] = rep.angles[i - 1] + d;
  }

  // least-squares line through (t, angle)
  const double n = static_cast<double>(times.size());
  const double tm = std::accumulate(rep.times.begin(), rep.times.end(), 0.0) / n;
  const double am = std::accumulate(rep.angles.begin(), rep.angles.end(), 0.0) / n;
  double stt = 0.0, sta = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    stt += (rep.times[i] - tm) * (rep.times[i] - tm);
    sta += (rep.times[i] - tm) * (rep.angles[i] - am);
  }
  if (!(stt > 0.0)) throw DegenerateFit("rotation_rate: times must not all coincide");
  rep.rate = sta / stt;
  rep.intercept = am - rep.rate * tm;
  double ss = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double e = rep.angles[i] - (rep.intercept + rep.rate * rep.times[i]);
    ss += e * e;
  }
  rep.residual = std::sqrt(ss / n);
  rep.bohmian_rate = bohmian_half_plane_average(source);
  rep.classification = classify_rate(rep.rate, source.units());
  return rep;
}

}  // namespace landau
