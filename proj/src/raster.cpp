#include "landau/raster.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>

#include "landau/export.hpp"

namespace landau::raster {

Image::Image(int width, int height, Rgb fill)
    : width_(width), height_(height), px_(static_cast<std::size_t>(width) * height, fill) {
  if (width <= 0 || height <= 0) throw std::invalid_argument("Image: non-positive size");
}

void Image::set(int x, int y, Rgb c) {
  if (x < 0 || y < 0 || x >= width_ || y >= height_) return;
  px_[static_cast<std::size_t>(y) * width_ + x] = c;
}

Rgb Image::get(int x, int y) const { return px_.at(static_cast<std::size_t>(y) * width_ + x); }

void Image::line(double x0, double y0, double x1, double y1, Rgb c, bool dashed) {
  const double len = std::hypot(x1 - x0, y1 - y0);
  const int steps = std::max(1, static_cast<int>(std::ceil(len * 2.0)));
  for (int i = 0; i <= steps; ++i) {
    if (dashed && (i / 8) % 2 == 1) continue;
    const double t = static_cast<double>(i) / steps;
    set(static_cast<int>(std::lround(x0 + t * (x1 - x0))), static_cast<int>(std::lround(y0 + t * (y1 - y0))), c);
  }
}

void Image::arrow(double x0, double y0, double x1, double y1, Rgb c) {
  line(x0, y0, x1, y1, c);
  const double len = std::hypot(x1 - x0, y1 - y0);
  if (len < 1.0) return;
  const double ux = (x1 - x0) / len, uy = (y1 - y0) / len;
  const double head = std::min(4.0, 0.4 * len);
  line(x1, y1, x1 - head * (ux - 0.5 * uy), y1 - head * (uy + 0.5 * ux), c);
  line(x1, y1, x1 - head * (ux + 0.5 * uy), y1 - head * (uy - 0.5 * ux), c);
}

void Image::circle(double cx, double cy, double radius, Rgb c, bool dashed) {
  const int steps = std::max(16, static_cast<int>(radius * 8.0));
  for (int i = 0; i < steps; ++i) {
    if (dashed && (i * 24 / steps) % 2 == 1) continue;
    const double a0 = 2.0 * M_PI * i / steps, a1 = 2.0 * M_PI * (i + 1) / steps;
    line(cx + radius * std::cos(a0), cy + radius * std::sin(a0), cx + radius * std::cos(a1),
         cy + radius * std::sin(a1), c);
  }
}

void Image::disc(double cx, double cy, double radius, Rgb c) {
  for (int y = static_cast<int>(cy - radius); y <= static_cast<int>(cy + radius) + 1; ++y)
    for (int x = static_cast<int>(cx - radius); x <= static_cast<int>(cx + radius) + 1; ++x)
      if (std::hypot(x - cx, y - cy) <= radius) set(x, y, c);
}

void Image::blit(const Image& other, int x, int y) {
  for (int j = 0; j < other.height(); ++j)
    for (int i = 0; i < other.width(); ++i) set(x + i, y + j, other.get(i, j));
}

void write_png(const Image& image, const std::filesystem::path& path) {
  std::unique_ptr<FILE, int (*)(FILE*)> fp(std::fopen(path.c_str(), "wb"), &std::fclose);
  if (!fp) throw IoError("cannot open '" + path.string() + "' for writing");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    throw IoError("libpng initialisation failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("libpng failed writing '" + path.string() + "'");
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, image.width(), image.height(), 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  std::vector<png_byte> row(static_cast<std::size_t>(image.width()) * 3);
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      const Rgb c = image.get(x, y);
      row[3 * x] = c.r;
      row[3 * x + 1] = c.g;
      row[3 * x + 2] = c.b;
    }
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

Image density_image(const FieldGrid& grid, const std::string& density, int pixels_per_cell) {
  const int n0 = grid.n0(), n1 = grid.n1();
  const int ppc = std::max(1, pixels_per_cell);
  Image img(n0 * ppc, n1 * ppc, kBlack);
  const auto& rho = grid.channel(density);
  const double peak = std::max(grid.max_abs(density), 1e-300);
  for (int iy = 0; iy < n1; ++iy) {
    for (int ix = 0; ix < n0; ++ix) {
      const double v = std::clamp(rho[static_cast<std::size_t>(iy) * n0 + ix] / peak, 0.0, 1.0);
      const auto g = static_cast<std::uint8_t>(std::lround(255.0 * v));
      for (int py = 0; py < ppc; ++py)
        for (int px = 0; px < ppc; ++px) img.set(ix * ppc + px, (n1 - 1 - iy) * ppc + py, {g, g, g});
    }
  }
  return img;
}

Image density_with_arrows(const FieldGrid& grid, const std::string& density, const std::string& jx,
                          const std::string& jy, int stride, int pixels_per_cell) {
  const int n0 = grid.n0(), n1 = grid.n1();
  const int ppc = std::max(1, pixels_per_cell);
  Image img = density_image(grid, density, ppc);
  const auto& vx = grid.channel(jx);
  const auto& vy = grid.channel(jy);
  double jmax = 1e-300;
  for (std::size_t i = 0; i < vx.size(); ++i) jmax = std::max(jmax, std::hypot(vx[i], vy[i]));
  const double max_len = 0.9 * stride * ppc;
  for (int iy = stride / 2; iy < n1; iy += stride) {
    for (int ix = stride / 2; ix < n0; ix += stride) {
      const std::size_t idx = static_cast<std::size_t>(iy) * n0 + ix;
      const double mag = std::hypot(vx[idx], vy[idx]) / jmax;
      if (mag < 0.02) continue;
      const double cx = (ix + 0.5) * ppc, cy = (n1 - 1 - iy + 0.5) * ppc;
      const double sx = vx[idx] / jmax * max_len, sy = -vy[idx] / jmax * max_len;
      img.arrow(cx - 0.5 * sx, cy - 0.5 * sy, cx + 0.5 * sx, cy + 0.5 * sy, kRed);
    }
  }
  return img;
}

Image line_plot(const std::vector<double>& x, const std::vector<Curve>& curves, int width,
                int height) {
  Image img(width, height, kWhite);
  const int margin = 24;
  double ymin = 0.0, ymax = 0.0;
  for (const auto& c : curves)
    for (double v : c.y) {
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  if (ymax == ymin) ymax = ymin + 1.0;
  const double xmin = x.empty() ? 0.0 : x.front(), xmax = x.empty() ? 1.0 : x.back();
  auto px = [&](double v) { return margin + (v - xmin) / (xmax - xmin) * (width - 2 * margin); };
  auto py = [&](double v) { return height - margin - (v - ymin) / (ymax - ymin) * (height - 2 * margin); };
  img.line(margin, margin, margin, height - margin, kBlack);
  img.line(margin, height - margin, width - margin, height - margin, kBlack);
  img.line(margin, py(0.0), width - margin, py(0.0), kGray, true);
  for (const auto& c : curves)
    for (std::size_t i = 1; i < x.size() && i < c.y.size(); ++i)
      img.line(px(x[i - 1]), py(c.y[i - 1]), px(x[i]), py(c.y[i]), c.color);
  return img;
}

Image guiding_schematic(double rc, double R, int size) {
  Image img(size, size, kWhite);
  const double extent = 1.15 * (std::sqrt(R * R) + rc);
  const double scale = 0.5 * size / std::max(extent, 1e-12);
  const double cx = 0.5 * size, cy = 0.5 * size;
  img.line(0, cy, size - 1, cy, kGray, true);
  img.line(cx, 0, cx, size - 1, kGray, true);
  img.circle(cx, cy, R * scale, kBlue, true);
  // guiding centre drawn at 45 degrees on its circle
  const double gx = cx + R * scale * std::cos(M_PI / 4), gy = cy - R * scale * std::sin(M_PI / 4);
  img.disc(gx, gy, 3.0, kBlue);
  img.circle(gx, gy, rc * scale, kRed);
  img.arrow(gx, gy, gx + rc * scale, gy, kRed);
  img.disc(cx, cy, 2.5, kBlack);
  return img;
}

}  // namespace landau::raster
