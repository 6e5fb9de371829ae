#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "landau/field_grid.hpp"

namespace landau::raster {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
};

inline constexpr Rgb kBlack{0, 0, 0};
inline constexpr Rgb kWhite{255, 255, 255};
inline constexpr Rgb kRed{220, 30, 30};
inline constexpr Rgb kBlue{40, 80, 220};
inline constexpr Rgb kGreen{30, 150, 60};
inline constexpr Rgb kGray{150, 150, 150};

class Image {
 public:
  Image(int width, int height, Rgb fill = kWhite);

  int width() const { return width_; }
  int height() const { return height_; }
  const std::vector<Rgb>& pixels() const { return px_; }

  void set(int x, int y, Rgb c);
  Rgb get(int x, int y) const;
  void line(double x0, double y0, double x1, double y1, Rgb c, bool dashed = false);
  void arrow(double x0, double y0, double x1, double y1, Rgb c);
  void circle(double cx, double cy, double radius, Rgb c, bool dashed = false);
  void disc(double cx, double cy, double radius, Rgb c);
  /// Copies `other` with its top-left corner at (x, y).
  void blit(const Image& other, int x, int y);

 private:
  int width_, height_;
  std::vector<Rgb> px_;
};

/// 8-bit RGB PNG. Throws landau::IoError on failure.
void write_png(const Image& image, const std::filesystem::path& path);

/// Grayscale density (bright = high) on a Cartesian grid, row 0 at the bottom.
Image density_image(const FieldGrid& grid, const std::string& density, int pixels_per_cell = 2);

/// Same with current arrows sampled every `stride` cells.
/// Grid row 0 (most negative Y) is drawn at the bottom.
Image density_with_arrows(const FieldGrid& grid, const std::string& density, const std::string& jx,
                          const std::string& jy, int stride = 12, int pixels_per_cell = 2);

struct Curve {
  std::vector<double> y;
  Rgb color;
};

/// Line plot of several curves over a common abscissa, with a zero line and frame.
Image line_plot(const std::vector<double>& x, const std::vector<Curve>& curves, int width = 480,
                int height = 320);

/// Guiding-centre picture: dashed circle of radius R about the origin, the guiding
/// centre on it, and the cyclotron circle of radius r_c around that centre.
Image guiding_schematic(double rc, double R, int size = 360);

}  // namespace landau::raster
