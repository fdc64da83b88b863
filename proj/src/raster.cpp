#include "bbs/raster.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace bbs {

SpaceTimeRaster space_time(const BallConfig& initial, std::size_t steps) {
  SpaceTimeRaster r;
  r.width = initial.size();
  r.height = steps + 1;
  r.cells.assign(r.width * r.height, 0);
  r.overlay.assign(r.width * r.height, 0);
  BallConfig row = initial;
  for (std::size_t t = 0; t <= steps; ++t) {
    for (std::size_t x = 0; x < r.width; ++x) r.cells[t * r.width + x] = static_cast<std::uint8_t>(row[static_cast<Site>(x)]);
    if (t < steps) row = apply_T_carrier(row);
  }
  return r;
}

void draw_segment(SpaceTimeRaster& raster, std::int64_t x0, std::int64_t t0, std::int64_t x1, std::int64_t t1) {
  const std::int64_t dx = std::llabs(x1 - x0), sx = x0 < x1 ? 1 : -1;
  const std::int64_t dy = -std::llabs(t1 - t0), sy = t0 < t1 ? 1 : -1;
  std::int64_t err = dx + dy;
  for (;;) {
    if (x0 >= 0 && t0 >= 0 && static_cast<std::size_t>(x0) < raster.width && static_cast<std::size_t>(t0) < raster.height)
      raster.overlay[static_cast<std::size_t>(t0) * raster.width + static_cast<std::size_t>(x0)] = 1;
    if (x0 == x1 && t0 == t1) break;
    const std::int64_t e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      t0 += sy;
    }
  }
}

void draw_speed_line(SpaceTimeRaster& raster, std::int64_t x0, double speed) {
  if (raster.height == 0) return;
  const auto last = static_cast<std::int64_t>(raster.height - 1);
  draw_segment(raster, x0, 0, x0 + std::llround(speed * static_cast<double>(last)), last);
}

ImageFormat parse_image_format(const std::string& name) {
  if (name == "pbm") return ImageFormat::pbm;
  if (name == "pgm") return ImageFormat::pgm;
  throw std::invalid_argument("unknown image format '" + name + "'");
}

std::string render(const SpaceTimeRaster& raster, ImageFormat format, std::size_t row_repeat) {
  if (row_repeat == 0) throw std::invalid_argument("render: row repeat must be positive");
  std::string out = format == ImageFormat::pbm ? "P1\n" : "P2\n";
  out += std::to_string(raster.width) + " " + std::to_string(raster.height * row_repeat) + "\n";
  if (format == ImageFormat::pgm) out += "255\n";
  std::string line;
  for (std::size_t t = 0; t < raster.height; ++t) {
    line.clear();
    for (std::size_t x = 0; x < raster.width; ++x) {
      if (x) line += ' ';
      const std::size_t i = t * raster.width + x;
      if (format == ImageFormat::pbm) {
        line += raster.cells[i] ? '1' : '0';
      } else if (raster.cells[i]) {
        line += '0';
      } else {
        line += raster.overlay[i] ? "128" : "255";
      }
    }
    line += '\n';
    for (std::size_t r = 0; r < row_repeat; ++r) out += line;
  }
  return out;
}

}  // namespace bbs
