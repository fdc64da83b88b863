#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bbs/config.hpp"

namespace bbs {

/// Row t is T^t eta restricted to [0, width). Growth past the initial window
/// is clipped.
struct SpaceTimeRaster {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> cells;    // 1 = ball
  std::vector<std::uint8_t> overlay;  // 1 = overlay pixel

  std::uint8_t cell(std::size_t t, std::size_t x) const { return cells.at(t * width + x); }
};

SpaceTimeRaster space_time(const BallConfig& initial, std::size_t steps);

/// Integer Bresenham segment from (x0, t0) to (x1, t1), clipped to the raster.
void draw_segment(SpaceTimeRaster& raster, std::int64_t x0, std::int64_t t0, std::int64_t x1, std::int64_t t1);

/// Segment leaving (x0, 0) with slope `speed` sites per step.
void draw_speed_line(SpaceTimeRaster& raster, std::int64_t x0, double speed);

enum class ImageFormat { pbm, pgm };

ImageFormat parse_image_format(const std::string& name);

/// "P1" bitmap or "P2" graymap (background 255, ball 0, overlay 128). Every
/// row is written `row_repeat` times.
std::string render(const SpaceTimeRaster& raster, ImageFormat format, std::size_t row_repeat = 1);

}  // namespace bbs
