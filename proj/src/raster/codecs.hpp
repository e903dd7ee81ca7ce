#pragma once

// Internal format codecs behind raster/io.hpp. Not part of the public API.

#include <array>
#include <filesystem>

#include "cfuse/raster/image.hpp"
#include "cfuse/raster/io.hpp"

namespace cfuse::raster::detail {

BrightnessTable load_pgm(const std::filesystem::path& path, ChannelTag tag);
void save_pgm(const BrightnessTable& table, const std::filesystem::path& path,
              int bit_depth, PgmFlavor flavor);

BrightnessTable load_png(const std::filesystem::path& path, ChannelTag tag);
void save_png(const BrightnessTable& table, const std::filesystem::path& path,
              int bit_depth);

std::array<BrightnessTable, 3> load_png_rgb8(const std::filesystem::path& path);
void save_png_rgb8(const std::array<BrightnessTable, 3>& planes,
                   const std::filesystem::path& path);

/// Shared by every save path: round(v * maxval), halves up.
long long quantize(double value, long long maxval);

/// Range gate shared by the writers.
void require_unit_range(const BrightnessTable& table, const char* op);

} // namespace cfuse::raster::detail
