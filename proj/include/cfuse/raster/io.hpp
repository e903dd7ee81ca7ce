#pragma once

#include <array>
#include <filesystem>

#include "cfuse/raster/image.hpp"

namespace cfuse::raster {

enum class ImageFormat { Pgm, Png };

/// PGM on-disk flavor: P2 (ASCII samples) or P5 (raw binary samples).
enum class PgmFlavor { Ascii, Binary };

/// Picks the format from the file extension (.pgm/.pnm -> Pgm, .png -> Png).
ImageFormat format_from_path(const std::filesystem::path& path);

/// Loads a grayscale brightness table. Samples are scaled to [0, 1] by the
/// format's maximum sample value (255 or 65535). RGB PNG input is converted
/// to luminance with ITU-R BT.601 weights (0.299, 0.587, 0.114); a pixel with
/// equal channels passes through as that exact value.
///
/// Raises FileNotFound, MalformedImage, UnsupportedBitDepth, IoFailure.
BrightnessTable load_image(const std::filesystem::path& path, ImageFormat format,
                           ChannelTag tag = ChannelTag::Fused);
BrightnessTable load_image(const std::filesystem::path& path,
                           ChannelTag tag = ChannelTag::Fused);

/// Writes a grayscale image. Each value v becomes the integer sample
/// round(v * (2^bit_depth - 1)), rounding halves up. Values must lie in
/// [0, 1]; bit_depth is 8 or 16.
///
/// Raises RangeViolation, IoFailure, InvalidArgument.
void save_image(const BrightnessTable& table, const std::filesystem::path& path,
                ImageFormat format, int bit_depth,
                PgmFlavor flavor = PgmFlavor::Binary);
void save_image(const BrightnessTable& table, const std::filesystem::path& path,
                int bit_depth = 8);

/// Loads an 8-bit RGB PNG as three brightness planes (r, g, b), each in [0, 1].
std::array<BrightnessTable, 3> load_rgb8(const std::filesystem::path& path);

/// Writes three equally sized [0, 1] planes as an 8-bit RGB PNG.
void save_rgb8(const std::array<BrightnessTable, 3>& planes,
               const std::filesystem::path& path);

} // namespace cfuse::raster
