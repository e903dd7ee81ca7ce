#include "cfuse/raster/io.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "codecs.hpp"

namespace cfuse::raster {

namespace {

std::string lower_extension(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

} // namespace

ImageFormat format_from_path(const std::filesystem::path& path) {
    const std::string ext = lower_extension(path);
    if (ext == ".pgm" || ext == ".pnm") {
        return ImageFormat::Pgm;
    }
    if (ext == ".png") {
        return ImageFormat::Png;
    }
    raise(ErrorCode::InvalidArgument,
          "cannot infer image format from '" + path.string() + "' (use .pgm or .png)");
}

BrightnessTable load_image(const std::filesystem::path& path, ImageFormat format,
                           ChannelTag tag) {
    switch (format) {
    case ImageFormat::Pgm: return detail::load_pgm(path, tag);
    case ImageFormat::Png: return detail::load_png(path, tag);
    }
    raise(ErrorCode::InvalidArgument, "unknown image format");
}

BrightnessTable load_image(const std::filesystem::path& path, ChannelTag tag) {
    return load_image(path, format_from_path(path), tag);
}

void save_image(const BrightnessTable& table, const std::filesystem::path& path,
                ImageFormat format, int bit_depth, PgmFlavor flavor) {
    switch (format) {
    case ImageFormat::Pgm: detail::save_pgm(table, path, bit_depth, flavor); return;
    case ImageFormat::Png: detail::save_png(table, path, bit_depth); return;
    }
    raise(ErrorCode::InvalidArgument, "unknown image format");
}

void save_image(const BrightnessTable& table, const std::filesystem::path& path,
                int bit_depth) {
    save_image(table, path, format_from_path(path), bit_depth);
}

std::array<BrightnessTable, 3> load_rgb8(const std::filesystem::path& path) {
    if (format_from_path(path) != ImageFormat::Png) {
        raise(ErrorCode::InvalidArgument, "RGB loading is PNG-only");
    }
    return detail::load_png_rgb8(path);
}

void save_rgb8(const std::array<BrightnessTable, 3>& planes,
               const std::filesystem::path& path) {
    if (format_from_path(path) != ImageFormat::Png) {
        raise(ErrorCode::InvalidArgument, "RGB saving is PNG-only");
    }
    detail::save_png_rgb8(planes, path);
}

} // namespace cfuse::raster
