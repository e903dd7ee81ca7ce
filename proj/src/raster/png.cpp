#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include <png.h>

#include "codecs.hpp"

namespace cfuse::raster::detail {

namespace {

constexpr double kLumaR = 0.299;
constexpr double kLumaG = 0.587;
constexpr double kLumaB = 0.114;

// ITU-R BT.601 luminance; an already-gray pixel passes through exactly.
double luma601(unsigned r, unsigned g, unsigned b, double scale) {
    if (r == g && g == b) {
        return static_cast<double>(r) / scale;
    }
    return (kLumaR * r + kLumaG * g + kLumaB * b) / scale;
}

struct PngReader {
    std::FILE* fp = nullptr;
    png_structp png = nullptr;
    png_infop info = nullptr;

    ~PngReader() {
        if (png != nullptr) {
            png_destroy_read_struct(&png, info != nullptr ? &info : nullptr, nullptr);
        }
        if (fp != nullptr) {
            std::fclose(fp);
        }
    }
};

struct PngWriter {
    std::FILE* fp = nullptr;
    png_structp png = nullptr;
    png_infop info = nullptr;

    ~PngWriter() {
        if (png != nullptr) {
            png_destroy_write_struct(&png, info != nullptr ? &info : nullptr);
        }
        if (fp != nullptr) {
            std::fclose(fp);
        }
    }
};

// Opens the file, checks the signature and reads the header. Interleaved
// sample bytes land in `data` (16-bit samples stay most-significant-first).
void read_png_pixels(const std::filesystem::path& path, PngReader& ctx,
                     std::vector<unsigned char>& data, std::vector<png_bytep>& rows,
                     int& width, int& height, int& bit_depth, int& color_type) {
    ctx.fp = std::fopen(path.string().c_str(), "rb");
    if (ctx.fp == nullptr) {
        if (!std::filesystem::exists(path)) {
            raise(ErrorCode::FileNotFound, path.string());
        }
        raise(ErrorCode::IoFailure, "cannot open " + path.string());
    }

    unsigned char sig[8];
    if (std::fread(sig, 1, 8, ctx.fp) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
        raise(ErrorCode::MalformedImage, path.string() + ": not a PNG file");
    }

    ctx.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    ctx.info = ctx.png != nullptr ? png_create_info_struct(ctx.png) : nullptr;
    if (ctx.png == nullptr || ctx.info == nullptr) {
        raise(ErrorCode::IoFailure, "libpng allocation failed");
    }

    if (setjmp(png_jmpbuf(ctx.png))) {
        raise(ErrorCode::MalformedImage, path.string() + ": PNG decode failed");
    }

    png_init_io(ctx.png, ctx.fp);
    png_set_sig_bytes(ctx.png, 8);
    png_read_info(ctx.png, ctx.info);

    width = static_cast<int>(png_get_image_width(ctx.png, ctx.info));
    height = static_cast<int>(png_get_image_height(ctx.png, ctx.info));
    bit_depth = png_get_bit_depth(ctx.png, ctx.info);
    color_type = png_get_color_type(ctx.png, ctx.info);

    const bool gray_ok =
        color_type == PNG_COLOR_TYPE_GRAY && (bit_depth == 8 || bit_depth == 16);
    const bool rgb_ok = color_type == PNG_COLOR_TYPE_RGB && bit_depth == 8;
    if (!gray_ok && !rgb_ok) {
        raise(ErrorCode::UnsupportedBitDepth,
              path.string() + ": only 8/16-bit grayscale and 8-bit RGB PNG are readable");
    }

    png_read_update_info(ctx.png, ctx.info);
    const std::size_t rowbytes = png_get_rowbytes(ctx.png, ctx.info);
    data.resize(rowbytes * static_cast<std::size_t>(height));
    rows.resize(static_cast<std::size_t>(height));
    for (int y = 0; y < height; ++y) {
        rows[static_cast<std::size_t>(y)] = data.data() + static_cast<std::size_t>(y) * rowbytes;
    }
    png_read_image(ctx.png, rows.data());
    png_read_end(ctx.png, nullptr);
}

void write_png_rows(const std::filesystem::path& path, PngWriter& ctx,
                    std::vector<unsigned char>& data, std::vector<png_bytep>& rows,
                    int width, int height, int bit_depth, int color_type) {
    ctx.fp = std::fopen(path.string().c_str(), "wb");
    if (ctx.fp == nullptr) {
        raise(ErrorCode::IoFailure, "cannot create " + path.string());
    }
    ctx.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    ctx.info = ctx.png != nullptr ? png_create_info_struct(ctx.png) : nullptr;
    if (ctx.png == nullptr || ctx.info == nullptr) {
        raise(ErrorCode::IoFailure, "libpng allocation failed");
    }

    if (setjmp(png_jmpbuf(ctx.png))) {
        raise(ErrorCode::IoFailure, "PNG encode failed for " + path.string());
    }

    png_init_io(ctx.png, ctx.fp);
    png_set_IHDR(ctx.png, ctx.info, static_cast<png_uint_32>(width),
                 static_cast<png_uint_32>(height), bit_depth, color_type,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(ctx.png, ctx.info);

    const std::size_t rowbytes = png_get_rowbytes(ctx.png, ctx.info);
    rows.resize(static_cast<std::size_t>(height));
    for (int y = 0; y < height; ++y) {
        rows[static_cast<std::size_t>(y)] = data.data() + static_cast<std::size_t>(y) * rowbytes;
    }
    png_write_image(ctx.png, rows.data());
    png_write_end(ctx.png, nullptr);

    if (std::fflush(ctx.fp) != 0) {
        raise(ErrorCode::IoFailure, "write failed for " + path.string());
    }
}

} // namespace

BrightnessTable load_png(const std::filesystem::path& path, ChannelTag tag) {
    PngReader ctx;
    std::vector<unsigned char> data;
    std::vector<png_bytep> rows;
    int width = 0, height = 0, bit_depth = 0, color_type = 0;
    read_png_pixels(path, ctx, data, rows, width, height, bit_depth, color_type);

    const auto count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    std::vector<double> values(count);

    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth == 8) {
        for (std::size_t i = 0; i < count; ++i) {
            values[i] = data[i] / 255.0;
        }
    } else if (color_type == PNG_COLOR_TYPE_GRAY) {
        for (std::size_t i = 0; i < count; ++i) {
            const unsigned sample =
                (static_cast<unsigned>(data[2 * i]) << 8) | data[2 * i + 1];
            values[i] = sample / 65535.0;
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            values[i] = luma601(data[3 * i], data[3 * i + 1], data[3 * i + 2], 255.0);
        }
    }

    return BrightnessTable(width, height, std::move(values), {0.0, 1.0}, tag);
}

std::array<BrightnessTable, 3> load_png_rgb8(const std::filesystem::path& path) {
    PngReader ctx;
    std::vector<unsigned char> data;
    std::vector<png_bytep> rows;
    int width = 0, height = 0, bit_depth = 0, color_type = 0;
    read_png_pixels(path, ctx, data, rows, width, height, bit_depth, color_type);
    if (color_type != PNG_COLOR_TYPE_RGB) {
        raise(ErrorCode::UnsupportedBitDepth, path.string() + ": expected an 8-bit RGB PNG");
    }

    const auto count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    std::array<std::vector<double>, 3> planes;
    for (auto& p : planes) {
        p.resize(count);
    }
    for (std::size_t i = 0; i < count; ++i) {
        planes[0][i] = data[3 * i] / 255.0;
        planes[1][i] = data[3 * i + 1] / 255.0;
        planes[2][i] = data[3 * i + 2] / 255.0;
    }
    return {BrightnessTable(width, height, std::move(planes[0])),
            BrightnessTable(width, height, std::move(planes[1])),
            BrightnessTable(width, height, std::move(planes[2]))};
}

void save_png(const BrightnessTable& table, const std::filesystem::path& path,
              int bit_depth) {
    if (bit_depth != 8 && bit_depth != 16) {
        raise(ErrorCode::InvalidArgument, "bit depth must be 8 or 16");
    }
    require_unit_range(table, "save_image");

    const long long maxval = bit_depth == 8 ? 255 : 65535;
    std::vector<unsigned char> data;
    data.reserve(table.pixel_count() * (bit_depth == 16 ? 2 : 1));
    for (double v : table.values()) {
        const auto sample = static_cast<std::uint32_t>(quantize(v, maxval));
        if (bit_depth == 16) {
            data.push_back(static_cast<unsigned char>(sample >> 8));
        }
        data.push_back(static_cast<unsigned char>(sample & 0xFF));
    }

    PngWriter ctx;
    std::vector<png_bytep> rows;
    write_png_rows(path, ctx, data, rows, table.width(), table.height(), bit_depth,
                   PNG_COLOR_TYPE_GRAY);
}

void save_png_rgb8(const std::array<BrightnessTable, 3>& planes,
                   const std::filesystem::path& path) {
    if (!planes[0].same_dimensions(planes[1]) || !planes[0].same_dimensions(planes[2])) {
        raise(ErrorCode::DimensionMismatch, "RGB planes differ in size");
    }
    for (const auto& p : planes) {
        require_unit_range(p, "save_rgb8");
    }

    const auto count = planes[0].pixel_count();
    std::vector<unsigned char> data(count * 3);
    for (std::size_t i = 0; i < count; ++i) {
        data[3 * i] = static_cast<unsigned char>(quantize(planes[0].values()[i], 255));
        data[3 * i + 1] = static_cast<unsigned char>(quantize(planes[1].values()[i], 255));
        data[3 * i + 2] = static_cast<unsigned char>(quantize(planes[2].values()[i], 255));
    }

    PngWriter ctx;
    std::vector<png_bytep> rows;
    write_png_rows(path, ctx, data, rows, planes[0].width(), planes[0].height(), 8,
                   PNG_COLOR_TYPE_RGB);
}

} // namespace cfuse::raster::detail
