#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "codecs.hpp"

namespace cfuse::raster::detail {

namespace {

constexpr std::size_t kMaxPixels = 1u << 28; // 256 Mpx sanity cap

// Skips whitespace and '#' comments between header tokens.
void skip_separators(std::istream& in) {
    for (;;) {
        const int c = in.peek();
        if (c == '#') {
            std::string line;
            std::getline(in, line);
        } else if (c != EOF && std::isspace(c)) {
            in.get();
        } else {
            return;
        }
    }
}

long long read_header_number(std::istream& in, const char* what) {
    skip_separators(in);
    long long value = 0;
    if (!(in >> value)) {
        raise(ErrorCode::MalformedImage, std::string("missing or invalid ") + what);
    }
    return value;
}

} // namespace

long long quantize(double value, long long maxval) {
    return std::llround(value * static_cast<double>(maxval));
}

void require_unit_range(const BrightnessTable& table, const char* op) {
    for (double v : table.values()) {
        if (v < 0.0 || v > 1.0) {
            raise(ErrorCode::RangeViolation,
                  std::string(op) + " requires values in [0, 1], got " + std::to_string(v));
        }
    }
}

BrightnessTable load_pgm(const std::filesystem::path& path, ChannelTag tag) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        if (!std::filesystem::exists(path)) {
            raise(ErrorCode::FileNotFound, path.string());
        }
        raise(ErrorCode::IoFailure, "cannot open " + path.string());
    }

    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (!in || magic[0] != 'P' || (magic[1] != '2' && magic[1] != '5')) {
        raise(ErrorCode::MalformedImage, path.string() + ": not a P2/P5 PGM file");
    }
    const bool binary = magic[1] == '5';

    const long long width = read_header_number(in, "width");
    const long long height = read_header_number(in, "height");
    const long long maxval = read_header_number(in, "maxval");
    if (width <= 0 || height <= 0) {
        raise(ErrorCode::MalformedImage, path.string() + ": non-positive dimensions");
    }
    if (static_cast<std::size_t>(width) * static_cast<std::size_t>(height) > kMaxPixels) {
        raise(ErrorCode::MalformedImage, path.string() + ": unreasonably large image");
    }
    if (maxval != 255 && maxval != 65535) {
        raise(ErrorCode::UnsupportedBitDepth,
              path.string() + ": maxval " + std::to_string(maxval) + " (want 255 or 65535)");
    }

    const auto count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    std::vector<double> values(count);
    const double scale = static_cast<double>(maxval);

    if (binary) {
        // exactly one whitespace byte separates the header from the raster
        const int sep = in.get();
        if (sep == EOF || !std::isspace(sep)) {
            raise(ErrorCode::MalformedImage, path.string() + ": bad raster separator");
        }
        const int bytes_per_sample = maxval > 255 ? 2 : 1;
        std::vector<unsigned char> raw(count * static_cast<std::size_t>(bytes_per_sample));
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
        if (in.gcount() != static_cast<std::streamsize>(raw.size())) {
            raise(ErrorCode::MalformedImage, path.string() + ": truncated raster data");
        }
        if (bytes_per_sample == 1) {
            for (std::size_t i = 0; i < count; ++i) {
                values[i] = raw[i] / scale;
            }
        } else {
            for (std::size_t i = 0; i < count; ++i) {
                // network byte order, most significant byte first
                const unsigned sample = (static_cast<unsigned>(raw[2 * i]) << 8) | raw[2 * i + 1];
                values[i] = sample / scale;
            }
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            long long sample = 0;
            skip_separators(in);
            if (!(in >> sample)) {
                raise(ErrorCode::MalformedImage, path.string() + ": truncated sample list");
            }
            if (sample < 0 || sample > maxval) {
                raise(ErrorCode::MalformedImage,
                      path.string() + ": sample " + std::to_string(sample) + " out of range");
            }
            values[i] = static_cast<double>(sample) / scale;
        }
    }

    return BrightnessTable(static_cast<int>(width), static_cast<int>(height),
                           std::move(values), {0.0, 1.0}, tag);
}

void save_pgm(const BrightnessTable& table, const std::filesystem::path& path,
              int bit_depth, PgmFlavor flavor) {
    if (bit_depth != 8 && bit_depth != 16) {
        raise(ErrorCode::InvalidArgument, "bit depth must be 8 or 16");
    }
    require_unit_range(table, "save_image");

    const long long maxval = bit_depth == 8 ? 255 : 65535;
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        raise(ErrorCode::IoFailure, "cannot create " + path.string());
    }

    out << (flavor == PgmFlavor::Binary ? "P5" : "P2") << "\n"
        << table.width() << " " << table.height() << "\n"
        << maxval << "\n";

    if (flavor == PgmFlavor::Binary) {
        std::vector<unsigned char> raw;
        raw.reserve(table.pixel_count() * (bit_depth == 16 ? 2 : 1));
        for (double v : table.values()) {
            const auto sample = static_cast<std::uint32_t>(quantize(v, maxval));
            if (bit_depth == 16) {
                raw.push_back(static_cast<unsigned char>(sample >> 8));
            }
            raw.push_back(static_cast<unsigned char>(sample & 0xFF));
        }
        out.write(reinterpret_cast<const char*>(raw.data()),
                  static_cast<std::streamsize>(raw.size()));
    } else {
        int column = 0;
        for (std::size_t i = 0; i < table.pixel_count(); ++i) {
            out << quantize(table.values()[i], maxval);
            // keep lines comfortably under the 70-character Netpbm limit
            if (++column == 8 || i + 1 == table.pixel_count()) {
                out << "\n";
                column = 0;
            } else {
                out << " ";
            }
        }
    }

    if (!out) {
        raise(ErrorCode::IoFailure, "write failed for " + path.string());
    }
}

} // namespace cfuse::raster::detail
