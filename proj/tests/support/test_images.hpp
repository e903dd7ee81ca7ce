#pragma once

// Shared deterministic generators and independent numeric oracles for the
// test suites. Everything here is reproducible: randomness comes from raw
// mt19937 words only, so values do not depend on distribution internals.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "cfuse/raster/image.hpp"

namespace testsupport {

using cfuse::raster::BrightnessTable;
using cfuse::raster::ChannelTag;

inline double unit_draw(std::mt19937& engine) {
    return static_cast<double>(engine()) / 4294967296.0; // [0, 1)
}

/// Uniform values in [lo, hi).
inline BrightnessTable random_table(int width, int height, std::uint32_t seed,
                                    double lo = 0.0, double hi = 1.0,
                                    ChannelTag tag = ChannelTag::Fused) {
    std::mt19937 engine(seed);
    std::vector<double> values(static_cast<std::size_t>(width) *
                               static_cast<std::size_t>(height));
    for (double& v : values) {
        v = lo + (hi - lo) * unit_draw(engine);
    }
    return BrightnessTable(width, height, std::move(values), {lo, hi}, tag);
}

/// Values on the dyadic grid k/256, k in [0, 256]; exact under scaling by
/// small integers as well as by powers of two.
inline BrightnessTable random_dyadic_table(int width, int height, std::uint32_t seed,
                                           ChannelTag tag = ChannelTag::Fused) {
    std::mt19937 engine(seed);
    std::vector<double> values(static_cast<std::size_t>(width) *
                               static_cast<std::size_t>(height));
    for (double& v : values) {
        v = static_cast<double>(engine() % 257u) / 256.0;
    }
    return BrightnessTable(width, height, std::move(values), {0.0, 1.0}, tag);
}

inline BrightnessTable scaled(const BrightnessTable& t, double factor) {
    std::vector<double> values(t.values());
    for (double& v : values) {
        v *= factor;
    }
    return BrightnessTable(t.width(), t.height(), std::move(values),
                           {t.value_range().lo * factor, t.value_range().hi * factor},
                           t.tag());
}

inline BrightnessTable with_zero_patch(const BrightnessTable& t, int x0, int y0, int w,
                                       int h) {
    std::vector<double> values(t.values());
    for (int y = y0; y < y0 + h; ++y) {
        for (int x = x0; x < x0 + w; ++x) {
            values[static_cast<std::size_t>(y) * static_cast<std::size_t>(t.width()) +
                   static_cast<std::size_t>(x)] = 0.0;
        }
    }
    return BrightnessTable(t.width(), t.height(), std::move(values), t.value_range(),
                           t.tag());
}

/// Scene in the spirit of a night-time field observation: a dim visible
/// channel with faint texture and a dark strip, and an infrared channel
/// that is mostly black except for two warm blobs.
inline std::pair<BrightnessTable, BrightnessTable> field_scene_pair(int width = 96,
                                                                    int height = 96) {
    std::mt19937 engine(20250809u);
    const auto noise = [&engine](double amplitude) {
        return amplitude * (unit_draw(engine) - 0.5);
    };

    std::vector<double> u(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
    std::vector<double> v(u.size());
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const auto i = static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                           static_cast<std::size_t>(x);
            double uv = 0.10 + 0.12 * x / (width - 1.0) + 0.02 * std::sin(y / 3.0) +
                        noise(0.03);
            if (x >= 10 && x < 30 && y >= 30 && y < 60) {
                uv += 0.06; // faint vegetation block
            }
            if (y >= 70) {
                uv *= 0.15; // dark foreground strip
            }
            u[i] = std::clamp(uv, 0.0, 1.0);

            double vv = 0.05 + noise(0.02);
            if (x >= 50 && x < 62 && y >= 40 && y < 56) {
                vv = 0.55 + noise(0.10); // warm figure
            }
            if (x >= 70 && x < 80 && y >= 20 && y < 32) {
                vv = 0.45 + noise(0.10); // second warm figure
            }
            v[i] = std::clamp(vv, 0.0, 1.0);
        }
    }
    return {BrightnessTable(width, height, std::move(u), {0.0, 1.0}, ChannelTag::VisibleA),
            BrightnessTable(width, height, std::move(v), {0.0, 1.0}, ChannelTag::InfraredB)};
}

// ---- independent oracles -------------------------------------------------

/// Entropy recomputed from scratch: quantize every pixel, count in a plain
/// array, then accumulate -p log2 p in ascending bin order.
inline double entropy_oracle(const BrightnessTable& t, int bins) {
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(bins), 0);
    for (double v : t.values()) {
        auto bin = static_cast<std::size_t>(v * bins);
        if (bin >= static_cast<std::size_t>(bins)) {
            bin = static_cast<std::size_t>(bins) - 1;
        }
        counts[bin] += 1;
    }
    double entropy = 0.0;
    for (std::uint64_t c : counts) {
        if (c == 0) {
            continue;
        }
        const double p = static_cast<double>(c) / static_cast<double>(t.pixel_count());
        entropy -= p * std::log2(p);
    }
    return entropy;
}

inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const auto n = static_cast<double>(a.size());
    double mean_a = 0.0, mean_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        mean_a += a[i];
        mean_b += b[i];
    }
    mean_a /= n;
    mean_b /= n;
    double saa = 0.0, sbb = 0.0, sab = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - mean_a;
        const double db = b[i] - mean_b;
        saa += da * da;
        sbb += db * db;
        sab += da * db;
    }
    return sab / std::sqrt(saa * sbb);
}

inline double mean_abs_difference(const BrightnessTable& a, const BrightnessTable& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.pixel_count(); ++i) {
        sum += std::abs(a.values()[i] - b.values()[i]);
    }
    return sum / static_cast<double>(a.pixel_count());
}

} // namespace testsupport
