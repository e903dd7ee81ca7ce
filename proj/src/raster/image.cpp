#include "cfuse/raster/image.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace cfuse::raster {

const char* to_string(ChannelTag tag) noexcept {
    switch (tag) {
    case ChannelTag::VisibleA: return "VisibleA";
    case ChannelTag::InfraredB: return "InfraredB";
    case ChannelTag::Fused: return "Fused";
    }
    return "?";
}

BrightnessTable::BrightnessTable(int width, int height, std::vector<double> values,
                                 ValueRange range, ChannelTag tag)
    : width_(width), height_(height), values_(std::move(values)), range_(range), tag_(tag) {
    if (width_ <= 0 || height_ <= 0) {
        raise(ErrorCode::InvalidArgument,
              "table dimensions must be positive, got " + std::to_string(width_) + "x" +
                  std::to_string(height_));
    }
    const auto expected =
        static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
    if (values_.size() != expected) {
        raise(ErrorCode::DimensionMismatch,
              "value count " + std::to_string(values_.size()) + " does not match " +
                  std::to_string(width_) + "x" + std::to_string(height_));
    }
    if (!(range_.lo <= range_.hi)) {
        raise(ErrorCode::InvalidArgument, "declared value range has lo > hi");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            raise(ErrorCode::RangeViolation, "table contains a non-finite value");
        }
    }
}

BrightnessTable BrightnessTable::filled(int width, int height, double value,
                                        ValueRange range, ChannelTag tag) {
    const auto n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    return BrightnessTable(width, height, std::vector<double>(n, value), range, tag);
}

double BrightnessTable::at(int x, int y) const {
    if (!in_bounds(x, y)) {
        raise(ErrorCode::OutOfBounds, "pixel (" + std::to_string(x) + ", " +
                                          std::to_string(y) + ") outside " +
                                          std::to_string(width_) + "x" +
                                          std::to_string(height_));
    }
    return (*this)(x, y);
}

BrightnessTable BrightnessTable::with_tag(ChannelTag tag) const {
    return BrightnessTable(width_, height_, values_, range_, tag);
}

double BrightnessTable::min_value() const noexcept {
    return *std::min_element(values_.begin(), values_.end());
}

double BrightnessTable::max_value() const noexcept {
    return *std::max_element(values_.begin(), values_.end());
}

double BrightnessTable::mean_value() const noexcept {
    const double sum = std::accumulate(values_.begin(), values_.end(), 0.0);
    return sum / static_cast<double>(values_.size());
}

BrightnessTable normalize(const BrightnessTable& table) {
    for (double v : table.values()) {
        if (v < 0.0) {
            raise(ErrorCode::NegativeValue, "normalize requires non-negative values");
        }
    }
    const double max = table.max_value();
    if (max == 0.0) {
        return table;
    }
    std::vector<double> out(table.values());
    for (double& v : out) {
        v /= max;
    }
    return BrightnessTable(table.width(), table.height(), std::move(out), {0.0, 1.0},
                           table.tag());
}

BrightnessTable invert(const BrightnessTable& table) {
    for (double v : table.values()) {
        if (v < 0.0 || v > 1.0) {
            raise(ErrorCode::RangeViolation, "invert requires values in [0, 1]");
        }
    }
    std::vector<double> out(table.values());
    for (double& v : out) {
        v = 1.0 - v;
    }
    return BrightnessTable(table.width(), table.height(), std::move(out), {0.0, 1.0},
                           table.tag());
}

BrightnessTable minmax_rescale(const BrightnessTable& table) {
    const double lo = table.min_value();
    const double hi = table.max_value();
    std::vector<double> out(table.pixel_count());
    if (lo == hi) {
        std::fill(out.begin(), out.end(), 0.5);
    } else {
        const double span = hi - lo;
        const auto& in = table.values();
        for (std::size_t i = 0; i < in.size(); ++i) {
            out[i] = (in[i] - lo) / span;
        }
    }
    return BrightnessTable(table.width(), table.height(), std::move(out), {0.0, 1.0},
                           table.tag());
}

} // namespace cfuse::raster
