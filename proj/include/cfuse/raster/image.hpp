#pragma once

#include <cstddef>
#include <vector>

#include "cfuse/error.hpp"

namespace cfuse::raster {

/// Acquisition channel a table belongs to. Complex construction requires one
/// VisibleA and one InfraredB input; derived images carry Fused.
enum class ChannelTag { VisibleA, InfraredB, Fused };

const char* to_string(ChannelTag tag) noexcept;

/// Declared (nominal) value range of a table. This is bookkeeping carried
/// alongside the pixels; range checks on operations always inspect the
/// actual values.
struct ValueRange {
    double lo = 0.0;
    double hi = 1.0;
};

/// 2-D grid of brightness values, row-major, double precision. Immutable
/// after construction; every operation on tables returns a new one.
///
/// Pixel (x, y) addresses column x of row y, origin at the top-left.
class BrightnessTable {
public:
    BrightnessTable(int width, int height, std::vector<double> values,
                    ValueRange range = {0.0, 1.0}, ChannelTag tag = ChannelTag::Fused);

    static BrightnessTable filled(int width, int height, double value,
                                  ValueRange range = {0.0, 1.0},
                                  ChannelTag tag = ChannelTag::Fused);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t pixel_count() const noexcept { return values_.size(); }

    /// Unchecked pixel access.
    double operator()(int x, int y) const noexcept {
        return values_[static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                       static_cast<std::size_t>(x)];
    }

    /// Bounds-checked pixel access; raises OutOfBounds.
    double at(int x, int y) const;

    bool in_bounds(int x, int y) const noexcept {
        return x >= 0 && x < width_ && y >= 0 && y < height_;
    }

    const std::vector<double>& values() const noexcept { return values_; }
    ValueRange value_range() const noexcept { return range_; }
    ChannelTag tag() const noexcept { return tag_; }

    /// Copy of this table carrying a different channel tag.
    BrightnessTable with_tag(ChannelTag tag) const;

    bool same_dimensions(const BrightnessTable& other) const noexcept {
        return width_ == other.width_ && height_ == other.height_;
    }

    double min_value() const noexcept;
    double max_value() const noexcept;
    double mean_value() const noexcept;

private:
    int width_;
    int height_;
    std::vector<double> values_;
    ValueRange range_;
    ChannelTag tag_;
};

/// Divides every value by the table maximum so the brightest pixel becomes 1.
/// All-zero tables are returned unchanged. Values must be non-negative.
BrightnessTable normalize(const BrightnessTable& table);

/// Brightness inversion x -> 1 - x. Values must lie in [0, 1].
BrightnessTable invert(const BrightnessTable& table);

/// Affine display map taking the table minimum to 0 and maximum to 1.
/// A constant table maps to 0.5 everywhere. Accepts signed values.
BrightnessTable minmax_rescale(const BrightnessTable& table);

} // namespace cfuse::raster
