#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cfuse/raster/image.hpp"

namespace cfuse::metrics {

using raster::BrightnessTable;

/// Counts values into `bins` equal-width bins over [0, 1]. Bin i covers
/// [i/bins, (i+1)/bins); the last bin is closed at 1.0. Values must lie in
/// [0, 1] and bins >= 2.
std::vector<std::uint64_t> histogram(const BrightnessTable& table, int bins);

/// Shannon entropy in bits of the histogram frequencies; empty bins
/// contribute nothing. Result lies in [0, log2(bins)].
double shannon_entropy(const BrightnessTable& table, int bins);

std::size_t occupied_bins(const std::vector<std::uint64_t>& histogram);

struct QualityReport {
    std::vector<std::uint64_t> histogram;
    int bin_count = 0;
    double entropy_bits = 0.0;
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
};

QualityReport assess(const BrightnessTable& table, int bins);

enum class LineKind { Column, Row };

struct ProfileLine {
    LineKind kind = LineKind::Column;
    int index = 0;
};

/// Pixel values along one column (top to bottom) or one row (left to right).
std::vector<double> brightness_profile(const BrightnessTable& table, ProfileLine line);

} // namespace cfuse::metrics
