#include "cfuse/metrics/quality.hpp"

#include <cmath>
#include <string>

namespace cfuse::metrics {

std::vector<std::uint64_t> histogram(const BrightnessTable& table, int bins) {
    if (bins < 2) {
        raise(ErrorCode::InvalidArgument, "histogram needs at least 2 bins");
    }
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(bins), 0);
    const auto n = static_cast<std::size_t>(bins);
    for (double v : table.values()) {
        if (v < 0.0 || v > 1.0) {
            raise(ErrorCode::RangeViolation, "histogram requires values in [0, 1]");
        }
        auto bin = static_cast<std::size_t>(v * bins);
        if (bin >= n) {
            bin = n - 1; // 1.0 falls into the closed last bin
        }
        ++counts[bin];
    }
    return counts;
}

double shannon_entropy(const BrightnessTable& table, int bins) {
    const std::vector<std::uint64_t> counts = histogram(table, bins);
    const double total = static_cast<double>(table.pixel_count());
    double entropy = 0.0;
    for (std::uint64_t c : counts) {
        if (c == 0) {
            continue;
        }
        const double p = static_cast<double>(c) / total;
        entropy -= p * std::log2(p);
    }
    return entropy;
}

std::size_t occupied_bins(const std::vector<std::uint64_t>& histogram) {
    std::size_t occupied = 0;
    for (std::uint64_t c : histogram) {
        occupied += c > 0 ? 1 : 0;
    }
    return occupied;
}

QualityReport assess(const BrightnessTable& table, int bins) {
    QualityReport report;
    report.histogram = histogram(table, bins);
    report.bin_count = bins;

    const double total = static_cast<double>(table.pixel_count());
    double entropy = 0.0;
    for (std::uint64_t c : report.histogram) {
        if (c == 0) {
            continue;
        }
        const double p = static_cast<double>(c) / total;
        entropy -= p * std::log2(p);
    }
    report.entropy_bits = entropy;
    report.min = table.min_value();
    report.max = table.max_value();
    report.mean = table.mean_value();
    return report;
}

std::vector<double> brightness_profile(const BrightnessTable& table, ProfileLine line) {
    std::vector<double> values;
    if (line.kind == LineKind::Column) {
        if (line.index < 0 || line.index >= table.width()) {
            raise(ErrorCode::OutOfBounds, "column " + std::to_string(line.index) +
                                              " outside width " + std::to_string(table.width()));
        }
        values.reserve(static_cast<std::size_t>(table.height()));
        for (int y = 0; y < table.height(); ++y) {
            values.push_back(table(line.index, y));
        }
    } else {
        if (line.index < 0 || line.index >= table.height()) {
            raise(ErrorCode::OutOfBounds, "row " + std::to_string(line.index) +
                                              " outside height " + std::to_string(table.height()));
        }
        values.reserve(static_cast<std::size_t>(table.width()));
        for (int x = 0; x < table.width(); ++x) {
            values.push_back(table(x, line.index));
        }
    }
    return values;
}

} // namespace cfuse::metrics
