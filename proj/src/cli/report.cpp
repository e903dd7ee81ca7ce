#include "cfuse/cli/report.hpp"

#include <cstdio>
#include <fstream>

#include "cfuse/error.hpp"

namespace cfuse::cli {

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void ReportWriter::kv(std::string_view key, std::string_view value) {
    out_ << key << '=' << value << '\n';
}

void ReportWriter::quality(std::string_view prefix, const metrics::QualityReport& q) {
    const std::string p(prefix);
    kv(p + ".min", q.min);
    kv(p + ".max", q.max);
    kv(p + ".mean", q.mean);
    kv(p + ".entropy_bits", q.entropy_bits);
    kv(p + ".occupied_bins", metrics::occupied_bins(q.histogram));
}

void write_histogram_csv(const std::vector<std::uint64_t>& histogram, int bins,
                         const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        raise(ErrorCode::IoFailure, "cannot create " + path.string());
    }
    out << "bin_index,lower_edge,count\n";
    for (int i = 0; i < bins; ++i) {
        out << i << ',' << format_double(static_cast<double>(i) / bins) << ','
            << histogram[static_cast<std::size_t>(i)] << '\n';
    }
    if (!out) {
        raise(ErrorCode::IoFailure, "write failed for " + path.string());
    }
}

} // namespace cfuse::cli
