#pragma once

#include <cstddef>
#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "cfuse/metrics/quality.hpp"

namespace cfuse::cli {

/// Shortest decimal form that round-trips the exact double (17 significant
/// digits), so reports are machine-parseable and bit-faithful.
std::string format_double(double value);

/// Line-delimited key=value report stream. Keys are emitted in the order the
/// command writes them, which is fixed per command.
class ReportWriter {
public:
    explicit ReportWriter(std::ostream& out) : out_(out) {}

    void kv(std::string_view key, std::string_view value);
    void kv(std::string_view key, const char* value) { kv(key, std::string_view(value)); }
    void kv(std::string_view key, const std::string& value) { kv(key, std::string_view(value)); }
    void kv(std::string_view key, double value) { kv(key, format_double(value)); }
    void kv(std::string_view key, int value) { kv(key, std::to_string(value)); }
    void kv(std::string_view key, std::size_t value) { kv(key, std::to_string(value)); }

    /// Emits the scalar summary of a quality report under `prefix.`.
    void quality(std::string_view prefix, const metrics::QualityReport& q);

private:
    std::ostream& out_;
};

/// bin_index,lower_edge,count rows with a header line.
void write_histogram_csv(const std::vector<std::uint64_t>& histogram, int bins,
                         const std::filesystem::path& path);

} // namespace cfuse::cli
