#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "cfuse/fusion/fusion.hpp"
#include "cfuse/metrics/contrast.hpp"
#include "cfuse/metrics/quality.hpp"
#include "cfuse/raster/io.hpp"

namespace cfuse::cli {

enum class MethodTag {
    Simple,
    Weighted,
    Amplitude,
    TNeg,
    TPos,
    PhiNeg,
    PhiPos,
    Sin2Phi,
    Cos2PhiNeg,
    Cos2PhiPos,
};

const char* to_string(MethodTag tag) noexcept;
std::optional<MethodTag> parse_method(std::string_view name);

bool method_uses_epsilon(MethodTag tag) noexcept;
bool method_uses_weights(MethodTag tag) noexcept;

/// Fully resolved fusion algorithm selection.
struct FusionMethod {
    MethodTag tag = MethodTag::Simple;
    fusion::Epsilon epsilon{0.01};
    fusion::ChannelWeights weights{};
    bool invert_output = false;
};

enum class ColorMode { Gray, Rgb };

/// Raw result plus the copy written to disk. `display_transform` records how
/// the display copy was derived from the raw table.
struct FusionOutcome {
    raster::BrightnessTable raw;
    raster::BrightnessTable display;
    const char* display_transform;
    std::size_t indeterminate_pixels = 0;
};

/// Runs one fusion method on a (VisibleA, InfraredB) pair of tables.
FusionOutcome apply_method(const raster::BrightnessTable& u,
                           const raster::BrightnessTable& v, const FusionMethod& method);

struct FuseOptions {
    std::filesystem::path u_path;
    std::filesystem::path v_path;
    std::filesystem::path out_path;
    FusionMethod method;
    int bins = 256;
    int bit_depth = 8;
    ColorMode mode = ColorMode::Gray;
    std::optional<metrics::PixelPair> pair;
    std::vector<metrics::Offset> offsets; // empty -> (1,0) and (0,1)
};

struct SweepOptions {
    std::filesystem::path u_path;
    std::filesystem::path v_path;
    std::filesystem::path out_dir;
    MethodTag method = MethodTag::TNeg; // T*/Phi* only
    std::vector<double> epsilons;
    int bins = 256;
    int bit_depth = 8;
};

struct AssessOptions {
    std::filesystem::path image_path;
    int bins = 256;
    std::optional<metrics::ProfileLine> profile;
    std::optional<std::filesystem::path> out_csv;
};

struct CompareOptions {
    std::filesystem::path u_path;
    std::filesystem::path v_path;
    std::vector<FusionMethod> methods;
    int bins = 256;
    std::optional<metrics::PixelPair> pair;
    std::optional<std::filesystem::path> out_csv;
};

struct SynthOptions {
    std::filesystem::path out_dir;
};

void cmd_fuse(const FuseOptions& options, std::ostream& report);
void cmd_sweep(const SweepOptions& options, std::ostream& report);
void cmd_assess(const AssessOptions& options, std::ostream& report);
void cmd_compare(const CompareOptions& options, std::ostream& report);
void cmd_synth(const SynthOptions& options, std::ostream& report);

/// Files cmd_synth writes, in report order.
const std::vector<std::string>& synth_manifest();

/// Machine-readable failure category: LoadError, DimensionMismatch or
/// MethodError.
const char* error_category(ErrorCode code) noexcept;

} // namespace cfuse::cli
