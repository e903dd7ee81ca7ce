#include "cfuse/cli/commands.hpp"

#include <array>
#include <chrono>
#include <fstream>
#include <utility>

#include "cfuse/cli/report.hpp"
#include "cfuse/synth/model.hpp"

namespace cfuse::cli {

namespace {

using raster::BrightnessTable;
using raster::ChannelTag;

class WallTimer {
public:
    WallTimer() : start_(std::chrono::steady_clock::now()) {}

    double elapsed_ms() const {
        const auto now = std::chrono::steady_clock::now();
        return std::chrono::duration<double, std::milli>(now - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

void ensure_parent_directory(const std::filesystem::path& path) {
    const auto parent = path.parent_path();
    if (!parent.empty()) {
        std::filesystem::create_directories(parent);
    }
}

std::string offset_string(const metrics::Offset& o) {
    return std::to_string(o.dx) + "," + std::to_string(o.dy);
}

std::string pair_string(const metrics::PixelPair& p) {
    return std::to_string(p.x1) + "," + std::to_string(p.y1) + "," + std::to_string(p.x2) +
           "," + std::to_string(p.y2);
}

// Designated pair: explicit, else the synthetic target edge when the inputs
// have the canonical test-pattern geometry.
std::optional<metrics::PixelPair> resolve_pair(const std::optional<metrics::PixelPair>& pair,
                                               const BrightnessTable& u,
                                               bool* is_default = nullptr) {
    if (pair.has_value()) {
        if (is_default != nullptr) {
            *is_default = false;
        }
        return pair;
    }
    if (u.width() == 64 && u.height() == 64) {
        if (is_default != nullptr) {
            *is_default = true;
        }
        return synth::model_target_edge_pair();
    }
    return std::nullopt;
}

void emit_method(ReportWriter& w, const FusionMethod& m, ColorMode mode) {
    w.kv("method.tag", to_string(m.tag));
    if (method_uses_epsilon(m.tag)) {
        w.kv("method.epsilon", m.epsilon.value());
    }
    if (method_uses_weights(m.tag)) {
        w.kv("method.weights",
             format_double(m.weights.w_a()) + "," + format_double(m.weights.w_b()));
    }
    w.kv("method.invert", m.invert_output ? 1 : 0);
    w.kv("method.mode", mode == ColorMode::Gray ? "gray" : "rgb");
}

void emit_input(ReportWriter& w, const std::string& prefix, const std::filesystem::path& path,
                const BrightnessTable& table, int bins) {
    w.kv(prefix + ".path", path.string());
    w.kv(prefix + ".width", table.width());
    w.kv(prefix + ".height", table.height());
    w.quality(prefix, metrics::assess(table, bins));
}

// Contrast block: measured value on the raw fused table plus the closed-form
// predictions from the two inputs at the designated pair. An implicitly
// chosen pair may land on degenerate pixels of an arbitrary 64x64 photo; the
// predictions are then skipped rather than failing the run. An explicit pair
// stays strict.
void emit_contrast(ReportWriter& w, const BrightnessTable& u, const BrightnessTable& v,
                   const BrightnessTable& raw_fused, const metrics::PixelPair& pair,
                   bool default_pair) {
    w.kv("contrast.pair", pair_string(pair));
    w.kv("contrast.pair_source", default_pair ? "synth-default" : "user");
    w.kv("contrast.source", "raw");
    w.kv("contrast.measured", metrics::local_contrast(raw_fused, pair));
    metrics::ContrastReport r;
    try {
        r = metrics::predict_simple_contrast(u.at(pair.x1, pair.y1), u.at(pair.x2, pair.y2),
                                             v.at(pair.x1, pair.y1), v.at(pair.x2, pair.y2));
    } catch (const Error& e) {
        if (!default_pair) {
            throw;
        }
        w.kv("contrast.predictions_skipped", to_string(e.code()));
        return;
    }
    w.kv("contrast.k_a", r.k_a);
    w.kv("contrast.k_b", r.k_b);
    w.kv("contrast.omega_u", r.omega_u);
    w.kv("contrast.omega_v", r.omega_v);
    w.kv("contrast.k_s_predicted", r.k_s);
    w.kv("contrast.k_t_exact", r.k_t_exact);
    w.kv("contrast.k_t_approx", r.k_t_approx);
}

void emit_contrast_maps(ReportWriter& w, const BrightnessTable& raw,
                        const std::vector<metrics::Offset>& offsets) {
    std::vector<metrics::Offset> effective = offsets;
    if (effective.empty()) {
        effective = {{1, 0}, {0, 1}};
    }
    for (std::size_t i = 0; i < effective.size(); ++i) {
        const metrics::ContrastMap cm = metrics::contrast_map(raw, effective[i]);
        double max_abs = 0.0;
        for (double k : cm.map.values()) {
            const double a = std::abs(k);
            max_abs = a > max_abs ? a : max_abs;
        }
        const std::string prefix = "contrastmap." + std::to_string(i);
        w.kv(prefix + ".offset", offset_string(effective[i]));
        w.kv(prefix + ".boundary_pixels", cm.boundary_pixels);
        w.kv(prefix + ".max_abs", max_abs);
    }
}

// BT.601 mix of three planes; equal channels pass through.
BrightnessTable luma_of(const std::array<BrightnessTable, 3>& planes) {
    const auto& r = planes[0].values();
    const auto& g = planes[1].values();
    const auto& b = planes[2].values();
    std::vector<double> out(r.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = (r[i] == g[i] && g[i] == b[i]) ? r[i]
                                                : 0.299 * r[i] + 0.587 * g[i] + 0.114 * b[i];
    }
    return BrightnessTable(planes[0].width(), planes[0].height(), std::move(out));
}

void require_same_size(const BrightnessTable& u, const BrightnessTable& v) {
    if (!u.same_dimensions(v)) {
        raise(ErrorCode::DimensionMismatch,
              "input images are " + std::to_string(u.width()) + "x" +
                  std::to_string(u.height()) + " and " + std::to_string(v.width()) + "x" +
                  std::to_string(v.height()) + " (inputs must be pre-aligned)");
    }
}

fusion::Ordering method_ordering(MethodTag tag) {
    switch (tag) {
    case MethodTag::TPos:
    case MethodTag::PhiPos:
    case MethodTag::Cos2PhiPos:
        return fusion::Ordering::Pos;
    default:
        return fusion::Ordering::Neg;
    }
}

bool method_is_phase_ratio(MethodTag tag) {
    return tag == MethodTag::TNeg || tag == MethodTag::TPos || tag == MethodTag::PhiNeg ||
           tag == MethodTag::PhiPos;
}

void cmd_fuse_gray(const FuseOptions& options, std::ostream& report, const WallTimer& timer);
void cmd_fuse_rgb(const FuseOptions& options, std::ostream& report, const WallTimer& timer);

} // namespace

const char* to_string(MethodTag tag) noexcept {
    switch (tag) {
    case MethodTag::Simple: return "simple";
    case MethodTag::Weighted: return "weighted";
    case MethodTag::Amplitude: return "amplitude";
    case MethodTag::TNeg: return "tneg";
    case MethodTag::TPos: return "tpos";
    case MethodTag::PhiNeg: return "phineg";
    case MethodTag::PhiPos: return "phipos";
    case MethodTag::Sin2Phi: return "sin2phi";
    case MethodTag::Cos2PhiNeg: return "cos2phineg";
    case MethodTag::Cos2PhiPos: return "cos2phipos";
    }
    return "?";
}

std::optional<MethodTag> parse_method(std::string_view name) {
    static constexpr std::array<MethodTag, 10> kTags = {
        MethodTag::Simple,     MethodTag::Weighted,   MethodTag::Amplitude,
        MethodTag::TNeg,       MethodTag::TPos,       MethodTag::PhiNeg,
        MethodTag::PhiPos,     MethodTag::Sin2Phi,    MethodTag::Cos2PhiNeg,
        MethodTag::Cos2PhiPos,
    };
    for (MethodTag tag : kTags) {
        if (name == to_string(tag)) {
            return tag;
        }
    }
    return std::nullopt;
}

bool method_uses_epsilon(MethodTag tag) noexcept {
    return method_is_phase_ratio(tag);
}

bool method_uses_weights(MethodTag tag) noexcept {
    switch (tag) {
    case MethodTag::Weighted:
    case MethodTag::Amplitude:
    case MethodTag::Sin2Phi:
    case MethodTag::Cos2PhiNeg:
    case MethodTag::Cos2PhiPos:
        return true;
    default:
        return false;
    }
}

const char* error_category(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::FileNotFound:
    case ErrorCode::MalformedImage:
    case ErrorCode::UnsupportedBitDepth:
    case ErrorCode::IoFailure:
        return "LoadError";
    case ErrorCode::DimensionMismatch:
        return "DimensionMismatch";
    default:
        return "MethodError";
    }
}

FusionOutcome apply_method(const BrightnessTable& u, const BrightnessTable& v,
                           const FusionMethod& method) {
    const fusion::Ordering ordering = method_ordering(method.tag);

    std::size_t indeterminate = 0;
    BrightnessTable raw = [&]() -> BrightnessTable {
        switch (method.tag) {
        case MethodTag::Simple:
            return fusion::simple_fuse(u, v);
        case MethodTag::Weighted:
            return fusion::weighted_fuse(u, v, method.weights.w_a(), method.weights.w_b());
        case MethodTag::Amplitude:
            return fusion::amplitude(fusion::make_complex(u, v, ordering, method.weights));
        case MethodTag::TNeg:
        case MethodTag::TPos:
            return fusion::tangent_image(u, v, ordering, method.epsilon);
        case MethodTag::PhiNeg:
        case MethodTag::PhiPos:
            return fusion::phi_image(u, v, ordering, method.epsilon, &indeterminate);
        case MethodTag::Sin2Phi:
            return fusion::sin2phi_image(fusion::make_complex(u, v, ordering, method.weights));
        case MethodTag::Cos2PhiNeg:
        case MethodTag::Cos2PhiPos:
            return fusion::cos2phi_image(fusion::make_complex(u, v, ordering, method.weights));
        }
        raise(ErrorCode::InvalidArgument, "unknown fusion method");
    }();

    FusionOutcome outcome{raw, raw, "raw", indeterminate};
    switch (method.tag) {
    case MethodTag::Simple:
    case MethodTag::TNeg:
    case MethodTag::TPos:
    case MethodTag::Sin2Phi:
        outcome.display = raster::normalize(raw);
        outcome.display_transform = "normalize";
        break;
    case MethodTag::Weighted:
    case MethodTag::Amplitude:
        if (raw.max_value() > 1.0) {
            outcome.display = raster::normalize(raw);
            outcome.display_transform = "normalize";
        }
        break;
    case MethodTag::PhiNeg:
    case MethodTag::PhiPos:
        break; // already scaled into [0, 1]
    case MethodTag::Cos2PhiNeg:
    case MethodTag::Cos2PhiPos:
        outcome.display = raster::minmax_rescale(raw);
        outcome.display_transform = "minmax";
        break;
    }

    if (method.invert_output) {
        outcome.display = raster::invert(outcome.display);
    }
    return outcome;
}

namespace {

void cmd_fuse_gray(const FuseOptions& options, std::ostream& report, const WallTimer& timer) {
    const BrightnessTable u = raster::load_image(options.u_path, ChannelTag::VisibleA);
    const BrightnessTable v = raster::load_image(options.v_path, ChannelTag::InfraredB);
    require_same_size(u, v);

    const FusionOutcome outcome = apply_method(u, v, options.method);
    ensure_parent_directory(options.out_path);
    raster::save_image(outcome.display, options.out_path, options.bit_depth);

    ReportWriter w(report);
    w.kv("report.schema", 1);
    w.kv("report.command", "fuse");
    emit_method(w, options.method, ColorMode::Gray);
    emit_input(w, "input.u", options.u_path, u, options.bins);
    emit_input(w, "input.v", options.v_path, v, options.bins);
    w.kv("output.path", options.out_path.string());
    w.kv("output.display_transform", outcome.display_transform);
    if (options.method.tag == MethodTag::PhiNeg || options.method.tag == MethodTag::PhiPos) {
        w.kv("output.indeterminate_pixels", outcome.indeterminate_pixels);
    }
    w.kv("output.raw_max", outcome.raw.max_value());
    w.quality("output", metrics::assess(outcome.display, options.bins));
    w.kv("quality.bins", options.bins);

    bool default_pair = false;
    if (const auto pair = resolve_pair(options.pair, u, &default_pair)) {
        emit_contrast(w, u, v, outcome.raw, *pair, default_pair);
    }
    emit_contrast_maps(w, outcome.raw, options.offsets);
    w.kv("wall_time_ms", timer.elapsed_ms());
}

void cmd_fuse_rgb(const FuseOptions& options, std::ostream& report, const WallTimer& timer) {
    const std::array<BrightnessTable, 3> u_planes = raster::load_rgb8(options.u_path);
    const std::array<BrightnessTable, 3> v_planes = raster::load_rgb8(options.v_path);
    require_same_size(u_planes[0], v_planes[0]);

    // Scalar algorithm applied to each channel independently; quantitative
    // metrics run on the BT.601 luminance of each side.
    std::array<std::optional<FusionOutcome>, 3> outcomes;
    for (std::size_t i = 0; i < 3; ++i) {
        outcomes[i] = apply_method(u_planes[i].with_tag(ChannelTag::VisibleA),
                                   v_planes[i].with_tag(ChannelTag::InfraredB),
                                   options.method);
    }
    ensure_parent_directory(options.out_path);
    raster::save_rgb8({outcomes[0]->display, outcomes[1]->display, outcomes[2]->display},
                      options.out_path);

    const BrightnessTable u_luma = luma_of(u_planes);
    const BrightnessTable v_luma = luma_of(v_planes);
    const BrightnessTable raw_luma =
        luma_of({outcomes[0]->raw, outcomes[1]->raw, outcomes[2]->raw});
    const BrightnessTable display_luma =
        luma_of({outcomes[0]->display, outcomes[1]->display, outcomes[2]->display});

    // weighted/amplitude normalize conditionally, so planes can disagree
    std::string_view transform = outcomes[0]->display_transform;
    if (transform != outcomes[1]->display_transform ||
        transform != outcomes[2]->display_transform) {
        transform = "mixed";
    }

    ReportWriter w(report);
    w.kv("report.schema", 1);
    w.kv("report.command", "fuse");
    emit_method(w, options.method, ColorMode::Rgb);
    emit_input(w, "input.u", options.u_path, u_luma, options.bins);
    emit_input(w, "input.v", options.v_path, v_luma, options.bins);
    w.kv("output.path", options.out_path.string());
    w.kv("output.display_transform", transform);
    w.kv("output.metrics_plane", "luma601");
    w.kv("output.raw_max", raw_luma.max_value());
    w.quality("output", metrics::assess(display_luma, options.bins));
    w.kv("quality.bins", options.bins);

    bool default_pair = false;
    if (const auto pair = resolve_pair(options.pair, u_luma, &default_pair)) {
        emit_contrast(w, u_luma, v_luma, raw_luma, *pair, default_pair);
    }
    emit_contrast_maps(w, raw_luma, options.offsets);
    w.kv("wall_time_ms", timer.elapsed_ms());
}

} // namespace

void cmd_fuse(const FuseOptions& options, std::ostream& report) {
    const WallTimer timer;
    if (options.mode == ColorMode::Rgb) {
        cmd_fuse_rgb(options, report, timer);
    } else {
        cmd_fuse_gray(options, report, timer);
    }
}

void cmd_sweep(const SweepOptions& options, std::ostream& report) {
    const WallTimer timer;
    if (!method_is_phase_ratio(options.method)) {
        raise(ErrorCode::InvalidArgument, "sweep supports tneg, tpos, phineg, phipos");
    }
    if (options.epsilons.empty()) {
        raise(ErrorCode::EmptySequence, "sweep needs at least one epsilon");
    }

    const BrightnessTable u = raster::load_image(options.u_path, ChannelTag::VisibleA);
    const BrightnessTable v = raster::load_image(options.v_path, ChannelTag::InfraredB);
    require_same_size(u, v);

    const fusion::Ordering ordering = method_ordering(options.method);
    const BrightnessTable& denominator = ordering == fusion::Ordering::Neg ? u : v;
    for (double e : options.epsilons) {
        if (e == 0.0 && denominator.min_value() == 0.0) {
            raise(ErrorCode::DivisionByZero,
                  "epsilon 0 is not allowed: the denominator image has zero pixels");
        }
    }

    std::filesystem::create_directories(options.out_dir);

    ReportWriter w(report);
    w.kv("report.schema", 1);
    w.kv("report.command", "sweep");
    w.kv("sweep.method", to_string(options.method));
    w.kv("sweep.count", options.epsilons.size());
    w.kv("input.u.path", options.u_path.string());
    w.kv("input.v.path", options.v_path.string());

    for (std::size_t i = 0; i < options.epsilons.size(); ++i) {
        FusionMethod method;
        method.tag = options.method;
        method.epsilon = fusion::Epsilon(options.epsilons[i]);
        const FusionOutcome outcome = apply_method(u, v, method);

        const std::filesystem::path out_path =
            options.out_dir / ("sweep_" + std::string(to_string(options.method)) + "_e" +
                               std::to_string(i) + ".pgm");
        raster::save_image(outcome.display, out_path, options.bit_depth);

        const std::string prefix = "eps." + std::to_string(i);
        w.kv(prefix + ".value", options.epsilons[i]);
        w.kv(prefix + ".out", out_path.string());
        w.kv(prefix + ".max_raw", outcome.raw.max_value());
        const metrics::QualityReport q = metrics::assess(outcome.display, options.bins);
        w.kv(prefix + ".entropy_bits", q.entropy_bits);
        w.kv(prefix + ".occupied_bins", metrics::occupied_bins(q.histogram));
    }
    w.kv("wall_time_ms", timer.elapsed_ms());
}

void cmd_assess(const AssessOptions& options, std::ostream& report) {
    const WallTimer timer;
    const BrightnessTable image = raster::load_image(options.image_path);
    const metrics::QualityReport q = metrics::assess(image, options.bins);

    ReportWriter w(report);
    w.kv("report.schema", 1);
    w.kv("report.command", "assess");
    w.kv("input.path", options.image_path.string());
    w.kv("input.width", image.width());
    w.kv("input.height", image.height());
    w.quality("input", q);
    w.kv("quality.bins", options.bins);

    if (options.out_csv.has_value()) {
        ensure_parent_directory(*options.out_csv);
        write_histogram_csv(q.histogram, options.bins, *options.out_csv);
        w.kv("histogram.csv", options.out_csv->string());
    }

    if (options.profile.has_value()) {
        const std::vector<double> line = metrics::brightness_profile(image, *options.profile);
        w.kv("profile.kind",
             options.profile->kind == metrics::LineKind::Column ? "col" : "row");
        w.kv("profile.index", options.profile->index);
        w.kv("profile.source", "file");
        w.kv("profile.length", line.size());
        std::string joined;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (i > 0) {
                joined += ',';
            }
            joined += format_double(line[i]);
        }
        w.kv("profile.values", joined);
    }
    w.kv("wall_time_ms", timer.elapsed_ms());
}

void cmd_compare(const CompareOptions& options, std::ostream& report) {
    const WallTimer timer;
    if (options.methods.empty()) {
        raise(ErrorCode::EmptySequence, "compare needs at least one method");
    }

    const BrightnessTable u = raster::load_image(options.u_path, ChannelTag::VisibleA);
    const BrightnessTable v = raster::load_image(options.v_path, ChannelTag::InfraredB);
    require_same_size(u, v);

    const std::optional<metrics::PixelPair> pair = resolve_pair(options.pair, u);

    struct Row {
        std::string name;
        double entropy_bits = 0.0;
        std::size_t occupied = 0;
        std::optional<double> contrast;
    };
    std::vector<Row> rows;

    const auto input_row = [&](const std::string& name, const BrightnessTable& t) {
        Row row;
        row.name = name;
        const metrics::QualityReport q = metrics::assess(t, options.bins);
        row.entropy_bits = q.entropy_bits;
        row.occupied = metrics::occupied_bins(q.histogram);
        if (pair.has_value()) {
            row.contrast = metrics::local_contrast(t, *pair);
        }
        return row;
    };
    rows.push_back(input_row("input_u", u));
    rows.push_back(input_row("input_v", v));

    for (const FusionMethod& method : options.methods) {
        const FusionOutcome outcome = apply_method(u, v, method);
        Row row;
        row.name = to_string(method.tag);
        const metrics::QualityReport q = metrics::assess(outcome.display, options.bins);
        row.entropy_bits = q.entropy_bits;
        row.occupied = metrics::occupied_bins(q.histogram);
        if (pair.has_value()) {
            row.contrast = metrics::local_contrast(outcome.raw, *pair);
        }
        rows.push_back(row);
    }

    ReportWriter w(report);
    w.kv("report.schema", 1);
    w.kv("report.command", "compare");
    w.kv("compare.bins", options.bins);
    if (pair.has_value()) {
        w.kv("compare.pair", pair_string(*pair));
    }
    w.kv("input.u.path", options.u_path.string());
    w.kv("input.v.path", options.v_path.string());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string prefix = "row." + std::to_string(i);
        w.kv(prefix + ".method", rows[i].name);
        w.kv(prefix + ".entropy_bits", rows[i].entropy_bits);
        w.kv(prefix + ".occupied_bins", rows[i].occupied);
        if (rows[i].contrast.has_value()) {
            w.kv(prefix + ".contrast", *rows[i].contrast);
        }
    }

    if (options.out_csv.has_value()) {
        ensure_parent_directory(*options.out_csv);
        std::ofstream csv(*options.out_csv);
        if (!csv) {
            raise(ErrorCode::IoFailure, "cannot create " + options.out_csv->string());
        }
        csv << "method,entropy_bits,occupied_bins,pair_contrast\n";
        for (const Row& row : rows) {
            csv << row.name << ',' << format_double(row.entropy_bits) << ',' << row.occupied
                << ',' << (row.contrast.has_value() ? format_double(*row.contrast) : "")
                << '\n';
        }
        if (!csv) {
            raise(ErrorCode::IoFailure, "write failed for " + options.out_csv->string());
        }
        w.kv("compare.csv", options.out_csv->string());
    }
    w.kv("wall_time_ms", timer.elapsed_ms());
}

const std::vector<std::string>& synth_manifest() {
    static const std::vector<std::string> kFiles = {
        "model_u.pgm",      "model_v.pgm",      "fused_simple.pgm",
        "fused_tpos.pgm",   "fused_tneg.pgm",   "fused_phipos.pgm",
        "fused_phineg.pgm", "fused_tneg_invpos.pgm",
    };
    return kFiles;
}

void cmd_synth(const SynthOptions& options, std::ostream& report) {
    const WallTimer timer;
    std::filesystem::create_directories(options.out_dir);

    const auto [u, v] = synth::model_pair_default();

    // The canonical pair is strictly positive, so the ratio images need no
    // regularization here.
    const fusion::Epsilon exact(0.0);
    const BrightnessTable simple = raster::normalize(fusion::simple_fuse(u, v));
    const BrightnessTable tpos =
        raster::normalize(fusion::tangent_image(u, v, fusion::Ordering::Pos, exact));
    const BrightnessTable tneg =
        raster::normalize(fusion::tangent_image(u, v, fusion::Ordering::Neg, exact));
    const BrightnessTable phipos = fusion::phi_image(u, v, fusion::Ordering::Pos, exact);
    const BrightnessTable phineg = fusion::phi_image(u, v, fusion::Ordering::Neg, exact);
    const BrightnessTable tneg_invpos = raster::invert(tneg);

    const std::array<const BrightnessTable*, 8> tables = {&u,      &v,      &simple, &tpos,
                                                          &tneg,   &phipos, &phineg, &tneg_invpos};
    const auto& names = synth_manifest();

    ReportWriter w(report);
    w.kv("report.schema", 1);
    w.kv("report.command", "synth");
    w.kv("synth.dir", options.out_dir.string());
    std::string joined;
    for (std::size_t i = 0; i < names.size(); ++i) {
        const std::filesystem::path path = options.out_dir / names[i];
        raster::save_image(*tables[i], path, raster::ImageFormat::Pgm, 16,
                           raster::PgmFlavor::Binary);
        if (i > 0) {
            joined += ',';
        }
        joined += names[i];
    }
    w.kv("synth.files", joined);
    w.kv("wall_time_ms", timer.elapsed_ms());
}

} // namespace cfuse::cli
