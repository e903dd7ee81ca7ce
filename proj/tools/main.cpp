// cfuse: visible/infrared image fusion and quality assessment front end.
//
// Exit codes: 0 success, 1 usage error, 2 data error (machine-readable
// category on stderr), 3 internal error.

#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cfuse/cli/commands.hpp"
#include "cfuse/cli/report.hpp"

namespace {

using namespace cfuse;

std::vector<int> parse_int_list(const std::string& text, std::size_t expected,
                                const std::string& what) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string token =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(token, &used));
            if (used != token.size()) {
                throw std::invalid_argument(token);
            }
        } catch (const std::exception&) {
            throw CLI::ValidationError(what, "expected integers, got '" + token + "'");
        }
        if (comma == std::string::npos) {
            break;
        }
        pos = comma + 1;
    }
    if (out.size() != expected) {
        throw CLI::ValidationError(what, "expected " + std::to_string(expected) +
                                             " comma-separated integers");
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string token =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            std::size_t used = 0;
            out.push_back(std::stod(token, &used));
            if (used != token.size()) {
                throw std::invalid_argument(token);
            }
        } catch (const std::exception&) {
            throw CLI::ValidationError(what, "expected numbers, got '" + token + "'");
        }
        if (comma == std::string::npos) {
            break;
        }
        pos = comma + 1;
    }
    return out;
}

metrics::PixelPair parse_pair(const std::string& text) {
    const std::vector<int> v = parse_int_list(text, 4, "--pair");
    return metrics::PixelPair{v[0], v[1], v[2], v[3]};
}

metrics::Offset parse_offset(const std::string& text) {
    const std::vector<int> v = parse_int_list(text, 2, "--offset");
    return metrics::Offset{v[0], v[1]};
}

metrics::ProfileLine parse_profile(const std::string& text) {
    metrics::ProfileLine line;
    std::string rest;
    if (text.rfind("col:", 0) == 0) {
        line.kind = metrics::LineKind::Column;
        rest = text.substr(4);
    } else if (text.rfind("row:", 0) == 0) {
        line.kind = metrics::LineKind::Row;
        rest = text.substr(4);
    } else {
        throw CLI::ValidationError("--profile", "expected col:N or row:N");
    }
    try {
        line.index = std::stoi(rest);
    } catch (const std::exception&) {
        throw CLI::ValidationError("--profile", "bad line index '" + rest + "'");
    }
    return line;
}

// Accepts any non-negative pair; renormalizes onto the unit circle with a
// warning when the input was off it.
fusion::ChannelWeights parse_weights(const std::string& text) {
    const std::vector<double> v = parse_double_list(text, "--weights");
    if (v.size() != 2) {
        throw CLI::ValidationError("--weights", "expected wA,wB");
    }
    const double norm = std::hypot(v[0], v[1]);
    const fusion::ChannelWeights weights = fusion::ChannelWeights::normalized(v[0], v[1]);
    if (std::abs(norm - 1.0) > 1e-12) {
        std::cerr << "warning: weights (" << cli::format_double(v[0]) << ", "
                  << cli::format_double(v[1]) << ") renormalized to ("
                  << cli::format_double(weights.w_a()) << ", "
                  << cli::format_double(weights.w_b()) << ")\n";
    }
    return weights;
}

struct MethodFlags {
    std::string method = "simple";
    double epsilon = 0.01;
    std::string weights;
    bool invert = false;
};

void add_method_flags(CLI::App* cmd, MethodFlags& flags, bool with_method_default) {
    auto* opt = cmd->add_option("--method", flags.method,
                                "Fusion method: simple, weighted, amplitude, tneg, tpos, "
                                "phineg, phipos, sin2phi, cos2phineg, cos2phipos");
    if (!with_method_default) {
        opt->required();
    }
    cmd->add_option("--epsilon", flags.epsilon,
                    "Denominator offset for tneg/tpos/phineg/phipos (default 0.01; 0 "
                    "selects the exact ratio and requires a zero-free denominator)");
    cmd->add_option("--weights", flags.weights,
                    "Channel weights wA,wB (renormalized to unit Euclidean norm)");
    cmd->add_flag("--invert", flags.invert, "Invert the written image (x -> 1-x)");
}

cli::FusionMethod resolve_method(const MethodFlags& flags, const std::string& name) {
    const std::optional<cli::MethodTag> tag = cli::parse_method(name);
    if (!tag.has_value()) {
        throw CLI::ValidationError("--method", "unknown method '" + name + "'");
    }
    cli::FusionMethod method;
    method.tag = *tag;
    method.epsilon = fusion::Epsilon(flags.epsilon);
    if (!flags.weights.empty()) {
        method.weights = parse_weights(flags.weights);
    }
    method.invert_output = flags.invert;
    return method;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Visible/infrared image fusion via a complex-valued pixel "
                 "representation, with contrast, histogram and entropy assessment"};
    app.require_subcommand(1);

    // fuse
    auto* fuse = app.add_subcommand("fuse", "Fuse a visible/infrared pair into one image");
    cli::FuseOptions fuse_options;
    MethodFlags fuse_flags;
    std::string fuse_pair, fuse_mode = "gray";
    std::vector<std::string> fuse_offsets;
    fuse->add_option("u", fuse_options.u_path, "Visible-channel image (PGM/PNG)")->required();
    fuse->add_option("v", fuse_options.v_path, "Infrared-channel image (PGM/PNG)")->required();
    fuse->add_option("--out", fuse_options.out_path, "Output image path")->required();
    add_method_flags(fuse, fuse_flags, true);
    fuse->add_option("--bins", fuse_options.bins, "Histogram bin count (default 256)");
    fuse->add_option("--depth", fuse_options.bit_depth, "Output bit depth 8|16 (default 8)");
    fuse->add_option("--pair", fuse_pair, "Contrast pixel pair x1,y1,x2,y2");
    fuse->add_option("--offset", fuse_offsets,
                     "Contrast-map offset dx,dy (repeatable; default 1,0 and 0,1)");
    fuse->add_option("--mode", fuse_mode, "gray (default) or rgb (PNG only)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Fuse at several epsilon values");
    cli::SweepOptions sweep_options;
    std::string sweep_method, sweep_epsilons;
    sweep->add_option("u", sweep_options.u_path, "Visible-channel image")->required();
    sweep->add_option("v", sweep_options.v_path, "Infrared-channel image")->required();
    sweep->add_option("--out", sweep_options.out_dir, "Output directory")->required();
    sweep->add_option("--method", sweep_method, "tneg, tpos, phineg or phipos")->required();
    sweep->add_option("--epsilons", sweep_epsilons, "Comma-separated epsilon list")->required();
    sweep->add_option("--bins", sweep_options.bins, "Histogram bin count (default 256)");
    sweep->add_option("--depth", sweep_options.bit_depth, "Output bit depth 8|16");

    // assess
    auto* assess = app.add_subcommand("assess", "Histogram, entropy and brightness stats");
    cli::AssessOptions assess_options;
    std::string assess_profile, assess_csv;
    assess->add_option("image", assess_options.image_path, "Image to assess")->required();
    assess->add_option("--bins", assess_options.bins, "Histogram bin count (default 256)");
    assess->add_option("--profile", assess_profile, "Brightness profile line col:N or row:N");
    assess->add_option("--out", assess_csv, "Histogram CSV output path");

    // compare
    auto* compare = app.add_subcommand("compare", "Entropy/contrast table across methods");
    cli::CompareOptions compare_options;
    MethodFlags compare_flags;
    std::vector<std::string> compare_methods;
    std::string compare_pair, compare_csv;
    compare->add_option("u", compare_options.u_path, "Visible-channel image")->required();
    compare->add_option("v", compare_options.v_path, "Infrared-channel image")->required();
    compare->add_option("--method", compare_methods, "Fusion method (repeatable)")->required();
    compare->add_option("--epsilon", compare_flags.epsilon, "Epsilon for the phase methods");
    compare->add_option("--weights", compare_flags.weights, "Channel weights wA,wB");
    compare->add_option("--bins", compare_options.bins, "Histogram bin count (default 256)");
    compare->add_option("--pair", compare_pair, "Contrast pixel pair x1,y1,x2,y2");
    compare->add_option("--out", compare_csv, "Comparison CSV output path");

    // synth
    auto* synth = app.add_subcommand("synth", "Write the canonical test pattern and its fusions");
    cli::SynthOptions synth_options;
    synth->add_option("--out", synth_options.out_dir, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (fuse->parsed()) {
            fuse_options.method = resolve_method(fuse_flags, fuse_flags.method);
            if (!fuse_pair.empty()) {
                fuse_options.pair = parse_pair(fuse_pair);
            }
            for (const std::string& text : fuse_offsets) {
                fuse_options.offsets.push_back(parse_offset(text));
            }
            if (fuse_mode == "rgb") {
                fuse_options.mode = cli::ColorMode::Rgb;
            } else if (fuse_mode != "gray") {
                throw CLI::ValidationError("--mode", "expected gray or rgb");
            }
            cli::cmd_fuse(fuse_options, std::cout);
        } else if (sweep->parsed()) {
            const std::optional<cli::MethodTag> tag = cli::parse_method(sweep_method);
            if (!tag.has_value()) {
                throw CLI::ValidationError("--method", "unknown method '" + sweep_method + "'");
            }
            sweep_options.method = *tag;
            sweep_options.epsilons = parse_double_list(sweep_epsilons, "--epsilons");
            cli::cmd_sweep(sweep_options, std::cout);
        } else if (assess->parsed()) {
            if (!assess_profile.empty()) {
                assess_options.profile = parse_profile(assess_profile);
            }
            if (!assess_csv.empty()) {
                assess_options.out_csv = assess_csv;
            }
            cli::cmd_assess(assess_options, std::cout);
        } else if (compare->parsed()) {
            for (const std::string& name : compare_methods) {
                compare_options.methods.push_back(resolve_method(compare_flags, name));
            }
            if (!compare_pair.empty()) {
                compare_options.pair = parse_pair(compare_pair);
            }
            if (!compare_csv.empty()) {
                compare_options.out_csv = compare_csv;
            }
            cli::cmd_compare(compare_options, std::cout);
        } else if (synth->parsed()) {
            cli::cmd_synth(synth_options, std::cout);
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const CLI::Error& e) {
        std::cerr << "error.category=UsageError\nerror.message=" << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error.category=" << cli::error_category(e.code())
                  << "\nerror.code=" << to_string(e.code()) << "\nerror.message=" << e.what()
                  << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error.category=InternalError\nerror.message=" << e.what() << "\n";
        return 3;
    }
    return 0;
}
