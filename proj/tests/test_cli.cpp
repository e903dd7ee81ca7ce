#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "cfuse/cli/commands.hpp"
#include "cfuse/raster/io.hpp"
#include "cfuse/synth/model.hpp"
#include "support/test_images.hpp"

using namespace cfuse;
using raster::BrightnessTable;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::filesystem::path work_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "cfuse_test_cli";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const auto out_file = work_dir() / ("stdout_" + std::to_string(counter) + ".txt");
    const auto err_file = work_dir() / ("stderr_" + std::to_string(counter) + ".txt");
    ++counter;

    const std::string command = std::string(CFUSE_CLI_PATH) + " " + args + " > " +
                                out_file.string() + " 2> " + err_file.string();
    const int status = std::system(command.c_str());

    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out_file);
    result.err = slurp(err_file);
    return result;
}

std::map<std::string, std::string> parse_report(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq != std::string::npos) {
            kv[line.substr(0, eq)] = line.substr(eq + 1);
        }
    }
    return kv;
}

double report_number(const std::map<std::string, std::string>& kv, const std::string& key) {
    const auto it = kv.find(key);
    REQUIRE_MESSAGE(it != kv.end(), "missing report key: ", key);
    return std::stod(it->second);
}

std::string strip_wall_time(const std::string& text) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("wall_time_ms=", 0) != 0) {
            out << line << '\n';
        }
    }
    return out.str();
}

// Model pair written once for the whole suite, 16-bit so the canonical
// contrasts survive quantization to ~1e-4.
struct Fixtures {
    std::filesystem::path u_pgm;
    std::filesystem::path v_pgm;

    Fixtures() {
        const auto dir = work_dir();
        u_pgm = dir / "model_u16.pgm";
        v_pgm = dir / "model_v16.pgm";
        const auto [u, v] = synth::model_pair_default();
        raster::save_image(u, u_pgm, raster::ImageFormat::Pgm, 16);
        raster::save_image(v, v_pgm, raster::ImageFormat::Pgm, 16);
    }
};

const Fixtures& fixtures() {
    static Fixtures f;
    return f;
}

} // namespace

TEST_CASE("synth writes the fixed manifest deterministically") {
    const auto dir_a = work_dir() / "synth_a";
    const auto dir_b = work_dir() / "synth_b";

    const RunResult a = run_cli("synth --out " + dir_a.string());
    REQUIRE(a.exit_code == 0);
    const RunResult b = run_cli("synth --out " + dir_b.string());
    REQUIRE(b.exit_code == 0);

    const auto& manifest = cli::synth_manifest();
    REQUIRE(manifest.size() == 8);
    for (const std::string& name : manifest) {
        CAPTURE(name);
        REQUIRE(std::filesystem::exists(dir_a / name));
        CHECK(slurp(dir_a / name) == slurp(dir_b / name));
    }

    const auto kv = parse_report(a.out);
    CHECK(kv.at("report.command") == "synth");
    CHECK(kv.at("synth.files") ==
          "model_u.pgm,model_v.pgm,fused_simple.pgm,fused_tpos.pgm,fused_tneg.pgm,"
          "fused_phipos.pgm,fused_phineg.pgm,fused_tneg_invpos.pgm");

    // ratio renderings carry the expected polarity: the target square is
    // brighter than the field in the neg ordering, darker in pos
    const BrightnessTable tneg = raster::load_image(dir_a / "fused_tneg.pgm");
    const BrightnessTable tpos = raster::load_image(dir_a / "fused_tpos.pgm");
    CHECK(tneg(31, 31) > tneg(20, 20));
    CHECK(tpos(31, 31) < tpos(20, 20));

    const BrightnessTable phineg = raster::load_image(dir_a / "fused_phineg.pgm");
    const BrightnessTable phipos = raster::load_image(dir_a / "fused_phipos.pgm");
    CHECK(phineg(31, 31) > phineg(20, 20));
    CHECK(phipos(31, 31) < phipos(20, 20));

    const BrightnessTable inv = raster::load_image(dir_a / "fused_tneg_invpos.pgm");
    CHECK(inv(31, 31) < inv(20, 20));

    // simple fusion of the canonical pair is uniform: the target vanishes
    const BrightnessTable simple = raster::load_image(dir_a / "fused_simple.pgm");
    CHECK(simple.min_value() == simple.max_value());
}

TEST_CASE("fuse simple reports a vanishing target-edge contrast") {
    const auto out = work_dir() / "fused_simple.pgm";
    const RunResult r = run_cli("fuse " + fixtures().u_pgm.string() + " " +
                                fixtures().v_pgm.string() + " --out " + out.string() +
                                " --method simple");
    REQUIRE(r.exit_code == 0);
    const auto kv = parse_report(r.out);
    CHECK(kv.at("report.command") == "fuse");
    CHECK(kv.at("method.tag") == "simple");
    CHECK(kv.at("contrast.pair_source") == "synth-default");
    CHECK(report_number(kv, "contrast.measured") == 0.0);
    CHECK(report_number(kv, "contrast.k_s_predicted") == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(report_number(kv, "contrast.omega_u") == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(std::filesystem::exists(out));
}

TEST_CASE("fuse tneg at epsilon zero lands on the canonical ratio contrast") {
    const auto out = work_dir() / "fused_tneg.pgm";
    const RunResult r = run_cli("fuse " + fixtures().u_pgm.string() + " " +
                                fixtures().v_pgm.string() + " --out " + out.string() +
                                " --method tneg --epsilon 0 --depth 16");
    REQUIRE(r.exit_code == 0);
    const auto kv = parse_report(r.out);
    const double measured = report_number(kv, "contrast.measured");
    CHECK(measured == doctest::Approx(-18.0 / 41.0).epsilon(2e-4));
    // the closed-form prediction from the loaded pixels is exact algebra
    CHECK(measured == doctest::Approx(report_number(kv, "contrast.k_t_exact")).epsilon(1e-12));
    CHECK(kv.at("output.display_transform") == "normalize");
    CHECK(report_number(kv, "output.max") == 1.0);
}

TEST_CASE("fuse weighted (1,0) passes the visible channel through") {
    const auto out = work_dir() / "fused_w10.pgm";
    const RunResult r = run_cli("fuse " + fixtures().u_pgm.string() + " " +
                                fixtures().v_pgm.string() + " --out " + out.string() +
                                " --method weighted --weights 1,0 --depth 16");
    REQUIRE(r.exit_code == 0);
    const BrightnessTable u = raster::load_image(fixtures().u_pgm);
    const BrightnessTable w = raster::load_image(out);
    for (std::size_t i = 0; i < u.pixel_count(); ++i) {
        CHECK(std::abs(u.values()[i] - w.values()[i]) <= 1.0 / 65535.0);
    }
    CHECK(parse_report(r.out).at("output.display_transform") == "raw");
}

TEST_CASE("fuse renormalizes off-circle weights with a warning") {
    const auto out = work_dir() / "fused_w11.pgm";
    const RunResult r = run_cli("fuse " + fixtures().u_pgm.string() + " " +
                                fixtures().v_pgm.string() + " --out " + out.string() +
                                " --method weighted --weights 1,1");
    REQUIRE(r.exit_code == 0);
    CHECK(r.err.find("renormalized") != std::string::npos);
    const auto kv = parse_report(r.out);
    CHECK(kv.at("method.weights").find("0.70710678118654746") != std::string::npos);
}

TEST_CASE("fuse report is stable across runs up to the wall time") {
    const auto out = work_dir() / "fused_det.pgm";
    const std::string args = "fuse " + fixtures().u_pgm.string() + " " +
                             fixtures().v_pgm.string() + " --out " + out.string() +
                             " --method phineg";
    const RunResult first = run_cli(args);
    const RunResult second = run_cli(args);
    REQUIRE(first.exit_code == 0);
    REQUIRE(second.exit_code == 0);
    CHECK(strip_wall_time(first.out) == strip_wall_time(second.out));
}

TEST_CASE("fuse --invert flips the written rendering") {
    const auto plain = work_dir() / "fused_plain.pgm";
    const auto flipped = work_dir() / "fused_flipped.pgm";
    const std::string base = "fuse " + fixtures().u_pgm.string() + " " +
                             fixtures().v_pgm.string() + " --method tneg --depth 16 --out ";
    REQUIRE(run_cli(base + plain.string()).exit_code == 0);
    REQUIRE(run_cli(base + flipped.string() + " --invert").exit_code == 0);

    const BrightnessTable a = raster::load_image(plain);
    const BrightnessTable b = raster::load_image(flipped);
    for (std::size_t i = 0; i < a.pixel_count(); ++i) {
        CHECK(std::abs((1.0 - a.values()[i]) - b.values()[i]) <= 1.0 / 65535.0);
    }
}

TEST_CASE("assess reports entropy, extrema and the histogram CSV") {
    const auto constant_path = work_dir() / "constant.pgm";
    raster::save_image(BrightnessTable::filled(16, 16, 0.25), constant_path, 8);
    const RunResult c = run_cli("assess " + constant_path.string());
    REQUIRE(c.exit_code == 0);
    CHECK(report_number(parse_report(c.out), "input.entropy_bits") == 0.0);

    const auto csv_path = work_dir() / "hist.csv";
    const RunResult r = run_cli("assess " + fixtures().u_pgm.string() + " --out " +
                                csv_path.string() + " --profile col:0");
    REQUIRE(r.exit_code == 0);
    const auto kv = parse_report(r.out);

    // two brightness levels -> two occupied bins
    CHECK(report_number(kv, "input.occupied_bins") == 2.0);
    CHECK(kv.at("profile.kind") == "col");
    CHECK(report_number(kv, "profile.length") == 64.0);

    // entropy equals an independent recount of the quantized samples
    const BrightnessTable u = raster::load_image(fixtures().u_pgm);
    CHECK(report_number(kv, "input.entropy_bits") == testsupport::entropy_oracle(u, 256));

    const std::string csv = slurp(csv_path);
    CHECK(csv.rfind("bin_index,lower_edge,count", 0) == 0);
    std::uint64_t total = 0;
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line); // header
    int rows = 0;
    while (std::getline(lines, line)) {
        total += std::stoull(line.substr(line.rfind(',') + 1));
        ++rows;
    }
    CHECK(rows == 256);
    CHECK(total == 64 * 64);
}

TEST_CASE("explicit pair and offsets land in the report") {
    const auto out = work_dir() / "fused_flags.pgm";
    const RunResult r = run_cli("fuse " + fixtures().u_pgm.string() + " " +
                                fixtures().v_pgm.string() + " --out " + out.string() +
                                " --method simple --pair 31,31,20,20 --offset 2,0");
    REQUIRE(r.exit_code == 0);
    const auto kv = parse_report(r.out);
    CHECK(kv.at("contrast.pair") == "31,31,20,20");
    CHECK(kv.at("contrast.pair_source") == "user");
    CHECK(kv.at("contrastmap.0.offset") == "2,0");
    CHECK(kv.count("contrastmap.1.offset") == 0);
}

TEST_CASE("a single-method comparison matches fuse plus assess") {
    const auto out = work_dir() / "fused_single.pgm";
    const std::string common =
        fixtures().u_pgm.string() + " " + fixtures().v_pgm.string();
    const RunResult fused = run_cli("fuse " + common + " --out " + out.string() +
                                    " --method phipos");
    const RunResult compared = run_cli("compare " + common + " --method phipos");
    REQUIRE(fused.exit_code == 0);
    REQUIRE(compared.exit_code == 0);

    const auto fuse_kv = parse_report(fused.out);
    const auto cmp_kv = parse_report(compared.out);
    CHECK(cmp_kv.at("row.2.method") == "phipos");
    CHECK(cmp_kv.at("row.2.entropy_bits") == fuse_kv.at("output.entropy_bits"));
    CHECK(cmp_kv.at("row.2.occupied_bins") == fuse_kv.at("output.occupied_bins"));
    CHECK(cmp_kv.at("row.0.entropy_bits") == fuse_kv.at("input.u.entropy_bits"));
    CHECK(report_number(cmp_kv, "row.2.contrast") ==
          doctest::Approx(report_number(fuse_kv, "contrast.measured")).epsilon(1e-15));
}

TEST_CASE("compare runs the whole method menu after the input rows") {
    const auto csv_path = work_dir() / "compare.csv";
    const RunResult r = run_cli(
        "compare " + fixtures().u_pgm.string() + " " + fixtures().v_pgm.string() +
        " --method simple --method weighted --method amplitude --method tneg"
        " --method tpos --method phineg --method phipos --method sin2phi"
        " --method cos2phineg --method cos2phipos --out " +
        csv_path.string());
    REQUIRE(r.exit_code == 0);
    const auto kv = parse_report(r.out);
    CHECK(kv.at("row.0.method") == "input_u");
    CHECK(kv.at("row.1.method") == "input_v");
    const char* expected[] = {"simple", "weighted", "amplitude", "tneg",       "tpos",
                              "phineg", "phipos",   "sin2phi",   "cos2phineg", "cos2phipos"};
    for (int i = 0; i < 10; ++i) {
        CHECK(kv.at("row." + std::to_string(i + 2) + ".method") == expected[i]);
    }

    // canonical pair: the ratio images keep the edge the sum image erases
    CHECK(report_number(kv, "row.2.contrast") == doctest::Approx(0.0).epsilon(1e-9));
    const double tneg_contrast = report_number(kv, "row.5.contrast");
    const double tpos_contrast = report_number(kv, "row.6.contrast");
    CHECK(tneg_contrast < -0.4);
    CHECK(tpos_contrast > 0.4);
    CHECK(report_number(kv, "row.6.entropy_bits") >=
          report_number(kv, "row.2.entropy_bits"));

    const std::string csv = slurp(csv_path);
    CHECK(csv.rfind("method,entropy_bits,occupied_bins,pair_contrast", 0) == 0);
    CHECK(csv.find("\ninput_u,") != std::string::npos);
    CHECK(csv.find("\ntpos,") != std::string::npos);
    CHECK(csv.find("\ncos2phipos,") != std::string::npos);
}

TEST_CASE("sweep writes one image per epsilon with a shrinking raw maximum") {
    const auto dir = work_dir() / "sweep_out";
    const RunResult r = run_cli("sweep " + fixtures().u_pgm.string() + " " +
                                fixtures().v_pgm.string() + " --out " + dir.string() +
                                " --method tpos --epsilons 1e-5,0.01,0.2,1,2");
    REQUIRE(r.exit_code == 0);
    const auto kv = parse_report(r.out);
    CHECK(kv.at("sweep.method") == "tpos");
    double previous = 1e300;
    for (int i = 0; i < 5; ++i) {
        const std::string prefix = "eps." + std::to_string(i);
        const double max_raw = report_number(kv, prefix + ".max_raw");
        CHECK(max_raw <= previous);
        previous = max_raw;
        CHECK(std::filesystem::exists(kv.at(prefix + ".out")));
    }

    // the two small-epsilon renderings are nearly indistinguishable
    const BrightnessTable tiny = raster::load_image(kv.at("eps.0.out"));
    const BrightnessTable small = raster::load_image(kv.at("eps.1.out"));
    CHECK(testsupport::mean_abs_difference(tiny, small) < 0.01);
}

TEST_CASE("sweep rejects epsilon zero when the denominator has holes") {
    const auto [u, v] = synth::model_pair_default();
    const auto u_holes = work_dir() / "u_holes.pgm";
    raster::save_image(testsupport::with_zero_patch(u, 4, 4, 8, 8), u_holes, 16);

    const auto dir = work_dir() / "sweep_zero";
    const RunResult r = run_cli("sweep " + u_holes.string() + " " +
                                fixtures().v_pgm.string() + " --out " + dir.string() +
                                " --method tneg --epsilons 0.01,0");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("error.category=MethodError") != std::string::npos);
    CHECK(r.err.find("error.code=DivisionByZero") != std::string::npos);
}

TEST_CASE("rgb mode fuses the channels independently") {
    const auto u_png = work_dir() / "u_rgb.png";
    const auto v_png = work_dir() / "v_rgb.png";
    const auto [u, v] = synth::model_pair_default();
    // tint the channels differently so the fused planes differ
    raster::save_rgb8({u, testsupport::scaled(u, 0.5), testsupport::scaled(u, 0.25)}, u_png);
    raster::save_rgb8({testsupport::scaled(v, 0.25), v, testsupport::scaled(v, 0.5)}, v_png);

    const auto out = work_dir() / "fused_rgb.png";
    const RunResult r = run_cli("fuse " + u_png.string() + " " + v_png.string() + " --out " +
                                out.string() + " --method tpos --mode rgb");
    REQUIRE(r.exit_code == 0);
    const auto kv = parse_report(r.out);
    CHECK(kv.at("method.mode") == "rgb");
    CHECK(kv.at("output.metrics_plane") == "luma601");

    const auto planes = raster::load_rgb8(out);
    CHECK(planes[0].values() != planes[1].values());
}

TEST_CASE("an implicit pair over black pixels degrades to a note, not a failure") {
    // 64x64 inputs trigger the default pair; zero out that neighborhood
    const auto [u, v] = synth::model_pair_default();
    const auto u_black = work_dir() / "u_black_pair.pgm";
    const auto v_black = work_dir() / "v_black_pair.pgm";
    raster::save_image(testsupport::with_zero_patch(u, 24, 28, 12, 12), u_black, 16);
    raster::save_image(testsupport::with_zero_patch(v, 24, 28, 12, 12), v_black, 16);

    const auto out = work_dir() / "fused_black_pair.pgm";
    const RunResult r = run_cli("fuse " + u_black.string() + " " + v_black.string() +
                                " --out " + out.string() + " --method simple");
    REQUIRE(r.exit_code == 0);
    const auto kv = parse_report(r.out);
    CHECK(kv.at("contrast.predictions_skipped") == "ZeroBrightnessPair");
    CHECK(report_number(kv, "contrast.measured") == 0.0);
}

TEST_CASE("failure paths use the documented exit codes and categories") {
    const RunResult missing = run_cli("fuse /nope_u.pgm /nope_v.pgm --out /tmp/x.pgm");
    CHECK(missing.exit_code == 2);
    CHECK(missing.err.find("error.category=LoadError") != std::string::npos);

    const auto small = work_dir() / "small.pgm";
    raster::save_image(BrightnessTable::filled(8, 8, 0.5), small, 8);
    const RunResult mismatch = run_cli("fuse " + fixtures().u_pgm.string() + " " +
                                       small.string() + " --out /tmp/x.pgm");
    CHECK(mismatch.exit_code == 2);
    CHECK(mismatch.err.find("error.category=DimensionMismatch") != std::string::npos);

    const RunResult usage = run_cli("fuse");
    CHECK(usage.exit_code == 1);

    const RunResult bad_method = run_cli("fuse " + fixtures().u_pgm.string() + " " +
                                         fixtures().v_pgm.string() +
                                         " --out /tmp/x.pgm --method sparkle");
    CHECK(bad_method.exit_code == 1);

    const RunResult help = run_cli("--help");
    CHECK(help.exit_code == 0);
}
