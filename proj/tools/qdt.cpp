// qdt: command-line front end for prospect probabilities, the quarter-law
// Monte Carlo and the double-slit demonstration.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qdt/errors.hpp"
#include "qdt/report.hpp"

namespace {

using namespace qdt;

const std::map<std::string, OutputFormat> kFormats{
    {"table", OutputFormat::Table}, {"csv", OutputFormat::Csv}, {"json", OutputFormat::Json}};
const std::map<std::string, Mode> kModes{{"raw", Mode::Raw}, {"normalized", Mode::Normalized}};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError(path + ": cannot open file");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::pair<std::size_t, std::size_t> parse_dims(const std::string& text) {
    const auto x = text.find('x');
    try {
        if (x != std::string::npos) {
            return {std::stoul(text.substr(0, x)), std::stoul(text.substr(x + 1))};
        }
    } catch (const std::exception&) {
    }
    throw ValidationError("--dims must look like 2x3, got '" + text + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum prospect probabilities: evaluation, Monte Carlo and demos", "qdt"};
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    app.require_subcommand(1);

    OutputFormat format = OutputFormat::Table;
    std::uint64_t seed = 0;

    // eval
    auto* eval = app.add_subcommand("eval", "Evaluate a scenario file");
    std::string scenario_path;
    std::optional<Mode> mode;
    std::optional<double> tolerance;
    eval->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    eval->add_option("--format", format, "table|csv|json")->transform(CLI::CheckedTransformer(kFormats));
    eval->add_option("--mode", mode, "raw|normalized (overrides the scenario)")
        ->transform(CLI::CheckedTransformer(kModes));
    eval->add_option("--seed", seed, "Seed for generated symmetry-breaking operators");
    eval->add_option("--tolerance", tolerance, "Structural check tolerance (default 1e-10)")
        ->check(CLI::PositiveNumber);

    // montecarlo
    auto* mc = app.add_subcommand("montecarlo", "Quarter-law Monte Carlo");
    mc->require_subcommand(1);
    std::uint64_t samples = 1000000;
    auto* quarter = mc->add_subcommand("quarter", "Mean |q| with p uniform and f = 1/2");
    quarter->add_option("--samples", samples, "Number of draws")->check(CLI::PositiveNumber);
    quarter->add_option("--seed", seed, "Master seed");
    quarter->add_option("--format", format, "table|csv|json")->transform(CLI::CheckedTransformer(kFormats));

    auto* survey = mc->add_subcommand("survey", "Normalized |q| over random pure states");
    std::uint64_t scenarios = 10000;
    std::string dims = "2x2";
    bool diagonal = false;
    survey->add_option("--samples", scenarios, "Number of random scenarios");
    survey->add_option("--seed", seed, "Master seed");
    survey->add_option("--dims", dims, "Factor dimensions, e.g. 2x2 (each <= 8)");
    survey->add_flag("--diagonal", diagonal, "Decohere every sampled state");
    survey->add_option("--format", format, "table|csv|json")->transform(CLI::CheckedTransformer(kFormats));

    // demo
    auto* demo = app.add_subcommand("demo", "Demonstrations");
    demo->require_subcommand(1);
    auto* slit = demo->add_subcommand("double-slit", "Two-slit fringe table through the prospect machinery");
    DoubleSlitGeometry geometry;
    std::string emit_path;
    slit->add_option("--detectors", geometry.detectors, "Number of detectors N_d");
    slit->add_option("--wavenumber", geometry.wavenumber, "Wavenumber k (lengths in wavelengths: 2*pi)");
    slit->add_option("--slit-separation", geometry.slit_separation, "Slit separation d");
    slit->add_option("--screen-distance", geometry.screen_distance, "Slit-to-screen distance L");
    slit->add_option("--screen-span", geometry.screen_span, "Width of the detector array");
    slit->add_option("--format", format, "table|csv|json")->transform(CLI::CheckedTransformer(kFormats));
    slit->add_option("--emit-scenario", emit_path, "Also write the equivalent scenario file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ErrorKind::Validation);
    }

    try {
        if (eval->parsed()) {
            const auto text = read_file(scenario_path);
            RunOptions options;
            options.seed = seed;
            options.mode_override = mode;
            if (tolerance) {
                auto& t = options.tolerances;
                t.psd = t.trace = t.idempotent = t.orthogonal = t.ppt = *tolerance;
            }
            const auto parsed = parse_scenario(text, options.tolerances);
            for (const auto& w : parsed.warnings) {
                std::cerr << "warning: " << w << "\n";
            }
            std::cout << render(run_scenario(parsed, text, options), format);
        } else if (quarter->parsed()) {
            std::cout << render(quarter_law_mc(samples, seed), format);
        } else if (survey->parsed()) {
            const auto [da, db] = parse_dims(dims);
            std::cout << render(quantum_quarter_survey(SurveyOptions{da, db, scenarios, seed, diagonal}), format);
        } else if (slit->parsed()) {
            const auto rows = double_slit_fringes(geometry);
            if (!emit_path.empty()) {
                std::ofstream out(emit_path, std::ios::binary);
                if (!out) {
                    throw ValidationError(emit_path + ": cannot write file");
                }
                out << serialize_scenario(double_slit_scenario(geometry));
            }
            std::cout << render(geometry, rows, format);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(ErrorKind::Numeric);
    }
    return 0;
}
