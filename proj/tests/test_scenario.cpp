#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "qdt/errors.hpp"
#include "qdt/random.hpp"
#include "qdt/report.hpp"
#include "qdt/scenario.hpp"

using namespace qdt;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kMinimal = R"({
  "dim_a": 1, "dim_b": 1,
  "state": {"kind": "pure", "vector": [[1, 0]]},
  "prospects": [{"label": "only", "event_a": 0, "amplitudes": [[1, 0]]}]
})";

std::string two_by_two(const std::string& state, const std::string& extra = "") {
    return R"({"dim_a": 2, "dim_b": 2, "state": )" + state + extra +
           R"(, "prospects": [
        {"label": "a", "event_a": 0, "amplitudes": [[0.6, 0], [0, 0.8]]},
        {"label": "b", "event_a": 1, "amplitudes": [[1, 0], [0, 0]]}]})";
}

const std::string kPure = R"({"kind": "pure", "vector": [[0.5, 0], [0.5, 0], [0.5, 0], [0, 0.5]]})";

std::string error_message(const std::string& text) {
    try {
        parse_scenario(text);
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("minimal scenario gives p = 1 with defaults") {
    const auto parsed = parse_scenario(kMinimal);
    CHECK(parsed.warnings.empty());
    CHECK(parsed.scenario.mode == Mode::Normalized);
    CHECK_FALSE(parsed.scenario.observable_a.has_value());
    const auto r = resolve_scenario(parsed.scenario);
    const auto raw = evaluate(r.lattice, r.state, Mode::Raw);
    REQUIRE(raw.rows.size() == 1);
    CHECK(raw.rows[0].p == 1.0);
    CHECK(raw.rows[0].q == 0.0);
}

TEST_CASE("defaults: omitted observables are computational") {
    const auto r = resolve_scenario(parse_scenario(two_by_two(kPure)).scenario);
    CHECK(r.observable_a.matrix() == ComplexMatrix::diagonal({0.0, 1.0}));
    CHECK(r.system.space.basis_b == ComplexMatrix::identity(2));
}

TEST_CASE("parse errors name the offending field") {
    const std::string bad_complex =
        two_by_two(R"({"kind": "pure", "vector": [[0.5, 0], [1], [0.5, 0], [0.5, 0]]})");
    CHECK_THROWS_AS(parse_scenario(bad_complex), ParseError);
    CHECK(error_message(bad_complex).find("state.vector[1]") != std::string::npos);

    const std::string bad_amp = R"({"dim_a": 1, "dim_b": 1, "state": {"kind": "pure", "vector": [[1, 0]]},
        "prospects": [{"label": "only", "event_a": 0, "amplitudes": [[1, 0, 0]]}]})";
    CHECK(error_message(bad_amp).find("prospects[0].amplitudes[0]") != std::string::npos);

    CHECK_THROWS_AS(parse_scenario("{\"dim_a\": 1,\n \"dim_b\": }"), ParseError);
    CHECK(error_message("{\"dim_a\": 1,\n \"dim_b\": }").find("line 2") != std::string::npos);

    CHECK_THROWS_AS(parse_scenario(two_by_two(kPure, R"(, "colour": "red")")), ParseError);
    CHECK(error_message(two_by_two(kPure, R"(, "colour": "red")")).find("colour") != std::string::npos);
    CHECK_THROWS_AS(parse_scenario(two_by_two(kPure, R"(, "mode": "loud")")), ParseError);
    CHECK_THROWS_AS(parse_scenario(two_by_two(R"({"kind": "gas", "vector": []})")), ParseError);
    CHECK_THROWS_AS(parse_scenario(R"({"dim_a": 0, "dim_b": 1, "state": {"kind": "pure", "vector": []}, "prospects": []})"),
                    ParseError);
}

TEST_CASE("validation errors") {
    CHECK_THROWS_AS(parse_scenario(two_by_two(R"({"kind": "pure", "vector": [[1, 0], [0, 0]]})")), ValidationError);
    CHECK_THROWS_AS(parse_scenario(two_by_two(R"({"kind": "pure", "vector": [[0, 0], [0, 0], [0, 0], [0, 0]]})")),
                    ValidationError);
    // trace 0.9: never auto-corrected
    const std::string short_trace = R"({"kind": "mixed", "matrix": [
        [[0.3, 0], [0, 0], [0, 0], [0, 0]], [[0, 0], [0.2, 0], [0, 0], [0, 0]],
        [[0, 0], [0, 0], [0.2, 0], [0, 0]], [[0, 0], [0, 0], [0, 0], [0.2, 0]]]})";
    CHECK_THROWS_AS(parse_scenario(two_by_two(short_trace)), ValidationError);
    CHECK_THROWS_AS(parse_scenario(two_by_two(kPure, R"(, "observable_a": {"matrix": [[[0, 0], [1, 0]], [[0, 0], [0, 0]]]})")),
                    ValidationError);

    const std::string duplicate = R"({"dim_a": 2, "dim_b": 1, "state": {"kind": "pure", "vector": [[1, 0], [0, 0]]},
        "prospects": [{"label": "a", "event_a": 0, "amplitudes": [[1, 0]]},
                      {"label": "b", "event_a": 0, "amplitudes": [[1, 0]]}]})";
    CHECK_THROWS_AS(parse_scenario(duplicate), ValidationError);
    const std::string missing = R"({"dim_a": 2, "dim_b": 1, "state": {"kind": "pure", "vector": [[1, 0], [0, 0]]},
        "prospects": [{"label": "a", "event_a": 0, "amplitudes": [[1, 0]]}]})";
    CHECK_THROWS_AS(parse_scenario(missing), ValidationError);
    const std::string out_of_range = R"({"dim_a": 1, "dim_b": 1, "state": {"kind": "pure", "vector": [[1, 0]]},
        "prospects": [{"label": "a", "event_a": 3, "amplitudes": [[1, 0]]}]})";
    CHECK_THROWS_AS(parse_scenario(out_of_range), ValidationError);
    const std::string bad_nu = two_by_two(kPure, R"(, "observable_a": {"matrix": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]],
        "lift": {"nu_sequence": [1e-3, 1e-2]}})");
    CHECK_THROWS_AS(parse_scenario(bad_nu), ValidationError);
}

TEST_CASE("unnormalized pure vector warns and is renormalized on use") {
    const auto parsed = parse_scenario(two_by_two(R"({"kind": "pure", "vector": [[1, 0], [1, 0], [1, 0], [0, 1]]})"));
    REQUIRE(parsed.warnings.size() == 1);
    CHECK(parsed.warnings[0].find("state.vector") != std::string::npos);
    const auto r = resolve_scenario(parsed.scenario);
    CHECK(std::abs(r.state.rho().trace() - 1.0) <= 1e-15);

    const auto close = parse_scenario(two_by_two(R"({"kind": "pure", "vector": [[0.5, 0], [0.5, 0], [0.5, 0], [0, 0.5000001]]})"));
    CHECK(close.warnings.empty());
}

TEST_CASE("serialize then parse returns an equal scenario") {
    auto rng = make_stream(601, 0);
    for (int trial = 0; trial < 30; ++trial) {
        Scenario s;
        s.dim_a = 1 + trial % 3;
        s.dim_b = 1 + (trial / 3) % 3;
        const std::size_t d = s.dim_a * s.dim_b;
        if (trial % 2 == 0) {
            s.state.kind = StateSpec::Kind::Pure;
            s.state.vector = random_unit_vector(rng, d);
        } else {
            s.state.kind = StateSpec::Kind::Mixed;
            s.state.matrix = random_density_matrix(rng, d, 1 + trial % d);
        }
        if (trial % 3 == 0) {
            s.observable_b = ObservableSpec{random_hermitian(rng, s.dim_b), std::nullopt};
        }
        if (trial % 5 == 0) {
            LiftSpec lift;
            lift.gamma = random_hermitian(rng, s.dim_a);
            lift.convergence_tol = 1e-9;
            s.observable_a = ObservableSpec{ComplexMatrix::identity(s.dim_a), lift};
        } else if (trial % 5 == 1) {
            s.observable_a = ObservableSpec{ComplexMatrix::identity(s.dim_a), LiftSpec{}};
        }
        const std::size_t events = s.observable_a ? 1 : s.dim_a;
        for (std::size_t n = 0; n < events; ++n) {
            s.prospects.push_back(ProspectSpec{"p" + std::to_string(n), n, random_complex_vector(rng, s.dim_b)});
        }
        s.mode = trial % 4 == 0 ? Mode::Raw : Mode::Normalized;

        const auto text = serialize_scenario(s);
        const auto back = parse_scenario(text);
        CHECK(back.scenario == s);
        CHECK(serialize_scenario(back.scenario) == text);
    }
}

TEST_CASE("shipped scenarios parse") {
    const std::string dir = QDT_SCENARIO_DIR;
    const auto slit = parse_scenario(slurp(dir + "/double_slit.json"));
    CHECK(slit.scenario.dim_a == 16);
    CHECK(slit.scenario.dim_b == 2);
    CHECK(slit.scenario.prospects.size() == 16);
    CHECK(slit.warnings.empty());
    for (const char* name : {"minimal.json", "product_state.json", "diagonal_state.json", "bell.json", "degenerate_lift.json"}) {
        INFO(name);
        const auto parsed = parse_scenario(slurp(dir + "/" + name));
        CHECK(parsed.warnings.empty());
        CHECK_NOTHROW(resolve_scenario(parsed.scenario));
    }
}

TEST_CASE("the double-slit demo and its emitted scenario agree") {
    DoubleSlitGeometry g;
    g.detectors = 12;
    const auto rows = double_slit_fringes(g);
    const auto text = serialize_scenario(double_slit_scenario(g));
    const auto r = resolve_scenario(parse_scenario(text).scenario);
    const auto norm = evaluate(r.lattice, r.state, Mode::Normalized);
    REQUIRE(norm.rows.size() == rows.size());
    for (std::size_t n = 0; n < rows.size(); ++n) {
        CHECK(std::abs(norm.rows[n].p - rows[n].p) <= 1e-14);
        CHECK(std::abs(norm.rows[n].q - rows[n].q) <= 1e-14);
    }
}

TEST_CASE("scenario digest") {
    CHECK(scenario_digest("") == "fnv1a64:cbf29ce484222325");
    CHECK(scenario_digest("a") == "fnv1a64:af63dc4c8601ec8c");
    CHECK(scenario_digest(kMinimal) != scenario_digest(std::string(kMinimal) + " "));
}
