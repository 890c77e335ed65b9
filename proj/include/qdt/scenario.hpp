#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qdt/composite.hpp"
#include "qdt/events.hpp"
#include "qdt/matrix.hpp"
#include "qdt/prospects.hpp"
#include "qdt/state.hpp"
#include "qdt/tolerances.hpp"

namespace qdt {

struct StateSpec {
    enum class Kind { Pure, Mixed };
    Kind kind = Kind::Pure;
    ComplexVector vector;  // pure: amplitudes as written (normalized on use)
    ComplexMatrix matrix;  // mixed: density matrix

    friend bool operator==(const StateSpec&, const StateSpec&) = default;
};

struct LiftSpec {
    std::optional<ComplexMatrix> gamma;  // seeded random Gamma when absent
    std::vector<double> nu_sequence = LiftConfig::default_nu_sequence();
    double convergence_tol = 1e-8;

    friend bool operator==(const LiftSpec&, const LiftSpec&) = default;
};

struct ObservableSpec {
    ComplexMatrix matrix;
    std::optional<LiftSpec> lift;

    friend bool operator==(const ObservableSpec&, const ObservableSpec&) = default;
};

struct ProspectSpec {
    std::string label;
    std::size_t event_a = 0;
    ComplexVector amplitudes;

    friend bool operator==(const ProspectSpec&, const ProspectSpec&) = default;
};

/// Input document of the eval command.
struct Scenario {
    std::size_t dim_a = 1;
    std::size_t dim_b = 1;
    StateSpec state;
    std::optional<ObservableSpec> observable_a;
    std::optional<ObservableSpec> observable_b;
    std::vector<ProspectSpec> prospects;
    Mode mode = Mode::Normalized;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Parsed scenario with any non-fatal diagnostics raised while reading it.
struct ParsedScenario {
    Scenario scenario;
    std::vector<std::string> warnings;
};

/// Reads and validates a scenario document. Throws ParseError (syntax, wrong
/// types, unknown keys; the message names the line or field path) or
/// ValidationError (the document is well-formed but violates an invariant).
ParsedScenario parse_scenario(std::string_view text, const Tolerances& tol = default_tolerances());

/// Canonical JSON text of a scenario; parse_scenario reads it back to an
/// equal Scenario.
std::string serialize_scenario(const Scenario& s);

/// Everything the engine needs, built from a validated scenario.
struct ResolvedScenario {
    Observable observable_a;
    Observable observable_b;
    CompositeSystem system;
    StatisticalState state;
    ProspectLattice lattice;
};

ResolvedScenario resolve_scenario(const Scenario& s, const Tolerances& tol = default_tolerances());

}  // namespace qdt
