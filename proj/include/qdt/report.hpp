#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qdt/composite.hpp"
#include "qdt/double_slit.hpp"
#include "qdt/entanglement.hpp"
#include "qdt/events.hpp"
#include "qdt/montecarlo.hpp"
#include "qdt/prospects.hpp"
#include "qdt/scenario.hpp"
#include "qdt/tolerances.hpp"

namespace qdt {

inline constexpr const char* kToolName = "qdt";
inline constexpr const char* kToolVersion = "0.1.0";

enum class OutputFormat { Table, Csv, Json };

/// FNV-1a 64-bit digest of the scenario bytes, as "fnv1a64:<16 hex digits>".
std::string scenario_digest(std::string_view text);

struct RunOptions {
    std::uint64_t seed = 0;
    Tolerances tolerances{};
    std::optional<Mode> mode_override;
};

struct SeparabilityRow {
    std::string label;
    double residual_norm = 0.0;
    Verdict verdict = Verdict::Separable;
};

struct RunReport {
    std::string digest;
    std::uint64_t seed = 0;
    std::size_t dim_a = 0;
    std::size_t dim_b = 0;
    Mode mode = Mode::Normalized;
    std::vector<std::string> warnings;
    double unity_defect = 0.0;
    ProbabilityReport raw;
    std::optional<ProbabilityReport> normalized;  // absent only in raw mode
    std::vector<SeparabilityRow> separability;
    EntanglementReport entanglement;
    std::optional<LiftResult> lift_a;
    std::optional<LiftResult> lift_b;

    const ProbabilityReport& selected() const { return mode == Mode::Raw ? raw : *normalized; }
};

/// Evaluates a parsed scenario end to end. `text` is the original document,
/// used only for the digest.
RunReport run_scenario(const ParsedScenario& parsed, std::string_view text, const RunOptions& options);

std::string render(const RunReport& report, OutputFormat format);
std::string render(const QuarterLawResult& result, OutputFormat format);
std::string render(const SurveySummary& summary, OutputFormat format);
std::string render(const DoubleSlitGeometry& geometry, const std::vector<FringeRow>& rows, OutputFormat format);

/// Scenario document equivalent to the double-slit demo.
Scenario double_slit_scenario(const DoubleSlitGeometry& geometry);

}  // namespace qdt
