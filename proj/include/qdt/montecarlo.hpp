#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace qdt {

/// Number of independent substreams every sampler splits its budget into.
/// Fixed so results do not depend on how many threads actually run.
inline constexpr std::size_t kMonteCarloWorkers = 8;

struct QuarterLawResult {
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    double mean_abs_q = 0.0;
    double standard_error = 0.0;
};

/// Draws p ~ U[0,1] against the non-informative classical value f = 1/2 and
/// averages |q| = |p - 1/2|; the analytic expectation is 1/4. Throws
/// ValidationError for samples == 0.
QuarterLawResult quarter_law_mc(std::uint64_t samples, std::uint64_t seed);

struct SurveyOptions {
    std::size_t dim_a = 2;
    std::size_t dim_b = 2;
    std::uint64_t scenarios = 0;
    std::uint64_t seed = 0;
    /// Decohere every sampled state before evaluation.
    bool diagonal_states = false;
};

struct SurveySummary {
    std::size_t dim_a = 0;
    std::size_t dim_b = 0;
    std::uint64_t scenarios = 0;
    std::uint64_t seed = 0;
    std::size_t count = 0;  // number of |q| values (scenarios * dim_a)
    double mean = 0.0;
    double standard_error = 0.0;
    double p10 = 0.0;
    double p25 = 0.0;
    double median = 0.0;
    double p75 = 0.0;
    double p90 = 0.0;
    double max = 0.0;
};

/// Random pure composite states with one prospect per factor-A basis event
/// and random (unnormalized) amplitudes; summarizes normalized |q_n|.
SurveySummary quantum_quarter_survey(const SurveyOptions& options);

}  // namespace qdt
