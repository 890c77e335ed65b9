#include "qdt/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "qdt/errors.hpp"
#include "qdt/prospects.hpp"
#include "qdt/random.hpp"

namespace qdt {

namespace {

// Splits `total` into kMonteCarloWorkers contiguous chunks; chunk w gets
// [begin(w), begin(w+1)).
std::uint64_t chunk_begin(std::uint64_t total, std::size_t w) {
    return total * w / kMonteCarloWorkers;
}

// Runs fn(w) for every worker on its own thread; the first failure (in worker
// order) is rethrown after all threads have joined.
template <class Fn>
void run_workers(Fn&& fn) {
    std::vector<std::exception_ptr> errors(kMonteCarloWorkers);
    std::vector<std::thread> pool;
    pool.reserve(kMonteCarloWorkers);
    for (std::size_t w = 0; w < kMonteCarloWorkers; ++w) {
        pool.emplace_back([&fn, &errors, w] {
            try {
                fn(w);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

double percentile(const std::vector<double>& sorted, double fraction) {
    if (sorted.empty()) {
        return 0.0;
    }
    const double pos = fraction * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double t = pos - static_cast<double>(lo);
    return sorted[lo] + t * (sorted[hi] - sorted[lo]);
}

constexpr std::uint64_t kQuarterStream = 0x51000000u;
constexpr std::uint64_t kSurveyStream = 0x53000000u;

}  // namespace

QuarterLawResult quarter_law_mc(std::uint64_t samples, std::uint64_t seed) {
    if (samples == 0) {
        throw ValidationError("quarter law needs at least one sample");
    }
    struct Partial {
        double sum = 0.0;
        double sum_sq = 0.0;
    };
    std::vector<Partial> partials(kMonteCarloWorkers);
    run_workers([&](std::size_t w) {
        auto rng = make_stream(seed, kQuarterStream + w);
        Partial acc;
        for (auto i = chunk_begin(samples, w); i < chunk_begin(samples, w + 1); ++i) {
            const double q = std::abs(uniform01(rng) - 0.5);
            acc.sum += q;
            acc.sum_sq += q * q;
        }
        partials[w] = acc;
    });

    Partial total;
    for (const auto& p : partials) {
        total.sum += p.sum;
        total.sum_sq += p.sum_sq;
    }
    const auto n = static_cast<double>(samples);
    QuarterLawResult out;
    out.samples = samples;
    out.seed = seed;
    out.mean_abs_q = total.sum / n;
    if (samples > 1) {
        const double var = std::max(0.0, (total.sum_sq - n * out.mean_abs_q * out.mean_abs_q) / (n - 1.0));
        out.standard_error = std::sqrt(var / n);
    }
    return out;
}

SurveySummary quantum_quarter_survey(const SurveyOptions& options) {
    if (options.dim_a == 0 || options.dim_b == 0 || options.dim_a > 8 || options.dim_b > 8) {
        throw ValidationError("survey dimensions must be between 1 and 8");
    }
    SurveySummary out;
    out.dim_a = options.dim_a;
    out.dim_b = options.dim_b;
    out.scenarios = options.scenarios;
    out.seed = options.seed;
    if (options.scenarios == 0) {
        return out;
    }

    const auto sys = computational_system(options.dim_a, options.dim_b);
    std::vector<std::vector<double>> partials(kMonteCarloWorkers);
    run_workers([&](std::size_t w) {
        auto rng = make_stream(options.seed, kSurveyStream + w);
        auto& values = partials[w];
        for (auto s = chunk_begin(options.scenarios, w); s < chunk_begin(options.scenarios, w + 1); ++s) {
            auto psi = random_unit_vector(rng, sys.space.dim());
            std::vector<Prospect> prospects;
            for (std::size_t n = 0; n < options.dim_a; ++n) {
                prospects.push_back(Prospect{"pi" + std::to_string(n), n,
                                             UncertainEvent{random_complex_vector(rng, options.dim_b)}});
            }
            auto rho = StatisticalState::from_pure(psi);
            if (options.diagonal_states) {
                rho = decohere(rho, sys.space);
            }
            const auto lattice = assemble_lattice(std::move(prospects), sys);
            const auto report = evaluate(lattice, rho, Mode::Normalized);
            for (const auto& row : report.rows) {
                values.push_back(std::abs(row.q));
            }
        }
    });

    std::vector<double> all;
    for (const auto& p : partials) {
        all.insert(all.end(), p.begin(), p.end());
    }
    out.count = all.size();
    double sum = 0.0;
    double sum_sq = 0.0;
    for (double v : all) {
        sum += v;
        sum_sq += v * v;
    }
    const auto n = static_cast<double>(all.size());
    out.mean = sum / n;
    if (all.size() > 1) {
        out.standard_error = std::sqrt(std::max(0.0, (sum_sq - n * out.mean * out.mean) / (n - 1.0)) / n);
    }
    std::sort(all.begin(), all.end());
    out.p10 = percentile(all, 0.10);
    out.p25 = percentile(all, 0.25);
    out.median = percentile(all, 0.50);
    out.p75 = percentile(all, 0.75);
    out.p90 = percentile(all, 0.90);
    out.max = all.back();
    return out;
}

}  // namespace qdt
