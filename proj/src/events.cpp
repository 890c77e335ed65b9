#include "qdt/events.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qdt/errors.hpp"
#include "qdt/random.hpp"

namespace qdt {

Observable::Observable(ComplexMatrix matrix, const Tolerances& tol) : matrix_(std::move(matrix)) {
    if (!matrix_.is_square() || matrix_.rows() == 0) {
        throw DimensionMismatch("observable must be non-empty and square");
    }
    eigen_ = eigh(matrix_, tol);
    const auto& vals = eigen_.values;
    double scale = 0.0;
    for (double v : vals) {
        scale = std::max(scale, std::abs(v));
    }
    scale = std::max(scale, 1.0);
    for (std::size_t k = 0; k < vals.size(); ++k) {
        if (k == 0 || std::abs(vals[k] - vals[k - 1]) > tol.degeneracy_rel * scale) {
            groups_.emplace_back();
        }
        groups_.back().push_back(k);
    }
    for (const auto& g : groups_) {
        double s = 0.0;
        for (auto k : g) {
            s += vals[k];
        }
        group_values_.push_back(s / static_cast<double>(g.size()));
    }
}

Observable Observable::computational(std::size_t n) {
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = static_cast<double>(i);
    }
    return Observable(ComplexMatrix::diagonal(d));
}

EventProjector make_projector(std::string label, ComplexMatrix matrix, const Tolerances& tol) {
    if (!matrix.is_square()) {
        throw DimensionMismatch("projector must be square");
    }
    if (!matrix.is_hermitian(tol.hermitian_rel)) {
        throw NotHermitian("projector " + label);
    }
    if (max_abs_diff(matrix * matrix, matrix) > tol.idempotent) {
        throw ValidationError("projector " + label + " is not idempotent");
    }
    const auto rank = static_cast<std::size_t>(std::llround(matrix.trace().real()));
    return EventProjector{std::move(label), std::move(matrix), rank};
}

ComplexMatrix span_projector(const ComplexMatrix& vectors, std::span<const std::size_t> columns) {
    ComplexMatrix p(vectors.rows(), vectors.rows());
    for (auto c : columns) {
        const auto v = vectors.column(c);
        p += ComplexMatrix::outer(v, v);
    }
    return p.hermitian_part();
}

std::vector<EventProjector> eigen_events(const Observable& obs, const std::string& prefix) {
    std::vector<EventProjector> out;
    const auto& groups = obs.degeneracy_groups();
    out.reserve(groups.size());
    for (std::size_t n = 0; n < groups.size(); ++n) {
        out.push_back(EventProjector{prefix + std::to_string(n), span_projector(obs.eigenvectors(), groups[n]),
                                     groups[n].size()});
    }
    return out;
}

double event_probability(const EventProjector& p, const StatisticalState& rho) {
    if (p.matrix.rows() != rho.dim()) {
        throw DimensionMismatch("event projector is " + std::to_string(p.matrix.rows()) + "-dimensional, state is " +
                                std::to_string(rho.dim()) + "-dimensional");
    }
    // Tr(rho P) = sum_ij rho_ij P_ji
    const auto& r = rho.rho();
    double s = 0.0;
    for (std::size_t i = 0; i < r.rows(); ++i) {
        for (std::size_t j = 0; j < r.cols(); ++j) {
            s += (r(i, j) * p.matrix(j, i)).real();
        }
    }
    return s;
}

EventProjector union_projector(std::span<const EventProjector> ps, const Tolerances& tol) {
    if (ps.empty()) {
        throw ValidationError("union of an empty event family");
    }
    for (std::size_t m = 0; m < ps.size(); ++m) {
        for (std::size_t n = m + 1; n < ps.size(); ++n) {
            const auto prod = ps[m].matrix * ps[n].matrix;
            if (prod.max_abs() > tol.orthogonal) {
                throw NonOrthogonalEvents(ps[m].label + " and " + ps[n].label);
            }
        }
    }
    ComplexMatrix sum = ps[0].matrix;
    std::string label = ps[0].label;
    std::size_t rank = ps[0].rank;
    for (std::size_t n = 1; n < ps.size(); ++n) {
        sum += ps[n].matrix;
        label += "|" + ps[n].label;
        rank += ps[n].rank;
    }
    return EventProjector{std::move(label), std::move(sum), rank};
}

// ---------------------------------------------------------------------------

std::vector<double> LiftConfig::default_nu_sequence() {
    return {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
}

void validate_lift_config(const LiftConfig& cfg, std::size_t dim, const Tolerances& tol) {
    if (cfg.gamma.rows() != dim || cfg.gamma.cols() != dim) {
        throw DimensionMismatch("gamma must be " + std::to_string(dim) + "x" + std::to_string(dim));
    }
    if (!cfg.gamma.is_hermitian(tol.hermitian_rel)) {
        throw NotHermitian("gamma");
    }
    if (cfg.nu_sequence.size() < 2) {
        throw ValidationError("nu sequence needs at least two values");
    }
    for (std::size_t k = 0; k < cfg.nu_sequence.size(); ++k) {
        if (!(cfg.nu_sequence[k] > 0.0)) {
            throw ValidationError("nu sequence must be positive");
        }
        if (k > 0 && !(cfg.nu_sequence[k] < cfg.nu_sequence[k - 1])) {
            throw ValidationError("nu sequence must be strictly decreasing");
        }
    }
    if (cfg.nu_sequence.back() > 1e-8) {
        throw ValidationError("nu sequence must end at or below 1e-8");
    }
    if (!(cfg.convergence_tol > 0.0)) {
        throw ValidationError("convergence tolerance must be positive");
    }
}

std::vector<std::vector<double>> split_coefficients(const Observable& obs, const ComplexMatrix& gamma,
                                                    const Tolerances& tol) {
    std::vector<std::vector<double>> out;
    const auto& vecs = obs.eigenvectors();
    for (const auto& group : obs.degeneracy_groups()) {
        const std::size_t m = group.size();
        ComplexMatrix basis(obs.dim(), m);
        for (std::size_t j = 0; j < m; ++j) {
            basis.set_column(j, vecs.column(group[j]));
        }
        const ComplexMatrix compressed = (basis.adjoint() * gamma * basis).hermitian_part();
        out.push_back(eigh(compressed, tol).values);
    }
    return out;
}

namespace {

// Index of the first group whose split coefficients are not separated by more
// than min_gap, if any.
std::optional<std::size_t> unsplit_group(const std::vector<std::vector<double>>& coeffs, double min_gap) {
    for (std::size_t g = 0; g < coeffs.size(); ++g) {
        for (std::size_t j = 1; j < coeffs[g].size(); ++j) {
            if (!(coeffs[g][j] - coeffs[g][j - 1] > min_gap)) {
                return g;
            }
        }
    }
    return std::nullopt;
}

// Probability of each branch at one nu, in (group, branch) order, or empty
// when the perturbed eigenvectors cannot be matched to the groups.
std::vector<double> branch_probabilities(const Observable& obs, const ComplexMatrix& gamma, double nu,
                                         const std::vector<ComplexMatrix>& group_projectors,
                                         const StatisticalState& rho, const Tolerances& tol) {
    ComplexMatrix shifted = obs.matrix() + cplx{nu, 0.0} * gamma;
    const auto dec = eigh(shifted.hermitian_part(), tol);
    const auto& groups = obs.degeneracy_groups();

    std::vector<std::vector<std::size_t>> members(groups.size());
    for (std::size_t k = 0; k < dec.values.size(); ++k) {
        const auto v = dec.vectors.column(k);
        std::size_t best = 0;
        double best_overlap = -1.0;
        for (std::size_t g = 0; g < group_projectors.size(); ++g) {
            const double overlap = inner(v, group_projectors[g] * std::span<const cplx>(v)).real();
            if (overlap > best_overlap) {
                best_overlap = overlap;
                best = g;
            }
        }
        members[best].push_back(k);  // ascending perturbed eigenvalue within the group
    }

    std::vector<double> probs;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (members[g].size() != groups[g].size()) {
            return {};
        }
        for (auto k : members[g]) {
            const auto v = dec.vectors.column(k);
            probs.push_back(inner(v, rho.rho() * std::span<const cplx>(v)).real());
        }
    }
    return probs;
}

}  // namespace

LiftResult lift_degeneracy(const Observable& obs, const LiftConfig& cfg, const StatisticalState& rho,
                           const Tolerances& tol) {
    validate_lift_config(cfg, obs.dim(), tol);
    if (rho.dim() != obs.dim()) {
        throw DimensionMismatch("state and observable dimensions differ");
    }
    const auto coeffs = split_coefficients(obs, cfg.gamma, tol);
    if (auto g = unsplit_group(coeffs, 10.0 * cfg.convergence_tol)) {
        throw DegeneracyNotLifted("group " + std::to_string(*g) + " (eigenvalue " +
                                  std::to_string(obs.group_values()[*g]) + ")");
    }

    const auto& groups = obs.degeneracy_groups();
    std::vector<ComplexMatrix> group_projectors;
    for (const auto& group : groups) {
        group_projectors.push_back(span_projector(obs.eigenvectors(), group));
    }

    LiftResult result;
    result.nu = cfg.nu_sequence;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        for (std::size_t j = 0; j < groups[g].size(); ++j) {
            LiftBranch b;
            b.group = g;
            b.branch = j;
            b.split_coefficient = coeffs[g][j];
            result.branches.push_back(std::move(b));
        }
    }

    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (double nu : cfg.nu_sequence) {
        const auto probs = branch_probabilities(obs, cfg.gamma, nu, group_projectors, rho, tol);
        for (std::size_t i = 0; i < result.branches.size(); ++i) {
            result.branches[i].trajectory.push_back(probs.empty() ? nan : probs[i]);
        }
    }

    // Linear extrapolation through (nu_{k-1}, p_{k-1}) and (nu_k, p_k) cancels
    // the O(nu) term; convergence is declared at the first k whose estimate
    // agrees with the previous one for every branch.
    const auto& nu = cfg.nu_sequence;
    for (auto& b : result.branches) {
        b.extrapolated.assign(nu.size(), nan);
        for (std::size_t k = 1; k < nu.size(); ++k) {
            const double p0 = b.trajectory[k - 1];
            const double p1 = b.trajectory[k];
            b.extrapolated[k] = (nu[k - 1] * p1 - nu[k] * p0) / (nu[k - 1] - nu[k]);
        }
    }
    std::optional<std::size_t> converged;
    double last_change = nan;
    for (std::size_t k = 2; k < nu.size() && !converged; ++k) {
        double change = 0.0;
        bool resolved = true;
        for (const auto& b : result.branches) {
            const double d = std::abs(b.extrapolated[k] - b.extrapolated[k - 1]);
            if (std::isnan(d)) {
                resolved = false;
                break;
            }
            change = std::max(change, d);
        }
        if (!resolved) {
            continue;
        }
        last_change = change;
        if (change < cfg.convergence_tol) {
            converged = k;
        }
    }
    if (!converged) {
        std::ostringstream os;
        os << "nu sequence exhausted; last change " << last_change << " vs tolerance " << cfg.convergence_tol;
        throw NoConvergence(os.str());
    }
    result.converged_index = *converged;
    result.final_change = last_change;

    for (std::size_t g = 0; g < groups.size(); ++g) {
        LiftGroup lg;
        lg.group = g;
        lg.eigenvalue = obs.group_values()[g];
        lg.multiplicity = groups[g].size();
        lg.subspace_probability =
            event_probability(EventProjector{"", group_projectors[g], groups[g].size()}, rho);
        result.groups.push_back(lg);
    }
    for (auto& b : result.branches) {
        b.probability = b.extrapolated[*converged];
        result.groups[b.group].total += b.probability;
    }
    return result;
}

ComplexMatrix default_gamma(const Observable& obs, std::uint64_t seed, double convergence_tol,
                            const Tolerances& tol) {
    constexpr int max_attempts = 16;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        auto rng = make_stream(seed, 0x6a6d6100u + static_cast<std::uint64_t>(attempt));
        ComplexMatrix gamma = random_hermitian(rng, obs.dim());
        if (!unsplit_group(split_coefficients(obs, gamma, tol), 10.0 * convergence_tol)) {
            return gamma;
        }
    }
    throw DegeneracyNotLifted("no random gamma split every group after 16 draws");
}

}  // namespace qdt
