#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qdt/linalg.hpp"
#include "qdt/matrix.hpp"
#include "qdt/state.hpp"
#include "qdt/tolerances.hpp"

namespace qdt {

/// Hermitian operator with its spectral decomposition. Eigenvalues that agree
/// within the relative degeneracy tolerance form one degeneracy group; each
/// group is one operationally testable event.
class Observable {
public:
    explicit Observable(ComplexMatrix matrix, const Tolerances& tol = default_tolerances());

    /// diag(0, 1, ..., n-1): the computational-basis observable.
    static Observable computational(std::size_t n);

    std::size_t dim() const noexcept { return matrix_.rows(); }
    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    const std::vector<double>& eigenvalues() const noexcept { return eigen_.values; }
    const ComplexMatrix& eigenvectors() const noexcept { return eigen_.vectors; }
    const std::vector<std::vector<std::size_t>>& degeneracy_groups() const noexcept { return groups_; }
    /// Mean eigenvalue of each degeneracy group.
    const std::vector<double>& group_values() const noexcept { return group_values_; }

private:
    ComplexMatrix matrix_;
    EigenDecomposition eigen_;
    std::vector<std::vector<std::size_t>> groups_;
    std::vector<double> group_values_;
};

struct EventProjector {
    std::string label;
    ComplexMatrix matrix;
    std::size_t rank = 0;
};

/// Validates idempotence and Hermiticity; rank is the rounded trace.
EventProjector make_projector(std::string label, ComplexMatrix matrix, const Tolerances& tol = default_tolerances());

/// Projector onto the span of the given orthonormal columns.
ComplexMatrix span_projector(const ComplexMatrix& vectors, std::span<const std::size_t> columns);

/// One projector per degeneracy group, labelled "A<n>" with the given prefix.
std::vector<EventProjector> eigen_events(const Observable& obs, const std::string& prefix = "A");

/// Tr(rho P). Unclamped; callers clamp to [0,1] for display.
double event_probability(const EventProjector& p, const StatisticalState& rho);

/// Sum of pairwise orthogonal projectors. Throws NonOrthogonalEvents when
/// ||P_m P_n||_max exceeds the orthogonality tolerance for some m != n.
EventProjector union_projector(std::span<const EventProjector> ps, const Tolerances& tol = default_tolerances());

// ---------------------------------------------------------------------------
// Degeneracy lifting

struct LiftConfig {
    ComplexMatrix gamma;
    std::vector<double> nu_sequence = default_nu_sequence();
    double convergence_tol = 1e-8;

    /// 1e-2, 1e-3, ..., 1e-8
    static std::vector<double> default_nu_sequence();
};

/// Throws ValidationError when gamma is not Hermitian or the nu sequence is
/// not strictly decreasing, positive, and ending at or below 1e-8.
void validate_lift_config(const LiftConfig& cfg, std::size_t dim, const Tolerances& tol = default_tolerances());

struct LiftBranch {
    std::size_t group = 0;
    std::size_t branch = 0;           // ascending perturbed eigenvalue within the group
    double split_coefficient = 0.0;   // first-order shift per unit nu
    std::vector<double> trajectory;   // probability at each nu; NaN where unresolved
    std::vector<double> extrapolated; // linear extrapolation to nu = 0 from points k-1, k; NaN at k = 0
    double probability = 0.0;         // converged limit
};

struct LiftGroup {
    std::size_t group = 0;
    double eigenvalue = 0.0;
    std::size_t multiplicity = 0;
    double total = 0.0;                 // sum of branch limits
    double subspace_probability = 0.0;  // Tr(rho P_group)
};

struct LiftResult {
    std::vector<double> nu;
    std::vector<LiftBranch> branches;
    std::vector<LiftGroup> groups;
    std::size_t converged_index = 0;  // index into nu where convergence was declared
    double final_change = 0.0;        // max branch change between the last two estimates used
};

/// Evaluates event probabilities of A + nu*Gamma along the nu sequence and
/// extrapolates each branch to nu -> 0. Branches are the eigenvectors the
/// perturbed operator selects inside each degeneracy group.
///
/// Throws DegeneracyNotLifted when Gamma leaves two branches of a group with
/// first-order split coefficients within 10*convergence_tol, and
/// NoConvergence when successive extrapolated estimates never agree within
/// convergence_tol.
LiftResult lift_degeneracy(const Observable& obs, const LiftConfig& cfg, const StatisticalState& rho,
                           const Tolerances& tol = default_tolerances());

/// First-order split coefficients Gamma_{n_j} of every degeneracy group:
/// eigenvalues of Gamma compressed to the group subspace, ascending.
std::vector<std::vector<double>> split_coefficients(const Observable& obs, const ComplexMatrix& gamma,
                                                    const Tolerances& tol = default_tolerances());

/// Seeded random Hermitian Gamma, redrawn on a fresh substream until it
/// lifts every degeneracy group of obs (at most 16 draws).
ComplexMatrix default_gamma(const Observable& obs, std::uint64_t seed, double convergence_tol = 1e-8,
                            const Tolerances& tol = default_tolerances());

}  // namespace qdt
