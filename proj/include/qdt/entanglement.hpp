#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qdt/composite.hpp"
#include "qdt/prospects.hpp"
#include "qdt/state.hpp"
#include "qdt/tolerances.hpp"

namespace qdt {

struct ProductTestResult {
    double defect = 0.0;  // ||rho - rho_A (x) rho_B||_max
    bool is_product = false;
};

ProductTestResult product_test(const StatisticalState& rho, std::size_t dim_a, std::size_t dim_b,
                               const Tolerances& tol = default_tolerances());

enum class PptVerdict { Pass, Fail, Inconclusive };

const char* to_string(PptVerdict v);

struct PptTestResult {
    double min_eigenvalue = 0.0;
    /// Fail certifies entanglement. Pass is conclusive only when
    /// dim_a * dim_b <= 6; larger spaces report Inconclusive instead.
    PptVerdict verdict = PptVerdict::Pass;
};

PptTestResult ppt_test(const StatisticalState& rho, std::size_t dim_a, std::size_t dim_b,
                       const Tolerances& tol = default_tolerances());

struct ProspectEntanglement {
    std::string label;
    double residual_norm = 0.0;
    bool entangled = false;
};

struct EntanglementReport {
    ProductTestResult product;
    PptTestResult ppt;
    std::vector<ProspectEntanglement> prospects;
    /// Absent when the lattice carries no probability to normalize.
    std::optional<double> max_abs_q_normalized;
    /// Some prospect is entangled and the state is not a product state.
    bool q_nonzero_possible = false;
};

/// Confronts the two necessary conditions for a nonzero interference term
/// (entangled prospect, entangled state) with the evaluated normalized q.
EntanglementReport necessary_conditions_report(const ProspectLattice& lattice, const StatisticalState& rho,
                                               const Tolerances& tol = default_tolerances());

}  // namespace qdt
