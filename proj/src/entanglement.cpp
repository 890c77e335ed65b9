#include "qdt/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include "qdt/errors.hpp"
#include "qdt/linalg.hpp"

namespace qdt {

namespace {

void require_dims(const StatisticalState& rho, std::size_t dim_a, std::size_t dim_b) {
    if (rho.dim() != dim_a * dim_b) {
        throw DimensionMismatch("state is " + std::to_string(rho.dim()) + "-dimensional, expected " +
                                std::to_string(dim_a) + "x" + std::to_string(dim_b));
    }
}

}  // namespace

ProductTestResult product_test(const StatisticalState& rho, std::size_t dim_a, std::size_t dim_b,
                               const Tolerances& tol) {
    require_dims(rho, dim_a, dim_b);
    const auto rho_a = partial_trace(rho.rho(), dim_a, dim_b, Subsystem::A);
    const auto rho_b = partial_trace(rho.rho(), dim_a, dim_b, Subsystem::B);
    ProductTestResult out;
    out.defect = max_abs_diff(rho.rho(), tensor_product(rho_a, rho_b));
    out.is_product = out.defect <= tol.product;
    return out;
}

const char* to_string(PptVerdict v) {
    switch (v) {
        case PptVerdict::Pass:
            return "pass";
        case PptVerdict::Fail:
            return "fail";
        case PptVerdict::Inconclusive:
            return "inconclusive";
    }
    return "?";
}

PptTestResult ppt_test(const StatisticalState& rho, std::size_t dim_a, std::size_t dim_b, const Tolerances& tol) {
    require_dims(rho, dim_a, dim_b);
    const auto pt = partial_transpose_b(rho.rho(), dim_a, dim_b);
    PptTestResult out;
    out.min_eigenvalue = min_eigenvalue(pt.hermitian_part(), tol);
    if (out.min_eigenvalue < -tol.ppt) {
        out.verdict = PptVerdict::Fail;
    } else if (dim_a * dim_b <= 6) {
        // Peres-Horodecki: PPT is also sufficient for 2x2, 2x3, 3x2 (and trivially with a 1-dim factor)
        out.verdict = PptVerdict::Pass;
    } else {
        out.verdict = PptVerdict::Inconclusive;
    }
    return out;
}

EntanglementReport necessary_conditions_report(const ProspectLattice& lattice, const StatisticalState& rho,
                                               const Tolerances& tol) {
    const auto& sys = lattice.system;
    EntanglementReport report;
    report.product = product_test(rho, sys.space.dim_a, sys.space.dim_b, tol);
    report.ppt = ppt_test(rho, sys.space.dim_a, sys.space.dim_b, tol);

    bool any_entangled = false;
    for (const auto& op : lattice.operators) {
        const auto sep = classify_separability(op.matrix, sys.algebra_a, sys.algebra_b, tol);
        ProspectEntanglement pe;
        pe.label = op.source.label;
        pe.residual_norm = sep.residual_norm;
        pe.entangled = sep.verdict == Verdict::Entangled;
        any_entangled = any_entangled || pe.entangled;
        report.prospects.push_back(std::move(pe));
    }

    try {
        double largest = 0.0;
        for (const auto& row : evaluate(lattice, rho, Mode::Normalized, tol).rows) {
            largest = std::max(largest, std::abs(row.q));
        }
        report.max_abs_q_normalized = largest;
    } catch (const DegenerateNormalization&) {
    }
    report.q_nonzero_possible = any_entangled && !report.product.is_product;
    return report;
}

}  // namespace qdt
