#include "qdt/composite.hpp"

#include <cmath>

#include "qdt/errors.hpp"
#include "qdt/linalg.hpp"

namespace qdt {

CompositeSystem build_product(const Observable& obs_a, const Observable& obs_b) {
    CompositeSystem sys;
    sys.space.dim_a = obs_a.dim();
    sys.space.dim_b = obs_b.dim();
    sys.space.basis_a = obs_a.eigenvectors();
    sys.space.basis_b = obs_b.eigenvectors();
    sys.algebra_a = OperatorAlgebra{eigen_events(obs_a, "A"), Subsystem::A};
    sys.algebra_b = OperatorAlgebra{eigen_events(obs_b, "B"), Subsystem::B};
    return sys;
}

CompositeSystem computational_system(std::size_t dim_a, std::size_t dim_b) {
    return build_product(Observable::computational(dim_a), Observable::computational(dim_b));
}

namespace {

void check_index(std::size_t i, std::size_t n, const char* what) {
    if (i >= n) {
        throw IndexOutOfRange(std::string(what) + " " + std::to_string(i) + " (have " + std::to_string(n) + ")");
    }
}

}  // namespace

ComplexMatrix separable_prospect_operator(std::size_t n, std::size_t alpha, const CompositeSystem& sys) {
    check_index(n, sys.algebra_a.generators.size(), "event index n");
    check_index(alpha, sys.algebra_b.generators.size(), "event index alpha");
    return tensor_product(sys.algebra_a.generators[n].matrix, sys.algebra_b.generators[alpha].matrix);
}

ComplexMatrix union_prospect_operator(std::size_t n, std::span<const std::size_t> alphas, const CompositeSystem& sys) {
    if (alphas.empty()) {
        throw ValidationError("union over an empty alpha set");
    }
    ComplexMatrix sum(sys.space.dim(), sys.space.dim());
    for (auto alpha : alphas) {
        sum += separable_prospect_operator(n, alpha, sys);
    }
    return sum;
}

double joint_probability(const ComplexMatrix& op, const StatisticalState& rho) {
    if (op.rows() != rho.dim() || op.cols() != rho.dim()) {
        throw DimensionMismatch("operator and state dimensions differ");
    }
    const auto& r = rho.rho();
    double s = 0.0;
    for (std::size_t i = 0; i < r.rows(); ++i) {
        for (std::size_t j = 0; j < r.cols(); ++j) {
            s += (r(i, j) * op(j, i)).real();
        }
    }
    return s;
}

const char* to_string(Verdict v) {
    return v == Verdict::Separable ? "separable" : "entangled";
}

SeparabilityReport classify_separability(const ComplexMatrix& op, const OperatorAlgebra& algebra_a,
                                         const OperatorAlgebra& algebra_b, const Tolerances& tol) {
    if (algebra_a.generators.empty() || algebra_b.generators.empty()) {
        throw ValidationError("empty operator algebra");
    }
    const std::size_t dim = algebra_a.generators[0].matrix.rows() * algebra_b.generators[0].matrix.rows();
    if (!op.is_square() || op.rows() != dim) {
        throw DimensionMismatch("operator is " + std::to_string(op.rows()) + "x" + std::to_string(op.cols()) +
                                ", composite space is " + std::to_string(dim));
    }
    // The generators P_n (x) P_alpha are mutually HS-orthogonal, so the
    // projection coefficients are plain HS overlaps divided by the norms.
    SeparabilityReport report;
    ComplexMatrix residual = op;
    for (std::size_t n = 0; n < algebra_a.generators.size(); ++n) {
        for (std::size_t a = 0; a < algebra_b.generators.size(); ++a) {
            const auto g = tensor_product(algebra_a.generators[n].matrix, algebra_b.generators[a].matrix);
            const double gg = hs_inner(g, g).real();
            const cplx c = hs_inner(g, op) / gg;
            report.projection_coefficients[{n, a}] = c;
            residual -= c * g;
        }
    }
    report.residual_norm = hs_norm(residual);
    report.verdict = report.residual_norm <= tol.separability ? Verdict::Separable : Verdict::Entangled;
    return report;
}

ComplexMatrix projection_of(const SeparabilityReport& report, const OperatorAlgebra& algebra_a,
                            const OperatorAlgebra& algebra_b) {
    const std::size_t dim = algebra_a.generators.at(0).matrix.rows() * algebra_b.generators.at(0).matrix.rows();
    ComplexMatrix sum(dim, dim);
    for (const auto& [key, c] : report.projection_coefficients) {
        sum += c * tensor_product(algebra_a.generators.at(key.first).matrix,
                                  algebra_b.generators.at(key.second).matrix);
    }
    return sum;
}

}  // namespace qdt
