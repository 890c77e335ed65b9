#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "qdt/events.hpp"
#include "qdt/matrix.hpp"
#include "qdt/state.hpp"
#include "qdt/tolerances.hpp"

namespace qdt {

/// H_A (x) H_B with the eigenbases of the two observables.
struct ProductSpace {
    std::size_t dim_a = 0;
    std::size_t dim_b = 0;
    ComplexMatrix basis_a;  // columns |n>
    ComplexMatrix basis_b;  // columns |alpha>

    std::size_t dim() const noexcept { return dim_a * dim_b; }
};

/// Projector algebra of one factor: complete, pairwise orthogonal generators.
struct OperatorAlgebra {
    std::vector<EventProjector> generators;
    Subsystem factor = Subsystem::A;
};

/// A product space together with the algebras of both factors.
struct CompositeSystem {
    ProductSpace space;
    OperatorAlgebra algebra_a;
    OperatorAlgebra algebra_b;
};

CompositeSystem build_product(const Observable& obs_a, const Observable& obs_b);

/// Computational-basis system of the given dimensions.
CompositeSystem computational_system(std::size_t dim_a, std::size_t dim_b);

/// P_n (x) P_alpha
ComplexMatrix separable_prospect_operator(std::size_t n, std::size_t alpha, const CompositeSystem& sys);

/// sum over alphas of P_n (x) P_alpha
ComplexMatrix union_prospect_operator(std::size_t n, std::span<const std::size_t> alphas, const CompositeSystem& sys);

/// Tr(rho op)
double joint_probability(const ComplexMatrix& op, const StatisticalState& rho);

enum class Verdict { Separable, Entangled };

const char* to_string(Verdict v);

struct SeparabilityReport {
    double residual_norm = 0.0;
    Verdict verdict = Verdict::Separable;
    std::map<std::pair<std::size_t, std::size_t>, cplx> projection_coefficients;
};

/// Orthogonal projection of op onto the Hilbert-Schmidt span of
/// {P_n (x) P_alpha}; the verdict is separable iff the residual HS norm is at
/// most the separability tolerance.
SeparabilityReport classify_separability(const ComplexMatrix& op, const OperatorAlgebra& algebra_a,
                                         const OperatorAlgebra& algebra_b,
                                         const Tolerances& tol = default_tolerances());

/// Rebuilds sum c_{n,alpha} P_n (x) P_alpha from a report's coefficients.
ComplexMatrix projection_of(const SeparabilityReport& report, const OperatorAlgebra& algebra_a,
                            const OperatorAlgebra& algebra_b);

}  // namespace qdt
