#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "qdt/matrix.hpp"
#include "qdt/tolerances.hpp"

namespace qdt {

/// Density operator: Hermitian, positive semidefinite, unit trace.
/// Validated on construction; immutable afterwards.
class StatisticalState {
public:
    explicit StatisticalState(ComplexMatrix rho, const Tolerances& tol = default_tolerances());

    /// |psi><psi| / <psi|psi>. Throws InvalidState for a zero vector.
    static StatisticalState from_pure(std::span<const cplx> psi, const Tolerances& tol = default_tolerances());

    std::size_t dim() const noexcept { return rho_.rows(); }
    const ComplexMatrix& rho() const noexcept { return rho_; }

private:
    ComplexMatrix rho_;
};

/// Checks the density-operator invariants without constructing a state.
/// Returns an empty string when valid, otherwise a description of the first
/// violated invariant.
std::string describe_state_violation(const ComplexMatrix& rho, const Tolerances& tol = default_tolerances());

}  // namespace qdt
