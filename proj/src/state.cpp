#include "qdt/state.hpp"

#include <cmath>
#include <sstream>

#include "qdt/errors.hpp"
#include "qdt/linalg.hpp"

namespace qdt {

std::string describe_state_violation(const ComplexMatrix& rho, const Tolerances& tol) {
    if (!rho.is_square() || rho.rows() == 0) {
        return "density matrix must be non-empty and square";
    }
    if (!rho.is_hermitian(tol.hermitian_rel)) {
        return "density matrix is not Hermitian";
    }
    const cplx tr = rho.trace();
    if (std::abs(tr.real() - 1.0) > tol.trace) {
        std::ostringstream os;
        os << "trace " << tr.real() << " differs from 1";
        return os.str();
    }
    const double lo = min_eigenvalue(rho, tol);
    if (lo < -tol.psd) {
        std::ostringstream os;
        os << "density matrix has negative eigenvalue " << lo;
        return os.str();
    }
    return {};
}

StatisticalState::StatisticalState(ComplexMatrix rho, const Tolerances& tol) : rho_(std::move(rho)) {
    if (auto why = describe_state_violation(rho_, tol); !why.empty()) {
        throw InvalidState(why);
    }
}

StatisticalState StatisticalState::from_pure(std::span<const cplx> psi, const Tolerances& tol) {
    const double n = norm(psi);
    if (!(n > 0.0)) {
        throw InvalidState("zero state vector");
    }
    ComplexVector unit(psi.begin(), psi.end());
    for (auto& z : unit) {
        z /= n;
    }
    return StatisticalState(ComplexMatrix::outer(unit, unit), tol);
}

}  // namespace qdt
