#include "qdt/prospects.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "qdt/errors.hpp"
#include "qdt/linalg.hpp"

namespace qdt {

std::vector<double> UncertainEvent::weights() const {
    std::vector<double> w;
    w.reserve(amplitudes.size());
    for (const auto& b : amplitudes) {
        w.push_back(std::norm(b));
    }
    return w;
}

double UncertainEvent::norm_squared() const {
    double s = 0.0;
    for (const auto& b : amplitudes) {
        s += std::norm(b);
    }
    return s;
}

std::size_t UncertainEvent::nonzero_count() const {
    std::size_t n = 0;
    for (const auto& b : amplitudes) {
        n += b != cplx{0.0, 0.0} ? 1 : 0;
    }
    return n;
}

namespace {

ComplexVector ket_b(const UncertainEvent& b, const ProductSpace& space) {
    if (b.amplitudes.size() != space.dim_b) {
        throw DimensionMismatch("uncertain event has " + std::to_string(b.amplitudes.size()) +
                                " amplitudes, factor B has dimension " + std::to_string(space.dim_b));
    }
    if (b.nonzero_count() == 0) {
        throw ZeroAmplitude();
    }
    return space.basis_b * std::span<const cplx>(b.amplitudes);
}

// Tr(rho (P (x) |u><v|)) = sum_{i,j,k,l} rho[(i,k),(j,l)] P[j,i] u_l conj(v_k)
cplx trace_with_product(const ComplexMatrix& rho, const ComplexMatrix& p, std::span<const cplx> u,
                        std::span<const cplx> v) {
    const std::size_t da = p.rows();
    const std::size_t db = u.size();
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < da; ++i) {
        for (std::size_t j = 0; j < da; ++j) {
            const cplx pji = p(j, i);
            if (pji == cplx{0.0, 0.0}) {
                continue;
            }
            cplx inner_sum{0.0, 0.0};
            for (std::size_t k = 0; k < db; ++k) {
                for (std::size_t l = 0; l < db; ++l) {
                    inner_sum += rho(i * db + k, j * db + l) * u[l] * std::conj(v[k]);
                }
            }
            s += pji * inner_sum;
        }
    }
    return s;
}

}  // namespace

ComplexMatrix uncertain_operator(const UncertainEvent& b, const ProductSpace& space) {
    const auto ket = ket_b(b, space);
    return ComplexMatrix::outer(ket, ket);
}

ProspectOperator prospect_operator(const Prospect& pi, const CompositeSystem& sys) {
    if (pi.event_a >= sys.algebra_a.generators.size()) {
        throw IndexOutOfRange("prospect " + pi.label + " event_a " + std::to_string(pi.event_a) + " (have " +
                              std::to_string(sys.algebra_a.generators.size()) + " events)");
    }
    return ProspectOperator{
        tensor_product(sys.algebra_a.generators[pi.event_a].matrix, uncertain_operator(pi.uncertain_b, sys.space)),
        pi};
}

ProspectLattice assemble_lattice(std::vector<Prospect> prospects, const CompositeSystem& sys, const Tolerances& tol) {
    if (prospects.empty()) {
        throw EmptyLattice();
    }
    std::set<std::size_t> seen;
    for (const auto& pi : prospects) {
        if (!seen.insert(pi.event_a).second) {
            throw DuplicateEvent("event_a " + std::to_string(pi.event_a) + " appears in more than one prospect");
        }
    }
    const std::size_t n_events = sys.algebra_a.generators.size();
    for (std::size_t n = 0; n < n_events; ++n) {
        if (!seen.contains(n)) {
            throw IncompleteLattice("no prospect for event_a " + std::to_string(n));
        }
    }

    ProspectLattice lattice;
    lattice.system = sys;
    ComplexMatrix sum(sys.space.dim(), sys.space.dim());
    for (const auto& pi : prospects) {
        lattice.operators.push_back(prospect_operator(pi, sys));
        sum += lattice.operators.back().matrix;
    }
    lattice.prospects = std::move(prospects);
    lattice.unity_defect = max_abs_diff(sum, ComplexMatrix::identity(sys.space.dim()));
    if (lattice.unity_defect > tol.unity_warning) {
        std::ostringstream os;
        os << "prospect operators do not resolve unity (defect " << lattice.unity_defect << ")";
        lattice.warnings.push_back(os.str());
    }
    return lattice;
}

const char* to_string(Mode m) {
    return m == Mode::Raw ? "raw" : "normalized";
}

ProbabilityReport evaluate(const ProspectLattice& lattice, const StatisticalState& rho, Mode mode,
                           const Tolerances& tol) {
    const auto& space = lattice.system.space;
    if (rho.dim() != space.dim()) {
        throw DimensionMismatch("state is " + std::to_string(rho.dim()) + "-dimensional, composite space is " +
                                std::to_string(space.dim()));
    }
    const auto& r = rho.rho();

    std::vector<ComplexVector> basis_b;
    for (std::size_t a = 0; a < space.dim_b; ++a) {
        basis_b.push_back(space.basis_b.column(a));
    }

    ProbabilityReport raw;
    raw.mode = Mode::Raw;
    for (std::size_t idx = 0; idx < lattice.prospects.size(); ++idx) {
        const auto& pi = lattice.prospects[idx];
        const auto& pn = lattice.system.algebra_a.generators[pi.event_a].matrix;
        const auto& b = pi.uncertain_b.amplitudes;

        ProspectProbability row;
        row.label = pi.label;
        row.p = joint_probability(lattice.operators[idx].matrix, rho);

        cplx q{0.0, 0.0};
        for (std::size_t a = 0; a < space.dim_b; ++a) {
            if (b[a] == cplx{0.0, 0.0}) {
                continue;
            }
            row.f += std::norm(b[a]) * trace_with_product(r, pn, basis_b[a], basis_b[a]).real();
            for (std::size_t c = 0; c < space.dim_b; ++c) {
                if (c == a || b[c] == cplx{0.0, 0.0}) {
                    continue;
                }
                q += b[a] * std::conj(b[c]) * trace_with_product(r, pn, basis_b[a], basis_b[c]);
            }
        }
        row.q = q.real();
        raw.sum_p += row.p;
        raw.sum_f += row.f;
        raw.sum_q += row.q;
        raw.rows.push_back(std::move(row));
    }
    if (mode == Mode::Raw) {
        return raw;
    }

    if (!(raw.sum_p > tol.normalization) || !(raw.sum_f > tol.normalization)) {
        std::ostringstream os;
        os << "sum p = " << raw.sum_p << ", sum f = " << raw.sum_f;
        throw DegenerateNormalization(os.str());
    }
    ProbabilityReport norm;
    norm.mode = Mode::Normalized;
    for (const auto& row : raw.rows) {
        ProspectProbability out;
        out.label = row.label;
        out.p = row.p / raw.sum_p;
        out.f = row.f / raw.sum_f;
        out.q = out.p - out.f;
        norm.sum_p += out.p;
        norm.sum_f += out.f;
        norm.sum_q += out.q;
        norm.rows.push_back(std::move(out));
    }
    return norm;
}

StatisticalState decohere(const StatisticalState& rho, const ProductSpace& space, const Tolerances& tol) {
    if (rho.dim() != space.dim()) {
        throw DimensionMismatch("state is " + std::to_string(rho.dim()) + "-dimensional, composite space is " +
                                std::to_string(space.dim()));
    }
    const std::size_t db = space.dim_b;
    const ComplexMatrix w = tensor_product(ComplexMatrix::identity(space.dim_a), space.basis_b);
    ComplexMatrix sigma = w.adjoint() * rho.rho() * w;
    for (std::size_t row = 0; row < sigma.rows(); ++row) {
        for (std::size_t col = 0; col < sigma.cols(); ++col) {
            if (row % db != col % db) {
                sigma(row, col) = 0.0;
            }
        }
    }
    return StatisticalState((w * sigma * w.adjoint()).hermitian_part(), tol);
}

}  // namespace qdt
