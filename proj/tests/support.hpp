#pragma once

// Independent brute-force oracles and generators shared by the test suites.
// Nothing here calls the library routine it is used to check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "qdt/events.hpp"
#include "qdt/matrix.hpp"
#include "qdt/prospects.hpp"
#include "qdt/random.hpp"

namespace qdt::testing {

inline ComplexMatrix kron_oracle(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

/// Tr(m) by the diagonal sum.
inline cplx trace_oracle(const ComplexMatrix& m) {
    cplx s{};
    for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, i);
    return s;
}

/// Tr(a b) as an explicit double sum.
inline cplx trace_product_oracle(const ComplexMatrix& a, const ComplexMatrix& b) {
    cplx s{};
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * b(j, i);
    return s;
}

/// (Tr_B m)_{ij} = sum_k <i k|m|j k>, (Tr_A m)_{kl} = sum_i <i k|m|i l>, written
/// with explicit basis kets rather than index arithmetic.
inline ComplexMatrix partial_trace_oracle(const ComplexMatrix& m, std::size_t da, std::size_t db, bool keep_a) {
    auto ket = [&](std::size_t i, std::size_t k) {
        ComplexVector v(da * db);
        v[i * db + k] = 1.0;
        return v;
    };
    auto element = [&](const ComplexVector& bra, const ComplexVector& k) { return inner(bra, m * std::span<const cplx>(k)); };
    if (keep_a) {
        ComplexMatrix out(da, da);
        for (std::size_t i = 0; i < da; ++i)
            for (std::size_t j = 0; j < da; ++j)
                for (std::size_t k = 0; k < db; ++k) out(i, j) += element(ket(i, k), ket(j, k));
        return out;
    }
    ComplexMatrix out(db, db);
    for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l)
            for (std::size_t i = 0; i < da; ++i) out(k, l) += element(ket(i, k), ket(i, l));
    return out;
}

inline ComplexMatrix random_matrix(Rng& rng, std::size_t r, std::size_t c) {
    ComplexMatrix m(r, c);
    for (auto& z : m.entries()) z = complex_normal(rng);
    return m;
}

/// V diag(values) V^+ for a random unitary V.
inline ComplexMatrix hermitian_with_spectrum(Rng& rng, const std::vector<double>& values, ComplexMatrix* v_out = nullptr) {
    const auto v = random_unitary(rng, values.size());
    if (v_out) *v_out = v;
    return (v * ComplexMatrix::diagonal(values) * v.adjoint()).hermitian_part();
}

/// Convex mixture of `terms` explicit product states rho_A (x) rho_B.
inline ComplexMatrix separable_mixture(Rng& rng, std::size_t da, std::size_t db, std::size_t terms) {
    std::vector<double> w(terms);
    double total = 0.0;
    for (auto& x : w) total += (x = uniform01(rng) + 1e-3);
    ComplexMatrix rho(da * db, da * db);
    for (std::size_t t = 0; t < terms; ++t) {
        const auto ra = random_density_matrix(rng, da, 1 + t % da);
        const auto rb = random_density_matrix(rng, db, 1 + t % db);
        rho += cplx{w[t] / total, 0.0} * kron_oracle(ra, rb);
    }
    return rho.hermitian_part();
}

inline ComplexVector bell_vector() {
    const double h = 1.0 / std::sqrt(2.0);
    return {h, 0.0, 0.0, h};
}

/// Two-sum form of the prospect operator: sum_a |b_a|^2 P_n (x) |a><a| + sum_{a != c} b_a b_c^* P_n (x) |a><c|.
inline ComplexMatrix prospect_two_sum(const ComplexMatrix& pn, const ComplexMatrix& basis_b, const ComplexVector& b) {
    const std::size_t db = b.size();
    ComplexMatrix diag(pn.rows() * db, pn.rows() * db);
    ComplexMatrix cross(pn.rows() * db, pn.rows() * db);
    for (std::size_t a = 0; a < db; ++a) {
        for (std::size_t c = 0; c < db; ++c) {
            const auto ka = basis_b.column(a);
            const auto kc = basis_b.column(c);
            const auto term = kron_oracle(pn, ComplexMatrix::outer(ka, kc));
            if (a == c) diag += cplx{std::norm(b[a]), 0.0} * term;
            else cross += (b[a] * std::conj(b[c])) * term;
        }
    }
    return diag + cross;
}

/// Raw (p, f, q) by enumerating matrix elements in the product eigenbasis:
/// p_n = sum_j sum_{a,c} b_a b_c^* <n_j c|rho|n_j a>, with the a == c terms
/// forming f_n and the a != c terms forming q_n.
struct RawTriple {
    double p, f, q;
};

inline std::vector<RawTriple> evaluate_oracle(const Observable& obs_a, const Observable& obs_b, const ComplexMatrix& rho,
                                              const std::vector<Prospect>& prospects) {
    const std::size_t db = obs_b.dim();
    const auto w = kron_oracle(obs_a.eigenvectors(), obs_b.eigenvectors());
    const auto r = w.adjoint() * rho * w;  // rho in the |n_j alpha> basis
    std::vector<RawTriple> out;
    for (const auto& pi : prospects) {
        const auto& b = pi.uncertain_b.amplitudes;
        cplx p{}, f{}, q{};
        for (auto j : obs_a.degeneracy_groups()[pi.event_a]) {
            for (std::size_t a = 0; a < db; ++a) {
                for (std::size_t c = 0; c < db; ++c) {
                    const cplx term = b[a] * std::conj(b[c]) * r(j * db + c, j * db + a);
                    p += term;
                    if (a == c) f += term;
                    else q += term;
                }
            }
        }
        out.push_back({p.real(), f.real(), q.real()});
    }
    return out;
}

/// A random complete lattice: dims in [2, 4], random or computational
/// observables, pure or mixed state, amplitudes with occasional zeros.
struct RandomCase {
    Observable obs_a;
    Observable obs_b;
    ComplexMatrix rho;
    std::vector<Prospect> prospects;
};

inline RandomCase random_case(Rng& rng) {
    const std::size_t da = 2 + static_cast<std::size_t>(uniform01(rng) * 3.0);
    const std::size_t db = 2 + static_cast<std::size_t>(uniform01(rng) * 3.0);
    auto observable = [&](std::size_t d) {
        const double u = uniform01(rng);
        if (u < 0.3) return Observable::computational(d);
        if (u < 0.5) {
            std::vector<double> spec(d);
            for (std::size_t i = 0; i < d; ++i) spec[i] = static_cast<double>(i / 2);  // pairs of equal values
            return Observable(hermitian_with_spectrum(rng, spec));
        }
        return Observable(random_hermitian(rng, d));
    };
    Observable a = observable(da);
    Observable b = observable(db);
    ComplexMatrix rho;
    if (uniform01(rng) < 0.5) {
        const auto psi = random_unit_vector(rng, da * db);
        rho = ComplexMatrix::outer(psi, psi);
    } else {
        rho = random_density_matrix(rng, da * db, 1 + static_cast<std::size_t>(uniform01(rng) * double(da * db)));
    }
    std::vector<Prospect> prospects;
    for (std::size_t n = 0; n < a.degeneracy_groups().size(); ++n) {
        auto amps = random_complex_vector(rng, db);
        for (auto& z : amps) {
            if (uniform01(rng) < 0.15) z = 0.0;
        }
        if (std::all_of(amps.begin(), amps.end(), [](cplx z) { return z == cplx{}; })) amps[0] = 1.0;
        prospects.push_back(Prospect{"pi" + std::to_string(n), n, UncertainEvent{amps}});
    }
    return RandomCase{std::move(a), std::move(b), std::move(rho), std::move(prospects)};
}

}  // namespace qdt::testing
