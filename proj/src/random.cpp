#include "qdt/random.hpp"

#include <array>
#include <cmath>

namespace qdt {

Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                      0x71647475u};
    return Rng(seq);
}

double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

cplx complex_normal(Rng& rng) {
    // Box-Muller over uniform01 so draws do not depend on the standard library.
    double u1 = uniform01(rng);
    while (u1 <= 0.0) {
        u1 = uniform01(rng);
    }
    const double u2 = uniform01(rng);
    const double r = std::sqrt(-std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
}

ComplexVector random_complex_vector(Rng& rng, std::size_t n) {
    ComplexVector v(n);
    for (auto& z : v) {
        z = complex_normal(rng);
    }
    return v;
}

ComplexVector random_unit_vector(Rng& rng, std::size_t n) {
    auto v = random_complex_vector(rng, n);
    const double nv = norm(v);
    for (auto& z : v) {
        z /= nv;
    }
    return v;
}

ComplexMatrix random_hermitian(Rng& rng, std::size_t n) {
    ComplexMatrix g(n, n);
    for (auto& z : g.entries()) {
        z = complex_normal(rng);
    }
    return g.hermitian_part();
}

ComplexMatrix random_unitary(Rng& rng, std::size_t n) {
    ComplexMatrix u(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        auto v = random_complex_vector(rng, n);
        // two passes of modified Gram-Schmidt
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                const auto col = u.column(k);
                const cplx c = inner(col, v);
                for (std::size_t i = 0; i < n; ++i) {
                    v[i] -= c * col[i];
                }
            }
        }
        const double nv = norm(v);
        for (auto& z : v) {
            z /= nv;
        }
        u.set_column(j, v);
    }
    return u;
}

ComplexMatrix random_density_matrix(Rng& rng, std::size_t n, std::size_t rank) {
    ComplexMatrix g(n, rank);
    for (auto& z : g.entries()) {
        z = complex_normal(rng);
    }
    ComplexMatrix rho = g * g.adjoint();
    const double tr = rho.trace().real();
    rho *= cplx{1.0 / tr, 0.0};
    return rho.hermitian_part();
}

}  // namespace qdt
