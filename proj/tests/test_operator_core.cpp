#include <cmath>

#include "doctest.h"
#include "qdt/errors.hpp"
#include "qdt/linalg.hpp"
#include "qdt/random.hpp"
#include "qdt/state.hpp"
#include "support.hpp"

using namespace qdt;
using namespace qdt::testing;

TEST_SUITE("tensor_product") {
    TEST_CASE("identity and diagonal cases") {
        CHECK(tensor_product(ComplexMatrix::identity(2), ComplexMatrix::identity(2)) == ComplexMatrix::identity(4));
        const auto z = ComplexMatrix::diagonal({1.0, -1.0});
        CHECK(tensor_product(z, z) == ComplexMatrix::diagonal({1.0, -1.0, -1.0, 1.0}));
    }

    TEST_CASE("matches the quadruple-loop index formula") {
        auto rng = make_stream(11, 0);
        for (int trial = 0; trial < 20; ++trial) {
            const auto a = random_matrix(rng, 2, 2);
            const auto b = random_matrix(rng, 2, 2);
            CHECK(tensor_product(a, b) == kron_oracle(a, b));
        }
        const auto a = random_matrix(rng, 2, 3);
        const auto b = random_matrix(rng, 3, 1);
        const auto ab = tensor_product(a, b);
        CHECK(ab.rows() == 6);
        CHECK(ab.cols() == 3);
        CHECK(ab == kron_oracle(a, b));
    }

    TEST_CASE("associative, trace multiplicative") {
        auto rng = make_stream(12, 0);
        auto gaussian_integers = [&](std::size_t n) {
            ComplexMatrix m(n, n);
            for (auto& z : m.entries()) z = cplx{std::floor(uniform01(rng) * 9.0) - 4.0, std::floor(uniform01(rng) * 9.0) - 4.0};
            return m;
        };
        for (int trial = 0; trial < 10; ++trial) {
            // small integer entries keep every product exact
            const auto ia = gaussian_integers(2);
            const auto ib = gaussian_integers(3);
            const auto ic = gaussian_integers(2);
            CHECK(tensor_product(tensor_product(ia, ib), ic) == tensor_product(ia, tensor_product(ib, ic)));

            const auto a = random_matrix(rng, 2, 2);
            const auto b = random_matrix(rng, 3, 3);
            const auto c = random_matrix(rng, 2, 2);
            const auto left = tensor_product(tensor_product(a, b), c);
            CHECK(max_abs_diff(left, tensor_product(a, tensor_product(b, c))) <= 1e-15 * left.max_abs());
            const cplx lhs = tensor_product(a, b).trace();
            const cplx rhs = a.trace() * b.trace();
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
        }
    }
}

TEST_SUITE("partial_trace") {
    TEST_CASE("product state reduces to its factor") {
        auto rng = make_stream(21, 0);
        const auto ra = random_density_matrix(rng, 3, 2);
        const auto rb = random_density_matrix(rng, 2, 2);
        CHECK(max_abs_diff(partial_trace(tensor_product(ra, rb), 3, 2, Subsystem::A), ra) <= 1e-12);
        CHECK(max_abs_diff(partial_trace(tensor_product(ra, rb), 3, 2, Subsystem::B), rb) <= 1e-12);
    }

    TEST_CASE("Bell state reduces to the maximally mixed state") {
        const auto bell = StatisticalState::from_pure(bell_vector());
        const auto half = ComplexMatrix::diagonal({0.5, 0.5});
        CHECK(max_abs_diff(partial_trace(bell.rho(), 2, 2, Subsystem::A), half) <= 1e-15);
        CHECK(max_abs_diff(partial_trace(bell.rho(), 2, 2, Subsystem::B), half) <= 1e-15);
    }

    TEST_CASE("random 3x2 composite matches the basis double sum") {
        auto rng = make_stream(22, 0);
        for (int trial = 0; trial < 10; ++trial) {
            const auto rho = random_density_matrix(rng, 6, 3);
            CHECK(max_abs_diff(partial_trace(rho, 3, 2, Subsystem::A), partial_trace_oracle(rho, 3, 2, true)) <= 1e-14);
            CHECK(max_abs_diff(partial_trace(rho, 3, 2, Subsystem::B), partial_trace_oracle(rho, 3, 2, false)) <= 1e-14);
            CHECK(std::abs(partial_trace(rho, 3, 2, Subsystem::A).trace() - rho.trace()) <= 1e-14);
        }
    }

    TEST_CASE("Tr_B(a (x) b) = a Tr(b) for arbitrary square factors") {
        auto rng = make_stream(23, 0);
        const auto a = random_matrix(rng, 3, 3);
        const auto b = random_matrix(rng, 4, 4);
        const auto expected = b.trace() * a;
        CHECK(max_abs_diff(partial_trace(tensor_product(a, b), 3, 4, Subsystem::A), expected) <=
              1e-12 * std::max(1.0, expected.max_abs()));
    }

    TEST_CASE("dimension mismatch") {
        CHECK_THROWS_AS(partial_trace(ComplexMatrix::identity(5), 2, 2, Subsystem::A), DimensionMismatch);
        CHECK_THROWS_AS(partial_trace(ComplexMatrix(4, 3), 2, 2, Subsystem::B), DimensionMismatch);
    }
}

TEST_SUITE("hs_inner") {
    TEST_CASE("projectors") {
        const auto p0 = ComplexMatrix::diagonal({1.0, 0.0});
        const auto p1 = ComplexMatrix::diagonal({0.0, 1.0});
        CHECK(hs_inner(p0, p0) == cplx{1.0, 0.0});
        CHECK(hs_inner(p0, p1) == cplx{0.0, 0.0});
    }

    TEST_CASE("random pair matches Tr(a^+ b), conjugate symmetric, positive on the diagonal") {
        auto rng = make_stream(31, 0);
        for (int trial = 0; trial < 20; ++trial) {
            const auto a = random_matrix(rng, 3, 3);
            const auto b = random_matrix(rng, 3, 3);
            const cplx expected = trace_product_oracle(a.adjoint(), b);
            CHECK(std::abs(hs_inner(a, b) - expected) <= 1e-13);
            CHECK(std::abs(hs_inner(a, b) - std::conj(hs_inner(b, a))) <= 1e-13);
            const cplx aa = hs_inner(a, a);
            CHECK(std::abs(aa.imag()) <= 1e-12);
            CHECK(aa.real() >= 0.0);
        }
    }

    TEST_CASE("dimension mismatch") {
        CHECK_THROWS_AS(hs_inner(ComplexMatrix(2, 2), ComplexMatrix(3, 3)), DimensionMismatch);
    }
}

TEST_SUITE("eigh") {
    TEST_CASE("diagonal input") {
        const auto d = eigh(ComplexMatrix::diagonal({2.0, 1.0}));
        CHECK(d.values == std::vector<double>{1.0, 2.0});
        CHECK(d.vectors == ComplexMatrix({{0.0, 1.0}, {1.0, 0.0}}));
    }

    TEST_CASE("Pauli x spectrum") {
        const auto d = eigh(ComplexMatrix({{0.0, 1.0}, {1.0, 0.0}}));
        CHECK(d.values[0] == doctest::Approx(-1.0).epsilon(1e-14));
        CHECK(d.values[1] == doctest::Approx(1.0).epsilon(1e-14));
    }

    TEST_CASE("random Hermitian reconstructs as V Lambda V^+ with unitary V") {
        auto rng = make_stream(41, 0);
        for (int trial = 0; trial < 25; ++trial) {
            const auto m = random_hermitian(rng, 4);
            const auto d = eigh(m);
            const auto recon = d.vectors * ComplexMatrix::diagonal(d.values) * d.vectors.adjoint();
            CHECK(max_abs_diff(recon, m) <= 1e-10 * m.max_abs());
            CHECK(max_abs_diff(d.vectors.adjoint() * d.vectors, ComplexMatrix::identity(4)) <= 1e-10);
            for (std::size_t k = 0; k < 4; ++k) {
                const auto v = d.vectors.column(k);
                auto mv = m * std::span<const cplx>(v);
                for (std::size_t i = 0; i < 4; ++i) {
                    CHECK(std::abs(mv[i] - d.values[k] * v[i]) <= 1e-10 * m.max_abs());
                }
            }
            CHECK(std::is_sorted(d.values.begin(), d.values.end()));
        }
    }

    TEST_CASE("tied eigenvalues are ordered by dominant row and phase fixed") {
        const auto d = eigh(ComplexMatrix::diagonal({3.0, 1.0, 1.0}));
        CHECK(d.values == std::vector<double>{1.0, 1.0, 3.0});
        CHECK(std::abs(d.vectors(1, 0) - 1.0) <= 1e-15);
        CHECK(std::abs(d.vectors(2, 1) - 1.0) <= 1e-15);
        CHECK(std::abs(d.vectors(0, 2) - 1.0) <= 1e-15);
    }

    TEST_CASE("deterministic") {
        auto rng = make_stream(42, 0);
        const auto m = random_hermitian(rng, 5);
        const auto a = eigh(m);
        const auto b = eigh(m);
        CHECK(a.values == b.values);
        CHECK(a.vectors == b.vectors);
    }

    TEST_CASE("rejects non-Hermitian input") {
        CHECK_THROWS_AS(eigh(ComplexMatrix({{0.0, 1.0}, {0.0, 0.0}})), NotHermitian);
    }
}

TEST_SUITE("StatisticalState") {
    TEST_CASE("validation") {
        CHECK_NOTHROW(StatisticalState(ComplexMatrix::diagonal({0.3, 0.7})));
        CHECK_THROWS_AS(StatisticalState(ComplexMatrix::diagonal({0.3, 0.6})), InvalidState);
        CHECK_THROWS_AS(StatisticalState(ComplexMatrix::diagonal({1.2, -0.2})), InvalidState);
        CHECK_THROWS_AS(StatisticalState(ComplexMatrix({{0.5, 0.1}, {0.2, 0.5}})), InvalidState);
        CHECK_THROWS_AS(StatisticalState::from_pure(ComplexVector{0.0, 0.0}), InvalidState);
    }

    TEST_CASE("pure vectors are normalized") {
        const auto s = StatisticalState::from_pure(ComplexVector{3.0, cplx{0.0, 4.0}});
        CHECK(std::abs(s.rho().trace() - 1.0) <= 1e-15);
        CHECK(std::abs(s.rho()(0, 1) - cplx{0.0, -12.0 / 25.0}) <= 1e-15);
    }
}
