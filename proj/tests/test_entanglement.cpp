#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "qdt/composite.hpp"
#include "qdt/entanglement.hpp"
#include "qdt/prospects.hpp"
#include "qdt/random.hpp"
#include "support.hpp"

using namespace qdt;
using namespace qdt::testing;

namespace {

const double kHalfRoot = 1.0 / std::sqrt(2.0);

ProspectLattice uniform_lattice(std::size_t da, std::size_t db) {
    std::vector<Prospect> prospects;
    for (std::size_t n = 0; n < da; ++n) {
        prospects.push_back(Prospect{"x" + std::to_string(n), n, UncertainEvent{ComplexVector(db, 1.0 / std::sqrt(double(db)))}});
    }
    return assemble_lattice(prospects, computational_system(da, db));
}

}  // namespace

TEST_CASE("product_test") {
    auto rng = make_stream(501, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const auto rho = StatisticalState(kron_oracle(random_density_matrix(rng, 2, 2), random_density_matrix(rng, 3, 1)).hermitian_part());
        const auto r = product_test(rho, 2, 3);
        CHECK(r.is_product);
        CHECK(r.defect <= 1e-12);
    }
    const auto bell_state = StatisticalState::from_pure(bell_vector());
    const auto bell = product_test(bell_state, 2, 2);
    CHECK_FALSE(bell.is_product);
    // both marginals are I/2, so the defect is the largest entry of rho - I/4
    const auto diff = bell_state.rho() - cplx{0.25, 0.0} * ComplexMatrix::identity(4);
    double largest = 0.0;
    for (auto z : diff.entries()) largest = std::max(largest, std::abs(z));
    CHECK(std::abs(bell.defect - largest) <= 1e-12);
    CHECK(std::abs(bell.defect - 0.5) <= 1e-12);

    for (int trial = 0; trial < 20; ++trial) {
        const auto rho = StatisticalState(random_density_matrix(rng, 6, 2));
        const auto product = kron_oracle(partial_trace_oracle(rho.rho(), 2, 3, true), partial_trace_oracle(rho.rho(), 2, 3, false));
        CHECK(std::abs(product_test(rho, 2, 3).defect - max_abs_diff(rho.rho(), product)) <= 1e-12);
    }
}

TEST_CASE("ppt_test") {
    const auto bell = ppt_test(StatisticalState::from_pure(bell_vector()), 2, 2);
    CHECK(bell.verdict == PptVerdict::Fail);
    CHECK(std::abs(bell.min_eigenvalue + 0.5) <= 1e-10);

    auto rng = make_stream(502, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t db = 2 + trial % 2;
        const auto rho = StatisticalState(separable_mixture(rng, 2, db, 1 + trial % 4));
        const auto r = ppt_test(rho, 2, db);
        CHECK(r.verdict == PptVerdict::Pass);
        CHECK(r.min_eigenvalue >= -1e-10);
    }

    const auto mixed3 = ppt_test(StatisticalState(separable_mixture(rng, 3, 3, 3)), 3, 3);
    CHECK(mixed3.verdict == PptVerdict::Inconclusive);

    // Werner family: entangled exactly when the singlet weight exceeds 1/3
    const ComplexVector singlet{0.0, kHalfRoot, -kHalfRoot, 0.0};
    for (double w : {0.2, 0.5, 0.9}) {
        const auto rho = StatisticalState(
            (cplx{w, 0.0} * ComplexMatrix::outer(singlet, singlet) + cplx{(1.0 - w) / 4.0, 0.0} * ComplexMatrix::identity(4))
                .hermitian_part());
        const auto r = ppt_test(rho, 2, 2);
        CHECK(std::abs(r.min_eigenvalue - (1.0 - 3.0 * w) / 4.0) <= 1e-12);
        CHECK((r.verdict == PptVerdict::Fail) == (w > 1.0 / 3.0));
    }
    CHECK(std::string(to_string(PptVerdict::Inconclusive)) == "inconclusive");
}

TEST_SUITE("necessary_conditions_report") {
    TEST_CASE("product state with entangled prospects: q vanishes") {
        const auto lattice = uniform_lattice(2, 2);
        const auto rho = StatisticalState::from_pure(ComplexVector{0.5, 0.5, 0.5, 0.5});
        const auto r = necessary_conditions_report(lattice, rho);
        CHECK(r.product.is_product);
        CHECK_FALSE(r.q_nonzero_possible);
        CHECK(r.max_abs_q_normalized.value() <= 1e-12);
        for (const auto& p : r.prospects) {
            CHECK(p.entangled);
            CHECK(std::abs(p.residual_norm - kHalfRoot) <= 1e-12);
        }
    }

    TEST_CASE("entangled state with separable prospects: q vanishes") {
        const auto sys = computational_system(2, 2);
        const auto lattice = assemble_lattice({Prospect{"a", 0, UncertainEvent{{1.0, 0.0}}},
                                               Prospect{"b", 1, UncertainEvent{{0.0, 1.0}}}},
                                              sys);
        const auto r = necessary_conditions_report(lattice, StatisticalState::from_pure(bell_vector()));
        CHECK_FALSE(r.product.is_product);
        CHECK(r.ppt.verdict == PptVerdict::Fail);
        CHECK_FALSE(r.q_nonzero_possible);
        CHECK(r.max_abs_q_normalized.value() <= 1e-12);
    }

    TEST_CASE("both conditions met: q can be nonzero") {
        const auto lattice = uniform_lattice(2, 2);
        const ComplexVector psi{0.5, cplx{0.0, 0.5}, 0.5, -0.5};
        const auto rho = StatisticalState::from_pure(psi);
        const auto r = necessary_conditions_report(lattice, rho);
        CHECK(r.q_nonzero_possible);
        CHECK(r.max_abs_q_normalized.value() > 0.1);
    }

    TEST_CASE("nonzero q never appears without both conditions") {
        auto rng = make_stream(511, 0);
        for (int trial = 0; trial < 100; ++trial) {
            const auto c = random_case(rng);
            const auto rho = StatisticalState(c.rho);
            const auto r = necessary_conditions_report(assemble_lattice(c.prospects, build_product(c.obs_a, c.obs_b)), rho);
            if (!r.q_nonzero_possible) CHECK(r.max_abs_q_normalized.value() <= 1e-10);
        }
    }
}
