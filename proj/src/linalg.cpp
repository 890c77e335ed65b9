#include "qdt/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qdt/errors.hpp"

namespace qdt {

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

namespace {

void require_composite(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b, const char* op) {
    if (!m.is_square() || m.rows() != dim_a * dim_b) {
        throw DimensionMismatch(std::string(op) + ": matrix is " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()) + ", expected " + std::to_string(dim_a * dim_b) +
                                " square (" + std::to_string(dim_a) + "x" + std::to_string(dim_b) + ")");
    }
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b, Subsystem keep) {
    require_composite(m, dim_a, dim_b, "partial_trace");
    if (keep == Subsystem::A) {
        ComplexMatrix out(dim_a, dim_a);
        for (std::size_t i = 0; i < dim_a; ++i) {
            for (std::size_t j = 0; j < dim_a; ++j) {
                cplx s{0.0, 0.0};
                for (std::size_t k = 0; k < dim_b; ++k) {
                    s += m(i * dim_b + k, j * dim_b + k);
                }
                out(i, j) = s;
            }
        }
        return out;
    }
    ComplexMatrix out(dim_b, dim_b);
    for (std::size_t k = 0; k < dim_b; ++k) {
        for (std::size_t l = 0; l < dim_b; ++l) {
            cplx s{0.0, 0.0};
            for (std::size_t i = 0; i < dim_a; ++i) {
                s += m(i * dim_b + k, i * dim_b + l);
            }
            out(k, l) = s;
        }
    }
    return out;
}

ComplexMatrix partial_transpose_b(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b) {
    require_composite(m, dim_a, dim_b, "partial_transpose_b");
    ComplexMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < dim_a; ++i) {
        for (std::size_t j = 0; j < dim_a; ++j) {
            for (std::size_t k = 0; k < dim_b; ++k) {
                for (std::size_t l = 0; l < dim_b; ++l) {
                    out(i * dim_b + k, j * dim_b + l) = m(i * dim_b + l, j * dim_b + k);
                }
            }
        }
    }
    return out;
}

cplx hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch("hs_inner");
    }
    // Tr(a^+ b) = sum_ij conj(a_ij) b_ij
    cplx s{0.0, 0.0};
    const auto ea = a.entries();
    const auto eb = b.entries();
    for (std::size_t k = 0; k < ea.size(); ++k) {
        s += std::conj(ea[k]) * eb[k];
    }
    return s;
}

double hs_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const auto& z : a.entries()) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

EigenDecomposition eigh(const ComplexMatrix& m, const Tolerances& tol) {
    if (!m.is_hermitian(tol.hermitian_rel)) {
        throw NotHermitian(std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " matrix");
    }
    const auto n = static_cast<Eigen::Index>(m.rows());
    Eigen::MatrixXcd em(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            em(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(em);
    if (solver.info() != Eigen::Success) {
        throw NumericError("Hermitian eigensolver did not converge");
    }
    const auto& vals = solver.eigenvalues();
    const auto& vecs = solver.eigenvectors();

    std::vector<std::size_t> dominant(static_cast<std::size_t>(n), 0);
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index arg = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            // strict > keeps the first index on exact magnitude ties
            if (std::abs(vecs(i, k)) > best + 1e-12) {
                best = std::abs(vecs(i, k));
                arg = i;
            }
        }
        dominant[static_cast<std::size_t>(k)] = static_cast<std::size_t>(arg);
    }

    // Eigen returns ascending values; reorder inside numerical tie runs.
    std::vector<std::size_t> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    const double scale = std::max(1.0, n > 0 ? vals.cwiseAbs().maxCoeff() : 0.0);
    std::size_t start = 0;
    while (start < order.size()) {
        std::size_t end = start + 1;
        while (end < order.size() &&
               std::abs(vals(static_cast<Eigen::Index>(end)) - vals(static_cast<Eigen::Index>(end - 1))) <=
                   tol.degeneracy_rel * scale) {
            ++end;
        }
        std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(start),
                         order.begin() + static_cast<std::ptrdiff_t>(end),
                         [&](std::size_t x, std::size_t y) { return dominant[x] < dominant[y]; });
        start = end;
    }

    EigenDecomposition out;
    out.values.resize(static_cast<std::size_t>(n));
    out.vectors = ComplexMatrix(m.rows(), m.cols());
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto src = static_cast<Eigen::Index>(order[k]);
        out.values[k] = vals(src);
        const cplx pivot = vecs(static_cast<Eigen::Index>(dominant[order[k]]), src);
        const cplx phase = std::abs(pivot) > 0.0 ? std::conj(pivot) / std::abs(pivot) : cplx{1.0, 0.0};
        for (Eigen::Index i = 0; i < n; ++i) {
            out.vectors(static_cast<std::size_t>(i), k) = vecs(i, src) * phase;
        }
    }
    return out;
}

double min_eigenvalue(const ComplexMatrix& m, const Tolerances& tol) {
    const auto d = eigh(m, tol);
    return d.values.empty() ? 0.0 : d.values.front();
}

}  // namespace qdt
