#pragma once

#include <cstddef>
#include <vector>

#include "qdt/matrix.hpp"
#include "qdt/tolerances.hpp"

namespace qdt {

enum class Subsystem { A, B };

/// Kronecker product: result[(i*b.rows+k)][(j*b.cols+l)] = a[i][j] * b[k][l].
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Trace over the complementary factor of a (dim_a*dim_b)-square operator.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b, Subsystem keep);

/// Transpose on factor B only: <i k|M^{T_B}|j l> = <i l|M|j k>.
ComplexMatrix partial_transpose_b(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b);

/// Hilbert-Schmidt scalar product Tr(a^+ b).
cplx hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// sqrt(Tr(a^+ a))
double hs_norm(const ComplexMatrix& a);

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // orthonormal columns, vectors[:,k] belongs to values[k]
};

/// Hermitian eigensolve. Eigenvalues ascending; within numerically tied
/// eigenvalues the columns are ordered by the row index of their largest
/// entry. Each column is phase-fixed so its largest entry is real positive.
/// Throws NotHermitian when m fails the relative Hermiticity check.
EigenDecomposition eigh(const ComplexMatrix& m, const Tolerances& tol = default_tolerances());

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const ComplexMatrix& m, const Tolerances& tol = default_tolerances());

}  // namespace qdt
