#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qdt {

using cplx = std::complex<double>;
using ComplexVector = std::vector<cplx>;

/// Dense row-major complex matrix. Every operator and state in the library
/// is carried by this type.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return ComplexMatrix(rows, cols); }
    static ComplexMatrix diagonal(std::span<const double> values);
    static ComplexMatrix diagonal(std::initializer_list<double> values);
    /// |u><v|
    static ComplexMatrix outer(std::span<const cplx> u, std::span<const cplx> v);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return data_.empty(); }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const cplx> entries() const noexcept { return data_; }
    std::span<cplx> entries() noexcept { return data_; }

    ComplexVector column(std::size_t j) const;
    void set_column(std::size_t j, std::span<const cplx> v);

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    cplx trace() const;
    /// max_ij |M_ij|
    double max_abs() const;
    bool is_hermitian(double rel_tol) const;
    /// (M + M^+)/2, used to remove round-off asymmetry from constructed operators.
    ComplexMatrix hermitian_part() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(cplx s);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix m);
ComplexVector operator*(const ComplexMatrix& m, std::span<const cplx> v);

/// max_ij |A_ij - B_ij|
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// <u|v> (conjugate-linear in u)
cplx inner(std::span<const cplx> u, std::span<const cplx> v);
double norm(std::span<const cplx> v);

}  // namespace qdt
