#include "qdt/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "qdt/errors.hpp"

namespace qdt {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch(std::string(op) + ": " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()));
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw DimensionMismatch("entry count " + std::to_string(data_.size()) + " for " +
                                std::to_string(rows_) + "x" + std::to_string(cols_) + " matrix");
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw DimensionMismatch("ragged initializer rows");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        m(i, i) = values[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> values) {
    return diagonal(std::span<const double>(values.begin(), values.size()));
}

ComplexMatrix ComplexMatrix::outer(std::span<const cplx> u, std::span<const cplx> v) {
    ComplexMatrix m(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            m(i, j) = u[i] * std::conj(v[j]);
        }
    }
    return m;
}

ComplexVector ComplexMatrix::column(std::size_t j) const {
    ComplexVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        v[i] = (*this)(i, j);
    }
    return v;
}

void ComplexMatrix::set_column(std::size_t j, std::span<const cplx> v) {
    if (v.size() != rows_) {
        throw DimensionMismatch("column length");
    }
    for (std::size_t i = 0; i < rows_; ++i) {
        (*this)(i, j) = v[i];
    }
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            m(j, i) = std::conj((*this)(i, j));
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            m(j, i) = (*this)(i, j);
        }
    }
    return m;
}

cplx ComplexMatrix::trace() const {
    if (!is_square()) {
        throw DimensionMismatch("trace of non-square matrix");
    }
    cplx t{0.0, 0.0};
    for (std::size_t i = 0; i < rows_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) {
        m = std::max(m, std::abs(z));
    }
    return m;
}

bool ComplexMatrix::is_hermitian(double rel_tol) const {
    if (!is_square()) {
        return false;
    }
    const double scale = max_abs();
    double worst = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = i; j < cols_; ++j) {
            worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        }
    }
    return worst <= rel_tol * scale;
}

ComplexMatrix ComplexMatrix::hermitian_part() const {
    ComplexMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            m(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
        }
    }
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "+");
    for (std::size_t k = 0; k < data_.size(); ++k) {
        data_[k] += other.data_[k];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "-");
    for (std::size_t k = 0; k < data_.size(); ++k) {
        data_[k] -= other.data_[k];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (auto& z : data_) {
        z *= s;
    }
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx s, ComplexMatrix m) { return m *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionMismatch("product " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                " * " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{0.0, 0.0}) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

ComplexVector operator*(const ComplexMatrix& m, std::span<const cplx> v) {
    if (m.cols() != v.size()) {
        throw DimensionMismatch("matrix-vector product");
    }
    ComplexVector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        cplx s{0.0, 0.0};
        for (std::size_t j = 0; j < m.cols(); ++j) {
            s += m(i, j) * v[j];
        }
        out[i] = s;
    }
    return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k) {
        m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
    }
    return m;
}

cplx inner(std::span<const cplx> u, std::span<const cplx> v) {
    if (u.size() != v.size()) {
        throw DimensionMismatch("inner product");
    }
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < u.size(); ++i) {
        s += std::conj(u[i]) * v[i];
    }
    return s;
}

double norm(std::span<const cplx> v) {
    double s = 0.0;
    for (const auto& z : v) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

}  // namespace qdt
