#include "cohinfo/linalg/complex_matrix.hpp"

#include <cmath>

#include "cohinfo/error.hpp"
#include "cohinfo/linalg/kernels.hpp"

namespace cohinfo {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NotSquare: return "NotSquare";
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::InvalidState: return "InvalidState";
        case ErrorCode::InvalidObservable: return "InvalidObservable";
        case ErrorCode::NotPure: return "NotPure";
        case ErrorCode::NotDistribution: return "NotDistribution";
        case ErrorCode::NotARefinement: return "NotARefinement";
        case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
        case ErrorCode::BlocksDoNotCommute: return "BlocksDoNotCommute";
        case ErrorCode::UnsupportedBackend: return "UnsupportedBackend";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
        case ErrorCode::UnknownFixture: return "UnknownFixture";
    }
    return "Error";
}

namespace linalg {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw Error(ErrorCode::ShapeMismatch, "entry count does not match rows*cols");
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw Error(ErrorCode::ShapeMismatch, "ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> v) { return outer(v, v); }

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> u, std::span<const Complex> v) {
    ComplexMatrix m(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * std::conj(v[j]);
    return m;
}

std::vector<Complex> ComplexMatrix::column(std::size_t c) const {
    std::vector<Complex> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

void ComplexMatrix::set_column(std::size_t c, std::span<const Complex> values) {
    if (values.size() != rows_) throw Error(ErrorCode::ShapeMismatch, "column length");
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix out(*this);
    for (auto& z : out.data_) z = std::conj(z);
    return out;
}

Complex ComplexMatrix::trace() const {
    if (!is_square()) throw Error(ErrorCode::NotSquare, "trace of non-square matrix");
    Complex t{};
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

ComplexMatrix ComplexMatrix::hermitian_part() const {
    if (!is_square()) throw Error(ErrorCode::NotSquare, "hermitian part of non-square matrix");
    ComplexMatrix out(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        out(r, r) = (*this)(r, r).real();
        for (std::size_t c = r + 1; c < cols_; ++c) {
            const Complex v = 0.5 * ((*this)(r, c) + std::conj((*this)(c, r)));
            out(r, c) = v;
            out(c, r) = std::conj(v);
        }
    }
    return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw Error(ErrorCode::ShapeMismatch, "matrix sum");
    kernels::axpy(1.0, other.data_, data_);
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw Error(ErrorCode::ShapeMismatch, "matrix difference");
    kernels::axpy(-1.0, other.data_, data_);
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
}

ComplexMatrix ComplexMatrix::operator-() const {
    ComplexMatrix out(*this);
    for (auto& z : out.data_) z = -z;
    return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::ShapeMismatch, "matrix product inner dimensions");
    ComplexMatrix out(a.rows_, b.cols_);
    // i-k-j order: each step is a contiguous row axpy.
    for (std::size_t i = 0; i < a.rows_; ++i) {
        auto out_row = out.row(i);
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            kernels::axpy(aik, b.row(k), out_row);
        }
    }
    return out;
}

std::vector<Complex> ComplexMatrix::apply(std::span<const Complex> v) const {
    if (v.size() != cols_) throw Error(ErrorCode::ShapeMismatch, "matrix-vector product");
    std::vector<Complex> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        Complex acc{};
        for (std::size_t c = 0; c < cols_; ++c) acc += (*this)(r, c) * v[c];
        out[r] = acc;
    }
    return out;
}

double frobenius_norm(const ComplexMatrix& m) { return std::sqrt(kernels::squared_norm(m.entries())); }

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorCode::ShapeMismatch, "frobenius_distance of differently shaped matrices");
    }
    return std::sqrt(kernels::squared_distance(a.entries(), b.entries()));
}

Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows() || a.rows() != b.cols()) throw Error(ErrorCode::ShapeMismatch, "trace_of_product");
    Complex t{};
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) t += a(i, k) * b(k, i);
    return t;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double eps) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return frobenius_distance(a, b) < eps;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    return m.is_square() && frobenius_distance(m, m.adjoint()) <= tol;
}

Complex inner_product(std::span<const Complex> u, std::span<const Complex> v) { return kernels::dotc(u, v); }

double vector_norm(std::span<const Complex> v) { return std::sqrt(kernels::squared_norm(v)); }

}  // namespace linalg
}  // namespace cohinfo
