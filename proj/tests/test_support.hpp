#pragma once

// Independent oracles for the unit tests: naive loops that share no code with
// the library kernels.

#include <cmath>
#include <complex>
#include <vector>

#include "cohinfo/fixtures.hpp"
#include "cohinfo/linalg/complex_matrix.hpp"

namespace testsupport {

using cohinfo::Complex;
using cohinfo::ComplexMatrix;

inline ComplexMatrix naive_multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Complex s = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
            c(i, j) = s;
        }
    return c;
}

inline ComplexMatrix naive_kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l) c(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return c;
}

// tr_2 and tr_1 of a d1*d2 square matrix by explicit index sums.
inline ComplexMatrix naive_trace_out_second(const ComplexMatrix& m, std::size_t d1, std::size_t d2) {
    ComplexMatrix r(d1, d1);
    for (std::size_t i = 0; i < d1; ++i)
        for (std::size_t j = 0; j < d1; ++j)
            for (std::size_t k = 0; k < d2; ++k) r(i, j) += m(i * d2 + k, j * d2 + k);
    return r;
}

inline ComplexMatrix naive_trace_out_first(const ComplexMatrix& m, std::size_t d1, std::size_t d2) {
    ComplexMatrix r(d2, d2);
    for (std::size_t i = 0; i < d2; ++i)
        for (std::size_t j = 0; j < d2; ++j)
            for (std::size_t k = 0; k < d1; ++k) r(i, j) += m(k * d2 + i, k * d2 + j);
    return r;
}

inline double h(std::initializer_list<double> p) {
    double s = 0.0;
    for (double x : p)
        if (x > 0.0) s -= x * std::log2(x);
    return s;
}

inline ComplexMatrix random_matrix(std::size_t r, std::size_t c, cohinfo::fixtures::Rng& rng) {
    std::normal_distribution<double> g;
    ComplexMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = Complex(g(rng), g(rng));
    return m;
}

}  // namespace testsupport
