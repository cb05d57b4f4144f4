#pragma once

// Inner-loop kernels for the dense complex algebra. Each kernel has a scalar
// reference implementation and vectorized variants (AVX2+FMA on x86-64, NEON
// on AArch64). The variant is picked once at startup from the CPU features
// and can be overridden with select_backend(), which the equivalence tests
// use to run both paths on the same inputs.

#include <cstddef>
#include <span>
#include <string_view>

#include "cohinfo/linalg/complex_matrix.hpp"

namespace cohinfo::linalg::kernels {

enum class Backend { Scalar, Avx2, Neon };

std::string_view to_string(Backend b) noexcept;

struct KernelTable {
    // y += a * x
    void (*axpy)(Complex a, const Complex* x, Complex* y, std::size_t n);
    // (x, y) <- (a x + b y, c x + d y)
    void (*rotate)(Complex* x, Complex* y, std::size_t n, Complex a, Complex b, Complex c, Complex d);
    // sum_i conj(x_i) y_i
    Complex (*dotc)(const Complex* x, const Complex* y, std::size_t n);
    // sum_i |x_i|^2
    double (*squared_norm)(const Complex* x, std::size_t n);
    // sum_i |x_i - y_i|^2
    double (*squared_distance)(const Complex* x, const Complex* y, std::size_t n);
};

bool backend_supported(Backend b) noexcept;
const KernelTable& table(Backend b);  // throws UnsupportedBackend

Backend active_backend() noexcept;
void select_backend(Backend b);  // throws UnsupportedBackend
Backend best_backend() noexcept;

// RAII override, restores the previous backend on scope exit.
class ScopedBackend {
public:
    explicit ScopedBackend(Backend b) : previous_(active_backend()) { select_backend(b); }
    ~ScopedBackend() { select_backend(previous_); }
    ScopedBackend(const ScopedBackend&) = delete;
    ScopedBackend& operator=(const ScopedBackend&) = delete;

private:
    Backend previous_;
};

void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y);
void rotate(std::span<Complex> x, std::span<Complex> y, Complex a, Complex b, Complex c, Complex d);
Complex dotc(std::span<const Complex> x, std::span<const Complex> y);
double squared_norm(std::span<const Complex> x);
double squared_distance(std::span<const Complex> x, std::span<const Complex> y);

namespace detail {
const KernelTable& scalar_table() noexcept;
const KernelTable* avx2_table() noexcept;  // nullptr when not compiled in
const KernelTable* neon_table() noexcept;
}  // namespace detail

}  // namespace cohinfo::linalg::kernels
