#include "cohinfo/linalg/kernels.hpp"

namespace cohinfo::linalg::kernels::detail {
namespace {

void axpy_scalar(Complex a, const Complex* x, Complex* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void rotate_scalar(Complex* x, Complex* y, std::size_t n, Complex a, Complex b, Complex c, Complex d) {
    for (std::size_t i = 0; i < n; ++i) {
        const Complex xi = x[i];
        const Complex yi = y[i];
        x[i] = a * xi + b * yi;
        y[i] = c * xi + d * yi;
    }
}

Complex dotc_scalar(const Complex* x, const Complex* y, std::size_t n) {
    Complex acc{};
    for (std::size_t i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

double squared_norm_scalar(const Complex* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::norm(x[i]);
    return acc;
}

double squared_distance_scalar(const Complex* x, const Complex* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::norm(x[i] - y[i]);
    return acc;
}

constexpr KernelTable kScalar{
    axpy_scalar, rotate_scalar, dotc_scalar, squared_norm_scalar, squared_distance_scalar,
};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

}  // namespace cohinfo::linalg::kernels::detail
