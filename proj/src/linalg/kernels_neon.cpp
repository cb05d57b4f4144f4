#include "cohinfo/linalg/kernels.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)

#include <arm_neon.h>

namespace cohinfo::linalg::kernels::detail {
namespace {

// One complex double per register: [re, im].
inline float64x2_t load1(const Complex* p) { return vld1q_f64(reinterpret_cast<const double*>(p)); }
inline void store1(Complex* p, float64x2_t v) { vst1q_f64(reinterpret_cast<double*>(p), v); }

inline float64x2_t cmul(Complex a, float64x2_t v) {
    const float64x2_t swapped = vextq_f64(v, v, 1);
    const double sign_imag[2] = {-a.imag(), a.imag()};
    return vfmaq_f64(vmulq_n_f64(v, a.real()), swapped, vld1q_f64(sign_imag));
}

void axpy_neon(Complex a, const Complex* x, Complex* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) store1(y + i, vaddq_f64(load1(y + i), cmul(a, load1(x + i))));
}

void rotate_neon(Complex* x, Complex* y, std::size_t n, Complex a, Complex b, Complex c, Complex d) {
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t xv = load1(x + i);
        const float64x2_t yv = load1(y + i);
        store1(x + i, vaddq_f64(cmul(a, xv), cmul(b, yv)));
        store1(y + i, vaddq_f64(cmul(c, xv), cmul(d, yv)));
    }
}

Complex dotc_neon(const Complex* x, const Complex* y, std::size_t n) {
    float64x2_t acc_re = vdupq_n_f64(0.0);
    float64x2_t acc_im = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t xv = load1(x + i);
        const float64x2_t yv = load1(y + i);
        acc_re = vfmaq_f64(acc_re, xv, yv);
        acc_im = vfmaq_f64(acc_im, xv, vextq_f64(yv, yv, 1));
    }
    return {vaddvq_f64(acc_re), vgetq_lane_f64(acc_im, 0) - vgetq_lane_f64(acc_im, 1)};
}

double squared_norm_neon(const Complex* x, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t v = load1(x + i);
        acc = vfmaq_f64(acc, v, v);
    }
    return vaddvq_f64(acc);
}

double squared_distance_neon(const Complex* x, const Complex* y, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t v = vsubq_f64(load1(x + i), load1(y + i));
        acc = vfmaq_f64(acc, v, v);
    }
    return vaddvq_f64(acc);
}

constexpr KernelTable kNeon{
    axpy_neon, rotate_neon, dotc_neon, squared_norm_neon, squared_distance_neon,
};

}  // namespace

const KernelTable* neon_table() noexcept { return &kNeon; }

}  // namespace cohinfo::linalg::kernels::detail

#else

namespace cohinfo::linalg::kernels::detail {
const KernelTable* neon_table() noexcept { return nullptr; }
}  // namespace cohinfo::linalg::kernels::detail

#endif
