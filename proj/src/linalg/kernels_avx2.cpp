// Built with -mavx2 -mfma; only reached after a runtime CPU check.

#include "cohinfo/linalg/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

namespace cohinfo::linalg::kernels::detail {
namespace {

// Two complex doubles per register: [re0, im0, re1, im1].
inline __m256d load2(const Complex* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(Complex* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

// (ar + i ai) * v for both packed complex numbers.
inline __m256d cmul(__m256d ar, __m256d ai, __m256d v) {
    const __m256d swapped = _mm256_permute_pd(v, 0b0101);
    return _mm256_fmaddsub_pd(ar, v, _mm256_mul_pd(ai, swapped));
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void axpy_avx2(Complex a, const Complex* x, Complex* y, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) store2(y + i, _mm256_add_pd(load2(y + i), cmul(ar, ai, load2(x + i))));
    for (; i < n; ++i) y[i] += a * x[i];
}

void rotate_avx2(Complex* x, Complex* y, std::size_t n, Complex a, Complex b, Complex c, Complex d) {
    const __m256d ar = _mm256_set1_pd(a.real()), ai = _mm256_set1_pd(a.imag());
    const __m256d br = _mm256_set1_pd(b.real()), bi = _mm256_set1_pd(b.imag());
    const __m256d cr = _mm256_set1_pd(c.real()), ci = _mm256_set1_pd(c.imag());
    const __m256d dr = _mm256_set1_pd(d.real()), di = _mm256_set1_pd(d.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = load2(x + i);
        const __m256d yv = load2(y + i);
        store2(x + i, _mm256_add_pd(cmul(ar, ai, xv), cmul(br, bi, yv)));
        store2(y + i, _mm256_add_pd(cmul(cr, ci, xv), cmul(dr, di, yv)));
    }
    for (; i < n; ++i) {
        const Complex xi = x[i];
        const Complex yi = y[i];
        x[i] = a * xi + b * yi;
        y[i] = c * xi + d * yi;
    }
}

Complex dotc_avx2(const Complex* x, const Complex* y, std::size_t n) {
    // re: sum xr*yr + xi*yi ; im: sum xr*yi - xi*yr
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = load2(x + i);
        const __m256d yv = load2(y + i);
        acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
        acc_im = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), acc_im);
    }
    alignas(32) double im_lanes[4];
    _mm256_store_pd(im_lanes, acc_im);
    Complex acc{hsum(acc_re), (im_lanes[0] - im_lanes[1]) + (im_lanes[2] - im_lanes[3])};
    for (; i < n; ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

double squared_norm_avx2(const Complex* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v = load2(x + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double total = hsum(acc);
    for (; i < n; ++i) total += std::norm(x[i]);
    return total;
}

double squared_distance_avx2(const Complex* x, const Complex* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v = _mm256_sub_pd(load2(x + i), load2(y + i));
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double total = hsum(acc);
    for (; i < n; ++i) total += std::norm(x[i] - y[i]);
    return total;
}

constexpr KernelTable kAvx2{
    axpy_avx2, rotate_avx2, dotc_avx2, squared_norm_avx2, squared_distance_avx2,
};

}  // namespace

const KernelTable* avx2_table() noexcept { return &kAvx2; }

}  // namespace cohinfo::linalg::kernels::detail

#else

namespace cohinfo::linalg::kernels::detail {
const KernelTable* avx2_table() noexcept { return nullptr; }
}  // namespace cohinfo::linalg::kernels::detail

#endif
