#include <atomic>

#include "cohinfo/error.hpp"
#include "cohinfo/linalg/kernels.hpp"

namespace cohinfo::linalg::kernels {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

struct ActiveState {
    std::atomic<Backend> backend;
    std::atomic<const KernelTable*> kernels;
};

ActiveState& active_state() {
    static ActiveState state{best_backend(), &table(best_backend())};
    return state;
}

}  // namespace

std::string_view to_string(Backend b) noexcept {
    switch (b) {
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
        case Backend::Neon: return "neon";
    }
    return "unknown";
}

bool backend_supported(Backend b) noexcept {
    switch (b) {
        case Backend::Scalar: return true;
        case Backend::Avx2: return detail::avx2_table() != nullptr && cpu_has_avx2();
        case Backend::Neon: return detail::neon_table() != nullptr;
    }
    return false;
}

const KernelTable& table(Backend b) {
    if (!backend_supported(b)) {
        throw Error(ErrorCode::UnsupportedBackend, std::string(to_string(b)) + " kernels unavailable on this CPU/build");
    }
    switch (b) {
        case Backend::Avx2: return *detail::avx2_table();
        case Backend::Neon: return *detail::neon_table();
        case Backend::Scalar: break;
    }
    return detail::scalar_table();
}

Backend best_backend() noexcept {
    if (backend_supported(Backend::Avx2)) return Backend::Avx2;
    if (backend_supported(Backend::Neon)) return Backend::Neon;
    return Backend::Scalar;
}

Backend active_backend() noexcept { return active_state().backend.load(std::memory_order_relaxed); }

void select_backend(Backend b) {
    const KernelTable& t = table(b);
    active_state().kernels.store(&t, std::memory_order_relaxed);
    active_state().backend.store(b, std::memory_order_relaxed);
}

namespace {
const KernelTable& active() { return *active_state().kernels.load(std::memory_order_relaxed); }

void require_same_length(std::size_t a, std::size_t b) {
    if (a != b) throw Error(ErrorCode::ShapeMismatch, "kernel operands differ in length");
}
}  // namespace

void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y) {
    require_same_length(x.size(), y.size());
    active().axpy(a, x.data(), y.data(), x.size());
}

void rotate(std::span<Complex> x, std::span<Complex> y, Complex a, Complex b, Complex c, Complex d) {
    require_same_length(x.size(), y.size());
    active().rotate(x.data(), y.data(), x.size(), a, b, c, d);
}

Complex dotc(std::span<const Complex> x, std::span<const Complex> y) {
    require_same_length(x.size(), y.size());
    return active().dotc(x.data(), y.data(), x.size());
}

double squared_norm(std::span<const Complex> x) { return active().squared_norm(x.data(), x.size()); }

double squared_distance(std::span<const Complex> x, std::span<const Complex> y) {
    require_same_length(x.size(), y.size());
    return active().squared_distance(x.data(), y.data(), x.size());
}

}  // namespace cohinfo::linalg::kernels
