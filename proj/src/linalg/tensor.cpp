#include "cohinfo/linalg/tensor.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "cohinfo/error.hpp"

namespace cohinfo::linalg {

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ++ar)
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            const Complex s = a(ar, ac);
            if (s == Complex{}) continue;
            for (std::size_t br = 0; br < b.rows(); ++br)
                for (std::size_t bc = 0; bc < b.cols(); ++bc)
                    out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
        }
    return out;
}

ComplexMatrix tensor_product(std::span<const ComplexMatrix> factors) {
    if (factors.empty()) return ComplexMatrix::identity(1);
    ComplexMatrix out = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) out = tensor_product(out, factors[i]);
    return out;
}

std::vector<Complex> tensor_product(std::span<const Complex> u, std::span<const Complex> v) {
    std::vector<Complex> out(u.size() * v.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i * v.size() + j] = u[i] * v[j];
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
    const std::size_t total = std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
    if (!m.is_square() || m.rows() != total) {
        throw Error(ErrorCode::DimensionMismatch, "product of subsystem dims does not match matrix dimension");
    }
    std::vector<bool> kept(dims.size(), false);
    for (std::size_t k : keep) {
        if (k >= dims.size()) throw Error(ErrorCode::DimensionMismatch, "kept subsystem index out of range");
        kept[k] = true;
    }

    // Split every full index into (kept part, traced part).
    std::vector<std::size_t> kept_index(total), traced_index(total);
    std::size_t kept_dim = 1;
    for (std::size_t s = 0; s < dims.size(); ++s)
        if (kept[s]) kept_dim *= dims[s];
    for (std::size_t full = 0; full < total; ++full) {
        std::size_t rest = full, k = 0, t = 0, k_stride = 1, t_stride = 1;
        for (std::size_t s = dims.size(); s-- > 0;) {
            const std::size_t digit = rest % dims[s];
            rest /= dims[s];
            if (kept[s]) {
                k += digit * k_stride;
                k_stride *= dims[s];
            } else {
                t += digit * t_stride;
                t_stride *= dims[s];
            }
        }
        kept_index[full] = k;
        traced_index[full] = t;
    }

    ComplexMatrix out(kept_dim, kept_dim);
    for (std::size_t i = 0; i < total; ++i)
        for (std::size_t j = 0; j < total; ++j)
            if (traced_index[i] == traced_index[j]) out(kept_index[i], kept_index[j]) += m(i, j);
    return out;
}

ComplexMatrix embed(const ComplexMatrix& op, std::size_t dim_before, std::size_t dim_after) {
    ComplexMatrix out = op;
    if (dim_before > 1) out = tensor_product(ComplexMatrix::identity(dim_before), out);
    if (dim_after > 1) out = tensor_product(out, ComplexMatrix::identity(dim_after));
    return out;
}

}  // namespace cohinfo::linalg
