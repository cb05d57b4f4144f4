#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cohinfo/linalg/complex_matrix.hpp"

namespace cohinfo::linalg {

// Kronecker product; the left factor is the slow (outer) index.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix tensor_product(std::span<const ComplexMatrix> factors);
std::vector<Complex> tensor_product(std::span<const Complex> u, std::span<const Complex> v);

// Traces out every subsystem not listed in `keep`. Subsystem 0 is the slowest
// index. Kept subsystems appear in ascending order. Throws DimensionMismatch
// when prod(dims) differs from the matrix dimension or keep is out of range.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

// I_{before} (x) op (x) I_{after}
ComplexMatrix embed(const ComplexMatrix& op, std::size_t dim_before, std::size_t dim_after);

}  // namespace cohinfo::linalg
