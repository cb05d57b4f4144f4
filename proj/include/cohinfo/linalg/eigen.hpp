#pragma once

#include <vector>

#include "cohinfo/linalg/complex_matrix.hpp"

namespace cohinfo::linalg {

struct HermitianEigen {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // orthonormal columns, same order
};

struct JacobiOptions {
    double relative_off_tolerance = 1e-12;
    int max_sweeps = 100;
};

// Cyclic complex Jacobi. Throws NotSquare, or NotHermitian when
// ||m - m^dagger||_F > tol.
HermitianEigen hermitian_eigendecomposition(const ComplexMatrix& m, double tol = 1e-10,
                                            const JacobiOptions& options = {});

// Eigenvalues only; same algorithm without accumulating vectors.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, double tol = 1e-10);

struct SpectralBranch {
    double eigenvalue;
    ComplexMatrix projector;
};

// Groups eigenvalues closer than relative_gap * spectral radius into one
// eigenspace and returns the eigenprojectors in ascending eigenvalue order.
std::vector<SpectralBranch> spectral_projectors(const HermitianEigen& eig, double relative_gap = 1e-9);

// V diag(values) V^dagger
ComplexMatrix reconstruct(const HermitianEigen& eig);

}  // namespace cohinfo::linalg
