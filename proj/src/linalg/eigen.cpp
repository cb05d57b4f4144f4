#include "cohinfo/linalg/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cohinfo/error.hpp"
#include "cohinfo/linalg/kernels.hpp"

namespace cohinfo::linalg {
namespace {

double off_diagonal_norm(const ComplexMatrix& h) {
    double acc = 0.0;
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = 0; j < h.cols(); ++j)
            if (i != j) acc += std::norm(h(i, j));
    return std::sqrt(acc);
}

// Diagonalizes h in place. When vt is non-null it accumulates the transposed
// eigenvector matrix so that every update is a contiguous row rotation.
void jacobi_sweeps(ComplexMatrix& h, ComplexMatrix* vt, const JacobiOptions& options) {
    const std::size_t n = h.rows();
    const double scale = frobenius_norm(h);
    if (n < 2 || scale == 0.0) return;
    const double target = options.relative_off_tolerance * scale;

    for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
        if (off_diagonal_norm(h) < target) return;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex hpq = h(p, q);
                const double g = std::abs(hpq);
                if (g == 0.0) continue;
                const Complex phase = hpq / g;
                const double app = h(p, p).real();
                const double aqq = h(q, q).real();
                const double theta = (aqq - app) / (2.0 * g);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // Rotation G = diag(1, conj(phase)) * [[c, s], [-s, c]] on (p, q).
                // Rows of G^dagger H, then restore the columns by Hermiticity.
                kernels::rotate(h.row(p), h.row(q), c, -s * phase, s, c * phase);
                for (std::size_t i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    h(i, p) = std::conj(h(p, i));
                    h(i, q) = std::conj(h(q, i));
                }
                h(p, p) = app - t * g;
                h(q, q) = aqq + t * g;
                h(p, q) = 0.0;
                h(q, p) = 0.0;

                if (vt != nullptr) {
                    const Complex cphase = std::conj(phase);
                    kernels::rotate(vt->row(p), vt->row(q), c, -s * cphase, s, c * cphase);
                }
            }
        }
    }
}

ComplexMatrix checked_hermitian(const ComplexMatrix& m, double tol) {
    if (!m.is_square()) throw Error(ErrorCode::NotSquare, "eigendecomposition requires a square matrix");
    const double asym = frobenius_distance(m, m.adjoint());
    if (asym > tol) {
        throw Error(ErrorCode::NotHermitian, "||m - m^dagger||_F = " + std::to_string(asym));
    }
    return m.hermitian_part();
}

}  // namespace

HermitianEigen hermitian_eigendecomposition(const ComplexMatrix& m, double tol, const JacobiOptions& options) {
    ComplexMatrix h = checked_hermitian(m, tol);
    const std::size_t n = h.rows();
    ComplexMatrix vt = ComplexMatrix::identity(n);
    jacobi_sweeps(h, &vt, options);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return h(a, a).real() < h(b, b).real(); });

    HermitianEigen out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = h(order[k], order[k]).real();
        out.eigenvectors.set_column(k, vt.row(order[k]));
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, double tol) {
    ComplexMatrix h = checked_hermitian(m, tol);
    jacobi_sweeps(h, nullptr, {});
    std::vector<double> values(h.rows());
    for (std::size_t i = 0; i < h.rows(); ++i) values[i] = h(i, i).real();
    std::sort(values.begin(), values.end());
    return values;
}

std::vector<SpectralBranch> spectral_projectors(const HermitianEigen& eig, double relative_gap) {
    const auto& values = eig.eigenvalues;
    std::vector<SpectralBranch> branches;
    if (values.empty()) return branches;
    double radius = 0.0;
    for (double v : values) radius = std::max(radius, std::abs(v));
    const double gap = relative_gap * std::max(radius, 1e-300);
    const std::size_t n = eig.eigenvectors.rows();

    std::size_t start = 0;
    while (start < values.size()) {
        std::size_t end = start + 1;
        while (end < values.size() && values[end] - values[end - 1] <= gap) ++end;
        ComplexMatrix projector(n, n);
        double sum = 0.0;
        for (std::size_t k = start; k < end; ++k) {
            const auto v = eig.eigenvectors.column(k);
            projector += ComplexMatrix::outer(v);
            sum += values[k];
        }
        branches.push_back({sum / static_cast<double>(end - start), std::move(projector)});
        start = end;
    }
    return branches;
}

ComplexMatrix reconstruct(const HermitianEigen& eig) {
    const std::size_t n = eig.eigenvectors.rows();
    ComplexMatrix scaled = eig.eigenvectors;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < eig.eigenvalues.size(); ++c) scaled(r, c) *= eig.eigenvalues[c];
    return scaled * eig.eigenvectors.adjoint();
}

}  // namespace cohinfo::linalg
