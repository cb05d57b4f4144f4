#include "cohinfo/statecore.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cohinfo/error.hpp"
#include "cohinfo/linalg/eigen.hpp"
#include "cohinfo/linalg/tensor.hpp"

namespace cohinfo {

using linalg::frobenius_distance;
using linalg::frobenius_norm;

namespace {

std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

}  // namespace

DensityMatrix DensityMatrix::validated(const ComplexMatrix& m, double tol) {
    if (!m.is_square() || m.rows() == 0) throw Error(ErrorCode::InvalidState, "state matrix must be square and nonempty");
    const double asym = frobenius_distance(m, m.adjoint());
    if (asym > tol) throw Error(ErrorCode::InvalidState, "state not Hermitian (" + fmt_double(asym) + ")");
    const ComplexMatrix h = m.hermitian_part();
    const double tr = h.trace().real();
    if (std::abs(tr - 1.0) > tol) throw Error(ErrorCode::InvalidState, "trace " + fmt_double(tr) + " != 1");
    const auto values = linalg::hermitian_eigenvalues(h);
    if (values.front() < -tol) {
        throw Error(ErrorCode::InvalidState, "negative eigenvalue " + fmt_double(values.front()));
    }
    return DensityMatrix(h);
}

DensityMatrix DensityMatrix::assume_valid(const ComplexMatrix& m) { return DensityMatrix(m.hermitian_part()); }

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    ComplexMatrix m = ComplexMatrix::identity(dim);
    m *= 1.0 / static_cast<double>(dim);
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> vector) {
    const double norm = linalg::vector_norm(vector);
    if (norm == 0.0) throw Error(ErrorCode::InvalidState, "zero state vector");
    ComplexMatrix m = ComplexMatrix::outer(vector);
    m *= 1.0 / (norm * norm);
    return DensityMatrix(m.hermitian_part());
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> probabilities) {
    return validated(ComplexMatrix::diagonal(probabilities));
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
    return DensityMatrix::assume_valid(linalg::tensor_product(a.matrix(), b.matrix()));
}

// ---------------------------------------------------------------- Observable

Observable Observable::validated(std::vector<Branch> branches, double tol) {
    if (branches.empty()) throw Error(ErrorCode::InvalidObservable, "observable has no branches");
    const std::size_t n = branches.front().projector.rows();
    ComplexMatrix sum(n, n);
    for (std::size_t l = 0; l < branches.size(); ++l) {
        const auto& p = branches[l].projector;
        const std::string where = "branch " + std::to_string(l) + ": ";
        if (!p.is_square() || p.rows() != n) throw Error(ErrorCode::InvalidObservable, where + "projector shape");
        if (frobenius_distance(p, p.adjoint()) > tol) throw Error(ErrorCode::InvalidObservable, where + "not Hermitian");
        if (frobenius_distance(p * p, p) > tol) throw Error(ErrorCode::InvalidObservable, where + "not idempotent");
        for (std::size_t k = 0; k < l; ++k) {
            if (std::abs(branches[k].eigenvalue - branches[l].eigenvalue) <= 1e-9) {
                throw Error(ErrorCode::InvalidObservable, where + "eigenvalue repeats branch " + std::to_string(k));
            }
            if (frobenius_norm(branches[k].projector * p) > tol) {
                throw Error(ErrorCode::InvalidObservable, where + "not orthogonal to branch " + std::to_string(k));
            }
        }
        sum += p;
    }
    if (frobenius_distance(sum, ComplexMatrix::identity(n)) > tol) {
        throw Error(ErrorCode::InvalidObservable, "projectors do not sum to the identity");
    }
    for (auto& b : branches) b.projector = b.projector.hermitian_part();
    return Observable(std::move(branches));
}

Observable Observable::assume_valid(std::vector<Branch> branches) { return Observable(std::move(branches)); }

Observable Observable::from_basis(std::span<const double> eigenvalues, const ComplexMatrix& basis) {
    if (eigenvalues.size() != basis.cols() || basis.rows() != basis.cols()) {
        throw Error(ErrorCode::InvalidObservable, "complete observable needs one eigenvalue per basis vector");
    }
    std::vector<Branch> branches;
    for (std::size_t k = 0; k < basis.cols(); ++k) {
        auto v = basis.column(k);
        const double norm = linalg::vector_norm(v);
        for (auto& z : v) z /= norm;
        branches.push_back({eigenvalues[k], ComplexMatrix::outer(v)});
    }
    return validated(std::move(branches), 1e-9);
}

Observable Observable::computational(std::size_t dim) {
    std::vector<Branch> branches;
    for (std::size_t k = 0; k < dim; ++k) {
        ComplexMatrix p(dim, dim);
        p(k, k) = 1.0;
        branches.push_back({static_cast<double>(k + 1), std::move(p)});
    }
    return Observable(std::move(branches));
}

Observable Observable::trivial(std::size_t dim) { return Observable({{1.0, ComplexMatrix::identity(dim)}}); }

Observable Observable::from_operator(const ComplexMatrix& op, double tol) {
    const auto eig = linalg::hermitian_eigendecomposition(op, tol);
    std::vector<Branch> branches;
    for (auto& sb : linalg::spectral_projectors(eig)) branches.push_back({sb.eigenvalue, std::move(sb.projector)});
    return Observable(std::move(branches));
}

std::size_t Observable::rank(std::size_t l) const {
    return static_cast<std::size_t>(std::llround(branch(l).projector.trace().real()));
}

bool Observable::is_complete() const {
    return std::all_of(branches_.begin(), branches_.end(),
                       [](const Branch& b) { return std::llround(b.projector.trace().real()) == 1; });
}

ComplexMatrix Observable::operator_matrix() const {
    ComplexMatrix out(dim(), dim());
    for (const auto& b : branches_) out += b.eigenvalue * b.projector;
    return out;
}

// ------------------------------------------------------------ composite states

BipartiteState::BipartiteState(DensityMatrix state, std::size_t d1, std::size_t d2)
    : state_(std::move(state)), d1_(d1), d2_(d2) {
    if (d1 * d2 != state_.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "d1*d2 = " + std::to_string(d1 * d2) + " but state dimension is " +
                                                      std::to_string(state_.dim()));
    }
}

TripartiteState::TripartiteState(DensityMatrix state, std::size_t d1, std::size_t d2, std::size_t d3)
    : state_(std::move(state)), d1_(d1), d2_(d2), d3_(d3) {
    if (d1 * d2 * d3 != state_.dim()) throw Error(ErrorCode::DimensionMismatch, "d1*d2*d3 differs from state dimension");
}

DensityMatrix TripartiteState::reduce(std::span<const std::size_t> keep) const {
    const std::size_t dims[] = {d1_, d2_, d3_};
    std::vector<std::size_t> zero_based;
    for (std::size_t k : keep) {
        if (k < 1 || k > 3) throw Error(ErrorCode::DimensionMismatch, "tripartite subsystem index must be 1..3");
        zero_based.push_back(k - 1);
    }
    return DensityMatrix::assume_valid(linalg::partial_trace(state_.matrix(), dims, zero_based));
}

DensityMatrix reduce(const BipartiteState& s, int keep) {
    if (keep != 1 && keep != 2) throw Error(ErrorCode::DimensionMismatch, "bipartite subsystem index must be 1 or 2");
    const std::size_t dims[] = {s.d1(), s.d2()};
    const std::size_t kept[] = {static_cast<std::size_t>(keep - 1)};
    return DensityMatrix::assume_valid(linalg::partial_trace(s.matrix(), dims, kept));
}

// ------------------------------------------------------------------- Lüders

Observable embed_observable(const Observable& a, std::size_t dim_before, std::size_t dim_after) {
    std::vector<Observable::Branch> branches;
    branches.reserve(a.branch_count());
    for (const auto& b : a.branches()) {
        branches.push_back({b.eigenvalue, linalg::embed(b.projector, dim_before, dim_after)});
    }
    return Observable::assume_valid(std::move(branches));
}

Observable lift_observable(const Observable& a2, std::size_t d1) { return embed_observable(a2, d1, 1); }

namespace {
void require_matching(const DensityMatrix& rho, const Observable& a) {
    if (rho.dim() != a.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "observable acts on dimension " + std::to_string(a.dim()) +
                                                      " but state has dimension " + std::to_string(rho.dim()));
    }
}
}  // namespace

std::vector<double> outcome_probabilities(const DensityMatrix& rho, const Observable& a) {
    require_matching(rho, a);
    std::vector<double> p;
    p.reserve(a.branch_count());
    for (const auto& b : a.branches()) {
        p.push_back(std::max(0.0, linalg::trace_of_product(rho.matrix(), b.projector).real()));
    }
    return p;
}

DensityMatrix luders_mixture(const DensityMatrix& rho, const Observable& a) {
    require_matching(rho, a);
    ComplexMatrix out(rho.dim(), rho.dim());
    for (const auto& b : a.branches()) out += b.projector * rho.matrix() * b.projector;
    return DensityMatrix::assume_valid(out);
}

SelectiveOutcome luders_selective(const DensityMatrix& rho, const Observable& a, std::size_t l) {
    require_matching(rho, a);
    const auto& p = a.branch(l).projector;
    ComplexMatrix restricted = p * rho.matrix() * p;
    SelectiveOutcome out;
    out.probability = std::max(0.0, restricted.trace().real());
    if (out.probability > kDetectableProbability) {
        restricted *= 1.0 / out.probability;
        out.state = DensityMatrix::assume_valid(restricted);
    }
    return out;
}

ComplexMatrix range_projector(const ComplexMatrix& psd, double tol) {
    const auto eig = linalg::hermitian_eigendecomposition(psd, 1e-8);
    const std::size_t n = psd.rows();
    ComplexMatrix q(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        if (eig.eigenvalues[k] > tol) q += ComplexMatrix::outer(eig.eigenvectors.column(k));
    }
    return q;
}

// ------------------------------------------------------- purification/Schmidt

BipartiteState purify(const DensityMatrix& rho2, double tol) {
    const auto eig = linalg::hermitian_eigendecomposition(rho2.matrix());
    const std::size_t d2 = rho2.dim();
    std::vector<std::size_t> support;
    double kept_mass = 0.0;
    // Descending so the ancilla basis follows decreasing weight.
    for (std::size_t k = d2; k-- > 0;) {
        if (eig.eigenvalues[k] > tol) {
            support.push_back(k);
            kept_mass += eig.eigenvalues[k];
        }
    }
    const std::size_t d1 = support.size();
    std::vector<Complex> psi(d1 * d2);
    for (std::size_t a = 0; a < d1; ++a) {
        const std::size_t k = support[a];
        const double amp = std::sqrt(eig.eigenvalues[k] / kept_mass);
        for (std::size_t j = 0; j < d2; ++j) psi[a * d2 + j] = amp * eig.eigenvectors(j, k);
    }
    return {DensityMatrix::pure(psi), d1, d2};
}

std::vector<Complex> pure_state_vector(const DensityMatrix& rho, double tol) {
    const auto eig = linalg::hermitian_eigendecomposition(rho.matrix());
    const double top = eig.eigenvalues.back();
    if (top < 1.0 - tol) throw Error(ErrorCode::NotPure, "largest eigenvalue " + fmt_double(top) + " < 1 - tol");
    return eig.eigenvectors.column(eig.eigenvalues.size() - 1);
}

SchmidtDecomposition schmidt_decomposition(std::span<const Complex> psi, std::size_t d1, std::size_t d2) {
    if (psi.size() != d1 * d2) throw Error(ErrorCode::DimensionMismatch, "state vector length differs from d1*d2");
    // Singular values of the d1 x d2 coefficient matrix M via the Hermitian
    // dilation [[0, M], [M^dagger, 0]], whose spectrum is {+-sigma_k, 0}.
    // Working on the dilation keeps sigma accurate to machine precision
    // instead of squaring it as M M^dagger would.
    const std::size_t n = d1 + d2;
    ComplexMatrix dilation(n, n);
    for (std::size_t i = 0; i < d1; ++i)
        for (std::size_t j = 0; j < d2; ++j) {
            dilation(i, d1 + j) = psi[i * d2 + j];
            dilation(d1 + j, i) = std::conj(psi[i * d2 + j]);
        }
    const auto eig = linalg::hermitian_eigendecomposition(dilation);

    constexpr double kSingularCutoff = 1e-12;
    std::vector<std::size_t> picked;
    for (std::size_t k = n; k-- > 0;) {
        if (eig.eigenvalues[k] > kSingularCutoff) picked.push_back(k);
    }

    SchmidtDecomposition out;
    out.left_vectors = ComplexMatrix(d1, picked.size());
    out.right_vectors = ComplexMatrix(d2, picked.size());
    for (std::size_t c = 0; c < picked.size(); ++c) {
        const std::size_t k = picked[c];
        std::vector<Complex> u(d1), v(d2);
        for (std::size_t i = 0; i < d1; ++i) u[i] = eig.eigenvectors(i, k);
        for (std::size_t j = 0; j < d2; ++j) v[j] = std::conj(eig.eigenvectors(d1 + j, k));
        const double nu = linalg::vector_norm(u), nv = linalg::vector_norm(v);
        for (auto& z : u) z /= nu;
        for (auto& z : v) z /= nv;
        out.coefficients.push_back(eig.eigenvalues[k]);
        out.left_vectors.set_column(c, u);
        out.right_vectors.set_column(c, v);
    }
    return out;
}

SchmidtDecomposition schmidt_decomposition(const BipartiteState& psi, double tol) {
    const auto v = pure_state_vector(psi.state(), tol);
    return schmidt_decomposition(v, psi.d1(), psi.d2());
}

}  // namespace cohinfo
