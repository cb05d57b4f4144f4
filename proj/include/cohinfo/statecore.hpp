#pragma once

// States, observables and the Lüders machinery.
//
// Tensor layout: subsystem 1 is always the slow (leftmost) Kronecker factor,
// so a bipartite index is i1 * d2 + i2 and a tripartite one
// (i1 * d2 + i2) * d3 + i3.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cohinfo/linalg/complex_matrix.hpp"

namespace cohinfo {

using linalg::ComplexMatrix;

// Branch l is detectable iff p_l exceeds this.
inline constexpr double kDetectableProbability = 1e-12;
inline constexpr double kStateTolerance = 1e-10;

class DensityMatrix {
public:
    DensityMatrix() = default;

    // Checks Hermiticity, eigenvalues >= -tol and unit trace; throws InvalidState.
    static DensityMatrix validated(const ComplexMatrix& m, double tol = kStateTolerance);
    // Hermitizes but skips the spectral check. For matrices that are states by
    // construction (P rho P / p, partial traces, convex combinations).
    static DensityMatrix assume_valid(const ComplexMatrix& m);

    static DensityMatrix maximally_mixed(std::size_t dim);
    static DensityMatrix pure(std::span<const Complex> vector);  // normalizes
    static DensityMatrix diagonal(std::span<const double> probabilities);

    const ComplexMatrix& matrix() const noexcept { return m_; }
    std::size_t dim() const noexcept { return m_.rows(); }

private:
    explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

class Observable {
public:
    struct Branch {
        double eigenvalue;
        ComplexMatrix projector;
    };

    Observable() = default;

    // Distinct eigenvalues, Hermitian idempotent mutually orthogonal
    // projectors summing to the identity; throws InvalidObservable.
    static Observable validated(std::vector<Branch> branches, double tol = kStateTolerance);
    static Observable assume_valid(std::vector<Branch> branches);

    // Complete observable from the orthonormal columns of `basis`.
    static Observable from_basis(std::span<const double> eigenvalues, const ComplexMatrix& basis);
    // Complete observable in the standard basis with eigenvalues 1, 2, ..., n.
    static Observable computational(std::size_t dim);
    static Observable trivial(std::size_t dim);
    // Spectral form of a Hermitian operator.
    static Observable from_operator(const ComplexMatrix& op, double tol = kStateTolerance);

    const std::vector<Branch>& branches() const noexcept { return branches_; }
    const Branch& branch(std::size_t l) const { return branches_.at(l); }
    std::size_t branch_count() const noexcept { return branches_.size(); }
    std::size_t dim() const noexcept { return branches_.empty() ? 0 : branches_.front().projector.rows(); }
    std::size_t rank(std::size_t l) const;
    bool is_complete() const;
    ComplexMatrix operator_matrix() const;  // sum_l a_l P_l

private:
    explicit Observable(std::vector<Branch> branches) : branches_(std::move(branches)) {}
    std::vector<Branch> branches_;
};

class BipartiteState {
public:
    BipartiteState() = default;
    BipartiteState(DensityMatrix state, std::size_t d1, std::size_t d2);  // throws DimensionMismatch

    const DensityMatrix& state() const noexcept { return state_; }
    const ComplexMatrix& matrix() const noexcept { return state_.matrix(); }
    std::size_t d1() const noexcept { return d1_; }
    std::size_t d2() const noexcept { return d2_; }

private:
    DensityMatrix state_;
    std::size_t d1_ = 0;
    std::size_t d2_ = 0;
};

class TripartiteState {
public:
    TripartiteState() = default;
    TripartiteState(DensityMatrix state, std::size_t d1, std::size_t d2, std::size_t d3);

    const DensityMatrix& state() const noexcept { return state_; }
    const ComplexMatrix& matrix() const noexcept { return state_.matrix(); }
    std::size_t d1() const noexcept { return d1_; }
    std::size_t d2() const noexcept { return d2_; }
    std::size_t d3() const noexcept { return d3_; }

    // Grouped as 1 | (2+3).
    BipartiteState split_1_23() const { return {state_, d1_, d2_ * d3_}; }
    // Grouped as (1+2) | 3.
    BipartiteState split_12_3() const { return {state_, d1_ * d2_, d3_}; }
    // Reduced state on the listed subsystems (1-based, ascending).
    DensityMatrix reduce(std::span<const std::size_t> keep) const;

private:
    DensityMatrix state_;
    std::size_t d1_ = 0, d2_ = 0, d3_ = 0;
};

struct SchmidtDecomposition {
    std::vector<double> coefficients;  // positive, descending
    ComplexMatrix left_vectors;        // d1 x r, orthonormal columns
    ComplexMatrix right_vectors;       // d2 x r, orthonormal columns
};

struct SelectiveOutcome {
    double probability = 0.0;
    std::optional<DensityMatrix> state;  // present iff detectable
};

// keep = 1 or 2
DensityMatrix reduce(const BipartiteState& s, int keep);

// (a_l, I_{d1} (x) P_l)
Observable lift_observable(const Observable& a2, std::size_t d1);
// (a_l, I_{before} (x) P_l (x) I_{after})
Observable embed_observable(const Observable& a, std::size_t dim_before, std::size_t dim_after);

std::vector<double> outcome_probabilities(const DensityMatrix& rho, const Observable& a);
DensityMatrix luders_mixture(const DensityMatrix& rho, const Observable& a);
SelectiveOutcome luders_selective(const DensityMatrix& rho, const Observable& a, std::size_t l);

// Projector onto the span of eigenvectors with eigenvalue > tol.
ComplexMatrix range_projector(const ComplexMatrix& psd, double tol = 1e-10);
inline ComplexMatrix range_projector(const DensityMatrix& rho, double tol = 1e-10) {
    return range_projector(rho.matrix(), tol);
}

// Minimal purification: ancilla (subsystem 1) dimension = rank(rho2).
BipartiteState purify(const DensityMatrix& rho2, double tol = 1e-12);

// Largest-eigenvalue eigenvector; NotPure when that eigenvalue < 1 - tol.
std::vector<Complex> pure_state_vector(const DensityMatrix& rho, double tol = 1e-9);

SchmidtDecomposition schmidt_decomposition(const BipartiteState& psi, double tol = 1e-9);
// Vector form; the state vector need not come from a density matrix.
SchmidtDecomposition schmidt_decomposition(std::span<const Complex> psi, std::size_t d1, std::size_t d2);

}  // namespace cohinfo
