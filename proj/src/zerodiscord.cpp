#include "cohinfo/zerodiscord.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "cohinfo/error.hpp"
#include "cohinfo/linalg/eigen.hpp"
#include "cohinfo/linalg/tensor.hpp"

namespace cohinfo {

std::string_view to_string(DiscordKind k) noexcept {
    switch (k) {
        case DiscordKind::StrongZero: return "StrongZero";
        case DiscordKind::WeakZero: return "WeakZero";
        case DiscordKind::Positive: return "Positive";
    }
    return "?";
}

DiscordClassification classify(const BipartiteState& s, const Observable& a2) {
    if (a2.dim() != s.d2()) throw Error(ErrorCode::DimensionMismatch, "observable does not act on subsystem 2");
    const Observable lifted = lift_observable(a2, s.d1());
    DiscordClassification c;
    c.global_IC = coherence_information(lifted, s.state());
    c.local_IC = coherence_information(a2, reduce(s, 2));
    c.discord = detail::floor_roundoff(c.global_IC - c.local_IC);
    c.commutator_norm = frobenius_norm(linalg::commutator(lifted.operator_matrix(), s.matrix()));
    c.luders_fixed_point_residual = frobenius_distance(s.matrix(), luders_mixture(s.state(), lifted).matrix());

    if (c.global_IC < kStrongZeroThreshold && c.local_IC < kStrongZeroThreshold) {
        c.kind = DiscordKind::StrongZero;
    } else if (c.discord < kStrongZeroThreshold && c.local_IC >= kWeakZeroLocalThreshold) {
        c.kind = DiscordKind::WeakZero;
    } else {
        c.kind = DiscordKind::Positive;
    }
    return c;
}

namespace {

// Orthonormal (Hilbert-Schmidt) basis of Hermitian d x d matrices.
std::vector<ComplexMatrix> hermitian_basis(std::size_t d) {
    std::vector<ComplexMatrix> basis;
    const double r = 1.0 / std::sqrt(2.0);
    for (std::size_t j = 0; j < d; ++j) {
        ComplexMatrix e(d, d);
        e(j, j) = 1.0;
        basis.push_back(std::move(e));
    }
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = j + 1; k < d; ++k) {
            ComplexMatrix sym(d, d), anti(d, d);
            sym(j, k) = sym(k, j) = r;
            anti(j, k) = Complex(0.0, r);
            anti(k, j) = Complex(0.0, -r);
            basis.push_back(std::move(sym));
            basis.push_back(std::move(anti));
        }
    return basis;
}

std::vector<ComplexMatrix> cluster_projectors(const linalg::HermitianEigen& eig, double* min_gap) {
    constexpr double kSame = 1e-9;
    std::vector<ComplexMatrix> out;
    const std::size_t n = eig.eigenvalues.size();
    *min_gap = std::numeric_limits<double>::infinity();
    std::size_t start = 0;
    while (start < n) {
        std::size_t end = start + 1;
        while (end < n && eig.eigenvalues[end] - eig.eigenvalues[end - 1] < kSame) ++end;
        if (end < n) *min_gap = std::min(*min_gap, eig.eigenvalues[end] - eig.eigenvalues[end - 1]);
        ComplexMatrix p(n, n);
        for (std::size_t k = start; k < end; ++k) p += ComplexMatrix::outer(eig.eigenvectors.column(k));
        out.push_back(std::move(p));
        start = end;
    }
    return out;
}

}  // namespace

std::vector<ComplexMatrix> subsystem_commutant_projectors(const BipartiteState& s, double tol) {
    const std::size_t d1 = s.d1(), d2 = s.d2();
    const auto basis = hermitian_basis(d2);
    const std::size_t m = basis.size();

    // Columns C_b = [I (x) B_b, rho]; the real Gram matrix Re tr(C_a^dagger C_b)
    // has the commutant as its nullspace.
    std::vector<ComplexMatrix> images;
    images.reserve(m);
    for (const auto& b : basis) images.push_back(linalg::commutator(linalg::embed(b, d1, 1), s.matrix()));
    ComplexMatrix gram(m, m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a; b < m; ++b) {
            const double g = linalg::trace_of_product(images[a].adjoint(), images[b]).real();
            gram(a, b) = g;
            gram(b, a) = g;
        }
    const auto eig = linalg::hermitian_eigendecomposition(gram);
    const double top = std::max(eig.eigenvalues.back(), 0.0);
    std::vector<std::vector<Complex>> null_vectors;
    for (std::size_t k = 0; k < m; ++k)
        if (eig.eigenvalues[k] <= tol * top) null_vectors.push_back(eig.eigenvectors.column(k));

    std::mt19937_64 rng(0x5eedc0ffeeULL);
    std::normal_distribution<double> normal;
    std::vector<ComplexMatrix> best;
    for (int attempt = 0; attempt < 6; ++attempt) {
        ComplexMatrix x(d2, d2);
        for (const auto& v : null_vectors) {
            const double coeff = normal(rng);
            for (std::size_t b = 0; b < m; ++b) x += (coeff * v[b].real()) * basis[b];
        }
        const double norm = frobenius_norm(x);
        if (norm > 0.0) x *= 1.0 / norm;
        double min_gap = 0.0;
        best = cluster_projectors(linalg::hermitian_eigendecomposition(x.hermitian_part()), &min_gap);
        if (min_gap >= 1e-6) break;
    }
    return best;
}

MonoOrthogonality mono_orthogonality_certificate(const BipartiteState& s, double tol) {
    MonoOrthogonality r;
    const auto projectors = subsystem_commutant_projectors(s, tol);
    std::vector<Mixture::Component> components;
    std::vector<DensityMatrix> reductions;
    ComplexMatrix rebuilt(s.matrix().rows(), s.matrix().cols());
    for (const auto& p : projectors) {
        const ComplexMatrix lifted = linalg::embed(p, s.d1(), 1);
        ComplexMatrix block = lifted * s.matrix() * lifted;
        const double w = block.trace().real();
        if (w <= kDetectableProbability) continue;
        rebuilt += block;
        block *= 1.0 / w;
        const DensityMatrix state = DensityMatrix::assume_valid(block);
        reductions.push_back(reduce(BipartiteState(state, s.d1(), s.d2()), 2));
        components.push_back({w, state});
        r.blocks.push_back(p);
    }
    r.is_mono_orthogonal = r.blocks.size() >= 2;
    r.reconstruction_residual = frobenius_distance(rebuilt, s.matrix());
    for (std::size_t k = 0; k < reductions.size(); ++k)
        for (std::size_t j = 0; j < k; ++j)
            r.max_reduction_overlap = std::max(
                r.max_reduction_overlap, linalg::trace_of_product(reductions[k].matrix(), reductions[j].matrix()).real());
    if (r.is_mono_orthogonal) {
        double sum = 0.0;
        for (const auto& c : components) sum += c.weight;
        for (auto& c : components) c.weight /= sum;
        r.witness = Mixture::validated(std::move(components));
    }
    return r;
}

std::optional<Observable> strong_zero_complete_observable(const BipartiteState& s, double tol) {
    const auto projectors = subsystem_commutant_projectors(s, tol);
    const std::size_t d2 = s.d2();
    ComplexMatrix basis(d2, d2);
    std::vector<double> eigenvalues;
    for (std::size_t l = 0; l < projectors.size(); ++l) {
        if (std::llround(projectors[l].trace().real()) != 1) return std::nullopt;
        // Rank-1 projector: any nonzero column normalized spans it.
        std::size_t best = 0;
        for (std::size_t c = 1; c < d2; ++c)
            if (projectors[l](c, c).real() > projectors[l](best, best).real()) best = c;
        auto v = projectors[l].column(best);
        const double n = linalg::vector_norm(v);
        for (auto& z : v) z /= n;
        basis.set_column(l, v);
        eigenvalues.push_back(static_cast<double>(l + 1));
    }
    Observable a = Observable::from_basis(eigenvalues, basis);

    // Verify the form sum_l p_l rho1^l (x) |l><l|.
    const Observable lifted = lift_observable(a, s.d1());
    ComplexMatrix rebuilt(s.matrix().rows(), s.matrix().cols());
    for (std::size_t l = 0; l < a.branch_count(); ++l) {
        auto sel = luders_selective(s.state(), lifted, l);
        if (!sel.state) continue;
        const DensityMatrix rho1 = reduce(BipartiteState(*sel.state, s.d1(), s.d2()), 1);
        rebuilt += sel.probability * linalg::tensor_product(rho1.matrix(), a.branch(l).projector);
    }
    if (frobenius_distance(rebuilt, s.matrix()) > tol) return std::nullopt;
    return a;
}

double StatisticalDecomposition::residual() const {
    return std::max({std::abs(coherence - coherence_blocks), std::abs(local_coherence - local_coherence_blocks),
                     std::abs(discord - discord_blocks)});
}

StatisticalDecomposition statistical_decomposition_check(const BipartiteState& s, const Observable& a2,
                                                         const std::vector<ComplexMatrix>& blocks) {
    constexpr double kCommute = 1e-9;
    const std::size_t d2 = s.d2();
    ComplexMatrix sum(d2, d2);
    for (const auto& q : blocks) {
        if (q.rows() != d2 || q.cols() != d2) throw Error(ErrorCode::DimensionMismatch, "block not on subsystem 2");
        sum += q;
        if (frobenius_norm(linalg::commutator(linalg::embed(q, s.d1(), 1), s.matrix())) > kCommute)
            throw Error(ErrorCode::BlocksDoNotCommute, "block does not commute with the state");
        for (const auto& b : a2.branches())
            if (frobenius_norm(linalg::commutator(q, b.projector)) > kCommute)
                throw Error(ErrorCode::BlocksDoNotCommute, "block does not commute with the observable");
    }
    if (frobenius_distance(sum, ComplexMatrix::identity(d2)) > 1e-9)
        throw Error(ErrorCode::ValidationError, "blocks do not sum to the identity");

    const Observable lifted = lift_observable(a2, s.d1());
    StatisticalDecomposition r;
    r.coherence = coherence_information(lifted, s.state());
    r.local_coherence = coherence_information(a2, reduce(s, 2));
    r.discord = r.coherence - r.local_coherence;
    for (const auto& q : blocks) {
        const ComplexMatrix lq = linalg::embed(q, s.d1(), 1);
        ComplexMatrix block = lq * s.matrix() * lq;
        const double w = block.trace().real();
        r.weights.push_back(w);
        if (w <= kDetectableProbability) continue;
        block *= 1.0 / w;
        const BipartiteState bs(DensityMatrix::assume_valid(block), s.d1(), s.d2());
        const double g = coherence_information(lifted, bs.state());
        const double l = coherence_information(a2, reduce(bs, 2));
        r.coherence_blocks += w * g;
        r.local_coherence_blocks += w * l;
        r.discord_blocks += w * (g - l);
    }
    return r;
}

}  // namespace cohinfo
