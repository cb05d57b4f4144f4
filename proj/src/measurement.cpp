#include "cohinfo/measurement.hpp"

#include <algorithm>
#include <cmath>

#include "cohinfo/error.hpp"
#include "cohinfo/linalg/tensor.hpp"

namespace cohinfo {

ApparatusSpec ApparatusSpec::standard(const Observable& a2) {
    ApparatusSpec spec;
    spec.a2 = a2;
    spec.d3 = a2.branch_count();
    spec.pointer_basis = ComplexMatrix::identity(spec.d3);
    spec.initial_pointer.assign(spec.d3, Complex{});
    spec.initial_pointer[0] = 1.0;
    return spec;
}

void ApparatusSpec::validate() const {
    if (d3 != a2.branch_count()) throw Error(ErrorCode::ValidationError, "d3 must equal the branch count of A2");
    if (pointer_basis.rows() != d3 || pointer_basis.cols() != d3)
        throw Error(ErrorCode::ValidationError, "pointer basis must be d3 x d3");
    if (initial_pointer.size() != d3) throw Error(ErrorCode::ValidationError, "initial pointer must have length d3");
    if (frobenius_distance(pointer_basis.adjoint() * pointer_basis, ComplexMatrix::identity(d3)) > 1e-10)
        throw Error(ErrorCode::ValidationError, "pointer basis is not orthonormal");
    if (std::abs(linalg::vector_norm(initial_pointer) - 1.0) > 1e-10)
        throw Error(ErrorCode::ValidationError, "initial pointer is not a unit vector");
}

Observable ApparatusSpec::pointer_observable() const {
    std::vector<double> values(d3);
    for (std::size_t l = 0; l < d3; ++l) values[l] = static_cast<double>(l + 1);
    return Observable::from_basis(values, pointer_basis);
}

namespace {

// Orthonormal basis whose first column is `first`, completed by Gram-Schmidt
// over the standard basis in index order.
ComplexMatrix completed_basis(std::span<const Complex> first) {
    const std::size_t d = first.size();
    std::vector<std::vector<Complex>> cols;
    auto try_add = [&](std::vector<Complex> v) {
        for (const auto& c : cols) {
            const Complex proj = linalg::inner_product(c, v);
            for (std::size_t i = 0; i < d; ++i) v[i] -= proj * c[i];
        }
        const double n = linalg::vector_norm(v);
        if (n < 1e-10) return;
        for (auto& z : v) z /= n;
        cols.push_back(std::move(v));
    };
    try_add(std::vector<Complex>(first.begin(), first.end()));
    for (std::size_t k = 0; k < d && cols.size() < d; ++k) {
        std::vector<Complex> e(d);
        e[k] = 1.0;
        try_add(std::move(e));
    }
    ComplexMatrix out(d, d);
    for (std::size_t c = 0; c < d; ++c) out.set_column(c, cols[c]);
    return out;
}

}  // namespace

ComplexMatrix build_measurement_unitary(const ApparatusSpec& spec) {
    spec.validate();
    const std::size_t d2 = spec.a2.dim(), d3 = spec.d3;
    const ComplexMatrix f = completed_basis(spec.initial_pointer);
    ComplexMatrix u(d2 * d3, d2 * d3);
    for (std::size_t l = 0; l < spec.a2.branch_count(); ++l) {
        const ComplexMatrix g = completed_basis(spec.pointer_basis.column(l));
        u += linalg::tensor_product(spec.a2.branch(l).projector, g * f.adjoint());
    }
    return u;
}

PremeasurementResult premeasure(const BipartiteState& s, const ApparatusSpec& spec) {
    if (spec.a2.dim() != s.d2()) throw Error(ErrorCode::DimensionMismatch, "apparatus observable does not act on d2");
    PremeasurementResult r;
    r.spec = spec;
    r.unitary = build_measurement_unitary(spec);
    const std::size_t d1 = s.d1(), d2 = s.d2(), d3 = spec.d3;

    const ComplexMatrix initial = linalg::tensor_product(s.matrix(), ComplexMatrix::outer(spec.initial_pointer));
    const ComplexMatrix u = linalg::embed(r.unitary, d1, 1);
    const DensityMatrix final_state = DensityMatrix::assume_valid(u * initial * u.adjoint());
    r.final_state = TripartiteState(final_state, d1, d2, d3);

    r.unitarity_residual =
        frobenius_distance(r.unitary.adjoint() * r.unitary, ComplexMatrix::identity(d2 * d3));

    const Observable lifted = lift_observable(spec.a2, d1);
    const auto p = outcome_probabilities(s.state(), lifted);
    const std::size_t keep12[] = {1, 2};
    const std::size_t dims[] = {d1 * d2, d3};
    const std::size_t first[] = {0};
    for (std::size_t l = 0; l < d3; ++l) {
        const auto pointer = spec.pointer_basis.column(l);
        const ComplexMatrix proj = linalg::embed(ComplexMatrix::outer(pointer), d1 * d2, 1);
        const ComplexMatrix weighted = final_state.matrix() * proj;
        const double pf = std::max(0.0, weighted.trace().real());
        r.outcome_probabilities.push_back(pf);
        r.probability_residual = std::max(r.probability_residual, std::abs(pf - p[l]));
        if (p[l] > kDetectableProbability) {
            ComplexMatrix cond = linalg::partial_trace(weighted, dims, first);
            cond *= 1.0 / p[l];
            const auto expected = luders_selective(s.state(), lifted, l);
            r.conditional_residual =
                std::max(r.conditional_residual, frobenius_distance(cond, expected.state->matrix()));
        }
    }
    const DensityMatrix rho12_f = r.final_state.reduce(keep12);
    r.ideality_residual = frobenius_distance(rho12_f.matrix(), luders_mixture(s.state(), lifted).matrix());
    r.entropy_residual = std::abs(von_neumann_entropy(final_state) - von_neumann_entropy(s.state()));
    return r;
}

double TransferReport::max_residual() const {
    return std::max({probabilities, distant_states, distant_reduction, global_coherence, local_coherence,
                     residual_mutual, decomposition_terms});
}

TransferReport transfer_report(const BipartiteState& s, const PremeasurementResult& r) {
    const std::size_t d1 = s.d1(), d2 = s.d2(), d3 = r.spec.d3;
    const BipartiteState split = r.final_state.split_1_23();
    const Observable a2_23 = embed_observable(r.spec.a2, 1, d3);  // A2 (x) I3

    TransferReport t;
    t.initial = mutual_information_decomposition(s, r.spec.a2);
    t.final_split = mutual_information_decomposition(split, a2_23);

    for (std::size_t l = 0; l < t.initial.probabilities.size(); ++l) {
        t.probabilities = std::max(t.probabilities,
                                   std::abs(t.initial.probabilities[l] - t.final_split.probabilities[l]));
        const auto& before = t.initial.conditional_states[l];
        const auto& after = t.final_split.conditional_states[l];
        if (before && after) {
            t.distant_states = std::max(t.distant_states, frobenius_distance(before->matrix(), after->matrix()));
        } else if (before || after) {
            t.distant_states = std::max(t.distant_states, 1.0);
        }
    }
    t.distant_reduction = frobenius_distance(reduce(s, 1).matrix(), reduce(split, 1).matrix());
    t.global_coherence = std::abs(t.initial.global_coherence - t.final_split.global_coherence);
    t.local_coherence = std::abs(t.initial.local_coherence - t.final_split.local_coherence);

    // I(rho12^l) = I(rho_{1,23}^{fl}) for each detectable l.
    const Observable lifted = lift_observable(r.spec.a2, d1);
    const Observable lifted_f = embed_observable(r.spec.a2, d1, d3);
    for (std::size_t l = 0; l < r.spec.a2.branch_count(); ++l) {
        const auto before = luders_selective(s.state(), lifted, l);
        const auto after = luders_selective(r.final_state.state(), lifted_f, l);
        if (!before.state || !after.state) continue;
        const double ib = mutual_information(BipartiteState(*before.state, d1, d2));
        const double ia = mutual_information(BipartiteState(*after.state, d1, d2 * d3));
        t.residual_mutual = std::max(t.residual_mutual, std::abs(ib - ia));
    }

    t.decomposition_terms = std::max({std::abs(t.initial.information_gain_J - t.final_split.information_gain_J),
                                      std::abs(t.initial.discord - t.final_split.discord),
                                      std::abs(t.initial.residual - t.final_split.residual)});
    return t;
}

double EntropyBookkeeping::max_residual() const {
    return std::max({split_via_coherence, split_via_branches, mutual_preserved, coherence_transfer, twin_residual, pointer_entropy});
}

EntropyBookkeeping entropy_bookkeeping(const BipartiteState& s, const PremeasurementResult& r) {
    const std::size_t d1 = s.d1(), d2 = s.d2(), d3 = r.spec.d3;
    const TripartiteState& f = r.final_state;
    const std::size_t keep12[] = {1, 2}, keep3[] = {3};
    const DensityMatrix rho12_f = f.reduce(keep12);
    const DensityMatrix rho3_f = f.reduce(keep3);
    const BipartiteState split_12_3 = f.split_12_3();
    const Observable lifted = lift_observable(r.spec.a2, d1);
    const Observable a2_f = embed_observable(r.spec.a2, d1, d3);
    const Observable a3 = r.spec.pointer_observable();
    const Observable a3_f = embed_observable(a3, d1 * d2, 1);

    EntropyBookkeeping t;
    t.S_f = von_neumann_entropy(f.state());
    t.S12_f = von_neumann_entropy(rho12_f);
    t.S3_f = von_neumann_entropy(rho3_f);
    t.I12_3_f = mutual_information(split_12_3);
    const auto p = outcome_probabilities(s.state(), lifted);
    t.H_pl = shannon_entropy(p);
    t.global_coherence = coherence_information(lifted, s.state());
    t.pointer_coherence = coherence_information(a3_f, f.state());
    const double S12 = von_neumann_entropy(s.state());

    const double decomposition = std::abs(t.S_f - (t.S12_f - t.I12_3_f + t.S3_f));
    t.split_via_coherence = std::max({decomposition, std::abs(t.S12_f - (S12 + t.global_coherence)),
                       std::abs(t.I12_3_f - (t.global_coherence + t.H_pl)), std::abs(t.S3_f - t.H_pl)});

    double mixed = 0.0;  // sum_l p_l S(rho12^l)
    for (std::size_t l = 0; l < lifted.branch_count(); ++l) {
        const auto sel = luders_selective(s.state(), lifted, l);
        if (sel.state) mixed += sel.probability * von_neumann_entropy(*sel.state);
    }
    t.split_via_branches = std::max({decomposition, std::abs(t.S12_f - (mixed + t.H_pl)),
                       std::abs(t.I12_3_f - (t.H_pl + t.pointer_coherence)), std::abs(t.S3_f - t.H_pl)});

    t.mutual_preserved = std::abs(mutual_information(s) - mutual_information(f.split_1_23()));
    const double global_f = coherence_information(a2_f, f.state());
    t.coherence_transfer = std::max(std::abs(t.global_coherence - global_f), std::abs(global_f - t.pointer_coherence));

    for (std::size_t l = 0; l < d3; ++l) {
        const ComplexMatrix lhs = f.matrix() * a2_f.branch(l).projector;
        const ComplexMatrix rhs = f.matrix() * a3_f.branch(l).projector;
        t.twin_residual = std::max(t.twin_residual, frobenius_distance(lhs, rhs));
    }
    t.pointer_entropy = std::abs(shannon_entropy(outcome_probabilities(rho3_f, a3)) - t.H_pl);

    const double i_luders = mutual_information(BipartiteState(rho12_f, d1, d2));
    t.subadditivity_gap = mutual_information(f.split_1_23()) - i_luders;
    t.discord = t.global_coherence - coherence_information(r.spec.a2, reduce(s, 2));
    return t;
}

TripartiteState collapse(const PremeasurementResult& r) {
    const TripartiteState& f = r.final_state;
    const Observable a3_f = embed_observable(r.spec.pointer_observable(), f.d1() * f.d2(), 1);
    return TripartiteState(luders_mixture(f.state(), a3_f), f.d1(), f.d2(), f.d3());
}

}  // namespace cohinfo
