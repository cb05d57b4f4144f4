#include "cohinfo/coarsening.hpp"

#include <algorithm>
#include <numeric>

#include "cohinfo/error.hpp"
#include "cohinfo/linalg/tensor.hpp"

namespace cohinfo {

UnionFind::UnionFind(std::size_t n) : parent_(n), rank_size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t UnionFind::find(std::size_t x) {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

bool UnionFind::unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_size_[a] < rank_size_[b]) std::swap(a, b);
    parent_[b] = a;
    rank_size_[a] += rank_size_[b];
    return true;
}

std::optional<std::size_t> Partition::class_of(std::size_t member) const {
    for (std::size_t c = 0; c < classes.size(); ++c)
        if (std::find(classes[c].begin(), classes[c].end(), member) != classes[c].end()) return c;
    return std::nullopt;
}

Observable coarsen(const Observable& parent, const Partition& partition) {
    const std::size_t n = parent.dim();
    std::vector<bool> used(parent.branch_count(), false);
    std::vector<Observable::Branch> branches;
    for (std::size_t c = 0; c < partition.classes.size(); ++c) {
        ComplexMatrix sum(n, n);
        for (std::size_t l : partition.classes[c]) {
            sum += parent.branch(l).projector;
            used.at(l) = true;
        }
        branches.push_back({static_cast<double>(c + 1), std::move(sum)});
    }
    ComplexMatrix rest(n, n);
    bool any_rest = false;
    for (std::size_t l = 0; l < parent.branch_count(); ++l) {
        if (used[l]) continue;
        rest += parent.branch(l).projector;
        any_rest = true;
    }
    if (any_rest) branches.push_back({0.0, std::move(rest)});
    return Observable::assume_valid(std::move(branches));
}

std::vector<std::size_t> detectable_branches(const DensityMatrix& rho, const Observable& a) {
    const auto p = outcome_probabilities(rho, a);
    std::vector<std::size_t> out;
    for (std::size_t l = 0; l < p.size(); ++l)
        if (p[l] > kDetectableProbability) out.push_back(l);
    return out;
}

CoarseningResult essential_coarsening(const BipartiteState& s, const Observable& a2, double tol) {
    const Mixture m = distant_mixture(s, a2);
    std::vector<std::size_t> members;
    for (std::size_t l = 0; l < m.size(); ++l)
        if (m.components()[l].state) members.push_back(l);
    const auto& cs = m.components();
    Partition p = chain_closure(members, [&](std::size_t a, std::size_t b) {
        return frobenius_distance(cs[a].state->matrix(), cs[b].state->matrix()) < tol;
    });
    return {coarsen(a2, p), std::move(p)};
}

Partition m_chained_partition(const Mixture& m, double tol) {
    std::vector<std::size_t> members;
    for (std::size_t k = 0; k < m.size(); ++k)
        if (m.components()[k].state) members.push_back(k);
    const auto& cs = m.components();
    return chain_closure(members, [&](std::size_t a, std::size_t b) {
        return linalg::trace_of_product(cs[a].state->matrix(), cs[b].state->matrix()).real() > tol;
    });
}

TwinResult twin_coarsening(const BipartiteState& s, const Observable& b2_ess, double tol) {
    TwinResult out;
    out.partition = m_chained_partition(distant_mixture(s, b2_ess), tol);
    out.observable = coarsen(b2_ess, out.partition);

    // C1 from the range projectors of the distant states under C2.
    const Mixture distant = distant_mixture(s, out.observable);
    const std::size_t d1 = s.d1(), d2 = s.d2();
    const DensityMatrix rho1 = reduce(s, 1);
    const DensityMatrix rho2 = reduce(s, 2);
    std::vector<Observable::Branch> c1;
    ComplexMatrix complement = ComplexMatrix::identity(d1);
    double twin_residual = 0.0;
    for (std::size_t t = 0; t < distant.size(); ++t) {
        const auto& comp = distant.components()[t];
        if (!comp.state) continue;
        ComplexMatrix q = range_projector(*comp.state);
        complement -= q;
        const ComplexMatrix lhs = linalg::embed(q, 1, d2) * s.matrix();
        const ComplexMatrix rhs = linalg::embed(out.observable.branch(t).projector, d1, 1) * s.matrix();
        twin_residual = std::max(twin_residual, frobenius_distance(lhs, rhs));
        c1.push_back({out.observable.branch(t).eigenvalue, std::move(q)});
    }
    if (std::llround(complement.trace().real()) > 0) c1.push_back({0.0, std::move(complement)});

    out.twins.c1 = Observable::assume_valid(std::move(c1));
    out.twins.c2 = out.observable;
    out.twins.twin_residual = twin_residual;
    out.twins.commutator_residual =
        std::max(frobenius_norm(linalg::commutator(out.twins.c1.operator_matrix(), rho1.matrix())),
                 frobenius_norm(linalg::commutator(out.twins.c2.operator_matrix(), rho2.matrix())));
    return out;
}

CoarseningResult o_chained_coarsening(const DensityMatrix& rho, const Observable& c, double tol) {
    const auto members = detectable_branches(rho, c);
    Partition p = chain_closure(members, [&](std::size_t a, std::size_t b) {
        return frobenius_norm(c.branch(a).projector * rho.matrix() * c.branch(b).projector) > tol;
    });
    return {coarsen(c, p), std::move(p)};
}

namespace {

double containment_error(const Observable& parent, const Observable& child, const Partition& partition) {
    double err = 0.0;
    for (std::size_t c = 0; c < partition.classes.size(); ++c) {
        ComplexMatrix sum(parent.dim(), parent.dim());
        for (std::size_t l : partition.classes[c]) sum += parent.branch(l).projector;
        err = std::max(err, frobenius_distance(sum, child.branch(c).projector));
    }
    // The optional trailing eigenvalue-0 branch: whatever the classes left.
    ComplexMatrix rest = ComplexMatrix::identity(parent.dim());
    for (std::size_t c = 0; c < partition.classes.size(); ++c) rest -= child.branch(c).projector;
    if (child.branch_count() > partition.classes.size()) {
        err = std::max(err, frobenius_distance(rest, child.branch(partition.classes.size()).projector));
    } else {
        err = std::max(err, frobenius_norm(rest));
    }
    return err;
}

double information_gain(const BipartiteState& s, const Observable& a2) {
    return mixture_information_gain(distant_mixture(s, a2)).J;
}

}  // namespace

CoarseningChain build_chain(const BipartiteState& s, const Observable& a2, const ChainOptions& options) {
    if (a2.dim() != s.d2()) throw Error(ErrorCode::DimensionMismatch, "observable does not act on subsystem 2");
    CoarseningChain ch;
    ch.options = options;
    ch.a2 = a2;

    auto b = essential_coarsening(s, a2, options.state_tolerance);
    ch.b2_ess = std::move(b.observable);
    ch.b_partition = std::move(b.partition);

    auto c = twin_coarsening(s, ch.b2_ess, options.link_tolerance);
    ch.c2_tw = std::move(c.observable);
    ch.c_partition = std::move(c.partition);
    ch.twins = std::move(c.twins);

    auto d = o_chained_coarsening(s.state(), lift_observable(ch.c2_tw, s.d1()), options.link_tolerance);
    ch.d_partition = std::move(d.partition);
    ch.d2_qc = coarsen(ch.c2_tw, ch.d_partition);

    const DensityMatrix rho2 = reduce(s, 2);
    ch.p_l = outcome_probabilities(rho2, ch.a2);
    ch.p_s = outcome_probabilities(rho2, ch.b2_ess);
    ch.p_t = outcome_probabilities(rho2, ch.c2_tw);
    ch.p_k = outcome_probabilities(rho2, ch.d2_qc);
    ch.H_l = shannon_entropy(ch.p_l);
    ch.H_s = shannon_entropy(ch.p_s);
    ch.H_t = shannon_entropy(ch.p_t);
    ch.H_k = shannon_entropy(ch.p_k);
    ch.J_a = information_gain(s, ch.a2);
    ch.J_b = information_gain(s, ch.b2_ess);
    ch.J_c = information_gain(s, ch.c2_tw);
    ch.J_d = information_gain(s, ch.d2_qc);

    ch.ledger.redundant_noise = ch.H_l - ch.H_s;
    ch.ledger.essential_noise = ch.H_s - ch.J_b;
    ch.ledger.garbled_gain = ch.J_b - ch.H_t;
    ch.ledger.pure_quantum = ch.H_t - ch.H_k;
    ch.ledger.quasi_classical = ch.H_k;

    ch.containment_residual = std::max({containment_error(ch.a2, ch.b2_ess, ch.b_partition),
                                        containment_error(ch.b2_ess, ch.c2_tw, ch.c_partition),
                                        containment_error(ch.c2_tw, ch.d2_qc, ch.d_partition)});

    ch.inequality_violation = std::max({0.0, ch.J_d - ch.J_c, ch.J_c - ch.J_b, std::abs(ch.J_b - ch.J_a),
                                        std::abs(ch.J_d - ch.H_k), std::abs(ch.J_c - ch.H_t), ch.H_t - ch.H_s,
                                        ch.H_s - ch.H_l});

    // The D-induced global mixture is biorthogonal.
    const Observable lifted_d = lift_observable(ch.d2_qc, s.d1());
    std::vector<DensityMatrix> r1, r2;
    for (std::size_t k = 0; k < lifted_d.branch_count(); ++k) {
        auto sel = luders_selective(s.state(), lifted_d, k);
        if (!sel.state) continue;
        BipartiteState bk(*sel.state, s.d1(), s.d2());
        r1.push_back(reduce(bk, 1));
        r2.push_back(reduce(bk, 2));
    }
    for (std::size_t k = 0; k < r1.size(); ++k)
        for (std::size_t j = 0; j < k; ++j) {
            ch.biorthogonality_residual =
                std::max({ch.biorthogonality_residual, linalg::trace_of_product(r1[k].matrix(), r1[j].matrix()).real(),
                          linalg::trace_of_product(r2[k].matrix(), r2[j].matrix()).real()});
        }

    ch.d_discord = coherence_information(lifted_d, s.state()) - coherence_information(ch.d2_qc, rho2);
    ch.d_commutator = frobenius_norm(linalg::commutator(lifted_d.operator_matrix(), s.matrix()));
    return ch;
}

ChainCoherenceReport chain_coherence_report(const BipartiteState& s, const CoarseningChain& chain) {
    const Observable* stages[4] = {&chain.d2_qc, &chain.c2_tw, &chain.b2_ess, &chain.a2};
    const DensityMatrix rho2 = reduce(s, 2);
    Observable lifted[4];
    for (int i = 0; i < 4; ++i) lifted[i] = lift_observable(*stages[i], s.d1());

    ChainCoherenceReport r;
    for (int i = 0; i < 4; ++i) {
        r.global_coherence[i] = coherence_information(lifted[i], s.state());
        r.local_coherence[i] = coherence_information(*stages[i], rho2);
        r.discord[i] = r.global_coherence[i] - r.local_coherence[i];
    }
    for (int i = 0; i + 1 < 4; ++i) {
        r.inequality_violation = std::max({r.inequality_violation, r.global_coherence[i] - r.global_coherence[i + 1],
                                           r.local_coherence[i] - r.local_coherence[i + 1],
                                           r.discord[i] - r.discord[i + 1]});
    }

    auto straight_line = [](const DensityMatrix& rho, const Observable* obs[4]) {
        // obs = {D, C, B, A}; each term sees the state dephased by all coarser stages.
        double rhs = 0.0;
        DensityMatrix dephased = rho;
        for (int i = 0; i < 4; ++i) {
            rhs += coherence_information(*obs[i], dephased);
            dephased = luders_mixture(dephased, *obs[i]);
        }
        return std::abs(coherence_information(*obs[3], rho) - rhs);
    };
    const Observable* lifted_ptrs[4] = {&lifted[0], &lifted[1], &lifted[2], &lifted[3]};
    r.straight_line_residual_local = straight_line(rho2, stages);
    r.straight_line_residual_global = straight_line(s.state(), lifted_ptrs);
    return r;
}

}  // namespace cohinfo
