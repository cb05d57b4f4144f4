#pragma once

// The string D2qc <= C2tw <= B2ess <= A2 of coarsenings of a subsystem-2
// observable, built by union-find closure of tolerant link relations.
//
// Coarsened observables carry eigenvalues 1, 2, 3, ... in class order (class
// order = smallest member index). Branches of the parent that are
// undetectable in the state are collected into one extra branch with
// eigenvalue 0, so every constructed observable stays complete (its
// projectors still sum to the identity).

#include <cstddef>
#include <optional>
#include <vector>

#include "cohinfo/infomeasures.hpp"
#include "cohinfo/statecore.hpp"

namespace cohinfo {

inline constexpr double kStateEqualityTolerance = 1e-8;
inline constexpr double kLinkTolerance = 1e-9;

// Disjoint-set forest with path halving and union by size.
class UnionFind {
public:
    explicit UnionFind(std::size_t n);
    std::size_t find(std::size_t x);
    bool unite(std::size_t a, std::size_t b);
    std::size_t size() const noexcept { return parent_.size(); }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> rank_size_;
};

struct Partition {
    // Each class ascending; classes ordered by their smallest member.
    std::vector<std::vector<std::size_t>> classes;

    std::size_t class_count() const noexcept { return classes.size(); }
    // Index of the class containing `member`, or nullopt.
    std::optional<std::size_t> class_of(std::size_t member) const;
    bool operator==(const Partition&) const = default;
};

// Closure of `linked` over `members` (indices into some parent list).
template <class Linked>
Partition chain_closure(const std::vector<std::size_t>& members, Linked&& linked);

// Observable whose detectable branches are the class sums of `parent`'s
// projectors; parent branches outside every class go to the eigenvalue-0 branch.
Observable coarsen(const Observable& parent, const Partition& partition);

// Indices of branches with p > kDetectableProbability in rho.
std::vector<std::size_t> detectable_branches(const DensityMatrix& rho, const Observable& a);

struct CoarseningResult {
    Observable observable;
    Partition partition;  // classes of parent branch indices
};

// l ~ l' iff ||rho_1^l - rho_1^l'||_F < tol, over detectable l.
CoarseningResult essential_coarsening(const BipartiteState& s, const Observable& a2,
                                      double tol = kStateEqualityTolerance);

// Classes of detectable components linked by tr(rho_k rho_k') > tol.
Partition m_chained_partition(const Mixture& m, double tol = kLinkTolerance);

struct TwinPair {
    Observable c1;  // on subsystem 1, from range projectors of the distant states
    Observable c2;  // on subsystem 2
    // max_t ||(Q1^t (x) I) rho12 - (I (x) P2^t) rho12||_F over shared index t
    double twin_residual = 0.0;
    // max of ||[C1, rho1]||_F and ||[C2, rho2]||_F
    double commutator_residual = 0.0;
};

struct TwinResult {
    Observable observable;
    Partition partition;  // classes of b2_ess branch indices
    TwinPair twins;
};

TwinResult twin_coarsening(const BipartiteState& s, const Observable& b2_ess, double tol = kLinkTolerance);

// t ~ t' iff ||P_t rho P_t'||_F > tol, over detectable t.
CoarseningResult o_chained_coarsening(const DensityMatrix& rho, const Observable& c, double tol = kLinkTolerance);

struct NoiseLedger {
    double redundant_noise = 0.0;  // H(p_l) - H(p_s)
    double essential_noise = 0.0;  // H(p_s) - J_B
    double garbled_gain = 0.0;     // J_B - H(p_t)
    double pure_quantum = 0.0;     // H(p_t) - H(p_k)
    double quasi_classical = 0.0;  // H(p_k)
    double total() const {
        return redundant_noise + essential_noise + garbled_gain + pure_quantum + quasi_classical;
    }
};

struct ChainOptions {
    double state_tolerance = kStateEqualityTolerance;
    double link_tolerance = kLinkTolerance;
};

struct CoarseningChain {
    Observable a2, b2_ess, c2_tw, d2_qc;
    Partition b_partition;  // over a2 branches
    Partition c_partition;  // over b2_ess branches
    Partition d_partition;  // over c2_tw branches
    std::vector<double> p_l, p_s, p_t, p_k;
    double H_l = 0.0, H_s = 0.0, H_t = 0.0, H_k = 0.0;
    double J_a = 0.0, J_b = 0.0, J_c = 0.0, J_d = 0.0;
    TwinPair twins;
    NoiseLedger ledger;
    ChainOptions options;

    // Max Frobenius error of "coarse projector = sum of its parent projectors".
    double containment_residual = 0.0;
    // Max violation of J_D <= J_C <= J_B = J_A and J_D = H_k <= J_C = H_t <= H_s <= H_l.
    double inequality_violation = 0.0;
    // max tr(rho_i^k rho_i^k') over k != k', i = 1, 2.
    double biorthogonality_residual = 0.0;
    double d_discord = 0.0;
    double d_commutator = 0.0;  // ||[I (x) D2qc, rho12]||_F
};

CoarseningChain build_chain(const BipartiteState& s, const Observable& a2, const ChainOptions& options = {});

struct ChainCoherenceReport {
    // Index 0..3 = D, C, B, A.
    double global_coherence[4] = {};
    double local_coherence[4] = {};
    double discord[4] = {};
    double inequality_violation = 0.0;  // max over the three monotone strings
    double straight_line_residual_local = 0.0;   // i = 2
    double straight_line_residual_global = 0.0;  // i = 12
};

ChainCoherenceReport chain_coherence_report(const BipartiteState& s, const CoarseningChain& chain);

// ------------------------------------------------------------------------

template <class Linked>
Partition chain_closure(const std::vector<std::size_t>& members, Linked&& linked) {
    UnionFind uf(members.size());
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j)
            if (uf.find(i) != uf.find(j) && linked(members[i], members[j])) uf.unite(i, j);

    // Members are visited in ascending order, so classes come out ordered by
    // smallest member when `members` is ascending.
    Partition p;
    std::vector<std::size_t> slot(members.size(), static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < members.size(); ++i) {
        const std::size_t root = uf.find(i);
        if (slot[root] == static_cast<std::size_t>(-1)) {
            slot[root] = p.classes.size();
            p.classes.emplace_back();
        }
        p.classes[slot[root]].push_back(members[i]);
    }
    return p;
}

}  // namespace cohinfo
