#pragma once

// Entropies (bits), coherence information, discord and the decompositions of
// mutual information under interrogation by a subsystem-2 observable.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cohinfo/statecore.hpp"

namespace cohinfo {

// Eigenvalues at or below this are dropped from entropy sums.
inline constexpr double kEntropyCutoff = 1e-12;
// Terms proven nonnegative are floored at 0 when they lie in [-kRoundoff, 0).
inline constexpr double kRoundoff = 1e-9;

double von_neumann_entropy(const DensityMatrix& rho);
double von_neumann_entropy(const ComplexMatrix& rho);
// Throws NotDistribution for negative entries or a sum off 1 by more than 1e-10.
double shannon_entropy(std::span<const double> p);

// S(rho||sigma). +infinity when ||(I - Q_sigma) rho (I - Q_sigma)||_F > 1e-9.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

enum class CoherenceMethod {
    LudersEntropy,    // S(rho_L) - S(rho)
    RelativeEntropy,  // S(rho || rho_L)
    Decomposition,    // H(p) + sum p_l S(rho_l) - S(rho)
};

double coherence_information(const Observable& a, const DensityMatrix& rho,
                             CoherenceMethod method = CoherenceMethod::LudersEntropy);

double mutual_information(const BipartiteState& s);

class Mixture {
public:
    struct Component {
        double weight = 0.0;
        std::optional<DensityMatrix> state;  // absent iff weight <= kDetectableProbability
    };

    Mixture() = default;
    // Weights >= 0 summing to 1 within 1e-10, equal state dims; throws NotDistribution.
    // States of undetectable components are discarded.
    static Mixture validated(std::vector<Component> components);

    const std::vector<Component>& components() const noexcept { return components_; }
    std::size_t size() const noexcept { return components_.size(); }
    std::size_t dim() const;
    std::vector<double> weights() const;
    DensityMatrix average() const;

private:
    explicit Mixture(std::vector<Component> c) : components_(std::move(c)) {}
    std::vector<Component> components_;
};

// (p_l, rho_1^l): the distant mixture induced by interrogating subsystem 2 with a2.
Mixture distant_mixture(const BipartiteState& s, const Observable& a2);

struct MutualInfoDecomposition {
    double mutual_information = 0.0;
    double information_gain_J = 0.0;
    double discord = 0.0;
    double residual = 0.0;
    double global_coherence = 0.0;  // I_C(A2, rho12)
    double local_coherence = 0.0;   // I_C(A2, rho2)
    std::vector<double> probabilities;
    std::vector<std::optional<DensityMatrix>> conditional_states;  // rho_1^l

    // |J + discord + residual - I|
    double identity_residual() const;
};

MutualInfoDecomposition mutual_information_decomposition(const BipartiteState& s, const Observable& a2);

struct LudersIdentityReport {
    double mutual_information = 0.0;         // I(rho12)
    double luders_mutual_information = 0.0;  // I(rho12^L)
    double information_gain_J = 0.0;
    double residual = 0.0;  // sum p_l I(rho12^l)
    double identity_residual() const;       // |I(rho^L) - J - residual|
    double monotonicity_excess() const;     // I(rho^L) - I(rho12), <= 0 expected
};

LudersIdentityReport luders_mutual_identity_check(const BipartiteState& s, const Observable& a2);

// Throws NotARefinement unless every detectable projector of a2 (in rho2) is
// the sum of the a2prime projectors it contains.
void require_refinement(const DensityMatrix& rho2, const Observable& a2, const Observable& a2prime,
                        double tol = 1e-9);

struct TwoStepReport {
    MutualInfoDecomposition coarse;
    MutualInfoDecomposition fine;
    double gain_bracket = 0.0;      // sum p_l S(r1^l||r1) + sum p_l p_lq S(r1^lq||r1^l)
    double discord_bracket = 0.0;   // d_A(r12) + sum p_l d_A'(r12^l)
    double residual_bracket = 0.0;  // sum p_l p_lq I(r12^lq)
    double bracket_residual() const;  // max deviation of the brackets from `fine`
};

TwoStepReport two_step_decomposition(const BipartiteState& s, const Observable& a2, const Observable& a2prime);

struct ElaborateReport {
    double residual_S1 = 0.0;  // sum p_l S(rho_1^l)
    double gain_J = 0.0;
    double discord = 0.0;
    double residual_corr = 0.0;  // sum p_l I(rho_12^l)
    double H_pl = 0.0;
    double local_coherence = 0.0;  // I_C(A2, rho2)
    double residual_S2 = 0.0;      // sum p_l S(rho_2^l)
    double S1 = 0.0, I12 = 0.0, S2 = 0.0, S12 = 0.0;

    double reassembly_residual() const;
};

ElaborateReport elaborate_decomposition(const BipartiteState& s, const Observable& a2);

struct MixtureGain {
    double J = 0.0;           // S(rho) - sum w_k S(rho_k)
    double J_relative = 0.0;  // sum w_k S(rho_k || rho)
    double H = 0.0;           // H(w)
};

MixtureGain mixture_information_gain(const Mixture& m);

// True iff the descending partial sums of p never exceed those of q (1e-10 slack).
bool majorization_check(std::span<const double> p, std::span<const double> q);

struct SaturationReport {
    bool j_equals_h = false;
    bool pairwise_orthogonal = false;
    double max_overlap = 0.0;  // max tr(rho_k rho_k')
    bool consistent() const { return j_equals_h == pairwise_orthogonal; }
};

SaturationReport orthogonality_from_saturation(const Mixture& m, double tol = 1e-9);

struct ConditionalEntropyBound {
    double S_1given2 = 0.0;  // S1 - I12
    double discord_lower_bound = 0.0;
};

ConditionalEntropyBound conditional_entropy_bound(const BipartiteState& s);

struct GridDiscord {
    double best_discord = 0.0;  // upper-bound estimate of the infimum
    Observable best_observable;
    std::size_t samples = 0;
};

// d2 = 2 only: polar/azimuthal grid of complete qubit bases, resolution^2 samples.
GridDiscord min_discord_grid(const BipartiteState& s, std::size_t resolution = 64);

namespace detail {
// S(rho||sigma) on the support of sigma, no support test. For callers whose
// supports nest by construction.
double relative_entropy_on_support(const ComplexMatrix& rho, const ComplexMatrix& sigma);
double floor_roundoff(double x);
}  // namespace detail

}  // namespace cohinfo
