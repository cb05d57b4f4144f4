#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "cohinfo/infomeasures.hpp"
#include "cohinfo/statecore.hpp"

namespace cohinfo {

inline constexpr double kStrongZeroThreshold = 1e-8;
inline constexpr double kWeakZeroLocalThreshold = 1e-6;

enum class DiscordKind { StrongZero, WeakZero, Positive };
std::string_view to_string(DiscordKind k) noexcept;

struct DiscordClassification {
    DiscordKind kind = DiscordKind::Positive;
    double discord = 0.0;
    double global_IC = 0.0;
    double local_IC = 0.0;
    double commutator_norm = 0.0;          // ||[I (x) A2, rho12]||_F
    double luders_fixed_point_residual = 0.0;  // ||rho12 - sum_l P2^l rho12 P2^l||_F
};

DiscordClassification classify(const BipartiteState& s, const Observable& a2);

// Minimal spectral projectors (on subsystem 2) of a generic Hermitian X with
// [I (x) X, rho12] = 0. Always an orthogonal decomposition of the identity.
std::vector<ComplexMatrix> subsystem_commutant_projectors(const BipartiteState& s, double tol = 1e-8);

struct MonoOrthogonality {
    bool is_mono_orthogonal = false;
    std::vector<ComplexMatrix> blocks;  // detectable commutant projectors P2^k
    std::optional<Mixture> witness;     // rho12 = sum_k p_k rho12^k
    double reconstruction_residual = 0.0;  // ||sum_k p_k rho12^k - rho12||_F
    double max_reduction_overlap = 0.0;    // max tr(rho2^k rho2^k'), k != k'
};

MonoOrthogonality mono_orthogonality_certificate(const BipartiteState& s, double tol = 1e-8);

// A complete A2 under which rho12 = sum_l p_l rho1^l (x) |l><l|, if any.
std::optional<Observable> strong_zero_complete_observable(const BipartiteState& s, double tol = 1e-8);

struct StatisticalDecomposition {
    std::vector<double> weights;
    double coherence = 0.0;          // I_C(A2, rho12)
    double coherence_blocks = 0.0;   // sum_n w_n I_C(A2, rho12^n)
    double local_coherence = 0.0;
    double local_coherence_blocks = 0.0;
    double discord = 0.0;
    double discord_blocks = 0.0;
    double residual() const;
};

// Throws BlocksDoNotCommute unless every block commutes with rho12 and A2
// within 1e-9, and ValidationError unless the blocks decompose the identity.
StatisticalDecomposition statistical_decomposition_check(const BipartiteState& s, const Observable& a2,
                                                         const std::vector<ComplexMatrix>& blocks);

}  // namespace cohinfo
