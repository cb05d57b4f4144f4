#pragma once

// Ideal premeasurement of a subsystem-2 observable by a pointer (subsystem 3)
// and the bookkeeping of information before and after the interaction.

#include <vector>

#include "cohinfo/infomeasures.hpp"
#include "cohinfo/statecore.hpp"

namespace cohinfo {

struct ApparatusSpec {
    Observable a2;
    ComplexMatrix pointer_basis;  // d3 x d3, column l is |l>_3
    std::vector<Complex> initial_pointer;  // |phi>_3
    std::size_t d3 = 0;

    // d3 = branch count, standard pointer basis, |phi> = |0>.
    static ApparatusSpec standard(const Observable& a2);
    // Throws ValidationError when the pointer basis is not orthonormal or
    // |phi> is not a unit vector.
    void validate() const;
    // A3 = sum_l (l + 1) |l><l|_3
    Observable pointer_observable() const;
};

// U23 = sum_l P2^l (x) V_l with V_l |phi> = |l>.
ComplexMatrix build_measurement_unitary(const ApparatusSpec& spec);

struct PremeasurementResult {
    ApparatusSpec spec;
    ComplexMatrix unitary;  // on d2 * d3
    TripartiteState final_state;
    std::vector<double> outcome_probabilities;  // tr(rho_f |l><l|_3)

    double unitarity_residual = 0.0;       // ||U^dagger U - I||_F
    double probability_residual = 0.0;     // max |p_l^f - p_l|
    double conditional_residual = 0.0;     // max ||tr_3(rho_f |l><l|)/p_l - rho12^l||_F
    double ideality_residual = 0.0;        // ||tr_3 rho_f - rho12^L||_F
    double entropy_residual = 0.0;         // |S(rho_f) - S(rho12)|
};

PremeasurementResult premeasure(const BipartiteState& s, const ApparatusSpec& spec);

// Max deviation of each quantity between rho12 under A2 and rho_{1,23}^f under A2 (x) I3.
struct TransferReport {
    double probabilities = 0.0;
    double distant_states = 0.0;
    double distant_reduction = 0.0;
    double global_coherence = 0.0;
    double local_coherence = 0.0;
    double residual_mutual = 0.0;      // max_l |I(rho12^l) - I(rho_{1,23}^{fl})|
    double decomposition_terms = 0.0;  // 1|(2+3) decomposition vs the initial one, term by term
    MutualInfoDecomposition initial;
    MutualInfoDecomposition final_split;  // decomposition terms of rho_{1,23}^f under A2 (x) I3
    double max_residual() const;
};

TransferReport transfer_report(const BipartiteState& s, const PremeasurementResult& r);

struct EntropyBookkeeping {
    double S_f = 0.0, S12_f = 0.0, I12_3_f = 0.0, S3_f = 0.0;
    double H_pl = 0.0;
    double global_coherence = 0.0;  // I_C(A2, rho12)
    double pointer_coherence = 0.0;  // I_C(A3, rho123^f)

    double split_via_coherence = 0.0;               // entropy split through I_C(A2, rho12)
    double split_via_branches = 0.0;               // entropy split through the Lüders branches
    double mutual_preserved = 0.0;              // |I(rho12) - I(rho_{1,23}^f)|
    double coherence_transfer = 0.0;               // I_C(A2,rho12) = I_C(A2,rho123f) = I_C(A3,rho123f)
    double twin_residual = 0.0;      // max_l ||rho_f P2^l - rho_f |l><l|_3||_F
    double pointer_entropy = 0.0;         // |S(A3, rho3^f) - H(p_l)|
    double subadditivity_gap = 0.0;  // I(rho_{1,23}^f) - I(rho12^f), equals the discord
    double discord = 0.0;
    double max_residual() const;  // over the equalities, twin residual included
};

EntropyBookkeeping entropy_bookkeeping(const BipartiteState& s, const PremeasurementResult& r);

// Luders mixture of rho_f over the pointer: sum_l p_l rho12^l (x) |l><l|_3.
TripartiteState collapse(const PremeasurementResult& r);

}  // namespace cohinfo
