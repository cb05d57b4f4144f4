#pragma once

// Seeded random generators and the named example states.

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "cohinfo/statecore.hpp"

namespace cohinfo::fixtures {

using Rng = std::mt19937_64;

std::vector<Complex> random_vector(std::size_t d, Rng& rng);  // unit norm
ComplexMatrix random_unitary(std::size_t d, Rng& rng);
// G G^dagger / tr with G a d x rank complex Ginibre matrix.
DensityMatrix random_state(std::size_t d, std::size_t rank, Rng& rng);
BipartiteState random_bipartite(std::size_t d1, std::size_t d2, std::size_t rank, Rng& rng);
BipartiteState random_pure_bipartite(std::size_t d1, std::size_t d2, Rng& rng);

// Complete observable in a Haar-random basis, eigenvalues 1..d.
Observable random_complete_observable(std::size_t d, Rng& rng);
// `branches` nonempty groups of a Haar-random basis; branches <= d.
Observable random_observable(std::size_t d, std::size_t branches, Rng& rng);
// Splits every projector of `coarse` along a random basis of its range.
Observable random_refinement(const Observable& coarse, Rng& rng);

// Basis vectors grouped into branches with eigenvalues 1, 2, ...
Observable observable_from_groups(const ComplexMatrix& basis, const std::vector<std::vector<std::size_t>>& groups);

struct Fixture {
    std::string name;
    BipartiteState state;
    Observable observable;
};

Fixture bell();
Fixture product();
Fixture classical_classical();
Fixture weakzero();
// |Phi> = a1 |j1 i1> + a2 |j1 i2> + a3 |j2 i3>, d1 = 2, d2 = 3, A2 in the {|i>} basis.
Fixture example1(std::span<const double> alpha = {});
// Schmidt-form pure state with r = (0.5, 0.3, 0.2); A2 in the Schmidt basis.
Fixture example2();
// (|Phi><Phi| + |Psi><Psi|)/2 with d1 = 4, d2 = 5, Psi of Schmidt rank 2 with
// r = (0.7, 0.3); A2 complete with eigenbasis {r1, r1_perp, i3, q1, q2}.
Fixture example3();

// Names accepted by fixture_by_name (random_bipartite is separate).
std::vector<std::string> fixture_names();
Fixture fixture_by_name(const std::string& name);  // throws UnknownFixture

// Orthogonal blocks on W_k (x) V_k holding product, Schmidt-aligned pure,
// randomly oriented pure or mixed states, interrogated by an observable that
// is usually block-aligned. Exercises every stage of the coarsening chain.
Fixture random_chain_case(Rng& rng);

// sum_k w_k rho1^k (x) rho2^k with orthogonal rho2^k supports.
// strong: A2 commutes with every rho2^k; otherwise A2 commutes with the range
// projectors only and not with some rho2^k.
Fixture mono_orthogonal_case(Rng& rng, bool strong);

}  // namespace cohinfo::fixtures
