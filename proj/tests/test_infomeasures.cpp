#include <doctest.h>

#include <cmath>
#include <limits>

#include "cohinfo/error.hpp"
#include "cohinfo/fixtures.hpp"
#include "cohinfo/infomeasures.hpp"
#include "cohinfo/linalg/tensor.hpp"
#include "test_support.hpp"

using namespace cohinfo;
using testsupport::h;

TEST_SUITE("infomeasures") {

TEST_CASE("von Neumann entropy of closed-form states") {
    CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(4)) == doctest::Approx(2.0));
    CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(3)) == doctest::Approx(std::log2(3.0)));
    fixtures::Rng rng(21);
    CHECK(std::abs(von_neumann_entropy(DensityMatrix::pure(fixtures::random_vector(5, rng)))) < 1e-10);
    const double p[] = {0.5, 0.25, 0.25};
    CHECK(von_neumann_entropy(DensityMatrix::diagonal(p)) == doctest::Approx(1.5));
    // unitary invariance
    const auto u = fixtures::random_unitary(3, rng);
    const auto rot = DensityMatrix::validated(u * DensityMatrix::diagonal(p).matrix() * u.adjoint());
    CHECK(von_neumann_entropy(rot) == doctest::Approx(1.5).epsilon(1e-10));
}

TEST_CASE("Shannon entropy rejects non-distributions") {
    const double ok[] = {0.5, 0.5};
    CHECK(shannon_entropy(ok) == doctest::Approx(1.0));
    const double neg[] = {1.5, -0.5};
    CHECK_THROWS_AS(shannon_entropy(neg), Error);
    const double short_sum[] = {0.5, 0.4};
    CHECK_THROWS_AS(shannon_entropy(short_sum), Error);
}

TEST_CASE("relative entropy of commuting states is the classical divergence") {
    const double p[] = {0.7, 0.2, 0.1}, q[] = {0.3, 0.3, 0.4};
    double expected = 0.0;
    for (int i = 0; i < 3; ++i) expected += p[i] * std::log2(p[i] / q[i]);
    CHECK(relative_entropy(DensityMatrix::diagonal(p), DensityMatrix::diagonal(q)) == doctest::Approx(expected));
    CHECK(relative_entropy(DensityMatrix::diagonal(p), DensityMatrix::diagonal(p)) == doctest::Approx(0.0));

    const double r[] = {0.5, 0.5, 0.0};
    CHECK(std::isinf(relative_entropy(DensityMatrix::diagonal(p), DensityMatrix::diagonal(r))));
}

TEST_CASE("coherence information of |+> under sigma_z is one bit") {
    std::vector<Complex> plus{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    const auto rho = DensityMatrix::pure(plus);
    for (auto m : {CoherenceMethod::LudersEntropy, CoherenceMethod::RelativeEntropy, CoherenceMethod::Decomposition})
        CHECK(coherence_information(Observable::computational(2), rho, m) == doctest::Approx(1.0));
    CHECK(coherence_information(Observable::computational(2), DensityMatrix::maximally_mixed(2)) ==
          doctest::Approx(0.0));
}

TEST_CASE("the three coherence definitions agree on random pairs") {
    fixtures::Rng rng(22);
    for (int i = 0; i < 50; ++i) {
        const std::size_t d = 2 + i % 4;
        const auto rho = fixtures::random_state(d, 1 + i % d, rng);
        const auto a = fixtures::random_observable(d, 1 + (i / 2) % d, rng);
        const double x = coherence_information(a, rho, CoherenceMethod::LudersEntropy);
        CHECK(std::abs(x - coherence_information(a, rho, CoherenceMethod::RelativeEntropy)) < 1e-8);
        CHECK(std::abs(x - coherence_information(a, rho, CoherenceMethod::Decomposition)) < 1e-8);
        CHECK(x > -1e-9);
    }
}

TEST_CASE("mutual information of product and Bell states") {
    const auto bell = fixtures::bell();
    CHECK(mutual_information(bell.state) == doctest::Approx(2.0));
    CHECK(std::abs(mutual_information(fixtures::product().state)) < 1e-10);
}

TEST_CASE("Bell pair decomposition by hand arithmetic") {
    const auto f = fixtures::bell();
    const auto t = mutual_information_decomposition(f.state, f.observable);
    CHECK(t.information_gain_J == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(t.discord == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(t.residual) < 1e-12);
    CHECK(t.identity_residual() < 1e-12);
}

TEST_CASE("product state carries no correlation under any observable") {
    fixtures::Rng rng(23);
    const auto f = fixtures::product();
    for (int i = 0; i < 10; ++i) {
        const auto t = mutual_information_decomposition(f.state, fixtures::random_observable(2, 1 + i % 2, rng));
        CHECK(std::abs(t.information_gain_J) < 1e-9);
        CHECK(std::abs(t.discord) < 1e-9);
        CHECK(std::abs(t.residual) < 1e-9);
    }
}

TEST_CASE("decomposition identity, Lueders identity and bookkeeping on random states") {
    fixtures::Rng rng(24);
    for (int i = 0; i < 40; ++i) {
        const std::size_t d1 = 1 + i % 3, d2 = 2 + (i / 3) % 3;
        const auto s = fixtures::random_bipartite(d1, d2, 1 + i % (d1 * d2), rng);
        const auto a = fixtures::random_observable(d2, 1 + i % d2, rng);
        const auto t = mutual_information_decomposition(s, a);
        CHECK(t.identity_residual() < 1e-8);
        CHECK(t.information_gain_J > -1e-9);
        CHECK(t.discord > -1e-9);
        CHECK(t.residual > -1e-9);
        const auto l = luders_mutual_identity_check(s, a);
        CHECK(l.identity_residual() < 1e-8);
        CHECK(l.monotonicity_excess() < 1e-8);
        CHECK(elaborate_decomposition(s, a).reassembly_residual() < 1e-8);
    }
}

TEST_CASE("refinement is checked against the detectable branches") {
    fixtures::Rng rng(25);
    const auto s = fixtures::random_bipartite(2, 3, 6, rng);
    const auto fine = fixtures::random_complete_observable(3, rng);
    const auto other = fixtures::random_complete_observable(3, rng);
    CHECK_NOTHROW(require_refinement(reduce(s, 2), Observable::trivial(3), fine));
    CHECK_THROWS_AS(require_refinement(reduce(s, 2), other, fine), Error);
}

TEST_CASE("two-step brackets reassemble and terms are monotone") {
    fixtures::Rng rng(26);
    for (int i = 0; i < 30; ++i) {
        const std::size_t d2 = 2 + i % 3;
        const auto s = fixtures::random_bipartite(2, d2, 1 + i % (2 * d2), rng);
        const auto coarse = fixtures::random_observable(d2, 1 + i % d2, rng);
        const auto fine = fixtures::random_refinement(coarse, rng);
        const auto r = two_step_decomposition(s, coarse, fine);
        CHECK(r.bracket_residual() < 1e-8);
        CHECK(r.fine.information_gain_J >= r.coarse.information_gain_J - 1e-8);
        CHECK(r.fine.discord >= r.coarse.discord - 1e-8);
        CHECK(r.fine.residual <= r.coarse.residual + 1e-8);
    }
}

TEST_CASE("orthogonal mixtures saturate the gain") {
    fixtures::Rng rng(27);
    const double w[] = {0.6, 0.4};
    const double a[] = {1, 0, 0, 0}, b[] = {0, 0, 0.5, 0.5};
    const auto m = Mixture::validated({{w[0], DensityMatrix::diagonal(a)}, {w[1], DensityMatrix::diagonal(b)}});
    const auto g = mixture_information_gain(m);
    CHECK(g.H == doctest::Approx(h({0.6, 0.4})));
    CHECK(g.J == doctest::Approx(g.H).epsilon(1e-10));
    CHECK(g.J_relative == doctest::Approx(g.J).epsilon(1e-10));
    const auto sat = orthogonality_from_saturation(m);
    CHECK(sat.j_equals_h);
    CHECK(sat.pairwise_orthogonal);
    CHECK(sat.consistent());

    const double c[] = {0.5, 0.5, 0, 0};
    const auto overlap = Mixture::validated({{0.5, DensityMatrix::diagonal(a)}, {0.5, DensityMatrix::diagonal(c)}});
    const auto g2 = mixture_information_gain(overlap);
    CHECK(g2.J < g2.H - 1e-3);
    CHECK_FALSE(orthogonality_from_saturation(overlap).j_equals_h);
}

TEST_CASE("mixture validation") {
    CHECK_THROWS_AS(Mixture::validated({{0.7, DensityMatrix::maximally_mixed(2)}}), Error);
    CHECK_THROWS_AS(
        Mixture::validated({{0.5, DensityMatrix::maximally_mixed(2)}, {0.5, DensityMatrix::maximally_mixed(3)}}), Error);
}

TEST_CASE("majorization partial sums") {
    const double uniform[] = {1.0 / 3, 1.0 / 3, 1.0 / 3}, peaked[] = {0.8, 0.1, 0.1};
    CHECK(majorization_check(uniform, peaked));
    CHECK_FALSE(majorization_check(peaked, uniform));
    CHECK(majorization_check(peaked, peaked));
}

TEST_CASE("conditional entropy bound on a Bell pair") {
    const auto b = conditional_entropy_bound(fixtures::bell().state);
    CHECK(b.S_1given2 == doctest::Approx(-1.0));
    CHECK(b.discord_lower_bound == doctest::Approx(1.0));
}

TEST_CASE("grid search finds zero discord for a classical-classical state") {
    const auto g = min_discord_grid(fixtures::classical_classical().state, 16);
    CHECK(g.samples == 16 * 16);
    CHECK(std::abs(g.best_discord) < 1e-8);
    CHECK_THROWS_AS(min_discord_grid(fixtures::example1().state, 8), Error);
}

TEST_CASE("roundoff floor") {
    CHECK(detail::floor_roundoff(-1e-12) == 0.0);
    CHECK(detail::floor_roundoff(0.25) == 0.25);
}

}
