#include <doctest.h>

#include <cmath>

#include "cohinfo/error.hpp"
#include "cohinfo/fixtures.hpp"
#include "cohinfo/linalg/tensor.hpp"
#include "cohinfo/zerodiscord.hpp"
#include "test_support.hpp"

using namespace cohinfo;

TEST_SUITE("zerodiscord") {

TEST_CASE("fixture classifications") {
    const auto cc = fixtures::classical_classical();
    CHECK(classify(cc.state, cc.observable).kind == DiscordKind::StrongZero);
    const auto wz = fixtures::weakzero();
    const auto w = classify(wz.state, wz.observable);
    CHECK(w.kind == DiscordKind::WeakZero);
    CHECK(w.local_IC >= 1e-6);
    CHECK(w.commutator_norm > 1e-3);
    const auto bell = fixtures::bell();
    const auto b = classify(bell.state, bell.observable);
    CHECK(b.kind == DiscordKind::Positive);
    CHECK(b.discord == doctest::Approx(1.0));
    CHECK(to_string(DiscordKind::StrongZero) == "StrongZero");
}

TEST_CASE("strong zero means the state is a Lueders fixed point") {
    const auto cc = fixtures::classical_classical();
    const auto c = classify(cc.state, cc.observable);
    CHECK(c.luders_fixed_point_residual < 1e-12);
    CHECK(c.commutator_norm < 1e-12);
}

TEST_CASE("mono-orthogonal constructions") {
    fixtures::Rng rng(41);
    for (int i = 0; i < 20; ++i) {
        const auto strong = fixtures::mono_orthogonal_case(rng, true);
        CHECK(classify(strong.state, strong.observable).kind == DiscordKind::StrongZero);
        const auto cert = mono_orthogonality_certificate(strong.state);
        CHECK(cert.is_mono_orthogonal);
        CHECK(cert.reconstruction_residual < 1e-8);
        CHECK(cert.max_reduction_overlap < 1e-9);

        const auto weak = fixtures::mono_orthogonal_case(rng, false);
        const auto c = classify(weak.state, weak.observable);
        CHECK(c.kind == DiscordKind::WeakZero);
        CHECK(c.local_IC >= 1e-6);
    }
}

TEST_CASE("an entangled pure state is not mono-orthogonal") {
    const auto cert = mono_orthogonality_certificate(fixtures::bell().state);
    CHECK_FALSE(cert.is_mono_orthogonal);
    CHECK_FALSE(strong_zero_complete_observable(fixtures::bell().state).has_value());
}

TEST_CASE("commutant projectors of a block-diagonal state") {
    const auto cc = fixtures::classical_classical();
    const auto blocks = subsystem_commutant_projectors(cc.state);
    ComplexMatrix sum(2, 2);
    for (const auto& q : blocks) {
        sum += q;
        CHECK(frobenius_norm(linalg::commutator(linalg::embed(q, 2, 1), cc.state.matrix())) < 1e-9);
    }
    CHECK(frobenius_distance(sum, ComplexMatrix::identity(2)) < 1e-9);
    CHECK(blocks.size() == 2);
}

TEST_CASE("strong zero complete observable reconstructs the state") {
    const auto cc = fixtures::classical_classical();
    const auto a = strong_zero_complete_observable(cc.state);
    REQUIRE(a.has_value());
    CHECK(a->is_complete());
    CHECK(classify(cc.state, *a).kind == DiscordKind::StrongZero);
}

TEST_CASE("statistical decomposition over commuting blocks") {
    fixtures::Rng rng(42);
    const auto f = fixtures::mono_orthogonal_case(rng, false);
    const auto cc = fixtures::classical_classical();
    const std::vector<ComplexMatrix> diag_blocks{ComplexMatrix::diagonal(std::vector<double>{1, 0}),
                                                 ComplexMatrix::diagonal(std::vector<double>{0, 1})};
    const auto r = statistical_decomposition_check(cc.state, cc.observable, diag_blocks);
    CHECK(r.residual() < 1e-10);
    CHECK(r.weights.size() == 2);
    const std::vector<ComplexMatrix> half{ComplexMatrix::identity(f.state.d2()) * 0.5};
    CHECK_THROWS_AS(statistical_decomposition_check(f.state, f.observable, half), Error);

    const auto bell = fixtures::bell();
    ComplexMatrix plus(2, 2);
    plus(0, 0) = plus(0, 1) = plus(1, 0) = plus(1, 1) = 0.5;
    ComplexMatrix minus = ComplexMatrix::identity(2) - plus;
    try {
        statistical_decomposition_check(bell.state, bell.observable, {plus, minus});
        FAIL("expected BlocksDoNotCommute");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BlocksDoNotCommute);
    }
}

TEST_CASE("classify rejects mismatched dimensions") {
    CHECK_THROWS_AS(classify(fixtures::bell().state, Observable::computational(3)), Error);
}

}
