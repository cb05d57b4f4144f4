#include <doctest.h>

#include <cmath>

#include "cohinfo/error.hpp"
#include "cohinfo/linalg/eigen.hpp"
#include "cohinfo/linalg/tensor.hpp"
#include "cohinfo/statecore.hpp"
#include "test_support.hpp"

using namespace cohinfo;

namespace {
ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an exception");
    return ErrorCode::ValidationError;
}
}  // namespace

TEST_SUITE("statecore") {

TEST_CASE("density matrix validation") {
    ComplexMatrix m = ComplexMatrix::identity(2) * 0.5;
    CHECK_NOTHROW(DensityMatrix::validated(m));

    ComplexMatrix bad_trace = ComplexMatrix::identity(2);
    CHECK(code_of([&] { DensityMatrix::validated(bad_trace); }) == ErrorCode::InvalidState);

    const double neg[] = {1.2, -0.2};
    CHECK(code_of([&] { DensityMatrix::validated(ComplexMatrix::diagonal(neg)); }) == ErrorCode::InvalidState);

    ComplexMatrix skew = m;
    skew(0, 1) = Complex(0.0, 0.1);
    CHECK_THROWS_AS(DensityMatrix::validated(skew), Error);

    CHECK_THROWS_AS(DensityMatrix::validated(ComplexMatrix(2, 3)), Error);
}

TEST_CASE("observable validation") {
    const auto p0 = ComplexMatrix::diagonal(std::vector<double>{1, 0});
    const auto p1 = ComplexMatrix::diagonal(std::vector<double>{0, 1});
    CHECK_NOTHROW(Observable::validated({{1.0, p0}, {2.0, p1}}));
    // incomplete
    CHECK(code_of([&] { Observable::validated({{1.0, p0}}); }) == ErrorCode::InvalidObservable);
    // overlapping
    CHECK(code_of([&] { Observable::validated({{1.0, p0}, {2.0, p0 + p1}}); }) == ErrorCode::InvalidObservable);
    // repeated eigenvalue
    CHECK(code_of([&] { Observable::validated({{1.0, p0}, {1.0, p1}}); }) == ErrorCode::InvalidObservable);
    // not idempotent
    CHECK_THROWS_AS(Observable::validated({{1.0, p0 * 0.5}, {2.0, p1 + p0 * 0.5}}), Error);
}

TEST_CASE("observable from an operator groups degenerate eigenvalues") {
    ComplexMatrix sx(2, 2);
    sx(0, 1) = sx(1, 0) = 1.0;
    const auto a = Observable::from_operator(sx);
    CHECK(a.branch_count() == 2);
    CHECK(a.is_complete());
    CHECK(frobenius_distance(a.operator_matrix(), sx) < 1e-12);

    const auto t = Observable::from_operator(ComplexMatrix::identity(3) * 2.0);
    CHECK(t.branch_count() == 1);
    CHECK(t.rank(0) == 3);
}

TEST_CASE("Lueders mixture and selective states of a Bell pair") {
    std::vector<Complex> psi(4);
    psi[0] = psi[3] = 1.0 / std::sqrt(2.0);
    const auto rho = DensityMatrix::pure(psi);
    const auto a = lift_observable(Observable::computational(2), 2);
    const auto mix = luders_mixture(rho, a);
    ComplexMatrix expected(4, 4);
    expected(0, 0) = expected(3, 3) = 0.5;
    CHECK(frobenius_distance(mix.matrix(), expected) < 1e-14);

    const auto p = outcome_probabilities(rho, a);
    CHECK(p[0] == doctest::Approx(0.5));
    const auto sel = luders_selective(rho, a, 1);
    REQUIRE(sel.state);
    CHECK(sel.state->matrix()(3, 3).real() == doctest::Approx(1.0));
}

TEST_CASE("undetectable branch has no selective state") {
    const double p[] = {1.0, 0.0};
    const auto rho = DensityMatrix::diagonal(p);
    const auto sel = luders_selective(rho, Observable::computational(2), 1);
    CHECK(sel.probability == doctest::Approx(0.0));
    CHECK_FALSE(sel.state.has_value());
}

TEST_CASE("reductions match index-sum oracles") {
    fixtures::Rng rng(11);
    const auto s = fixtures::random_bipartite(3, 2, 4, rng);
    CHECK(frobenius_distance(reduce(s, 1).matrix(), testsupport::naive_trace_out_second(s.matrix(), 3, 2)) < 1e-13);
    CHECK(frobenius_distance(reduce(s, 2).matrix(), testsupport::naive_trace_out_first(s.matrix(), 3, 2)) < 1e-13);
}

TEST_CASE("tripartite reductions and regroupings") {
    fixtures::Rng rng(12);
    const auto a = fixtures::random_state(2, 2, rng), b = fixtures::random_state(3, 2, rng),
               c = fixtures::random_state(2, 1, rng);
    const TripartiteState t(tensor_product(tensor_product(a, b), c), 2, 3, 2);
    const std::size_t k13[] = {1, 3}, k2[] = {2};
    CHECK(frobenius_distance(t.reduce(k13).matrix(), testsupport::naive_kron(a.matrix(), c.matrix())) < 1e-12);
    CHECK(frobenius_distance(t.reduce(k2).matrix(), b.matrix()) < 1e-12);
    CHECK(t.split_1_23().d2() == 6);
    CHECK(t.split_12_3().d1() == 6);
}

TEST_CASE("bipartite state rejects wrong factor dimensions") {
    CHECK(code_of([] { BipartiteState(DensityMatrix::maximally_mixed(6), 4, 2); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("purification reproduces the state") {
    fixtures::Rng rng(13);
    for (std::size_t rank : {1u, 2u, 3u}) {
        const auto rho = fixtures::random_state(3, rank, rng);
        const auto pur = purify(rho);
        CHECK(pur.d1() == rank);
        CHECK(frobenius_distance(reduce(pur, 2).matrix(), rho.matrix()) < 1e-10);
        const auto eig = linalg::hermitian_eigenvalues(pur.matrix());
        CHECK(eig.back() == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("Schmidt decomposition rebuilds the vector") {
    fixtures::Rng rng(14);
    for (auto [d1, d2] : {std::pair{2u, 3u}, {3u, 3u}, {4u, 2u}}) {
        const auto psi = fixtures::random_vector(d1 * d2, rng);
        const auto sd = schmidt_decomposition(psi, d1, d2);
        std::vector<Complex> rebuilt(d1 * d2);
        double norm = 0.0;
        for (std::size_t k = 0; k < sd.coefficients.size(); ++k) {
            norm += sd.coefficients[k] * sd.coefficients[k];
            for (std::size_t i = 0; i < d1; ++i)
                for (std::size_t j = 0; j < d2; ++j)
                    rebuilt[i * d2 + j] += sd.coefficients[k] * sd.left_vectors(i, k) * sd.right_vectors(j, k);
        }
        CHECK(norm == doctest::Approx(1.0));
        double err = 0.0;
        for (std::size_t i = 0; i < psi.size(); ++i) err += std::norm(rebuilt[i] - psi[i]);
        CHECK(std::sqrt(err) < 1e-9);
        // squared coefficients are the spectrum of rho1
        const auto rho1 = reduce(BipartiteState(DensityMatrix::pure(psi), d1, d2), 1);
        auto spec = linalg::hermitian_eigenvalues(rho1.matrix());
        std::sort(spec.rbegin(), spec.rend());
        for (std::size_t k = 0; k < sd.coefficients.size(); ++k)
            CHECK(sd.coefficients[k] * sd.coefficients[k] == doctest::Approx(spec[k]).epsilon(1e-9));
    }
}

TEST_CASE("mixed input to the pure-state helpers throws NotPure") {
    CHECK(code_of([] { pure_state_vector(DensityMatrix::maximally_mixed(2)); }) == ErrorCode::NotPure);
}

}
