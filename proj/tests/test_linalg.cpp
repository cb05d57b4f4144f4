#include <doctest.h>

#include <algorithm>
#include <vector>

#include "cohinfo/error.hpp"
#include "cohinfo/linalg/eigen.hpp"
#include "cohinfo/linalg/kernels.hpp"
#include "cohinfo/linalg/tensor.hpp"
#include "test_support.hpp"

using namespace cohinfo;
using namespace cohinfo::linalg;
using testsupport::random_matrix;

TEST_SUITE("linalg") {

TEST_CASE("matrix product matches the triple loop") {
    fixtures::Rng rng(1);
    for (std::size_t n : {1u, 2u, 3u, 5u, 8u, 13u}) {
        const auto a = random_matrix(n, n + 1, rng);
        const auto b = random_matrix(n + 1, n, rng);
        CHECK(frobenius_distance(a * b, testsupport::naive_multiply(a, b)) < 1e-12);
    }
}

TEST_CASE("tensor product and partial traces match index sums") {
    fixtures::Rng rng(2);
    const auto a = random_matrix(2, 2, rng);
    const auto b = random_matrix(3, 3, rng);
    CHECK(frobenius_distance(tensor_product(a, b), testsupport::naive_kron(a, b)) < 1e-13);

    const auto m = random_matrix(6, 6, rng);
    const std::size_t dims[] = {2, 3};
    const std::size_t keep_first[] = {0}, keep_second[] = {1};
    CHECK(frobenius_distance(partial_trace(m, dims, keep_first), testsupport::naive_trace_out_second(m, 2, 3)) < 1e-13);
    CHECK(frobenius_distance(partial_trace(m, dims, keep_second), testsupport::naive_trace_out_first(m, 2, 3)) < 1e-13);
}

TEST_CASE("partial trace over the middle of three factors") {
    fixtures::Rng rng(3);
    const auto a = random_matrix(2, 2, rng), b = random_matrix(3, 3, rng), c = random_matrix(2, 2, rng);
    const ComplexMatrix factors[] = {a, b, c};
    const auto abc = tensor_product(factors);
    const std::size_t dims[] = {2, 3, 2};
    const std::size_t keep[] = {0, 2};
    const auto expected = testsupport::naive_kron(a, c) * b.trace();
    CHECK(frobenius_distance(partial_trace(abc, dims, keep), expected) < 1e-12);
}

TEST_CASE("embed places the operator between identities") {
    fixtures::Rng rng(4);
    const auto op = random_matrix(2, 2, rng);
    const auto expected =
        testsupport::naive_kron(testsupport::naive_kron(ComplexMatrix::identity(3), op), ComplexMatrix::identity(2));
    CHECK(frobenius_distance(embed(op, 3, 2), expected) < 1e-14);
}

TEST_CASE("Jacobi eigendecomposition reconstructs and orders the spectrum") {
    fixtures::Rng rng(5);
    for (std::size_t n : {1u, 2u, 4u, 7u, 12u}) {
        const auto g = random_matrix(n, n, rng);
        const ComplexMatrix h = (g + g.adjoint()) * 0.5;
        const auto eig = hermitian_eigendecomposition(h);
        CHECK(std::is_sorted(eig.eigenvalues.begin(), eig.eigenvalues.end()));
        CHECK(frobenius_distance(reconstruct(eig), h) < 1e-10);
        CHECK(frobenius_distance(eig.eigenvectors.adjoint() * eig.eigenvectors, ComplexMatrix::identity(n)) < 1e-10);
        double tr = 0.0;
        for (double x : eig.eigenvalues) tr += x;
        CHECK(tr == doctest::Approx(h.trace().real()).epsilon(1e-10));
    }
}

TEST_CASE("degenerate spectrum groups into one projector") {
    const double vals[] = {1.0, 1.0, 3.0};
    fixtures::Rng rng(6);
    const auto u = fixtures::random_unitary(3, rng);
    const ComplexMatrix h = u * ComplexMatrix::diagonal(vals) * u.adjoint();
    const auto branches = spectral_projectors(hermitian_eigendecomposition(h));
    REQUIRE(branches.size() == 2);
    CHECK(branches[0].eigenvalue == doctest::Approx(1.0));
    CHECK(branches[0].projector.trace().real() == doctest::Approx(2.0));
    CHECK(branches[1].projector.trace().real() == doctest::Approx(1.0));
}

TEST_CASE("non-Hermitian input is rejected") {
    ComplexMatrix m(2, 2);
    m(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_eigendecomposition(m), Error);
}

TEST_CASE("SIMD kernels agree with the scalar reference") {
    using namespace kernels;
    fixtures::Rng rng(7);
    const KernelTable& ref = detail::scalar_table();
    std::vector<Backend> variants;
    for (Backend b : {Backend::Avx2, Backend::Neon})
        if (backend_supported(b)) variants.push_back(b);
    if (variants.empty()) MESSAGE("no vector backend on this host; scalar only");

    for (Backend b : variants) {
        CAPTURE(to_string(b));
        const KernelTable& vec = table(b);
        for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 31u, 64u, 100u}) {
            CAPTURE(n);
            const auto xm = random_matrix(1, n, rng), ym = random_matrix(1, n, rng);
            std::vector<Complex> x(xm.entries().begin(), xm.entries().end());
            std::vector<Complex> y(ym.entries().begin(), ym.entries().end());
            const Complex a(0.3, -1.1), b2(0.7, 0.2), c(-0.4, 0.5), d(1.2, -0.3);

            auto y_ref = y, y_vec = y;
            ref.axpy(a, x.data(), y_ref.data(), n);
            vec.axpy(a, x.data(), y_vec.data(), n);
            for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y_ref[i] - y_vec[i]) < 1e-13);

            auto x1 = x, y1 = y, x2 = x, y2 = y;
            ref.rotate(x1.data(), y1.data(), n, a, b2, c, d);
            vec.rotate(x2.data(), y2.data(), n, a, b2, c, d);
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(std::abs(x1[i] - x2[i]) < 1e-13);
                CHECK(std::abs(y1[i] - y2[i]) < 1e-13);
            }

            const double scale = 1.0 + static_cast<double>(n);
            CHECK(std::abs(ref.dotc(x.data(), y.data(), n) - vec.dotc(x.data(), y.data(), n)) < 1e-12 * scale);
            CHECK(std::abs(ref.squared_norm(x.data(), n) - vec.squared_norm(x.data(), n)) < 1e-12 * scale);
            CHECK(std::abs(ref.squared_distance(x.data(), y.data(), n) - vec.squared_distance(x.data(), y.data(), n)) <
                  1e-12 * scale);
        }
    }
}

TEST_CASE("eigendecomposition agrees across backends") {
    using namespace kernels;
    fixtures::Rng rng(8);
    const auto g = random_matrix(9, 9, rng);
    const ComplexMatrix h = (g + g.adjoint()) * 0.5;
    std::vector<double> scalar;
    {
        ScopedBackend s(Backend::Scalar);
        scalar = hermitian_eigenvalues(h);
    }
    const auto best = hermitian_eigenvalues(h);
    REQUIRE(best.size() == scalar.size());
    for (std::size_t i = 0; i < best.size(); ++i) CHECK(best[i] == doctest::Approx(scalar[i]).epsilon(1e-11));
}

TEST_CASE("unsupported backend selection throws") {
    using namespace kernels;
    for (Backend b : {Backend::Avx2, Backend::Neon})
        if (!backend_supported(b)) CHECK_THROWS_AS(select_backend(b), Error);
    CHECK(backend_supported(Backend::Scalar));
}

}
