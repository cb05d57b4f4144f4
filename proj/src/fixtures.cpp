#include "cohinfo/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cohinfo/error.hpp"
#include "cohinfo/linalg/eigen.hpp"
#include "cohinfo/linalg/tensor.hpp"

namespace cohinfo::fixtures {

namespace {

Complex gaussian(Rng& rng) {
    std::normal_distribution<double> n;
    return {n(rng), n(rng)};
}

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {  // inclusive
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

std::vector<double> random_weights(std::size_t n, Rng& rng) {
    std::vector<double> w(n);
    for (auto& x : w) x = uniform(rng, 0.2, 1.0);
    const double sum = std::accumulate(w.begin(), w.end(), 0.0);
    for (auto& x : w) x /= sum;
    return w;
}

// Places a block operator on W (x) V at offsets (ow, ov) inside d1 x d2.
void add_block(ComplexMatrix& full, const ComplexMatrix& block, std::size_t dw, std::size_t dv, std::size_t ow,
               std::size_t ov, std::size_t d2, double weight) {
    for (std::size_t r = 0; r < dw * dv; ++r)
        for (std::size_t c = 0; c < dw * dv; ++c) {
            const std::size_t fr = (ow + r / dv) * d2 + (ov + r % dv);
            const std::size_t fc = (ow + c / dv) * d2 + (ov + c % dv);
            full(fr, fc) += weight * block(r, c);
        }
}

}  // namespace

std::vector<Complex> random_vector(std::size_t d, Rng& rng) {
    std::vector<Complex> v(d);
    for (auto& z : v) z = gaussian(rng);
    const double n = linalg::vector_norm(v);
    for (auto& z : v) z /= n;
    return v;
}

ComplexMatrix random_unitary(std::size_t d, Rng& rng) {
    // Gram-Schmidt on a Ginibre matrix (QR with positive diagonal) is Haar.
    ComplexMatrix u(d, d);
    std::vector<std::vector<Complex>> cols;
    while (cols.size() < d) {
        std::vector<Complex> v(d);
        for (auto& z : v) z = gaussian(rng);
        for (const auto& c : cols) {
            const Complex proj = linalg::inner_product(c, v);
            for (std::size_t i = 0; i < d; ++i) v[i] -= proj * c[i];
        }
        const double n = linalg::vector_norm(v);
        if (n < 1e-8) continue;
        for (auto& z : v) z /= n;
        cols.push_back(std::move(v));
    }
    for (std::size_t c = 0; c < d; ++c) u.set_column(c, cols[c]);
    return u;
}

DensityMatrix random_state(std::size_t d, std::size_t rank, Rng& rng) {
    ComplexMatrix g(d, rank);
    for (auto& z : g.entries()) z = gaussian(rng);
    ComplexMatrix rho = g * g.adjoint();
    rho *= 1.0 / rho.trace().real();
    return DensityMatrix::validated(rho.hermitian_part());
}

BipartiteState random_bipartite(std::size_t d1, std::size_t d2, std::size_t rank, Rng& rng) {
    return {random_state(d1 * d2, rank, rng), d1, d2};
}

BipartiteState random_pure_bipartite(std::size_t d1, std::size_t d2, Rng& rng) {
    return {DensityMatrix::pure(random_vector(d1 * d2, rng)), d1, d2};
}

Observable observable_from_groups(const ComplexMatrix& basis, const std::vector<std::vector<std::size_t>>& groups) {
    const std::size_t d = basis.rows();
    std::vector<Observable::Branch> branches;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        ComplexMatrix p(d, d);
        for (std::size_t c : groups[g]) p += ComplexMatrix::outer(basis.column(c));
        branches.push_back({static_cast<double>(g + 1), std::move(p)});
    }
    return Observable::validated(std::move(branches), 1e-9);
}

Observable random_complete_observable(std::size_t d, Rng& rng) {
    std::vector<double> values(d);
    std::iota(values.begin(), values.end(), 1.0);
    return Observable::from_basis(values, random_unitary(d, rng));
}

Observable random_observable(std::size_t d, std::size_t branches, Rng& rng) {
    if (branches == 0 || branches > d) throw Error(ErrorCode::ValidationError, "branch count must be in 1..d");
    // Random surjective assignment of the d basis vectors to the branches.
    std::vector<std::size_t> owner(d);
    std::iota(owner.begin(), owner.end(), std::size_t{0});
    for (std::size_t i = branches; i < d; ++i) owner[i] = uniform_index(rng, 0, branches - 1);
    std::shuffle(owner.begin(), owner.end(), rng);
    std::vector<std::vector<std::size_t>> groups(branches);
    for (std::size_t i = 0; i < d; ++i) groups[owner[i]].push_back(i);
    return observable_from_groups(random_unitary(d, rng), groups);
}

Observable random_refinement(const Observable& coarse, Rng& rng) {
    const std::size_t d = coarse.dim();
    ComplexMatrix basis(d, d);
    std::vector<std::vector<std::size_t>> groups;
    std::size_t next = 0;
    for (const auto& b : coarse.branches()) {
        const auto eig = linalg::hermitian_eigendecomposition(b.projector);
        const std::size_t rank = static_cast<std::size_t>(std::llround(b.projector.trace().real()));
        // Range basis = eigenvectors with eigenvalue 1, rotated randomly inside the range.
        ComplexMatrix range(d, rank);
        for (std::size_t k = 0; k < rank; ++k) range.set_column(k, eig.eigenvectors.column(d - rank + k));
        range = range * random_unitary(rank, rng);
        const std::size_t pieces = uniform_index(rng, 1, rank);
        std::vector<std::size_t> owner(rank);
        std::iota(owner.begin(), owner.end(), std::size_t{0});
        for (std::size_t i = pieces; i < rank; ++i) owner[i] = uniform_index(rng, 0, pieces - 1);
        std::shuffle(owner.begin(), owner.end(), rng);
        std::vector<std::vector<std::size_t>> local(pieces);
        for (std::size_t k = 0; k < rank; ++k) {
            basis.set_column(next, range.column(k));
            local[owner[k]].push_back(next);
            ++next;
        }
        for (auto& g : local) groups.push_back(std::move(g));
    }
    return observable_from_groups(basis, groups);
}

// ----------------------------------------------------------- named states

Fixture bell() {
    const double r = 1.0 / std::sqrt(2.0);
    const std::vector<Complex> psi{r, 0.0, 0.0, r};
    return {"bell", BipartiteState(DensityMatrix::pure(psi), 2, 2), Observable::computational(2)};
}

Fixture product() {
    const ComplexMatrix rho1{{0.6, Complex(0.2, 0.1)}, {Complex(0.2, -0.1), 0.4}};
    const ComplexMatrix rho2{{0.7, 0.1}, {0.1, 0.3}};
    const auto state = tensor_product(DensityMatrix::validated(rho1), DensityMatrix::validated(rho2));
    return {"product", BipartiteState(state, 2, 2), Observable::computational(2)};
}

Fixture classical_classical() {
    const double p[] = {0.5, 0.0, 0.0, 0.5};
    return {"classical_classical", BipartiteState(DensityMatrix::diagonal(p), 2, 2), Observable::computational(2)};
}

Fixture weakzero() {
    const ComplexMatrix rho1{{0.6, Complex(0.2, 0.1)}, {Complex(0.2, -0.1), 0.4}};
    const double p2[] = {0.7, 0.3};
    const auto state = tensor_product(DensityMatrix::validated(rho1), DensityMatrix::diagonal(p2));
    const ComplexMatrix sigma_x{{0.0, 1.0}, {1.0, 0.0}};
    return {"weakzero", BipartiteState(state, 2, 2), Observable::from_operator(sigma_x)};
}

Fixture example1(std::span<const double> alpha) {
    const double defaults[] = {0.5, 0.5, 1.0 / std::sqrt(2.0)};
    if (alpha.empty()) alpha = defaults;
    if (alpha.size() != 3) throw Error(ErrorCode::ValidationError, "example1 takes three amplitudes");
    std::vector<Complex> psi(2 * 3);
    psi[0 * 3 + 0] = alpha[0];
    psi[0 * 3 + 1] = alpha[1];
    psi[1 * 3 + 2] = alpha[2];
    const double norm = linalg::vector_norm(psi);
    if (std::abs(norm - 1.0) > 1e-10) throw Error(ErrorCode::ValidationError, "example1 amplitudes not normalized");
    return {"example1", BipartiteState(DensityMatrix::pure(psi), 2, 3), Observable::computational(3)};
}

Fixture example2() {
    const double r[] = {0.5, 0.3, 0.2};
    std::vector<Complex> psi(9);
    for (std::size_t q = 0; q < 3; ++q) psi[q * 3 + q] = std::sqrt(r[q]);
    return {"example2", BipartiteState(DensityMatrix::pure(psi), 3, 3), Observable::computational(3)};
}

Fixture example3() {
    // Subsystem 1: j1, j2, q1, q2. Subsystem 2: i1, i2, i3, q1, q2.
    const std::size_t d1 = 4, d2 = 5;
    const double a1 = 0.5, a2 = 0.5, a3 = 1.0 / std::sqrt(2.0);
    std::vector<Complex> phi(d1 * d2), psi(d1 * d2);
    phi[0 * d2 + 0] = a1;
    phi[0 * d2 + 1] = a2;
    phi[1 * d2 + 2] = a3;
    psi[2 * d2 + 3] = std::sqrt(0.7);
    psi[3 * d2 + 4] = std::sqrt(0.3);
    ComplexMatrix rho = ComplexMatrix::outer(phi) + ComplexMatrix::outer(psi);
    rho *= 0.5;

    const double r1 = std::sqrt(a1 * a1 + a2 * a2);
    ComplexMatrix basis(d2, d2);
    basis(0, 0) = a1 / r1;  // |r1>
    basis(1, 0) = a2 / r1;
    basis(0, 1) = -a2 / r1;  // |r1_perp>, undetectable
    basis(1, 1) = a1 / r1;
    basis(2, 2) = 1.0;
    basis(3, 3) = 1.0;
    basis(4, 4) = 1.0;
    const double values[] = {1, 2, 3, 4, 5};
    return {"example3", BipartiteState(DensityMatrix::validated(rho), d1, d2), Observable::from_basis(values, basis)};
}

std::vector<std::string> fixture_names() {
    return {"bell", "product", "classical_classical", "weakzero", "example1", "example2", "example3"};
}

Fixture fixture_by_name(const std::string& name) {
    if (name == "bell") return bell();
    if (name == "product") return product();
    if (name == "classical_classical") return classical_classical();
    if (name == "weakzero") return weakzero();
    if (name == "example1") return example1();
    if (name == "example2") return example2();
    if (name == "example3") return example3();
    throw Error(ErrorCode::UnknownFixture, "no fixture named '" + name + "'");
}

// --------------------------------------------------------- structured random

Fixture random_chain_case(Rng& rng) {
    struct Block {
        std::size_t dw, dv, ow, ov;
        int kind;  // 0 product, 1 Schmidt-aligned pure, 2 random pure, 3 mixed
        ComplexMatrix state;
        ComplexMatrix v_basis;  // dv x dv, A2 basis inside V
    };
    std::vector<Block> blocks;
    std::size_t d1 = 0, d2 = 0;
    const std::size_t count = uniform_index(rng, 1, 2);
    while (blocks.size() < count || d2 < 2) {
        Block b;
        b.dw = uniform_index(rng, 1, 2);
        b.dv = uniform_index(rng, 1, 2);
        b.ow = d1;
        b.ov = d2;
        b.kind = static_cast<int>(uniform_index(rng, 0, 3));
        d1 += b.dw;
        d2 += b.dv;
        b.v_basis = random_unitary(b.dv, rng);
        switch (b.kind) {
            case 0:
                b.state = linalg::tensor_product(random_state(b.dw, b.dw, rng).matrix(),
                                                 random_state(b.dv, b.dv, rng).matrix());
                break;
            case 1: {
                const std::size_t r = std::min(b.dw, b.dv);
                const auto u = random_unitary(b.dw, rng);
                const auto weights = random_weights(r, rng);
                std::vector<Complex> psi(b.dw * b.dv);
                for (std::size_t i = 0; i < r; ++i) {
                    const auto term = linalg::tensor_product(u.column(i), b.v_basis.column(i));
                    for (std::size_t k = 0; k < psi.size(); ++k) psi[k] += std::sqrt(weights[i]) * term[k];
                }
                b.state = DensityMatrix::pure(psi).matrix();
                break;
            }
            case 2:
                b.state = DensityMatrix::pure(random_vector(b.dw * b.dv, rng)).matrix();
                break;
            default:
                b.state = random_state(b.dw * b.dv, uniform_index(rng, 1, b.dw * b.dv), rng).matrix();
                break;
        }
        blocks.push_back(std::move(b));
    }

    const auto w = random_weights(blocks.size(), rng);
    ComplexMatrix rho(d1 * d2, d1 * d2);
    for (std::size_t k = 0; k < blocks.size(); ++k)
        add_block(rho, blocks[k].state, blocks[k].dw, blocks[k].dv, blocks[k].ow, blocks[k].ov, d2, w[k]);
    BipartiteState state(DensityMatrix::validated(rho.hermitian_part()), d1, d2);

    ComplexMatrix basis(d2, d2);
    if (uniform(rng, 0.0, 1.0) < 0.75) {
        for (const auto& b : blocks)
            for (std::size_t i = 0; i < b.dv; ++i)
                for (std::size_t j = 0; j < b.dv; ++j) basis(b.ov + i, b.ov + j) = b.v_basis(i, j);
    } else {
        basis = random_unitary(d2, rng);
    }
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < d2; ++i) groups.push_back({i});
    if (d2 >= 3 && uniform(rng, 0.0, 1.0) < 0.3) {
        // Merge two basis vectors into one rank-2 branch.
        const std::size_t a = uniform_index(rng, 0, d2 - 1);
        std::size_t b = uniform_index(rng, 0, d2 - 2);
        if (b >= a) ++b;
        groups[std::min(a, b)].push_back(std::max(a, b));
        groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(std::max(a, b)));
    }
    return {"random_chain", std::move(state), observable_from_groups(basis, groups)};
}

Fixture mono_orthogonal_case(Rng& rng, bool strong) {
    const std::size_t d1 = uniform_index(rng, 2, 3);
    std::vector<std::size_t> dv;
    const std::size_t count = uniform_index(rng, 2, 3);
    for (std::size_t k = 0; k < count; ++k) dv.push_back(uniform_index(rng, 1, 2));
    if (!strong) dv[uniform_index(rng, 0, count - 1)] = 2;  // room for local coherence
    const std::size_t d2 = std::accumulate(dv.begin(), dv.end(), std::size_t{0});
    const auto w = random_weights(count, rng);

    ComplexMatrix rho(d1 * d2, d1 * d2);
    ComplexMatrix basis(d2, d2);
    std::size_t offset = 0;
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t n = dv[k];
        const auto rho1 = random_state(d1, uniform_index(rng, 1, d1), rng);
        ComplexMatrix rho2_local;
        ComplexMatrix local_basis;
        if (strong) {
            local_basis = random_unitary(n, rng);
            const auto p = random_weights(n, rng);
            rho2_local = local_basis * ComplexMatrix::diagonal(p) * local_basis.adjoint();
        } else {
            // Full rank in V_k with eigenbasis unrelated to the A2 basis.
            local_basis = random_unitary(n, rng);
            const auto eig_basis = random_unitary(n, rng);
            std::vector<double> p = random_weights(n, rng);
            if (n == 2) p = {0.8, 0.2};
            rho2_local = eig_basis * ComplexMatrix::diagonal(p) * eig_basis.adjoint();
        }
        ComplexMatrix rho2(d2, d2);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                rho2(offset + i, offset + j) = rho2_local(i, j);
                basis(offset + i, offset + j) = local_basis(i, j);
            }
        rho += w[k] * linalg::tensor_product(rho1.matrix(), rho2);
        offset += n;
    }
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < d2; ++i) groups.push_back({i});
    return {strong ? "mono_orthogonal_strong" : "mono_orthogonal_weak", BipartiteState(DensityMatrix::validated(rho.hermitian_part()), d1, d2),
            observable_from_groups(basis, groups)};
}

}  // namespace cohinfo::fixtures
