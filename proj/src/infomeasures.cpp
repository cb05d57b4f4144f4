#include "cohinfo/infomeasures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cohinfo/error.hpp"
#include "cohinfo/linalg/eigen.hpp"

namespace cohinfo {

namespace detail {

double floor_roundoff(double x) { return (x < 0.0 && x >= -kRoundoff) ? 0.0 : x; }

double relative_entropy_on_support(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
    const auto eig = linalg::hermitian_eigendecomposition(sigma);
    double cross = 0.0;  // tr rho log2 sigma
    for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k) {
        const double lambda = eig.eigenvalues[k];
        if (lambda <= kEntropyCutoff) continue;
        const auto v = eig.eigenvectors.column(k);
        const double weight = linalg::inner_product(v, rho.apply(v)).real();
        cross += weight * std::log2(lambda);
    }
    return -von_neumann_entropy(rho) - cross;
}

}  // namespace detail

using detail::floor_roundoff;

double von_neumann_entropy(const ComplexMatrix& rho) {
    double s = 0.0;
    for (double lambda : linalg::hermitian_eigenvalues(rho))
        if (lambda > kEntropyCutoff) s -= lambda * std::log2(lambda);
    return std::max(0.0, s);
}

double von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy(rho.matrix()); }

double shannon_entropy(std::span<const double> p) {
    double sum = 0.0, h = 0.0;
    for (double x : p) {
        if (x < -1e-12) throw Error(ErrorCode::NotDistribution, "negative probability");
        sum += x;
        if (x > 0.0) h -= x * std::log2(x);
    }
    if (std::abs(sum - 1.0) > 1e-10) throw Error(ErrorCode::NotDistribution, "probabilities do not sum to 1");
    return std::max(0.0, h);
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw Error(ErrorCode::DimensionMismatch, "relative entropy of unequal dims");
    const ComplexMatrix outside = ComplexMatrix::identity(rho.dim()) - range_projector(sigma, kEntropyCutoff);
    if (frobenius_norm(outside * rho.matrix() * outside) > 1e-9) return std::numeric_limits<double>::infinity();
    return std::max(0.0, detail::relative_entropy_on_support(rho.matrix(), sigma.matrix()));
}

double coherence_information(const Observable& a, const DensityMatrix& rho, CoherenceMethod method) {
    double value = 0.0;
    switch (method) {
        case CoherenceMethod::LudersEntropy:
            value = von_neumann_entropy(luders_mixture(rho, a)) - von_neumann_entropy(rho);
            break;
        case CoherenceMethod::RelativeEntropy:
            value = detail::relative_entropy_on_support(rho.matrix(), luders_mixture(rho, a).matrix());
            break;
        case CoherenceMethod::Decomposition: {
            const auto p = outcome_probabilities(rho, a);
            double h = 0.0, conditional = 0.0;
            for (std::size_t l = 0; l < p.size(); ++l) {
                if (p[l] <= kDetectableProbability) continue;
                h -= p[l] * std::log2(p[l]);
                conditional += p[l] * von_neumann_entropy(*luders_selective(rho, a, l).state);
            }
            value = h + conditional - von_neumann_entropy(rho);
            break;
        }
    }
    return floor_roundoff(value);
}

double mutual_information(const BipartiteState& s) {
    const double value = von_neumann_entropy(reduce(s, 1)) + von_neumann_entropy(reduce(s, 2)) -
                         von_neumann_entropy(s.state());
    return floor_roundoff(value);
}

// ------------------------------------------------------------------ Mixture

Mixture Mixture::validated(std::vector<Component> components) {
    double sum = 0.0;
    std::size_t dim = 0;
    for (auto& c : components) {
        if (c.weight < 0.0) throw Error(ErrorCode::NotDistribution, "negative mixture weight");
        sum += c.weight;
        if (c.weight <= kDetectableProbability) {
            c.state.reset();
            continue;
        }
        if (!c.state) throw Error(ErrorCode::NotDistribution, "detectable component without a state");
        if (dim == 0) dim = c.state->dim();
        if (c.state->dim() != dim) throw Error(ErrorCode::DimensionMismatch, "mixture components differ in dim");
    }
    if (std::abs(sum - 1.0) > 1e-10) throw Error(ErrorCode::NotDistribution, "mixture weights do not sum to 1");
    return Mixture(std::move(components));
}

std::size_t Mixture::dim() const {
    for (const auto& c : components_)
        if (c.state) return c.state->dim();
    return 0;
}

std::vector<double> Mixture::weights() const {
    std::vector<double> w;
    for (const auto& c : components_) w.push_back(c.weight);
    return w;
}

DensityMatrix Mixture::average() const {
    ComplexMatrix sum(dim(), dim());
    for (const auto& c : components_)
        if (c.state) sum += c.weight * c.state->matrix();
    return DensityMatrix::assume_valid(sum);
}

Mixture distant_mixture(const BipartiteState& s, const Observable& a2) {
    const Observable lifted = lift_observable(a2, s.d1());
    std::vector<Mixture::Component> components;
    for (std::size_t l = 0; l < lifted.branch_count(); ++l) {
        auto sel = luders_selective(s.state(), lifted, l);
        Mixture::Component c{sel.probability, std::nullopt};
        if (sel.state) c.state = reduce(BipartiteState(*sel.state, s.d1(), s.d2()), 1);
        components.push_back(std::move(c));
    }
    // Probabilities may miss 1 by accumulated rounding only.
    double sum = 0.0;
    for (const auto& c : components) sum += c.weight;
    for (auto& c : components) c.weight /= sum;
    return Mixture::validated(std::move(components));
}

// ------------------------------------------------------------------ mutual information split

double MutualInfoDecomposition::identity_residual() const {
    return std::abs(information_gain_J + discord + residual - mutual_information);
}

namespace {

struct BranchData {
    double p = 0.0;
    std::optional<BipartiteState> state;  // rho_12^l
    std::optional<DensityMatrix> rho1;
    std::optional<DensityMatrix> rho2;
};

std::vector<BranchData> branch_data(const BipartiteState& s, const Observable& a2) {
    if (a2.dim() != s.d2()) {
        throw Error(ErrorCode::DimensionMismatch, "observable on dim " + std::to_string(a2.dim()) +
                                                      " but d2 = " + std::to_string(s.d2()));
    }
    const Observable lifted = lift_observable(a2, s.d1());
    std::vector<BranchData> out;
    for (std::size_t l = 0; l < lifted.branch_count(); ++l) {
        auto sel = luders_selective(s.state(), lifted, l);
        BranchData b;
        b.p = sel.probability;
        if (sel.state) {
            b.state = BipartiteState(*sel.state, s.d1(), s.d2());
            b.rho1 = reduce(*b.state, 1);
            b.rho2 = reduce(*b.state, 2);
        }
        out.push_back(std::move(b));
    }
    return out;
}

double discord_of(const BipartiteState& s, const Observable& a2) {
    return coherence_information(lift_observable(a2, s.d1()), s.state()) -
           coherence_information(a2, reduce(s, 2));
}

}  // namespace

MutualInfoDecomposition mutual_information_decomposition(const BipartiteState& s, const Observable& a2) {
    const auto branches = branch_data(s, a2);
    MutualInfoDecomposition r;
    r.mutual_information = mutual_information(s);
    const double s1 = von_neumann_entropy(reduce(s, 1));
    double conditional = 0.0;
    for (const auto& b : branches) {
        r.probabilities.push_back(b.p);
        r.conditional_states.push_back(b.rho1);
        if (!b.state) continue;
        conditional += b.p * von_neumann_entropy(*b.rho1);
        r.residual += b.p * mutual_information(*b.state);
    }
    r.information_gain_J = floor_roundoff(s1 - conditional);
    r.global_coherence = coherence_information(lift_observable(a2, s.d1()), s.state());
    r.local_coherence = coherence_information(a2, reduce(s, 2));
    r.discord = floor_roundoff(r.global_coherence - r.local_coherence);
    return r;
}

double LudersIdentityReport::identity_residual() const {
    return std::abs(luders_mutual_information - information_gain_J - residual);
}

double LudersIdentityReport::monotonicity_excess() const { return luders_mutual_information - mutual_information; }

LudersIdentityReport luders_mutual_identity_check(const BipartiteState& s, const Observable& a2) {
    const auto t1 = mutual_information_decomposition(s, a2);
    LudersIdentityReport r;
    r.mutual_information = t1.mutual_information;
    r.information_gain_J = t1.information_gain_J;
    r.residual = t1.residual;
    const auto luders = luders_mixture(s.state(), lift_observable(a2, s.d1()));
    r.luders_mutual_information = mutual_information(BipartiteState(luders, s.d1(), s.d2()));
    return r;
}

// ------------------------------------------------------------------------- two-step refinement

namespace {

// Indices of a2prime branches whose projector lies inside p.
std::vector<std::size_t> contained_branches(const ComplexMatrix& p, const Observable& fine, double tol) {
    std::vector<std::size_t> inside;
    for (std::size_t q = 0; q < fine.branch_count(); ++q) {
        const auto& pq = fine.branch(q).projector;
        if (frobenius_distance(p * pq, pq) < tol) inside.push_back(q);
    }
    return inside;
}

}  // namespace

void require_refinement(const DensityMatrix& rho2, const Observable& a2, const Observable& a2prime, double tol) {
    if (a2.dim() != a2prime.dim() || a2.dim() != rho2.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "refinement check on unequal dims");
    }
    const auto p = outcome_probabilities(rho2, a2);
    for (std::size_t l = 0; l < a2.branch_count(); ++l) {
        if (p[l] <= kDetectableProbability) continue;
        const auto& pl = a2.branch(l).projector;
        ComplexMatrix sum(pl.rows(), pl.cols());
        for (std::size_t q : contained_branches(pl, a2prime, tol)) sum += a2prime.branch(q).projector;
        if (frobenius_distance(sum, pl) > tol) {
            throw Error(ErrorCode::NotARefinement,
                        "detectable branch " + std::to_string(l) + " is not a sum of refining projectors");
        }
    }
}

double TwoStepReport::bracket_residual() const {
    return std::max({std::abs(gain_bracket - fine.information_gain_J), std::abs(discord_bracket - fine.discord),
                     std::abs(residual_bracket - fine.residual)});
}

TwoStepReport two_step_decomposition(const BipartiteState& s, const Observable& a2, const Observable& a2prime) {
    const DensityMatrix rho2 = reduce(s, 2);
    require_refinement(rho2, a2, a2prime);

    TwoStepReport r;
    r.coarse = mutual_information_decomposition(s, a2);
    r.fine = mutual_information_decomposition(s, a2prime);

    const DensityMatrix rho1 = reduce(s, 1);
    const auto coarse_branches = branch_data(s, a2);
    r.discord_bracket = r.coarse.discord;
    for (std::size_t l = 0; l < a2.branch_count(); ++l) {
        const auto& b = coarse_branches[l];
        if (!b.state) continue;
        r.gain_bracket += b.p * detail::relative_entropy_on_support(b.rho1->matrix(), rho1.matrix());
        r.discord_bracket += b.p * discord_of(*b.state, a2prime);

        const auto inner = branch_data(*b.state, a2prime);
        for (std::size_t q : contained_branches(a2.branch(l).projector, a2prime, 1e-9)) {
            const auto& c = inner[q];
            if (!c.state) continue;
            r.gain_bracket += b.p * c.p * detail::relative_entropy_on_support(c.rho1->matrix(), b.rho1->matrix());
            r.residual_bracket += b.p * c.p * mutual_information(*c.state);
        }
    }
    return r;
}

// --------------------------------------------------------- elaborate form

double ElaborateReport::reassembly_residual() const {
    return std::max({std::abs(residual_S1 + gain_J - S1), std::abs(gain_J + discord + residual_corr - I12),
                     std::abs(H_pl - local_coherence + residual_S2 - S2), std::abs(S1 - I12 + S2 - S12)});
}

ElaborateReport elaborate_decomposition(const BipartiteState& s, const Observable& a2) {
    const auto t1 = mutual_information_decomposition(s, a2);
    const auto branches = branch_data(s, a2);
    ElaborateReport r;
    r.gain_J = t1.information_gain_J;
    r.discord = t1.discord;
    r.residual_corr = t1.residual;
    r.local_coherence = t1.local_coherence;
    r.I12 = t1.mutual_information;
    r.H_pl = shannon_entropy(t1.probabilities);
    for (const auto& b : branches) {
        if (!b.state) continue;
        r.residual_S1 += b.p * von_neumann_entropy(*b.rho1);
        r.residual_S2 += b.p * von_neumann_entropy(*b.rho2);
    }
    r.S1 = von_neumann_entropy(reduce(s, 1));
    r.S2 = von_neumann_entropy(reduce(s, 2));
    r.S12 = von_neumann_entropy(s.state());
    return r;
}

// ----------------------------------------------------------------- mixtures

MixtureGain mixture_information_gain(const Mixture& m) {
    const DensityMatrix avg = m.average();
    MixtureGain g;
    double conditional = 0.0;
    for (const auto& c : m.components()) {
        if (!c.state) continue;
        conditional += c.weight * von_neumann_entropy(*c.state);
        g.J_relative += c.weight * detail::relative_entropy_on_support(c.state->matrix(), avg.matrix());
    }
    g.J = floor_roundoff(von_neumann_entropy(avg) - conditional);
    g.J_relative = floor_roundoff(g.J_relative);
    g.H = shannon_entropy(m.weights());
    return g;
}

bool majorization_check(std::span<const double> p, std::span<const double> q) {
    std::vector<double> a(p.begin(), p.end()), b(q.begin(), q.end());
    const std::size_t n = std::max(a.size(), b.size());
    a.resize(n, 0.0);
    b.resize(n, 0.0);
    std::sort(a.begin(), a.end(), std::greater<>());
    std::sort(b.begin(), b.end(), std::greater<>());
    double sa = 0.0, sb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sa += a[i];
        sb += b[i];
        if (sa > sb + 1e-10) return false;
    }
    return true;
}

SaturationReport orthogonality_from_saturation(const Mixture& m, double tol) {
    SaturationReport r;
    const auto g = mixture_information_gain(m);
    r.j_equals_h = std::abs(g.J - g.H) < 1e-8;
    const auto& cs = m.components();
    for (std::size_t k = 0; k < cs.size(); ++k)
        for (std::size_t j = 0; j < k; ++j) {
            if (!cs[k].state || !cs[j].state) continue;
            const double overlap = linalg::trace_of_product(cs[k].state->matrix(), cs[j].state->matrix()).real();
            r.max_overlap = std::max(r.max_overlap, overlap);
        }
    r.pairwise_orthogonal = r.max_overlap < tol;
    return r;
}

ConditionalEntropyBound conditional_entropy_bound(const BipartiteState& s) {
    const double s1 = von_neumann_entropy(reduce(s, 1));
    const double i12 = mutual_information(s);
    return {s1 - i12, std::max(0.0, i12 - s1)};
}

GridDiscord min_discord_grid(const BipartiteState& s, std::size_t resolution) {
    if (s.d2() != 2) throw Error(ErrorCode::UnsupportedDimension, "basis grid needs d2 = 2");
    if (resolution < 2) throw Error(ErrorCode::ValidationError, "grid resolution must be at least 2");
    const double pi = std::numbers::pi;
    const double eigenvalues[] = {1.0, 2.0};
    GridDiscord best;
    best.best_discord = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < resolution; ++i) {
        const double theta = pi * static_cast<double>(i) / static_cast<double>(resolution - 1);
        for (std::size_t j = 0; j < resolution; ++j) {
            const double phi = 2.0 * pi * static_cast<double>(j) / static_cast<double>(resolution);
            const Complex e = std::polar(1.0, phi);
            const double c = std::cos(theta / 2.0), sn = std::sin(theta / 2.0);
            const ComplexMatrix basis{{c, -std::conj(e) * sn}, {e * sn, c}};
            Observable a = Observable::from_basis(eigenvalues, basis);
            const double d = floor_roundoff(discord_of(s, a));
            ++best.samples;
            if (d < best.best_discord) {
                best.best_discord = d;
                best.best_observable = std::move(a);
            }
        }
    }
    return best;
}

}  // namespace cohinfo
