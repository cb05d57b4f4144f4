#include "cohinfo/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cohinfo/coarsening.hpp"
#include "cohinfo/error.hpp"
#include "cohinfo/fixtures.hpp"
#include "cohinfo/infomeasures.hpp"
#include "cohinfo/io.hpp"
#include "cohinfo/linalg/tensor.hpp"
#include "cohinfo/measurement.hpp"
#include "cohinfo/zerodiscord.hpp"

namespace cohinfo::cli {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string fixed(double x) {
    char buf[64];
    // -0.000000 reads badly in a table of nonnegative quantities.
    std::snprintf(buf, sizeof buf, "%.6f", std::abs(x) < 5e-7 ? 0.0 : x);
    return buf;
}

std::string sci(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

std::string partition_text(const Partition& p) {
    std::string s;
    for (const auto& cls : p.classes) {
        s += "{";
        for (std::size_t i = 0; i < cls.size(); ++i) s += (i ? "," : "") + std::to_string(cls[i]);
        s += "}";
    }
    return s.empty() ? "{}" : s;
}

// Text table and structured document built side by side, so every printed
// number also appears in the JSON.
class Report {
public:
    Report(const std::string& command, double tol) : tol_(tol) {
        doc_["command"] = command;
        doc_["tolerance"] = tol;
    }

    void section(const std::string& key, const std::string& title) {
        key_ = key;
        text_ << title << "\n";
    }
    void row(const std::string& key, const std::string& label, double v) {
        doc_[key_][key] = v;
        line(label, fixed(v));
    }
    void row(const std::string& key, const std::string& label, const std::vector<double>& v) {
        doc_[key_][key] = v;
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + fixed(v[i]);
        line(label, s);
    }
    void row(const std::string& key, const std::string& label, const std::string& v) {
        doc_[key_][key] = v;
        line(label, v);
    }
    void row(const std::string& key, const std::string& label, std::size_t v) {
        doc_[key_][key] = v;
        line(label, std::to_string(v));
    }
    void row(const std::string& key, const std::string& label, bool v) {
        doc_[key_][key] = v;
        line(label, v ? "yes" : "no");
    }
    void partition(const std::string& key, const std::string& label, const Partition& p) {
        doc_[key_][key] = p.classes;
        line(label, partition_text(p));
    }

    // Residual of an asserted identity; negative inputs are clamped to 0.
    void check(const std::string& key, const std::string& label, double residual) {
        residual = residual > 0.0 ? residual : 0.0;
        const bool ok = residual <= tol_;
        doc_["residuals"][key] = residual;
        checks_.push_back({label, residual, ok});
    }

    bool passed() const {
        return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.ok; });
    }

    std::string text() const {
        std::ostringstream os;
        os << text_.str();
        if (!checks_.empty()) {
            os << "Residuals (tol " << sci(tol_) << ")\n";
            for (const auto& c : checks_) {
                char buf[160];
                std::snprintf(buf, sizeof buf, "  %-44s %s  %s\n", c.label.c_str(), sci(c.residual).c_str(),
                              c.ok ? "ok" : "FAIL");
                os << buf;
            }
            os << (passed() ? "PASS" : "FAIL") << ": " << checks_.size() << " identities checked\n";
        }
        return os.str();
    }

    std::string json() const {
        ordered_json d = doc_;
        d["status"] = passed() ? "pass" : "fail";
        return d.dump(2) + "\n";
    }

    std::vector<std::string> failures() const {
        std::vector<std::string> out;
        for (const auto& c : checks_)
            if (!c.ok) out.push_back(c.label + " residual " + sci(c.residual));
        return out;
    }

private:
    struct Check {
        std::string label;
        double residual;
        bool ok;
    };

    void line(const std::string& label, const std::string& value) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "  %-44s ", label.c_str());
        text_ << buf << value << "\n";
    }

    double tol_;
    ordered_json doc_;
    std::string key_;
    std::ostringstream text_;
    std::vector<Check> checks_;
};

struct Options {
    std::string state_path, observable_path;
    double tol = 1e-8;
    std::optional<std::uint64_t> seed;
    bool json = false;
    std::string out_path;
};

struct Inputs {
    BipartiteState state;
    Observable observable;
};

Inputs load(const Options& o) {
    const auto file = io::parse_state(io::read_file(o.state_path));
    Inputs in{file.bipartite(), io::parse_observable(io::read_file(o.observable_path))};
    if (in.observable.dim() != in.state.d2()) {
        throw Error(ErrorCode::DimensionMismatch, "observable dimension " + std::to_string(in.observable.dim()) +
                                                      " differs from dims[1] = " + std::to_string(in.state.d2()));
    }
    return in;
}

int emit(const Report& r, const Options& o, std::ostream& out, std::ostream& err) {
    out << (o.json ? r.json() : r.text());
    if (!o.out_path.empty()) io::write_file(o.out_path, r.json());
    if (r.passed()) return kSuccess;
    for (const auto& f : r.failures()) err << "internal assertion failed: " << f << "\n";
    return kAssertion;
}

int cmd_analyze(const Options& o, std::ostream& out, std::ostream& err) {
    const auto in = load(o);
    const auto t = mutual_information_decomposition(in.state, in.observable);
    const auto e = elaborate_decomposition(in.state, in.observable);
    const auto l = luders_mutual_identity_check(in.state, in.observable);

    Report r("analyze", o.tol);
    r.section("decomposition", "Mutual information split (bits)");
    r.row("mutual_information", "I(rho12)", t.mutual_information);
    r.row("information_gain", "J  information gain", t.information_gain_J);
    r.row("discord", "discord", t.discord);
    r.row("residual", "residual correlations", t.residual);
    r.row("global_coherence", "I_C(A2, rho12)", t.global_coherence);
    r.row("local_coherence", "I_C(A2, rho2)", t.local_coherence);
    r.row("probabilities", "p_l", t.probabilities);

    r.section("entropies", "Entropy bookkeeping (bits)");
    r.row("S1", "S(rho1)", e.S1);
    r.row("S2", "S(rho2)", e.S2);
    r.row("S12", "S(rho12)", e.S12);
    r.row("conditional_S1", "sum p_l S(rho1^l)", e.residual_S1);
    r.row("conditional_S2", "sum p_l S(rho2^l)", e.residual_S2);
    r.row("H_pl", "H(p_l)", e.H_pl);
    r.row("luders_mutual_information", "I(rho12 after Lueders mixture)", l.luders_mutual_information);

    const double most_negative = std::min({t.information_gain_J, t.discord, t.residual});
    r.check("decomposition", "J + discord + residual = I", t.identity_residual());
    r.check("nonnegativity", "J, discord, residual >= 0", -most_negative);
    r.check("reassembly", "entropy bookkeeping reassembly", e.reassembly_residual());
    r.check("luders_identity", "I(Lueders mixture) = J + residual", l.identity_residual());
    r.check("luders_monotone", "I(Lueders mixture) <= I", l.monotonicity_excess());
    return emit(r, o, out, err);
}

int cmd_chain(const Options& o, std::ostream& out, std::ostream& err) {
    const auto in = load(o);
    const auto ch = build_chain(in.state, in.observable);
    const auto c6 = chain_coherence_report(in.state, ch);

    Report r("chain", o.tol);
    r.section("stages", "Coarsening string");
    r.row("branches_a", "A2 branches", in.observable.branch_count());
    r.row("classes_b", "B2ess detectable branches", ch.b_partition.class_count());
    r.row("classes_c", "C2tw detectable branches", ch.c_partition.class_count());
    r.row("classes_d", "D2qc detectable branches", ch.d_partition.class_count());
    r.partition("partition_b", "B2ess classes of A2 branches", ch.b_partition);
    r.partition("partition_c", "C2tw classes of B2ess branches", ch.c_partition);
    r.partition("partition_d", "D2qc classes of C2tw branches", ch.d_partition);

    r.section("information", "Stage entropies and gains (bits)");
    r.row("H_l", "H(p_l)  A2", ch.H_l);
    r.row("H_s", "H(p_s)  B2ess", ch.H_s);
    r.row("H_t", "H(p_t)  C2tw", ch.H_t);
    r.row("H_k", "H(p_k)  D2qc", ch.H_k);
    r.row("J_a", "J  A2", ch.J_a);
    r.row("J_b", "J  B2ess", ch.J_b);
    r.row("J_c", "J  C2tw", ch.J_c);
    r.row("J_d", "J  D2qc", ch.J_d);

    r.section("ledger", "Noise ledger (bits)");
    r.row("redundant_noise", "redundant-noise", ch.ledger.redundant_noise);
    r.row("essential_noise", "essential-noise", ch.ledger.essential_noise);
    r.row("garbled", "garbled", ch.ledger.garbled_gain);
    r.row("pure_quantum", "pure-quantum", ch.ledger.pure_quantum);
    r.row("quasi_classical", "quasi-classical", ch.ledger.quasi_classical);
    r.row("total", "total", ch.ledger.total());

    r.section("coherence", "Coherence along the string, D C B A (bits)");
    r.row("global", "I_C(X2, rho12)", std::vector<double>(std::begin(c6.global_coherence), std::end(c6.global_coherence)));
    r.row("local", "I_C(X2, rho2)", std::vector<double>(std::begin(c6.local_coherence), std::end(c6.local_coherence)));
    r.row("discord", "discord", std::vector<double>(std::begin(c6.discord), std::end(c6.discord)));

    r.check("ledger_total", "ledger sums to H(p_l)", std::abs(ch.ledger.total() - ch.H_l));
    r.check("containment", "stage containment", ch.containment_residual);
    r.check("gain_order", "gain and entropy ordering", ch.inequality_violation);
    r.check("biorthogonality", "D2qc mixture biorthogonal", ch.biorthogonality_residual);
    r.check("twins", "C1, C2 twin relation", ch.twins.twin_residual);
    r.check("d_discord", "D2qc discord = 0", std::abs(ch.d_discord));
    r.check("d_commutator", "[D2qc, rho12] = 0", ch.d_commutator);
    r.check("coherence_order", "coherence monotone along string", c6.inequality_violation);
    r.check("straight_line_local", "straight-line identity, rho2", c6.straight_line_residual_local);
    r.check("straight_line_global", "straight-line identity, rho12", c6.straight_line_residual_global);
    return emit(r, o, out, err);
}

int cmd_classify(const Options& o, std::ostream& out, std::ostream& err) {
    const auto in = load(o);
    const auto c = classify(in.state, in.observable);
    const auto m = mono_orthogonality_certificate(in.state);

    Report r("classify", o.tol);
    r.section("classification", "Zero-discord classification");
    r.row("kind", "kind", std::string(to_string(c.kind)));
    r.row("discord", "discord (bits)", c.discord);
    r.row("global_coherence", "I_C(A2, rho12)", c.global_IC);
    r.row("local_coherence", "I_C(A2, rho2)", c.local_IC);
    r.row("commutator_norm", "||[A2, rho12]||_F", c.commutator_norm);
    r.row("fixed_point_residual", "||rho12 - Lueders mixture||_F", c.luders_fixed_point_residual);

    r.section("certificate", "Mono-orthogonality certificate");
    r.row("mono_orthogonal", "mono-orthogonal", m.is_mono_orthogonal);
    r.row("blocks", "detectable commutant blocks", m.blocks.size());
    r.row("max_reduction_overlap", "max tr(rho2^k rho2^k')", m.max_reduction_overlap);
    if (m.is_mono_orthogonal) r.check("reconstruction", "block reconstruction", m.reconstruction_residual);
    out << to_string(c.kind) << "\n";
    return emit(r, o, out, err);
}

int cmd_measure(const Options& o, std::ostream& out, std::ostream& err) {
    const auto in = load(o);
    ApparatusSpec spec = ApparatusSpec::standard(in.observable);
    if (o.seed) {
        fixtures::Rng rng(*o.seed);
        spec.initial_pointer = fixtures::random_vector(spec.d3, rng);
    }
    const auto pm = premeasure(in.state, spec);
    const auto tr = transfer_report(in.state, pm);
    const auto eb = entropy_bookkeeping(in.state, pm);

    // Collapse against sum_l p_l rho12^l (x) |l><l|_3 built directly.
    const std::size_t d1 = in.state.d1(), d2 = in.state.d2(), d3 = spec.d3;
    const Observable lifted = lift_observable(in.observable, d1);
    ComplexMatrix expected(d1 * d2 * d3, d1 * d2 * d3);
    for (std::size_t l = 0; l < d3; ++l) {
        const auto sel = luders_selective(in.state.state(), lifted, l);
        if (!sel.state) continue;
        expected += linalg::tensor_product(sel.probability * sel.state->matrix(),
                                           ComplexMatrix::outer(spec.pointer_basis.column(l)));
    }
    const double collapse_residual = frobenius_distance(collapse(pm).matrix(), expected);

    Report r("measure", o.tol);
    r.section("premeasurement", "Premeasurement");
    r.row("pointer_dimension", "pointer dimension d3", d3);
    r.row("probabilities", "p_l", tr.initial.probabilities);
    r.row("pointer_probabilities", "pointer statistics", pm.outcome_probabilities);

    r.section("entropies", "Final-state entropies (bits)");
    r.row("S_final", "S(rho123 f)", eb.S_f);
    r.row("S12_final", "S(rho12 f)", eb.S12_f);
    r.row("S3_final", "S(rho3 f)", eb.S3_f);
    r.row("I12_3_final", "I(rho12 f : rho3 f)", eb.I12_3_f);
    r.row("H_pl", "H(p_l)", eb.H_pl);
    r.row("global_coherence", "I_C(A2, rho12)", eb.global_coherence);
    r.row("pointer_coherence", "I_C(A3, rho123 f)", eb.pointer_coherence);
    r.row("discord", "discord", eb.discord);
    r.row("subadditivity_gap", "I(1:23 f) - I(1:2 f)", eb.subadditivity_gap);

    r.section("decomposition", "Split 1|(2+3) after premeasurement (bits)");
    r.row("information_gain", "J", tr.final_split.information_gain_J);
    r.row("discord", "discord", tr.final_split.discord);
    r.row("residual", "residual correlations", tr.final_split.residual);

    r.check("unitarity", "U23 unitary", pm.unitarity_residual);
    r.check("probabilities", "pointer statistics = p_l", pm.probability_residual);
    r.check("conditional_states", "conditional states = Lueders states", pm.conditional_residual);
    r.check("ideality", "tr_3 rho f = Lueders mixture", pm.ideality_residual);
    r.check("entropy", "S(rho f) = S(rho12)", pm.entropy_residual);
    r.check("transfer_probabilities", "p_l preserved", tr.probabilities);
    r.check("transfer_distant_states", "distant states preserved", tr.distant_states);
    r.check("transfer_distant_reduction", "rho1 preserved", tr.distant_reduction);
    r.check("transfer_global_coherence", "global coherence preserved", tr.global_coherence);
    r.check("transfer_local_coherence", "local coherence preserved", tr.local_coherence);
    r.check("transfer_residual_mutual", "branch mutual information preserved", tr.residual_mutual);
    r.check("transfer_terms", "decomposition terms preserved", tr.decomposition_terms);
    r.check("split_via_coherence", "entropy split via I_C(A2, rho12)", eb.split_via_coherence);
    r.check("split_via_branches", "entropy split via branches", eb.split_via_branches);
    r.check("mutual_preserved", "I(1:2) = I(1:23 f)", eb.mutual_preserved);
    r.check("coherence_transfer", "I_C(A2) = I_C(A2 f) = I_C(A3 f)", eb.coherence_transfer);
    r.check("twin", "A2, A3 twin relation", eb.twin_residual);
    r.check("pointer_entropy", "H(pointer statistics) = H(p_l)", eb.pointer_entropy);
    r.check("collapse", "collapse = sum p_l rho12^l (x) |l><l|", collapse_residual);
    return emit(r, o, out, err);
}

int cmd_gen(const std::string& name, const std::vector<std::size_t>& params, std::uint64_t seed, std::string out_path,
            std::ostream& out) {
    fixtures::Fixture f;
    if (name == "random_bipartite") {
        if (params.size() != 3)
            throw Error(ErrorCode::ValidationError, "random_bipartite: expected parameters d1 d2 rank");
        const std::size_t d1 = params[0], d2 = params[1], rank = params[2];
        if (d1 == 0 || d2 == 0 || rank == 0 || rank > d1 * d2)
            throw Error(ErrorCode::ValidationError, "random_bipartite: need d1, d2 >= 1 and 1 <= rank <= d1*d2");
        fixtures::Rng rng(seed);
        f.name = name;
        f.state = fixtures::random_bipartite(d1, d2, rank, rng);
        f.observable = fixtures::random_complete_observable(d2, rng);
    } else {
        if (!params.empty()) throw Error(ErrorCode::ValidationError, name + ": takes no parameters");
        f = fixtures::fixture_by_name(name);
    }
    if (out_path.empty()) out_path = name;
    const std::vector<std::size_t> dims{f.state.d1(), f.state.d2()};
    io::write_file(out_path + ".state", io::format_state(f.state.state(), dims));
    io::write_file(out_path + ".obs", io::format_observable(f.observable));
    out << "wrote " << out_path << ".state and " << out_path << ".obs\n";
    return kSuccess;
}

int exit_code_for(ErrorCode code) {
    return code == ErrorCode::DimensionMismatch ? kDimensionMismatch : kInvalidInput;
}

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("state", o.state_path, "state file")->required();
    sub->add_option("observable", o.observable_path, "observable file")->required();
    sub->add_option("--tol", o.tol, "tolerance for asserted identities")->check(CLI::PositiveNumber);
    sub->add_flag("--json", o.json, "print the structured report instead of the table");
    sub->add_option("--out", o.out_path, "also write the structured report to this path");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Coherence information, discord and coarsening analysis of bipartite states", "cohinfo"};
    app.require_subcommand(1);

    Options o;
    std::uint64_t seed = 0;
    auto* analyze = app.add_subcommand("analyze", "mutual information split and entropy bookkeeping");
    auto* chain = app.add_subcommand("chain", "coarsening string and noise ledger");
    auto* classify_cmd = app.add_subcommand("classify", "strong / weak / positive discord");
    auto* measure = app.add_subcommand("measure", "ideal premeasurement bookkeeping");
    for (auto* sub : {analyze, chain, classify_cmd, measure}) add_common(sub, o);
    measure->add_option("--seed", seed, "draw the initial pointer state from this seed");

    std::string fixture;
    std::vector<std::size_t> params;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "write a named fixture as .state and .obs files");
    gen->add_option("name", fixture, "bell, product, classical_classical, weakzero, example1, example2, example3, "
                                     "random_bipartite")
        ->required();
    gen->add_option("params", params, "d1 d2 rank for random_bipartite");
    gen->add_option("--seed", seed, "seed for random generators");
    gen->add_option("--out", gen_out, "output path prefix (default: the fixture name)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kInvalidInput;
    }
    if (measure->count("--seed") > 0) o.seed = seed;

    try {
        if (*analyze) return cmd_analyze(o, out, err);
        if (*chain) return cmd_chain(o, out, err);
        if (*classify_cmd) return cmd_classify(o, out, err);
        if (*measure) return cmd_measure(o, out, err);
        return cmd_gen(fixture, params, seed, gen_out, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    }
}

}  // namespace cohinfo::cli
