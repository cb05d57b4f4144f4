#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "cohinfo/cli.hpp"
#include "cohinfo/error.hpp"
#include "cohinfo/fixtures.hpp"
#include "cohinfo/io.hpp"

using namespace cohinfo;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() / ("cohinfo_cli_test_" + std::to_string(::getpid()) + "_" +
                                            std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string gen(const TempDir& dir, const std::string& name, std::vector<std::string> extra = {}) {
    const std::string prefix = dir / name;
    std::vector<std::string> args{"gen", name};
    args.insert(args.end(), extra.begin(), extra.end());
    args.push_back("--out");
    args.push_back(prefix);
    const auto r = invoke(args);
    REQUIRE(r.code == 0);
    return prefix;
}

ErrorCode parse_error_code(const std::string& text, bool state) {
    try {
        if (state) {
            io::parse_state(text);
        } else {
            io::parse_observable(text);
        }
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::UnknownFixture;  // sentinel: no error
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("state and observable files round-trip exactly") {
    fixtures::Rng rng(61);
    for (int i = 0; i < 10; ++i) {
        const auto s = fixtures::random_bipartite(2, 3, 1 + i % 6, rng);
        const auto text = io::format_state(s.state(), {2, 3});
        const auto back = io::parse_state(text);
        REQUIRE(back.state.matrix().size() == s.matrix().size());
        for (std::size_t k = 0; k < s.matrix().size(); ++k) CHECK(back.state.matrix().entries()[k] == s.matrix().entries()[k]);
        CHECK(io::format_state(back.state, back.dims) == text);

        const auto a = fixtures::random_observable(3, 1 + i % 3, rng);
        const auto obs_text = io::format_observable(a);
        const auto a_back = io::parse_observable(obs_text);
        REQUIRE(a_back.branch_count() == a.branch_count());
        for (std::size_t l = 0; l < a.branch_count(); ++l) {
            CHECK(a_back.branch(l).eigenvalue == a.branch(l).eigenvalue);
            for (std::size_t k = 0; k < a.branch(l).projector.size(); ++k)
                CHECK(a_back.branch(l).projector.entries()[k] == a.branch(l).projector.entries()[k]);
        }
    }
}

TEST_CASE("parse errors name the offending field") {
    const auto check_msg = [](const std::string& text, const std::string& field) {
        try {
            io::parse_state(text);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(std::string(e.what()).find(field) != std::string::npos);
        }
    };
    check_msg(R"({"dims": "two", "re": [[1]], "im": [[0]]})", "dims");
    check_msg(R"({"dims": [1, -2], "re": [[1]], "im": [[0]]})", "dims[1]");
    check_msg(R"({"dims": [1], "im": [[0]]})", "re");
    check_msg(R"({"dims": [2], "re": [[1, 0], [0]], "im": [[0, 0], [0, 0]]})", "re[1]");
    check_msg(R"({"dims": [2], "re": [[0.5, 0], [0, 0.5]], "im": [[0, 0], [0, "x"]]})", "im[1][1]");
    CHECK(parse_error_code("{not json", true) == ErrorCode::ParseError);
    CHECK(parse_error_code(R"({"dims": [2, 2], "re": [[1]], "im": [[0]]})", true) == ErrorCode::DimensionMismatch);
    CHECK(parse_error_code(R"({"dims": [2], "re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]]})", true) ==
          ErrorCode::ValidationError);
    CHECK(parse_error_code(R"({"eigenvalues": [1], "projectors": [{"re": [[1, 0], [0, 0]], "im": [[0, 0], [0, 0]]}]})",
                           false) == ErrorCode::ValidationError);
    CHECK(parse_error_code(R"({"eigenvalues": [1, 2]})", false) == ErrorCode::ParseError);
}

TEST_CASE("eigenvector observable files") {
    const auto a = io::parse_observable(
        R"({"eigenvalues": [1, -1], "eigenvectors": [{"re": [0.7071067811865476, 0.7071067811865476], "im": [0, 0]},
                                                   {"re": [0.7071067811865476, -0.7071067811865476], "im": [0, 0]}]})");
    CHECK(a.branch_count() == 2);
    CHECK(a.is_complete());
}

TEST_CASE("analyze on the Bell fixture") {
    TempDir dir;
    const auto p = gen(dir, "bell");
    const auto r = invoke({"analyze", p + ".state", p + ".obs"});
    CHECK(r.code == 0);
    CHECK(r.out.find("J  information gain                          1.000000") != std::string::npos);
    CHECK(r.out.find("discord                                      1.000000") != std::string::npos);
    CHECK(r.out.find("residual correlations                        0.000000") != std::string::npos);
    CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("analyze on a product state prints zero correlations") {
    TempDir dir;
    const auto p = gen(dir, "product");
    const auto r = invoke({"analyze", p + ".state", p + ".obs", "--json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    for (const char* key : {"mutual_information", "information_gain", "discord", "residual"})
        CHECK(std::abs(j["decomposition"][key].template get<double>()) < 1e-9);
}

TEST_CASE("chain ledgers") {
    TempDir dir;
    const auto check_ledger = [&](const std::string& name, std::vector<double> expected) {
        const auto p = gen(dir, name);
        const auto r = invoke({"chain", p + ".state", p + ".obs", "--json"});
        REQUIRE(r.code == 0);
        const auto j = nlohmann::json::parse(r.out)["ledger"];
        const char* keys[] = {"redundant_noise", "essential_noise", "garbled", "pure_quantum", "quasi_classical"};
        for (int k = 0; k < 5; ++k) CHECK(j[keys[k]].template get<double>() == doctest::Approx(expected[k]).epsilon(1e-9));
    };
    check_ledger("bell", {0, 0, 0, 1, 0});
    check_ledger("classical_classical", {0, 0, 0, 0, 1});
    const auto p = gen(dir, "example1");
    const auto r = invoke({"chain", p + ".state", p + ".obs"});
    CHECK(r.out.find("redundant-noise                              0.500000") != std::string::npos);
}

TEST_CASE("classify verdicts") {
    TempDir dir;
    const auto verdict = [&](const std::string& name) {
        const auto p = gen(dir, name);
        const auto r = invoke({"classify", p + ".state", p + ".obs"});
        REQUIRE(r.code == 0);
        return r.out.substr(0, r.out.find('\n'));
    };
    CHECK(verdict("classical_classical") == "StrongZero");
    CHECK(verdict("weakzero") == "WeakZero");
    CHECK(verdict("bell") == "Positive");
}

TEST_CASE("measure reports pass lines") {
    TempDir dir;
    const auto p = gen(dir, "bell");
    CHECK(invoke({"measure", p + ".state", p + ".obs"}).code == 0);
    const auto q = gen(dir, "random_bipartite", {"3", "3", "4", "--seed", "7"});
    const auto r = invoke({"measure", q + ".state", q + ".obs", "--seed", "11"});
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
    const auto cc = gen(dir, "classical_classical");
    const auto j = nlohmann::json::parse(invoke({"measure", cc + ".state", cc + ".obs", "--json"}).out);
    CHECK(std::abs(j["entropies"]["global_coherence"].template get<double>()) < 1e-12);
    CHECK(std::abs(j["entropies"]["pointer_coherence"].template get<double>()) < 1e-12);
}

TEST_CASE("gen is deterministic and produces the requested rank") {
    TempDir dir;
    const auto a = gen(dir, "random_bipartite", {"3", "3", "4", "--seed", "7"});
    const auto first = io::read_file(a + ".state");
    const auto b = gen(dir, "random_bipartite", {"3", "3", "4", "--seed", "7"});
    CHECK(io::read_file(b + ".state") == first);
    const auto s = io::parse_state(first);
    CHECK(s.dims == std::vector<std::size_t>{3, 3});
    CHECK(invoke({"gen", "no_such_fixture", "--out", dir / "x"}).code == cli::kInvalidInput);
    CHECK(invoke({"gen", "random_bipartite", "3", "3", "--out", dir / "x"}).code == cli::kInvalidInput);
}

TEST_CASE("structured output is byte-stable and matches --out") {
    TempDir dir;
    const auto p = gen(dir, "example3");
    const auto first = invoke({"chain", p + ".state", p + ".obs", "--json"});
    const auto second = invoke({"chain", p + ".state", p + ".obs", "--json", "--out", dir / "report.json"});
    CHECK(first.out == second.out);
    CHECK(io::read_file(dir / "report.json") == first.out);
}

TEST_CASE("exit codes") {
    TempDir dir;
    const auto bell = gen(dir, "bell");
    const auto ex1 = gen(dir, "example1");
    CHECK(invoke({"analyze", bell + ".state", ex1 + ".obs"}).code == cli::kDimensionMismatch);
    io::write_file(dir / "bad.state", R"({"dims": [2], "re": [[1, 0]], "im": [[0, 0]]})");
    const auto bad = invoke({"analyze", dir / "bad.state", bell + ".obs"});
    CHECK(bad.code == cli::kInvalidInput);
    CHECK(bad.err.find("re") != std::string::npos);
    CHECK(invoke({"analyze", dir / "missing.state", bell + ".obs"}).code == cli::kInvalidInput);
    CHECK(invoke({"frobnicate"}).code == cli::kInvalidInput);
    CHECK(invoke({}).code == cli::kInvalidInput);
    CHECK(invoke({"--help"}).code == 0);
    // An absurd tolerance turns roundoff into an assertion failure.
    const auto rnd = gen(dir, "random_bipartite", {"3", "3", "5", "--seed", "3"});
    const auto strict = invoke({"measure", rnd + ".state", rnd + ".obs", "--tol", "1e-300"});
    CHECK(strict.code == cli::kAssertion);
    CHECK(strict.err.find("internal assertion") != std::string::npos);
}

}
