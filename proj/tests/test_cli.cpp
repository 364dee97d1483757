#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "mfkit/cli/cli.hpp"
#include "mfkit/exactalg/parse.hpp"
#include "mfkit/homalg/ext.hpp"
#include "mfkit/mfcore/constructions.hpp"
#include "mfkit/mfcore/io.hpp"

using namespace mfkit;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kData = MFKIT_TEST_DATA_DIR;

cli::Outcome run(std::vector<std::string> args, std::map<std::string, std::string> env = {}) {
    return cli::run(args, env);
}

fs::path scratch_dir() {
    fs::path d = fs::temp_directory_path() / ("mfkit_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Random polynomial with no constant term, as source text.
std::string random_poly(std::mt19937& rng, const std::vector<std::string>& vars) {
    std::uniform_int_distribution<int> coeff(-3, 3), exp(0, 2), nterms(1, 3);
    std::string out;
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        int c = coeff(rng);
        if (c == 0) c = 1;
        std::string mono;
        for (const auto& v : vars) {
            int e = exp(rng);
            if (e == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += v + (e > 1 ? "^" + std::to_string(e) : "");
        }
        if (mono.empty()) mono = vars[0];
        out += (c < 0 ? " - " : (t == 0 ? "" : " + ")) + std::to_string(std::abs(c)) + "*" + mono;
    }
    return out;
}

struct GoldenCase {
    std::string name;
    std::vector<std::string> args;
};

const std::vector<GoldenCase> kGolden = {
    {"milnor_x3_y3", {"milnor", "x^3+y^3"}},
    {"milnor_x2y", {"milnor", "x^2*y"}},
    {"global_milnor_x3_3x", {"global-milnor", "x^3-3*x"}},
    {"ext_self_stab_x2", {"ext", "--self", "stab", "x^2"}},
    {"ext_k_stab_x3", {"ext", "--over", "k", "stab", "x^3", "stab", "x^3"}},
    {"ext_beta_stab_x2", {"ext-beta", "--self", "stab", "x^2"}},
    {"hh_x3", {"hh", "x^3"}},
    {"hh_beta_x3", {"hh", "--beta", "x^3"}},
    {"hh_cochain_x3", {"hh-cochain", "x^3"}},
    {"hc_x3", {"hc", "x^3"}},
    {"hkr_check_x2y", {"hkr-check", "x^2*y+y^3", "--length", "2", "--degree", "2"}},
    {"socle_x3_y3", {"socle", "x^3+y^3"}},
    {"knorrer_stab_x3", {"knorrer", "stab", "x^3"}},
    {"dual_stab_xy", {"dual", "stab", "x*y"}},
    {"ts_stab_x2_x3", {"ts", "stab", "x^2", "stab", "y^3"}},
    {"clifford_xy", {"clifford", "--quadric", "x*y", "--nmax", "3", "--dmax", "6"}},
    {"clifford_compare_diag", {"clifford-compare", "--gram", "[[1,0],[0,2]]", "--nmax", "3", "--dmax", "6"}},
    {"hyperbolic_1", {"hyperbolic", "1", "--nmax", "4", "--dmax", "6"}},
    {"error_unknown_flag", {"milnor", "x^3", "--bogus"}},
    {"error_syntax", {"milnor", "x^3+*y"}},
    {"error_potential_mismatch", {"ext", "stab", "x^2", "stab", "x^3"}},
};

} // namespace

TEST_CASE("golden outputs byte-compare after canonical key ordering") {
    bool regen = std::getenv("MFKIT_REGEN_GOLDEN") != nullptr;
    for (const auto& g : kGolden) {
        CAPTURE(g.name);
        cli::Outcome out = run(g.args);
        std::string text = out.doc.dump(2) + "\n";
        fs::path file = kData / "golden" / (g.name + ".json");
        if (regen) {
            std::ofstream(file) << text;
            continue;
        }
        REQUIRE(fs::exists(file));
        CHECK(slurp(file) == text);
        CHECK(json::parse(slurp(file)) == out.doc);
    }
}

TEST_CASE("documented command examples") {
    cli::Outcome m = run({"milnor", "x^3+y^3"});
    CHECK(m.exit_code == cli::kExitOk);
    CHECK(m.doc["milnor"] == 4);
    CHECK(m.doc["stabilized"] == true);

    cli::Outcome e = run({"ext", "--self", "stab", "x^2"});
    CHECK(e.exit_code == cli::kExitOk);
    CHECK(e.doc["even"] == 1);
    CHECK(e.doc["odd"] == 1);

    cli::Outcome v = run({"validate", (kData / "bad.mf.json").string()});
    CHECK(v.exit_code == cli::kExitError);
    CHECK(v.doc["error"]["code"] == "invalid-factorization");
    CHECK(v.doc["error"]["message"].get<std::string>().find("factorization identity fails at (0,0)") == 0);

    cli::Outcome ok = run({"validate", (kData / "good.mf.json").string()});
    CHECK(ok.exit_code == cli::kExitOk);
    CHECK(ok.doc["valid"] == true);
}

TEST_CASE("exit codes per error class") {
    for (std::string verb : {"milnor", "global-milnor", "hh", "hh-cochain"}) {
        CAPTURE(verb);
        cli::Outcome o = run({verb, "x^2*y", "--dmax", "8"});
        CHECK(o.exit_code == cli::kExitUnstabilized);
        CHECK(o.doc["stabilized"] == false);
        CHECK(o.doc.contains("provenance"));
    }
    struct Bad {
        std::vector<std::string> args;
        std::string code;
    };
    std::vector<Bad> bad = {
        {{"milnor", "x^3", "--bogus"}, "usage"},
        {{"frobnicate", "x"}, "usage"},
        {{}, "usage"},
        {{"milnor", "x^3+*y"}, "parse"},
        {{"milnor", "x^3+y^3", "--vars", "x"}, "parse"},
        {{"milnor", "x^3", "--field", "Fp:8"}, "precondition"},
        {{"milnor", "x^3", "--field", "R"}, "precondition"},
        {{"milnor", "x^3", "--weights", "1,0"}, "precondition"},
        {{"milnor", "x^3", "--cochain-sign", "2"}, "precondition"},
        {{"milnor", "x^3", "--dmax", "-2"}, "precondition"},
        {{"milnor", "x^3", "--dmax", "0"}, "precondition"},
        {{"ext-beta", "--self", "stab", "x^2", "--nmax", "0"}, "precondition"},
        {{"hc", "x^3", "--K", "0"}, "precondition"},
        {{"milnor", "1"}, "precondition"},
        {{"ext", "stab", "x^2", "stab", "x^3"}, "potential-mismatch"},
        {{"ext", "stab", "x^2"}, "precondition"},
        {{"hkr-check", "x^3", "--field", "Fp:5"}, "field-mismatch"},
        {{"validate", "/nonexistent/m.json"}, "io"},
        {{"clifford", "--quadric", "x^2+2*x*y+y^2"}, "precondition"},
        {{"clifford", "--gram", "[[1,2],[3,4]]"}, "precondition"},
        {{"clifford", "--gram", "[[1,0]]"}, "dimension-mismatch"},
        {{"hyperbolic", "0"}, "precondition"},
    };
    for (const auto& b : bad) {
        CAPTURE(json(b.args).dump());
        cli::Outcome o = run(b.args);
        CHECK(o.exit_code == cli::kExitError);
        CHECK(o.doc["error"]["code"] == b.code);
    }
    cli::Outcome syntax = run({"milnor", "x^3+*y"});
    CHECK(syntax.doc["error"]["message"].get<std::string>().find("line 1, column 5") != std::string::npos);
}

TEST_CASE("environment overrides and flag precedence") {
    cli::Outcome a = run({"milnor", "x^3"}, {{"MFKIT_DMAX", "5"}, {"MFKIT_FIELD", "Fp:7"}});
    CHECK(a.doc["provenance"]["config"]["D_max"] == 5);
    CHECK(a.doc["provenance"]["config"]["field"] == "Fp:7");
    cli::Outcome b = run({"milnor", "x^3", "--dmax", "9", "--field", "Q"}, {{"MFKIT_DMAX", "5"}, {"MFKIT_FIELD", "Fp:7"}});
    CHECK(b.doc["provenance"]["config"]["D_max"] == 9);
    CHECK(b.doc["provenance"]["config"]["field"] == "Q");
    CHECK(run({"milnor", "x^3"}, {{"MFKIT_DMAX", "lots"}}).exit_code == cli::kExitError);
    // Options are accepted before the verb as well.
    cli::Outcome c = run({"--dmax", "7", "milnor", "x^3"});
    CHECK(c.doc["provenance"]["config"]["D_max"] == 7);
    CHECK(c.doc["milnor"] == 2);
}

TEST_CASE("provenance, determinism and table output") {
    std::vector<std::string> args = {"hh", "x^3+y^3", "--weights", "1,1"};
    cli::Outcome a = run(args), b = run(args);
    CHECK(a.text == b.text);
    CHECK(a.doc["provenance"]["command"] == json(args));
    CHECK(a.doc["provenance"]["config"]["weights"] == json::array({1, 1}));
    CHECK(a.doc["provenance"]["certificates"]["hh"]["stabilized"] == true);
    CHECK(a.doc["even"] == 4);

    cli::Outcome t = run({"milnor", "x^4", "--table"});
    CHECK(t.text.find("milnor      3\n") != std::string::npos);
    CHECK(t.text.find("provenance") == std::string::npos);
    CHECK(run({"--help"}).text.find("milnor") != std::string::npos);
}

TEST_CASE("schema is stable per verb") {
    std::map<std::string, std::vector<std::string>> keys = {
        {"milnor", {"D_used", "milnor", "provenance", "stabilized"}},
        {"ext", {"D_used", "even", "odd", "over", "provenance", "stabilized"}},
        {"ext-beta",
         {"D_used", "N_used", "determined", "dims", "free_rank", "law_holds", "note", "provenance", "stabilized",
          "torsion"}},
    };
    std::map<std::string, std::vector<std::vector<std::string>>> inputs = {
        {"milnor", {{"x^2"}, {"x^3+y^3"}, {"x^2*y", "--dmax", "6"}}},
        {"ext", {{"--self", "stab", "x^3"}, {"trivial", "x^2", "stab", "x^2"}}},
        {"ext-beta", {{"--self", "stab", "x^3"}, {"trivial", "x^2", "stab", "x^2"}}},
    };
    for (const auto& [verb, list] : inputs) {
        for (auto args : list) {
            args.insert(args.begin(), verb);
            cli::Outcome o = run(args);
            std::vector<std::string> got;
            for (const auto& [k, v] : o.doc.items()) got.push_back(k);
            CHECK(got == keys[verb]);
        }
    }
}

TEST_CASE("round trip: every factorization written re-reads to an equal value") {
    fs::path dir = scratch_dir();
    std::mt19937 rng(7);
    int files = 0;
    for (int trial = 0; trial < 12; ++trial) {
        std::string f = random_poly(rng, {"x", "y"});
        std::string g = random_poly(rng, {"z"});
        CAPTURE(f);
        CAPTURE(g);
        std::vector<std::vector<std::string>> cmds = {
            {"dual", "stab", f}, {"knorrer", "stab", f}, {"knorrer", "trivial", f}, {"ts", "stab", f, "stab", g},
        };
        for (auto cmd : cmds) {
            fs::path out = dir / ("m" + std::to_string(files++) + ".json");
            cmd.push_back("--out");
            cmd.push_back(out.string());
            cli::Outcome o = run(cmd);
            REQUIRE(o.exit_code == cli::kExitOk);
            MatrixFactorization written = read_mf_file(out.string());
            CHECK(written == mf_from_json(o.doc["mf"]));
            CHECK(validate(written).ok);
            // Re-feeding the file through the CLI reproduces it.
            fs::path again = dir / ("r" + std::to_string(files) + ".json");
            cli::Outcome k = run({"knorrer", out.string(), "--out", again.string()});
            REQUIRE(k.exit_code == cli::kExitOk);
            CHECK(read_mf_file(again.string()) == knorrer_double(written));
        }
    }
    // The written values agree with the library constructions.
    MultiPoly f = parse_poly("x^3 + x*y^2");
    fs::path out = dir / "direct.json";
    run({"dual", "stab", "x^3 + x*y^2", "--out", out.string()});
    CHECK(read_mf_file(out.string()) == dual(stabilized_residue_field(f)));
    fs::remove_all(dir);
}

TEST_CASE("mixed file and descriptor arguments share a ring") {
    fs::path dir = scratch_dir();
    fs::path file = dir / "k.json";
    REQUIRE(run({"knorrer", "stab", "x^3", "--out", file.string()}).exit_code == cli::kExitOk);
    cli::Outcome o = run({"ext", file.string(), "stab", "x^3+u*v"});
    CHECK(o.exit_code == cli::kExitOk);
    MatrixFactorization m = read_mf_file(file.string());
    RunConfig cfg;
    ExtResult direct = ext_tate(m, extend_ring(stabilized_residue_field(parse_poly("x^3+u*v", {Field(), m.ring()->names()})), m.ring()), cfg);
    CHECK(o.doc["even"] == direct.dims.even);
    CHECK(o.doc["odd"] == direct.dims.odd);
    fs::remove_all(dir);
}
