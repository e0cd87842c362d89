#include "scell/bench.hpp"
#include "scell/smtlib.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <sys/wait.h>

using namespace scell;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run_cli(const std::string& args) {
    std::string cmd = std::string(SCELL_BINARY) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string instance(const std::string& name) { return std::string(SCELL_SOURCE_DIR) + "/instances/" + name; }

const char* kExample1 = R"({
  "vars": ["x1", "x2"],
  "polys": ["1/2*x1 + 1/2 - x2", "x1^2 + x2^2 - 1", "1/2*x1 - 1/2 - x2", "-x1*x2 - 3/4"],
  "sample": ["1/4", "-7/10"]
})";

}  // namespace

TEST(Instance, ParsesExample1) {
    auto in = parse_instance(kExample1);
    EXPECT_EQ(in.polys.size(), 4u);
    EXPECT_EQ(in.sample, (std::vector<Rational>{Rational(1, 4), Rational(-7, 10)}));
    EXPECT_EQ(in.vars.names(), (std::vector<std::string>{"x1", "x2"}));
}

TEST(Instance, Errors) {
    EXPECT_THROW(parse_instance(R"({"vars": ["x1","x2"], "polys": ["x1"], "sample": ["0"]})"), ParseError);
    try {
        parse_instance(R"({"vars": ["x1","x2"], "polys": ["x1^2 +"], "sample": ["0","0"]})");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("polys[0]"), std::string::npos);
        EXPECT_EQ(e.column(), 7u);
    }
    EXPECT_THROW(parse_instance(R"({"vars": ["x1"], "polys": ["y"], "sample": ["0"]})"), ParseError);
    EXPECT_THROW(parse_instance(R"({"vars": ["x1"], "polys": ["3"], "sample": ["0"]})"), ParseError);
    try {
        parse_instance("{\n  \"vars\": [\"x1\"],\n  \"polys\": [\"x1\",]\n}");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(Instance, RoundTrip) {
    auto in = parse_instance(kExample1);
    auto again = parse_instance(to_json(in).dump());
    EXPECT_EQ(again.polys, in.polys);
    EXPECT_EQ(again.sample, in.sample);
    EXPECT_EQ(again.vars, in.vars);
}

TEST(CellDocument, RoundTripAllHeuristics) {
    auto in = parse_instance(kExample1);
    for (auto h : {Heuristic::BC, Heuristic::LDB, Heuristic::BC_PD, Heuristic::LDB_PD}) {
        Cell c = std::get<Cell>(construct(in.vars, in.polys, in.sample, h));
        Cell back = cell_from_json(describe(c));
        EXPECT_TRUE(back == c) << to_string(h);
    }
}

TEST(CellDocument, SectorFormat) {
    VarOrder v = VarOrder::standard(1);
    auto I = SymbolicInterval::sector(std::nullopt, IndexedRoot{parse_polynomial("x1-1", v), 1});
    EXPECT_EQ(to_json(I, v).dump(), R"({"sector":{"lower":"-inf","upper":{"poly":"x1-1","index":1}}})");
    EXPECT_EQ(interval_from_json(to_json(I, v), v), I);
}

TEST(Smtlib, Extracts) {
    auto ex = extract_smtlib("(declare-fun x () Real)(declare-fun y () Real)(assert (< (+ (* x x) (* y y)) 1))");
    ASSERT_EQ(ex.polys.size(), 1u);
    EXPECT_EQ(ex.polys[0], parse_polynomial("x^2+y^2-1", ex.vars));
    EXPECT_EQ(ex.relations[0], "<");
    auto lin = extract_smtlib("(declare-const x Real)\n(assert (= (* 2 x) 3))");
    EXPECT_EQ(lin.polys[0], parse_polynomial("2*x-3", lin.vars));
    auto dec = extract_smtlib("(declare-fun x () Real)(assert (and (>= x 0.25) (<= (/ x 4) (- 2))))");
    ASSERT_EQ(dec.polys.size(), 2u);
    EXPECT_EQ(dec.polys[0], parse_polynomial("x-1/4", dec.vars));
    EXPECT_EQ(dec.polys[1], parse_polynomial("1/4*x+2", dec.vars));
}

TEST(Smtlib, RejectsUnsupported) {
    auto expect_named = [](const std::string& text, const std::string& name) {
        try {
            extract_smtlib(text);
            FAIL() << text;
        } catch (const ParseError& e) {
            EXPECT_NE(std::string(e.what()).find(name), std::string::npos) << e.what();
        }
    };
    expect_named("(declare-fun x () Real)(assert (or (< x 0) (> x 1)))", "'or'");
    expect_named("(declare-fun x () Real)(assert (not (< x 0)))", "'not'");
    expect_named("(declare-fun x () Int)", "'Int'");
    expect_named("(declare-fun x () Real)(declare-fun y () Real)(assert (< (/ x y) 1))", "non-constant");
    expect_named("(declare-fun x () Real)(assert (< z 1))", "'z'");
    expect_named("(declare-fun x () Real)(assert (< x 1)", "unbalanced");
}

TEST(Generate, Deterministic) {
    GenerateOptions o;
    o.n_vars = 2;
    o.n_polys = 3;
    o.max_degree = 3;
    o.coeff_bound = 10;
    o.seed = 42;
    auto a = generate(o), b = generate(o);
    EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
    EXPECT_EQ(a.polys.size(), 3u);
    for (const auto& p : a.polys) {
        EXPECT_LE(p.total_degree(), 3u);
        for (const auto& t : p.terms()) EXPECT_LE(abs(t.coef), 10);
        EXPECT_NE(evaluate(p, a.sample), 0);
    }
    EXPECT_FALSE(a.expect_fail);
}

TEST(Generate, LinearUnivariate) {
    GenerateOptions o;
    o.n_vars = 1;
    o.n_polys = 1;
    o.max_degree = 1;
    o.coeff_bound = 5;
    o.seed = 7;
    auto in = generate(o);
    ASSERT_EQ(in.polys.size(), 1u);
    EXPECT_EQ(in.polys[0].degree(0), 1u);
    EXPECT_EQ(in.vars.size(), 1u);
}

TEST(Generate, ExhaustedRetriesFlagged) {
    GenerateOptions o;
    o.n_vars = 1;
    o.n_polys = 4;
    o.max_degree = 1;
    o.coeff_bound = 1;
    o.max_retries = 0;
    bool seen = false;
    for (std::uint64_t seed = 1; seed < 500 && !seen; ++seed) {
        o.seed = seed;
        auto in = generate(o);
        if (!in.expect_fail) continue;
        seen = true;
        EXPECT_TRUE(std::any_of(in.polys.begin(), in.polys.end(), [&](const Polynomial& p) { return evaluate(p, in.sample) == 0; }));
    }
    EXPECT_TRUE(seen);
}

TEST(Generate, RejectsBadParameters) {
    GenerateOptions o;
    o.n_vars = 4;
    EXPECT_THROW(generate(o), DomainError);
    o.n_vars = 2;
    o.max_degree = 5;
    EXPECT_THROW(generate(o), DomainError);
}

TEST(Bench, Example1Rows) {
    auto in = parse_instance(kExample1);
    in.id = "example1";
    auto rows = run_bench({in}, {Heuristic::BC, Heuristic::BC_PD});
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].status, "ok");
    EXPECT_EQ(rows[0].stats.ldcfs_omitted, 0u);
    EXPECT_EQ(rows[1].stats.ldcfs_omitted, 1u);
    auto csv = to_csv(rows);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), bench_csv_header());
    EXPECT_EQ(csv.find("example1,bc,ok,"), csv.find('\n') + 1);
}

TEST(Bench, NullifiedRow) {
    Instance in;
    in.id = "n";
    in.vars = VarOrder::standard(2);
    in.polys = {parse_polynomial("x1*x2", in.vars)};
    in.sample = {Rational(0), Rational(5)};
    auto rows = run_bench({in}, {Heuristic::BC, Heuristic::LDB, Heuristic::BC_PD, Heuristic::LDB_PD});
    ASSERT_EQ(rows.size(), 4u);
    for (const auto& r : rows) EXPECT_EQ(r.status, "nullified");
}

TEST(Cli, RunExample1) {
    auto bc = run_cli("run " + instance("example1.json") + " --heuristic bc");
    ASSERT_EQ(bc.code, 0);
    auto j = json::parse(bc.out);
    EXPECT_EQ(j["bounds_at_sample"][0]["lower"], "0");
    EXPECT_EQ(j["bounds_at_sample"][0]["upper"], "1");
    auto pd = run_cli("run " + instance("example1.json") + " --heuristic bc-pd --verify 50");
    ASSERT_EQ(pd.code, 0);
    auto k = json::parse(pd.out);
    EXPECT_EQ(k["bounds_at_sample"][0]["lower"], "-3/5");
    EXPECT_EQ(k["bounds_at_sample"][0]["upper"], "1");
    EXPECT_EQ(k["verification"]["passed"], true);
    EXPECT_EQ(k["stats"]["ldcfs_omitted"], 1);
}

TEST(Cli, StatsJson) {
    auto r = run_cli("run " + instance("example1.json") + " --heuristic ldb-pd --stats-json");
    ASSERT_EQ(r.code, 0);
    auto j = json::parse(r.out);
    EXPECT_TRUE(j.contains("stats"));
    EXPECT_FALSE(j.contains("trace"));
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run_cli("run " + instance("nullify.json")).code, 2);
    EXPECT_EQ(run_cli("run " + instance("nullify.json") + " --derivative-fallback --verify 20").code, 0);
    EXPECT_EQ(run_cli("run " + instance("example1.json") + " --heuristic nope").code, 1);
    EXPECT_EQ(run_cli("run /nonexistent.json").code, 1);
    EXPECT_EQ(run_cli("").code, 1);
}

TEST(Cli, Smt2) {
    auto r = run_cli("smt2 " + instance("disk.smt2") + " --sample 1/3,1/7");
    ASSERT_EQ(r.code, 0);
    auto in = parse_instance(r.out);
    EXPECT_EQ(in.polys.size(), 3u);
    auto run = run_cli("run " + instance("disk.smt2") + " --sample 1/3,1/7 --verify 20");
    EXPECT_EQ(run.code, 0);
    EXPECT_EQ(run_cli("run " + instance("disk.smt2")).code, 1);
}

TEST(Cli, GenerateAndBench) {
    auto a = run_cli("generate --vars 2 --polys 3 --degree 3 --coeff 10 --seed 42");
    auto b = run_cli("generate --vars 2 --polys 3 --degree 3 --coeff 10 --seed 42");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    auto csv = run_cli("bench --corpus 1-3");
    ASSERT_EQ(csv.code, 0);
    EXPECT_EQ(std::count(csv.out.begin(), csv.out.end(), '\n'), 13);
    auto dir = run_cli("bench --bench " + std::string(SCELL_SOURCE_DIR) + "/instances --heuristic bc --heuristic bc-pd");
    ASSERT_EQ(dir.code, 0);
    EXPECT_NE(dir.out.find("example1,bc-pd,ok,"), std::string::npos);
    EXPECT_NE(dir.out.find("nullify,bc,nullified,"), std::string::npos);
}
