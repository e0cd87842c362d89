// scell: single-cell construction from the command line.
//
//   scell run INSTANCE [--heuristic H] [--verify N] [--seed K] [--derivative-fallback] [--stats-json]
//   scell generate [--vars N] [--polys N] [--degree D] [--coeff C] [--seed K] [-o FILE]
//   scell bench (--bench DIR | --corpus LO-HI) [--heuristic H ...] [--csv PATH]
//   scell smt2 FILE [--sample a,b,...]
//
// Exit codes: 0 success, 1 usage or input error, 2 nullified sample,
// 3 verification found violations.

#include "scell/bench.hpp"
#include "scell/smtlib.hpp"

#include "CLI11.hpp"

#include <iostream>

using namespace scell;

namespace {

std::vector<Rational> parse_sample_list(const std::string& s) {
    std::vector<Rational> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
    return out;
}

Instance load_instance(const std::string& path, const std::string& sample) {
    std::string text = read_file(path);
    if (std::filesystem::path(path).extension() == ".smt2") {
        auto ex = extract_smtlib(text);
        Instance in;
        in.vars = ex.vars;
        in.polys = ex.polys;
        if (sample.empty()) throw DomainError("SMT-LIB input needs --sample");
        in.sample = parse_sample_list(sample);
        if (in.sample.size() != in.vars.size()) throw DomainError("sample arity does not match the declared variables");
        return in;
    }
    auto in = parse_instance(text);
    if (!sample.empty()) {
        in.sample = parse_sample_list(sample);
        if (in.sample.size() != in.vars.size()) throw DomainError("sample arity does not match the variable count");
    }
    return in;
}

int cmd_run(const std::string& path, const std::string& sample, const std::string& heuristic, std::size_t verify, std::uint64_t seed,
            bool fallback, bool stats_only) {
    Instance in = load_instance(path, sample);
    Heuristic h = heuristic_from_string(heuristic);
    Options opt;
    opt.derivative_fallback = fallback;
    auto r = construct(in.vars, in.polys, in.sample, h, opt);
    if (auto* f = std::get_if<Failure>(&r)) {
        json j{{"status", f->reason}, {"poly", to_string(f->poly, in.vars)}, {"level", f->level}};
        std::cout << j.dump(2) << "\n";
        std::cerr << "scell: " << f->reason << ": " << to_string(f->poly, in.vars) << " vanishes identically over the sample at level "
                  << f->level << "\n";
        return 2;
    }
    const Cell& c = std::get<Cell>(r);
    json doc = stats_only ? json{{"status", "ok"}, {"stats", to_json(c.stats)}} : describe(c);
    int code = 0;
    if (verify > 0) {
        auto rep = verify_sign_invariance(in.polys, c, verify, seed);
        doc["verification"] = to_json(rep, in.vars);
        if (!rep.passed()) code = 3;
    }
    std::cout << doc.dump(2) << "\n";
    return code;
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& s) {
    auto dash = s.find('-');
    if (dash == std::string::npos) {
        auto v = std::stoull(s);
        return {v, v};
    }
    auto lo = std::stoull(s.substr(0, dash)), hi = std::stoull(s.substr(dash + 1));
    if (lo > hi) throw DomainError("empty seed range '" + s + "'");
    return {lo, hi};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Single-cell construction for cylindrical algebraic decomposition"};
    app.require_subcommand(1);

    std::string path, sample, heuristic = "bc", out, bench_dir, corpus, csv;
    std::size_t verify = 0;
    std::uint64_t seed = 1;
    bool fallback = false, stats_json = false;
    std::vector<std::string> heuristics;
    GenerateOptions gen;

    const std::vector<std::string> known{"bc", "ldb", "bc-pd", "ldb-pd"};

    auto* run = app.add_subcommand("run", "Construct the cell around the sample of an instance");
    run->add_option("instance", path, "Instance file (.json, or .smt2 with --sample)")->required()->check(CLI::ExistingFile);
    run->add_option("--heuristic", heuristic, "bc, ldb, bc-pd or ldb-pd")->check(CLI::IsMember(known));
    run->add_option("--verify", verify, "Check sign invariance on N random points of the cell");
    run->add_option("--seed", seed, "Seed for verification sampling");
    run->add_option("--sample", sample, "Override the sample, comma separated rationals");
    run->add_flag("--derivative-fallback", fallback, "Replace nullified polynomials by coefficients and derivatives");
    run->add_flag("--stats-json", stats_json, "Print only the counters");

    auto* gen_cmd = app.add_subcommand("generate", "Write a random instance");
    gen_cmd->add_option("--vars", gen.n_vars, "Number of variables (1-3)");
    gen_cmd->add_option("--polys", gen.n_polys, "Number of polynomials");
    gen_cmd->add_option("--degree", gen.max_degree, "Maximum total degree (1-4)");
    gen_cmd->add_option("--coeff", gen.coeff_bound, "Coefficient bound");
    gen_cmd->add_option("--seed", gen.seed, "Generator seed");
    gen_cmd->add_option("-o,--output", out, "Output file (default stdout)");

    auto* bench = app.add_subcommand("bench", "Metrics table over a set of instances");
    auto* dir_opt = bench->add_option("--bench", bench_dir, "Directory of instance files")->check(CLI::ExistingDirectory);
    auto* corpus_opt = bench->add_option("--corpus", corpus, "Generated corpus seeds, e.g. 1-200");
    dir_opt->excludes(corpus_opt);
    bench->add_option("--heuristic", heuristics, "Heuristics to run (default all)")->check(CLI::IsMember(known));
    bench->add_option("--csv", csv, "Output CSV (default stdout)");
    bench->add_flag("--derivative-fallback", fallback, "Replace nullified polynomials by coefficients and derivatives");

    auto* smt = app.add_subcommand("smt2", "Extract an instance from an SMT-LIB script");
    smt->add_option("file", path, "SMT-LIB file")->required()->check(CLI::ExistingFile);
    smt->add_option("--sample", sample, "Sample point, comma separated rationals (default all zero)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*run) return cmd_run(path, sample, heuristic, verify, seed, fallback, stats_json);

        if (*gen_cmd) {
            std::string text = to_json(generate(gen)).dump(2) + "\n";
            if (out.empty()) {
                std::cout << text;
            } else {
                std::ofstream f(out);
                if (!f) throw std::runtime_error("cannot write '" + out + "'");
                f << text;
            }
            return 0;
        }

        if (*bench) {
            std::vector<Instance> instances;
            if (!bench_dir.empty()) {
                instances = load_directory(bench_dir);
            } else if (!corpus.empty()) {
                auto [lo, hi] = parse_range(corpus);
                instances = standard_corpus(lo, hi);
            } else {
                std::cerr << "scell bench: one of --bench or --corpus is required\n";
                return 1;
            }
            std::vector<Heuristic> hs;
            for (const auto& h : heuristics.empty() ? known : heuristics) hs.push_back(heuristic_from_string(h));
            Options opt;
            opt.derivative_fallback = fallback;
            std::string text = to_csv(run_bench(instances, hs, opt));
            if (csv.empty()) {
                std::cout << text;
            } else {
                std::ofstream f(csv);
                if (!f) throw std::runtime_error("cannot write '" + csv + "'");
                f << text;
            }
            return 0;
        }

        if (*smt) {
            auto ex = extract_smtlib(read_file(path));
            Instance in;
            in.vars = ex.vars;
            in.polys = ex.polys;
            in.sample = sample.empty() ? std::vector<Rational>(in.vars.size(), Rational(0)) : parse_sample_list(sample);
            if (in.sample.size() != in.vars.size()) throw DomainError("sample arity does not match the declared variables");
            std::cout << to_json(in).dump(2) << "\n";
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "scell: " << path << ":" << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "scell: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
