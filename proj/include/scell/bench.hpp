#pragma once

// Random instance generation and the per-(instance, heuristic) metrics table.

#include "scell/io.hpp"

#include <chrono>
#include <filesystem>

namespace scell {

struct GenerateOptions {
    std::size_t n_vars = 2;
    std::size_t n_polys = 3;
    unsigned max_degree = 3;
    long coeff_bound = 10;
    std::uint64_t seed = 1;
    /// Extra sample draws when an input vanishes at the sample.
    unsigned max_retries = 100;
};

namespace detail {

inline Polynomial random_sparse(std::mt19937_64& rng, std::size_t level, unsigned max_degree, long coeff_bound) {
    std::uniform_int_distribution<int> nterms(2, 4);
    std::uniform_int_distribution<long> coef(1, coeff_bound);
    std::bernoulli_distribution neg(0.5);
    auto term = [&](bool lead) {
        std::vector<std::uint32_t> e(level, 0);
        unsigned budget = std::uniform_int_distribution<unsigned>(lead ? 1 : 0, max_degree)(rng);
        if (lead) {
            e[level - 1] = std::uniform_int_distribution<unsigned>(1, budget)(rng);
            budget -= e[level - 1];
        }
        std::uniform_int_distribution<std::size_t> pick(0, level - 1);
        for (; budget > 0; --budget) ++e[pick(rng)];
        long c = coef(rng);
        return Term{Monomial(e), Rational(neg(rng) ? -c : c)};
    };
    for (;;) {
        std::vector<Term> ts{term(true)};
        int k = nterms(rng);
        for (int j = 1; j < k; ++j) ts.push_back(term(false));
        Polynomial p = Polynomial::from_terms(std::move(ts));
        if (p.level() == level) return p;
    }
}

}  // namespace detail

/// Sparse random instance with a rational sample (denominators up to 8) that
/// no input vanishes at. When every draw fails the last sample is kept and
/// the instance is flagged expect_fail.
inline Instance generate(const GenerateOptions& o) {
    if (o.n_vars < 1 || o.n_vars > 3) throw DomainError("n_vars must be 1, 2 or 3");
    if (o.max_degree < 1 || o.max_degree > 4) throw DomainError("max_degree must be between 1 and 4");
    if (o.n_polys < 1) throw DomainError("n_polys must be positive");
    if (o.coeff_bound < 1) throw DomainError("coeff_bound must be positive");
    std::mt19937_64 rng(o.seed);
    Instance in;
    in.id = "gen-" + std::to_string(o.n_vars) + "-" + std::to_string(o.n_polys) + "-" + std::to_string(o.max_degree) + "-" +
            std::to_string(o.coeff_bound) + "-" + std::to_string(o.seed);
    in.vars = VarOrder::standard(o.n_vars);
    std::uniform_int_distribution<std::size_t> lvl(1, o.n_vars);
    for (std::size_t k = 0; k < o.n_polys; ++k) {
        std::size_t level = k == 0 ? o.n_vars : lvl(rng);
        in.polys.push_back(detail::random_sparse(rng, level, o.max_degree, o.coeff_bound));
    }
    std::uniform_int_distribution<long> den(1, 8);
    auto draw = [&] {
        std::vector<Rational> s;
        for (std::size_t i = 0; i < o.n_vars; ++i) {
            long q = den(rng);
            long p = std::uniform_int_distribution<long>(-4 * q, 4 * q)(rng);
            s.push_back(rat_normalize(p, q));
        }
        return s;
    };
    auto vanishes = [&](const std::vector<Rational>& s) {
        return std::any_of(in.polys.begin(), in.polys.end(), [&](const Polynomial& p) { return evaluate(p, s) == 0; });
    };
    in.sample = draw();
    for (unsigned r = 0; r < o.max_retries && vanishes(in.sample); ++r) in.sample = draw();
    in.expect_fail = vanishes(in.sample);
    return in;
}

/// The corpus used by the fuzzing run: seeds lo..hi, 2 + seed%2 variables,
/// 2 + seed%3 polynomials, degree 3, coefficients in [-10, 10].
inline std::vector<Instance> standard_corpus(std::uint64_t lo, std::uint64_t hi) {
    std::vector<Instance> out;
    for (std::uint64_t seed = lo; seed <= hi; ++seed) {
        GenerateOptions o;
        o.n_vars = 2 + seed % 2;
        o.n_polys = 2 + seed % 3;
        o.max_degree = 3;
        o.coeff_bound = 10;
        o.seed = seed;
        auto in = generate(o);
        in.id = "seed-" + std::to_string(seed);
        out.push_back(std::move(in));
    }
    return out;
}

/// Instances from every *.json file of a directory, in file name order.
inline std::vector<Instance> load_directory(const std::string& dir) {
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<Instance> out;
    for (const auto& f : files) {
        Instance in;
        try {
            in = parse_instance(read_file(f.string()));
        } catch (const ParseError& e) {
            throw ParseError(f.filename().string() + ": " + e.what(), e.line(), e.column());
        }
        if (in.id.empty()) in.id = f.stem().string();
        out.push_back(std::move(in));
    }
    return out;
}

struct BenchRow {
    std::string instance;
    Heuristic heuristic = Heuristic::BC;
    std::string status;  // ok, nullified or error:<message>
    CounterSet stats;
    double time_ms = 0;
};

inline const char* bench_csv_header() {
    return "instance,heuristic,status,resultants,discriminants,ldcfs,coeffs,ldcfs_omitted,pd_blocked_unbounded,"
           "pd_blocked_no_pairing,roots_computed,max_total_degree,time_ms";
}

inline BenchRow bench_one(const Instance& in, Heuristic h, Options opt = {}) {
    BenchRow row;
    row.instance = in.id;
    row.heuristic = h;
    auto t0 = std::chrono::steady_clock::now();
    try {
        auto r = construct(in.vars, in.polys, in.sample, h, opt);
        if (auto* c = std::get_if<Cell>(&r)) {
            row.status = "ok";
            row.stats = c->stats;
        } else {
            row.status = std::get<Failure>(r).reason;
        }
    } catch (const std::exception& e) {
        row.status = std::string("error:") + e.what();
    }
    row.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return row;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace detail

inline std::string to_csv_line(const BenchRow& r) {
    std::ostringstream os;
    const auto& s = r.stats;
    os << detail::csv_field(r.instance) << ',' << to_string(r.heuristic) << ',' << detail::csv_field(r.status) << ','
       << s.resultants_added << ',' << s.discriminants_added << ',' << s.ldcfs_added << ',' << s.coeffs_added << ','
       << s.ldcfs_omitted << ',' << s.pd_blocked_unbounded << ',' << s.pd_blocked_no_pairing << ',' << s.roots_computed << ','
       << s.max_total_degree << ',';
    os.setf(std::ios::fixed);
    os.precision(3);
    os << r.time_ms;
    return os.str();
}

inline std::string to_csv(const std::vector<BenchRow>& rows) {
    std::string out = bench_csv_header();
    out += '\n';
    for (const auto& r : rows) out += to_csv_line(r) + '\n';
    return out;
}

/// One row per (instance, heuristic), ordered by instance then heuristic.
inline std::vector<BenchRow> run_bench(const std::vector<Instance>& instances, const std::vector<Heuristic>& hs, Options opt = {}) {
    std::vector<BenchRow> rows;
    for (const auto& in : instances)
        for (auto h : hs) rows.push_back(bench_one(in, h, opt));
    return rows;
}

}  // namespace scell
