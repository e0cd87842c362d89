#include "scell/scc_projective.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace scell;
using scell::testing::P;

namespace {

std::vector<Rational> Q(std::initializer_list<const char*> xs) {
    std::vector<Rational> v;
    for (auto x : xs) v.push_back(parse_rational(x));
    return v;
}

Polynomial N(const std::string& s, std::size_t n = 2) { return normalized(P(s, n)); }

std::vector<Polynomial> example1() {
    return {P("1/2*x1+1/2-x2", 2), P("x1^2+x2^2-1", 2), P("1/2*x1-1/2-x2", 2), P("-x1*x2-3/4", 2)};
}

bool in_trace(const Cell& c, const Polynomial& p) {
    return std::any_of(c.trace.begin(), c.trace.end(), [&](const TraceEntry& t) { return t.poly == p; });
}

const PdRecord* record(const Cell& c, const Polynomial& p) {
    for (const auto& r : c.pd)
        if (r.poly == p) return &r;
    return nullptr;
}

}  // namespace

TEST(Projective, Example1) {
    auto s = Q({"1/4", "-7/10"});
    auto r = construct_cell_pd(VarOrder::standard(2), example1(), s, Heuristic::BC_PD);
    ASSERT_TRUE(std::holds_alternative<Cell>(r));
    const Cell& c = std::get<Cell>(r);
    EXPECT_EQ(c.intervals[1], SymbolicInterval::sector(IndexedRoot{N("x1^2+x2^2-1"), 1}, IndexedRoot{N("1/2*x1-1/2-x2"), 1}));
    EXPECT_TRUE(in_trace(c, N("x1^2-1")));
    EXPECT_TRUE(in_trace(c, N("5*x1^2-2*x1-3")));
    EXPECT_TRUE(in_trace(c, N("16*x1^4-16*x1^2+9")));
    EXPECT_FALSE(in_trace(c, N("x1")));
    EXPECT_EQ(c.stats.ldcfs_omitted, 1u);
    EXPECT_EQ(c.stats.pd_blocked_unbounded, 0u);

    auto e = evaluate_interval(c.intervals[0], {});
    ASSERT_TRUE(e.lower && e.upper);
    EXPECT_EQ(e.lower->rational_value(), Rational(-3, 5));
    EXPECT_EQ(e.upper->rational_value(), Rational(1));
    EXPECT_EQ(c.intervals[0].lower()->poly, N("5*x1^2-2*x1-3"));

    const PdRecord* p4 = record(c, N("-x1*x2-3/4"));
    ASSERT_TRUE(p4);
    EXPECT_EQ(p4->status, PdStatus::Omitted);
    ASSERT_EQ(p4->chains.size(), 1u);
    Chain want{IndexedRoot{N("x1^2+x2^2-1"), 1}, IndexedRoot{N("1/2*x1-1/2-x2"), 1}, IndexedRoot{N("x1^2+x2^2-1"), 2},
               IndexedRoot{N("-x1*x2-3/4"), 1}};
    EXPECT_EQ(p4->chains[0], want);
    EXPECT_TRUE(chain_holds(c, 2, p4->chains[0], s));
    EXPECT_EQ(pd_applicability_ratio(c.stats), std::optional<Rational>(Rational(1)));
}

TEST(Projective, Example1CellIsLarger) {
    auto s = Q({"1/4", "-7/10"});
    const Cell bc = std::get<Cell>(construct_cell(VarOrder::standard(2), example1(), s, Heuristic::BC));
    const Cell pd = std::get<Cell>(construct_cell_pd(VarOrder::standard(2), example1(), s, Heuristic::BC_PD));
    auto pt = Q({"-1/2", "-4/5"});
    EXPECT_FALSE(contains(bc, pt));
    EXPECT_TRUE(contains(pd, pt));
}

TEST(Projective, ChainHoldsAcrossTheCell) {
    auto s = Q({"1/4", "-7/10"});
    const Cell c = std::get<Cell>(construct_cell_pd(VarOrder::standard(2), example1(), s, Heuristic::BC_PD));
    const PdRecord* p4 = record(c, N("-x1*x2-3/4"));
    ASSERT_TRUE(p4);
    for (const char* x : {"-1/2", "-1/10", "1/10", "1/2", "9/10"}) {
        auto pre = Q({x});
        EXPECT_TRUE(chain_holds(c, 2, p4->chains[0], pre)) << x;
    }
    // At x1 = 0 the root of p4 sits at infinity, still on the outside arc.
    EXPECT_TRUE(chain_holds(c, 2, p4->chains[0], Q({"0"})));
    // Outside the cell the circle bound disappears.
    EXPECT_FALSE(chain_holds(c, 2, p4->chains[0], Q({"3/2"})));
}

TEST(Projective, UnboundedSideBlocks) {
    auto P1 = std::vector<Polynomial>{P("x2^2-x1", 2)};
    auto s = Q({"1", "5"});
    const Cell bc = std::get<Cell>(construct_cell(VarOrder::standard(2), P1, s, Heuristic::BC));
    const Cell pd = std::get<Cell>(construct_cell_pd(VarOrder::standard(2), P1, s, Heuristic::BC_PD));
    EXPECT_EQ(bc.trace, pd.trace);
    EXPECT_EQ(bc.intervals, pd.intervals);
    ASSERT_EQ(pd.pd.size(), 1u);
    EXPECT_EQ(pd.pd[0].status, PdStatus::BlockedUnbounded);
    EXPECT_EQ(pd.stats.pd_blocked_unbounded, 1u);
}

TEST(Projective, BoundPolynomialKeepsLdcf) {
    auto ps = std::vector<Polynomial>{P("x1*x2-1", 2), P("x2+3", 2)};
    const Cell c = std::get<Cell>(construct_cell_pd(VarOrder::standard(2), ps, Q({"1", "0"}), Heuristic::BC_PD));
    const PdRecord* r = record(c, N("x1*x2-1"));
    ASSERT_TRUE(r);
    EXPECT_EQ(r->status, PdStatus::LdcfNeededBound);
    EXPECT_TRUE(in_trace(c, N("x1")));
}

TEST(Projective, RootFreeKeepsLdcf) {
    auto ps = std::vector<Polynomial>{P("x1*x2^2+1", 2), P("x2^2-4", 2)};
    const Cell c = std::get<Cell>(construct_cell_pd(VarOrder::standard(2), ps, Q({"1", "0"}), Heuristic::BC_PD));
    const PdRecord* r = record(c, N("x1*x2^2+1"));
    ASSERT_TRUE(r);
    EXPECT_EQ(r->status, PdStatus::LdcfNeededNoRoots);
}

TEST(Projective, ClassicalHeuristicRejected) {
    EXPECT_THROW(construct_cell_pd(VarOrder::standard(2), example1(), Q({"1/4", "-7/10"}), Heuristic::BC), DomainError);
}

TEST(Projective, Deterministic) {
    for (auto h : {Heuristic::BC_PD, Heuristic::LDB_PD}) {
        auto a = construct(VarOrder::standard(2), example1(), Q({"1/4", "-7/10"}), h);
        auto b = construct(VarOrder::standard(2), example1(), Q({"1/4", "-7/10"}), h);
        EXPECT_TRUE(std::get<Cell>(a) == std::get<Cell>(b));
    }
}

TEST(Projective, ApplicabilityRatio) {
    CounterSet st;
    EXPECT_FALSE(pd_applicability_ratio(st));
    st.ldcfs_omitted = 1;
    st.pd_blocked_unbounded = 2;
    st.pd_blocked_no_pairing = 1;
    EXPECT_EQ(*pd_applicability_ratio(st), Rational(1, 4));
}
