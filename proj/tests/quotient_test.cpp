#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "latca/quotient.hpp"

using namespace latca;

namespace {

Lattice line(i64 n) { return make_lattice(1, {{n}}); }

CellularAutomaton random_endo_ca(std::mt19937_64& rng, int dim, i64 alpha_n, i64 span) {
    Alphabet a = finite_alphabet(alpha_n);
    std::set<GroupElement> mem;
    i64 arity = 1 + (i64)(rng() % 3);
    while ((i64)mem.size() < arity) {
        GroupElement g((size_t)dim);
        for (auto& c : g) c = (i64)(rng() % (std::uint64_t)(2 * span + 1)) - span;
        mem.insert(g);
    }
    std::vector<GroupElement> memory(mem.begin(), mem.end());
    i64 tsize = checked_pow(alpha_n, arity);
    std::vector<Sym> entries((size_t)tsize);
    for (auto& e : entries) e = (Sym)(rng() % (std::uint64_t)alpha_n);
    return make_ca(dim, memory, make_table_rule(a, a, (int)arity, entries));
}

TEST(Quotient, IdentityAndShiftArePermutations) {
    Alphabet a = finite_alphabet(3);
    for (i64 n = 1; n <= 6; ++n) {
        QuotientMap qi = make_quotient(identity_ca(a), line(n));
        QuotientMap qs = make_quotient(shift_ca(a, {2}), line(n));
        EXPECT_TRUE(quotient_injective(qi));
        EXPECT_TRUE(quotient_surjective(qi));
        EXPECT_TRUE(quotient_injective(qs));
        EXPECT_TRUE(quotient_surjective(qs));
        for (i64 x = 0; x < *qi.points; ++x) EXPECT_EQ(qi.eval(x), x);
    }
}

TEST(Quotient, MajorityCollapsesStates) {
    QuotientMap q = make_quotient(majority_ca(), line(3));
    // 100, 010, 001 all map to 000
    EXPECT_EQ(q.eval(4), 0);
    EXPECT_EQ(q.eval(2), 0);
    EXPECT_EQ(q.eval(1), 0);
    EXPECT_EQ(q.eval(0), 0);
    EXPECT_FALSE(quotient_injective(q));
    EXPECT_FALSE(quotient_surjective(q));
}

TEST(Quotient, MarkerQuotientsAreInvolutions) {
    CellularAutomaton m = hedlund_marker_ca();
    for (i64 n = 1; n <= 8; ++n) {
        QuotientMap q = make_quotient(m, line(n));
        EXPECT_TRUE(quotient_injective(q));
        EXPECT_TRUE(quotient_surjective(q));
        for (i64 x = 0; x < *q.points; ++x) EXPECT_EQ(q.eval(q.eval(x)), x);
    }
    // hand-checked three-cell orbit: 110<->010, 100<->101, 001<->011
    QuotientMap q3 = make_quotient(m, line(3));
    EXPECT_EQ(q3.eval(6), 2);
    EXPECT_EQ(q3.eval(2), 6);
    EXPECT_EQ(q3.eval(4), 5);
    EXPECT_EQ(q3.eval(1), 3);
}

TEST(Quotient, EmbedCommutesWithDynamics) {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        CellularAutomaton ca = random_endo_ca(rng, 1, 2 + (i64)(rng() % 2), 2);
        for (i64 n = 1; n <= 5; ++n) {
            QuotientMap q = make_quotient(ca, line(n));
            EXPECT_TRUE(quotient_commutes(q, 128, rng()));
        }
    }
    for (int trial = 0; trial < 6; ++trial) {
        CellularAutomaton ca = random_endo_ca(rng, 2, 2, 1);
        for (const Lattice& h : sublattices_up_to_index(2, 6)) {
            QuotientMap q = make_quotient(ca, h);
            EXPECT_TRUE(quotient_commutes(q, 64, rng()));
        }
    }
}

TEST(Quotient, RespectsComposition) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 8; ++trial) {
        CellularAutomaton f = random_endo_ca(rng, 1, 2, 1);
        CellularAutomaton g = random_endo_ca(rng, 1, 2, 1);
        CellularAutomaton fg = compose(f, g);
        for (i64 n = 2; n <= 4; ++n) {
            QuotientMap qf = make_quotient(f, line(n));
            QuotientMap qg = make_quotient(g, line(n));
            QuotientMap qfg = make_quotient(fg, line(n));
            for (i64 x = 0; x < *qfg.points; ++x)
                EXPECT_EQ(qfg.eval(x), qf.eval(qg.eval(x)));
        }
    }
}

TEST(Quotient, ScanFindsNoSurjunctivityViolation) {
    ScanReport r1 = surjunctivity_scan(hedlund_marker_ca(), 6);
    EXPECT_EQ(r1.violations, 0);
    EXPECT_EQ(r1.skipped, 0);
    for (const ScanRow& row : r1.rows) {
        EXPECT_TRUE(*row.injective);
        EXPECT_TRUE(*row.surjective);
    }
    ScanReport r2 = surjunctivity_scan(majority_ca(), 6);
    EXPECT_EQ(r2.violations, 0);
    bool saw_noninjective = false;
    for (const ScanRow& row : r2.rows)
        if (row.injective && !*row.injective) saw_noninjective = true;
    EXPECT_TRUE(saw_noninjective);
    ScanReport r3 = surjunctivity_scan(game_of_life_ca(), 4);
    EXPECT_EQ(r3.violations, 0);
    EXPECT_EQ((i64)r3.rows.size(), 1 + 3 + 4 + 7);  // sigma(k) for k = 1..4
}

TEST(Quotient, BudgetPathSamplesForCollisions) {
    // index 30 over a binary alphabet: 2^30 states exceeds the budget
    Alphabet b2 = finite_alphabet(2);
    std::vector<Sym> andr(8, 0);
    andr[7] = 1;
    CellularAutomaton conj =
        make_ca(1, {{-1}, {0}, {1}}, make_table_rule(b2, b2, 3, andr));
    QuotientMap q = make_quotient(conj, line(30));
    EXPECT_THROW(quotient_points(q), budget_error);
    auto hit = find_collision_sampled(q, 4096, 5);
    ASSERT_TRUE(hit.has_value());
    EXPECT_NE(hit->first, hit->second);
    EXPECT_EQ(q.eval(hit->first), q.eval(hit->second));
    QuotientMap qid = make_quotient(identity_ca(finite_alphabet(2)), line(30));
    EXPECT_FALSE(find_collision_sampled(qid, 4096, 5).has_value());
}

TEST(Quotient, PatternEmbedding) {
    Alphabet a = finite_alphabet(2);
    PeriodicConfig c = periodic_point_through_pattern(a, {-1, 2}, {1, 4}, {1, 0, 0, 0, 1, 0, 0, 0, 1});
    EXPECT_EQ(c.at({-1, 2}), 1);
    EXPECT_EQ(c.at({0, 3}), 1);
    EXPECT_EQ(c.at({1, 4}), 1);
    EXPECT_EQ(c.at({0, 2}), 0);
    EXPECT_EQ(c.at({2, 2}), 1);   // wraps mod 3 in the first coordinate
    EXPECT_EQ(c.at({-1, 5}), 1);  // wraps mod 3 in the second
    EXPECT_THROW(periodic_point_through_pattern(a, {0}, {2}, {1, 0}), std::invalid_argument);
}

}  // namespace
