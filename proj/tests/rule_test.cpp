#include "latca/rule.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace latca;

namespace {

const Alphabet kBin = finite_alphabet(2);

LocalRule majority_rule() {
    std::vector<Sym> t(8);
    for (i64 i = 0; i < 8; ++i) {
        int ones = (int)((i & 1) + ((i >> 1) & 1) + ((i >> 2) & 1));
        t[(size_t)i] = ones >= 2 ? 1 : 0;
    }
    return make_table_rule(kBin, kBin, 3, t);
}

// discrete averaging difference over F_5 with both neighbors:
// y(0) - inv(2)*(y(-1)+y(1)) = y(0) + 2*(y(-1)+y(1)) since inv(2)=3, -3=2
LocalRule laplacian_f5() {
    Alphabet f5 = vector_alphabet(5, 1, 1);
    return make_linear_rule(f5, f5, 3, {{{2}}, {{1}}, {{2}}});
}

}  // namespace

TEST(Rule, TableEvalMixedRadix) {
    LocalRule maj = majority_rule();
    EXPECT_EQ(eval_rule(maj, {1, 0, 1}), 1);
    EXPECT_EQ(eval_rule(maj, {0, 1, 0}), 0);
    EXPECT_EQ(eval_rule(maj, {1, 1, 0}), 1);
    EXPECT_EQ(tuple_index({1, 0, 1}, 2), 5);
    EXPECT_EQ(tuple_decode(5, 3, 2), (std::vector<Sym>{1, 0, 1}));
}

TEST(Rule, EmptyArityTable) {
    LocalRule c = make_table_rule(kBin, finite_alphabet(3), 0, {2});
    EXPECT_EQ(eval_rule(c, {}), 2);
}

TEST(Rule, LinearEvalMatchesHandFormula) {
    LocalRule lap = laplacian_f5();
    for (Sym a = 0; a < 5; ++a)
        for (Sym b = 0; b < 5; ++b)
            for (Sym c = 0; c < 5; ++c) {
                i64 expect = pos_mod(b - 3 * (a + c), 5);
                ASSERT_EQ(eval_rule(lap, {a, b, c}), (Sym)expect);
            }
}

TEST(Rule, LowerToTableAgrees) {
    LocalRule lap = laplacian_f5();
    LocalRule tab = lower_to_table(lap);
    ASSERT_EQ(tab.kind(), RuleKind::Table);
    for (i64 idx = 0; idx < 125; ++idx) {
        auto args = tuple_decode(idx, 3, 5);
        ASSERT_EQ(eval_rule(tab, args), eval_rule(lap, args));
    }
}

TEST(Rule, PolyEvalSquareDifference) {
    // f(y0, y1) = y1 - y0^2 over F_3
    Alphabet f3 = vector_alphabet(3, 1, 1);
    PolyTerm sq{2, {2, 0}};   // -1 * y0^2
    PolyTerm lin{1, {0, 1}};  // y1
    LocalRule r = make_poly_rule(f3, f3, 2, {{sq, lin}});
    for (Sym a = 0; a < 3; ++a)
        for (Sym b = 0; b < 3; ++b) ASSERT_EQ(eval_rule(r, {a, b}), (Sym)pos_mod(b - a * a, 3));
}

TEST(Rule, ZeroLinearRuleGivesZero) {
    Alphabet z4 = module_alphabet(2, 2, 1);
    LocalRule z = make_linear_rule(z4, z4, 2, {{{0}}, {{0}}});
    for (Sym a = 0; a < 4; ++a)
        for (Sym b = 0; b < 4; ++b) ASSERT_EQ(eval_rule(z, {a, b}), 0);
}

TEST(Rule, MajorityIsNotLinear) {
    // claimed linear over F_2: fails because
    // majority(1,0,0) + majority(0,1,0) != majority(1,1,0)
    Alphabet f2 = vector_alphabet(2, 1, 1);
    LocalRule maj = majority_rule();
    LocalRule maj_f2 = make_table_rule(f2, f2, 3, std::get<TableBody>(maj.body).entries);
    EXPECT_FALSE(is_morphism(maj_f2, RuleKind::Linear));
    EXPECT_TRUE(is_morphism(maj_f2, RuleKind::Table));
    EXPECT_TRUE(is_morphism(maj_f2, RuleKind::Poly));
}

TEST(Rule, SquareMapIsNotLinearOverF3) {
    Alphabet f3 = vector_alphabet(3, 1, 1);
    LocalRule sq = make_table_rule(f3, f3, 1, {0, 1, 1});
    EXPECT_FALSE(is_morphism(sq, RuleKind::Linear));
    // but x -> 2x is linear
    LocalRule dbl = make_table_rule(f3, f3, 1, {0, 2, 1});
    EXPECT_TRUE(is_morphism(dbl, RuleKind::Linear));
}

TEST(Rule, LoweredLinearStaysLinear) {
    EXPECT_TRUE(is_morphism(lower_to_table(laplacian_f5()), RuleKind::Linear));
}

TEST(Rule, PolyNeedsFieldAlphabets) {
    LocalRule maj = majority_rule();
    EXPECT_FALSE(is_morphism(maj, RuleKind::Poly));    // finite-set alphabet
    EXPECT_FALSE(is_morphism(maj, RuleKind::Linear));  // no scalar structure
}

TEST(Rule, LinearityLawsExhaustiveSmall) {
    std::mt19937_64 rng(5);
    Alphabet f3 = vector_alphabet(3, 1, 1);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::vector<std::vector<Sym>>> mats = {{{(Sym)(rng() % 3)}},
                                                           {{(Sym)(rng() % 3)}}};
        LocalRule r = make_linear_rule(f3, f3, 2, mats);
        for (Sym a = 0; a < 3; ++a)
            for (Sym b = 0; b < 3; ++b)
                for (Sym c = 0; c < 3; ++c)
                    for (Sym d = 0; d < 3; ++d) {
                        // additivity in the argument tuple
                        Sym lhs = eval_rule(r, {(Sym)((a + c) % 3), (Sym)((b + d) % 3)});
                        Sym rhs = (Sym)((eval_rule(r, {a, b}) + eval_rule(r, {c, d})) % 3);
                        ASSERT_EQ(lhs, rhs);
                    }
    }
}

TEST(Rule, PermuteArgsConsistent) {
    std::mt19937_64 rng(9);
    Alphabet a3 = finite_alphabet(3);
    for (int trial = 0; trial < 50; ++trial) {
        int arity = 1 + (int)(rng() % 4);
        i64 n = checked_pow(3, arity);
        std::vector<Sym> entries((size_t)n);
        for (auto& e : entries) e = (Sym)(rng() % 3);
        LocalRule f = make_table_rule(a3, a3, arity, entries);
        std::vector<int> perm(arity);
        for (int i = 0; i < arity; ++i) perm[(size_t)i] = i;
        for (int i = arity - 1; i > 0; --i) std::swap(perm[(size_t)i], perm[rng() % (size_t)(i + 1)]);
        LocalRule g = permute_args(f, perm);
        for (i64 idx = 0; idx < n; ++idx) {
            auto b = tuple_decode(idx, arity, 3);
            std::vector<Sym> c((size_t)arity);
            for (int i = 0; i < arity; ++i) c[(size_t)i] = b[(size_t)perm[(size_t)i]];
            ASSERT_EQ(eval_rule(g, b), eval_rule(f, c));
        }
    }
}

TEST(Rule, PermuteLinearAndPolyConsistent) {
    Alphabet f3 = vector_alphabet(3, 1, 1);
    LocalRule lin = make_linear_rule(f3, f3, 3, {{{1}}, {{2}}, {{0}}});
    std::vector<int> perm = {2, 0, 1};
    LocalRule plin = permute_args(lin, perm);
    PolyTerm t1{1, {2, 0, 1}};
    LocalRule poly = make_poly_rule(f3, f3, 3, {{t1}});
    LocalRule ppoly = permute_args(poly, perm);
    for (i64 idx = 0; idx < 27; ++idx) {
        auto b = tuple_decode(idx, 3, 3);
        std::vector<Sym> c = {b[2], b[0], b[1]};
        ASSERT_EQ(eval_rule(plin, b), eval_rule(lin, c));
        ASSERT_EQ(eval_rule(ppoly, b), eval_rule(poly, c));
    }
}

TEST(Rule, TableBudgetGuard) {
    Alphabet big = finite_alphabet(50);
    EXPECT_THROW(table_size(big, 4), budget_error);  // 6.25e6 over budget
    EXPECT_NO_THROW(table_size(big, 3));
}
