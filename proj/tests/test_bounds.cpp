#include <skit/bounds.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace skit;

namespace {

SchubertCondition C(int n, std::vector<int> a) { return {n, std::move(a)}; }

long rect_signed(int k, int n)
{
    long long s = signed_syt_sum(rectangle(k, n - k));
    return static_cast<long>(s < 0 ? -s : s);
}

SchubertProblem repeat(int k, int n, std::vector<std::pair<SchubertCondition, int>> parts)
{
    std::vector<SchubertCondition> cs;
    for (auto& [c, a] : parts)
        for (int i = 0; i < a; ++i) cs.push_back(c);
    return {k, n, cs};
}

} // namespace

TEST(Sigma, EvenNIsZero)
{
    for (int n = 2; n <= 10; n += 2)
        for (int k = 1; k < n; ++k) EXPECT_EQ(sigma(k, n), 0);
}

TEST(Sigma, HandValues)
{
    // 12/12, 2880/1440 worked by hand from the factorial quotient
    EXPECT_EQ(sigma(2, 5), 1);
    EXPECT_EQ(sigma(2, 7), 2);
    for (int n = 3; n <= 11; n += 2) EXPECT_EQ(sigma(1, n), 1);
    EXPECT_EQ(sigma(3, 5), sigma(2, 5));
}

TEST(Sigma, MatchesSignedRectangleOracle)
{
    for (int n = 3; n <= 13; n += 2)
        for (int k = 1; k < n; ++k)
            if (k * (n - k) <= 12) EXPECT_EQ(sigma(k, n), rect_signed(k, n)) << k << "," << n;
}

TEST(EgSs, Examples)
{
    auto box5 = hypersurface_condition(2, 5);
    EXPECT_EQ(eg_ss_bound(box5, box5).value, 1);
    EXPECT_EQ(eg_ss_bound(box5, box5).value, sigma(2, 5));
    // ω and box in Gr(3,6): shape is a column of 2 next to a row of 2, i.e. λ(2,2)
    auto om = omega_condition(3, 6), box6 = hypersurface_condition(3, 6);
    EXPECT_EQ(eg_ss_bound(om, box6).value, 2);
    // 332 vs box in Gr(4,8): the skew shape has 3 boxes above the diagonal, so the bound is 0
    auto s332 = from_diagram(4, 8, {3, 3, 2});
    EXPECT_EQ(s332, C(8, {2, 3, 5, 8}));
    auto shape = skew_shape(hypersurface_condition(4, 8), s332);
    EXPECT_EQ(shape.box_count(), 7);
    int above = 0;
    for (auto [r, c] : shape.boxes()) above += c > r;
    EXPECT_EQ(above % 2, 1);
    EXPECT_EQ(eg_ss_bound(hypersurface_condition(4, 8), s332).value, 0);
    EXPECT_THROW(eg_ss_bound(C(5, {1, 2}), C(5, {1, 2})), std::invalid_argument);
}

TEST(EgSs, SigmaEqualsBoxBoxOnRectangles)
{
    for (int n = 3; n <= 13; n += 2)
        for (int k = 1; k < n; ++k) {
            if (k * (n - k) > 12) continue;
            auto box = hypersurface_condition(k, n);
            // d(box')/d(box) is the rectangle minus its corner; its signed count equals the rectangle's
            EXPECT_EQ(eg_ss_bound(box, box).value, sigma(k, n)) << k << "," << n;
        }
}

TEST(Factorization, KnownValues)
{
    EXPECT_EQ(factorization_count(2, 8, 4), 4);
    EXPECT_EQ(factorization_count(4, 8, 2), 4);
    EXPECT_EQ(factorization_count(4, 8, 4), 8);
    EXPECT_EQ(factorization_count(4, 8, 6), 20);
    std::vector<long> g510;
    for (int R = 0; R <= 8; R += 2) g510.push_back(factorization_count(5, 10, R).get_si());
    EXPECT_EQ(g510, (std::vector<long>{6, 6, 14, 30, 70}));
    for (int R = 0; R <= 6; R += 2) EXPECT_EQ(factorization_count(2, 8, R), R);
    EXPECT_THROW(factorization_count(4, 8, 3), std::invalid_argument);
}

TEST(Factorization, BruteForceDivisorOracle)
{
    // count real monic divisors of degree k-1: choose a sub-multiset of R real
    // roots and (n-2-R)/2 conjugate pairs, pairs taken whole
    for (int n = 4; n <= 10; ++n)
        for (int k = 2; k < n - 1; ++k)
            for (int R = (n - 2) % 2; R <= n - 2; R += 2) {
                int pairs = (n - 2 - R) / 2;
                long count = 0;
                for (unsigned rm = 0; rm < (1u << R); ++rm)
                    for (unsigned pm = 0; pm < (1u << pairs); ++pm)
                        if (__builtin_popcount(rm) + 2 * __builtin_popcount(pm) == k - 1) ++count;
                EXPECT_EQ(factorization_count(k, n, R), count);
            }
}

TEST(GapSet, Examples)
{
    EXPECT_EQ(gap_set(4, 8, 1), (std::set<long>{0, 4, 8, 20}));
    EXPECT_EQ(gap_set(2, 8, 7), (std::set<long>{6}));
    for (int r = 1; r <= 9; r += 2) EXPECT_GE(*gap_set(5, 10, r).begin(), 6);
    for (int r = 1; r <= 7; r += 2)
        for (long v : gap_set(4, 8, r)) EXPECT_TRUE(v == 0 || v == 4 || v == 8 || v == 20);
    EXPECT_EQ(gap_set(3, 6, 5), (std::set<long>{6}));
    EXPECT_EQ(gap_set(3, 6, 3), (std::set<long>{2, 6}));
    EXPECT_EQ(gap_set(3, 6, 1), (std::set<long>{2, 6}));
    EXPECT_THROW(gap_set(4, 8, 2), std::invalid_argument);
}

TEST(Lagrangian, Binomial)
{
    EXPECT_EQ(*lagrangian_binomial(5, 10), 6);
    EXPECT_EQ(*lagrangian_binomial(3, 6), 2);
    EXPECT_FALSE(lagrangian_binomial(4, 8).has_value());
    EXPECT_FALSE(lagrangian_binomial(3, 7).has_value());
    // equals the minimum factorization count for the same family
    for (auto [k, n] : {std::pair{3, 6}, {5, 10}, {3, 8}, {5, 12}}) {
        Integer lo = factorization_count(k, n, (n - 2) % 2);
        for (int R = (n - 2) % 2; R <= n - 2; R += 2) lo = std::min(lo, factorization_count(k, n, R));
        EXPECT_EQ(lo, *lagrangian_binomial(k, n)) << k << "," << n;
    }
}

TEST(Mod4, KnownExamples)
{
    auto box8 = hypersurface_condition(4, 8);
    auto s333 = from_diagram(4, 8, {3, 3, 3});
    EXPECT_EQ(s333, C(8, {2, 3, 4, 8}));
    auto r = mod4_check(repeat(4, 8, {{s333, 1}, {box8, 7}}));
    EXPECT_EQ(r.prop_inequality_value, 3);
    EXPECT_TRUE(r.applies_prop);

    auto s332 = from_diagram(4, 8, {3, 3, 2});
    r = mod4_check(repeat(4, 8, {{s332, 1}, {box8, 8}}));
    EXPECT_EQ(r.prop_inequality_value, 3);
    EXPECT_TRUE(r.applies_prop);
    EXPECT_TRUE(r.applies_conjecture);

    auto s21 = from_diagram(3, 6, {2, 1});
    auto box6 = hypersurface_condition(3, 6);
    r = mod4_check(repeat(3, 6, {{s21, 2}, {box6, 3}}));
    EXPECT_EQ(r.conjecture_inequality_value, 1);
    EXPECT_FALSE(r.applies_conjecture);
    EXPECT_FALSE(r.applies_prop);
}

TEST(Mod4, Preconditions)
{
    auto box = hypersurface_condition(3, 6);
    EXPECT_THROW(mod4_check(repeat(3, 6, {{C(6, {1, 5, 6}), 1}, {box, 5}})), std::invalid_argument);
    EXPECT_THROW(mod4_check(repeat(3, 7, {{hypersurface_condition(3, 7), 12}})), std::invalid_argument);
    EXPECT_THROW(mod4_check(repeat(3, 6, {{trivial_condition(3, 6), 1}, {box, 9}})), std::invalid_argument);
}

TEST(Mod4, ResidueOnlyWhenApplicable)
{
    auto om = omega_condition(3, 6), box = hypersurface_condition(3, 6);
    auto r = mod4_check(repeat(3, 6, {{om, 1}, {box, 5}}), 0, 0, 6);
    EXPECT_TRUE(r.applies_prop);
    EXPECT_EQ(r.predicted_residue, 2);
}

TEST(Mod4, PropImpliesConjectureOnRandomSymmetricProblems)
{
    std::mt19937_64 rng(99);
    int checked = 0;
    for (int trial = 0; trial < 500; ++trial) {
        int k = 2 + static_cast<int>(rng() % 3);
        int n = 2 * k;
        std::vector<SchubertCondition> sym;
        for_each_condition(k, n, [&](const SchubertCondition& c) {
            if (!is_trivial(c) && is_symmetric(c)) sym.push_back(c);
        });
        int m = 2 + static_cast<int>(rng() % 6);
        std::vector<SchubertCondition> cs;
        for (int i = 0; i < m; ++i) cs.push_back(sym[rng() % sym.size()]);
        auto r = mod4_check(SchubertProblem(k, n, cs));
        if (r.applies_prop) {
            EXPECT_TRUE(r.applies_conjecture);
            ++checked;
        }
    }
    EXPECT_GT(checked, 0);
}
