#include "skit/geometry.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace skit;

namespace {

SchubertCondition C(int n, std::vector<int> a) { return SchubertCondition(n, std::move(a)); }

// '*' var, '1' one, '0' zero
void expect_shape(const CoordPattern& p, const std::vector<std::string>& rows)
{
    ASSERT_EQ(p.rows, rows.size());
    for (std::size_t i = 0; i < p.rows; ++i) {
        ASSERT_EQ(p.cols, rows[i].size());
        for (std::size_t j = 0; j < p.cols; ++j) {
            auto k = p.at(i, j).kind;
            char c = k == CoordPattern::Kind::Var ? '*' : k == CoordPattern::Kind::One ? '1' : '0';
            EXPECT_EQ(c, rows[i][j]) << "at " << i << "," << j;
        }
    }
}

std::vector<SchubertCondition> all_conditions(int k, int n)
{
    std::vector<SchubertCondition> out;
    for_each_condition(k, n, [&](const SchubertCondition& c) { out.push_back(c); });
    return out;
}

} // namespace

TEST(Patterns, GrassmannianChart)
{
    expect_shape(pattern_grassmannian(C(7, {2, 5, 7})), {"*1**0*0", "*0**1*0", "*0**0*1"});
    expect_shape(pattern_grassmannian(C(5, {1, 2})), {"10***", "01***"});
    for (int n = 2; n <= 6; ++n)
        for (int k = 1; k < n; ++k)
            for (auto& a : all_conditions(k, n)) EXPECT_EQ(pattern_grassmannian(a).nvars, std::size_t(k * (n - k)));
}

TEST(Patterns, SchubertChart)
{
    expect_shape(pattern_schubert(C(7, {2, 5, 7})), {"*100000", "*0**100", "*0**0*1"});
    EXPECT_EQ(pattern_schubert(C(6, {1, 2, 3})).nvars, 0u);
    for (int n = 2; n <= 6; ++n)
        for (int k = 1; k < n; ++k)
            for (auto& a : all_conditions(k, n))
                EXPECT_EQ(static_cast<int>(pattern_schubert(a).nvars) + codim(a), k * (n - k));
}

TEST(Patterns, PairChart)
{
    expect_shape(pattern_pair(C(9, {2, 5, 7, 9}), C(9, {4, 5, 7, 8})),
                 {"010000000", "00**10000", "0000**100", "00000***1"});
    expect_shape(pattern_pair(C(4, {2, 4}), C(4, {2, 4})), {"*100", "00*1"});
    EXPECT_THROW(pattern_pair(C(4, {1, 2}), C(4, {1, 2})), std::invalid_argument);

    // variable count against k(n-k) - |α| - |β| on all admissible pairs
    int checked = 0;
    for (int n = 2; n <= 6; ++n)
        for (int k = 1; k < n; ++k) {
            auto all = all_conditions(k, n);
            for (auto& a : all)
                for (auto& b : all) {
                    bool ok = true;
                    for (int i = 1; i <= k; ++i) ok = ok && a[i] + b[k + 1 - i] >= n + 1;
                    if (!ok) {
                        EXPECT_THROW(pattern_pair(a, b), std::invalid_argument);
                        continue;
                    }
                    auto p = pattern_pair(a, b);
                    std::size_t vars = 0;
                    for (auto& e : p.grid) vars += e.kind == CoordPattern::Kind::Var;
                    EXPECT_EQ(vars, p.nvars);
                    EXPECT_EQ(static_cast<int>(p.nvars), k * (n - k) - codim(a) - codim(b));
                    ++checked;
                }
        }
    EXPECT_GT(checked, 100);
}

TEST(Patterns, DualCharts)
{
    expect_shape(pattern_dual_pair(C(7, {2, 4, 5, 7}), C(7, {3, 4, 6, 7})),
                 {"0001", "000*", "001*", "01*0", "0*00", "1*00", "*000"});
    auto a = C(6, {2, 5});
    auto ad = dual(a);
    EXPECT_EQ(ad, C(6, {1, 3, 4, 6}));
    auto hp = pattern_dual(ad);
    expect_shape(hp, {"0001", "000*", "0010", "0100", "0***", "1000"});

    // the two charts are null spaces of each other once signs are chosen
    auto sp = pattern_schubert(a);
    ASSERT_EQ(sp.nvars, hp.nvars);
    std::mt19937_64 rng(5);
    std::vector<Rational> v(sp.nvars);
    for (auto& x : v) x = skit::testing::small_rational(rng);
    QMat m = sp.fill(v);
    auto hpos = hp.var_positions();
    // a=(0,0) b=(1,0) c=(1,2) d=(1,3); hat: -a at (1,3), -d (4,1), -c (4,2), -b (4,3)
    auto val = [&](std::size_t r, std::size_t c) { return m(r, c); };
    std::vector<Rational> w(hp.nvars);
    for (std::size_t id = 0; id < hp.nvars; ++id) {
        auto [r, c] = hpos[id];
        if (r == 1 && c == 3) w[id] = -val(0, 0);
        else if (r == 4 && c == 1) w[id] = -val(1, 3);
        else if (r == 4 && c == 2) w[id] = -val(1, 2);
        else w[id] = -val(1, 0);
    }
    QMat prod = m * hp.fill(w);
    for (auto& x : prod.a) EXPECT_TRUE(is_zero(x));

    for (int n = 3; n <= 6; ++n)
        for (int k = 1; k < n; ++k)
            for (auto& c : all_conditions(k, n)) {
                auto d = dual(c);
                EXPECT_EQ(pattern_dual(d).nvars, std::size_t(dimension(d)));
            }
}

TEST(Patterns, Instantiate)
{
    auto p = pattern_pair(C(4, {2, 4}), C(4, {2, 4}));
    auto m = p.instantiate<Rational>(3, 1);
    EXPECT_EQ(to_string(m(0, 0), default_names(3)), "x2");
    EXPECT_EQ(to_string(m(1, 2), default_names(3)), "x3");
    EXPECT_TRUE(m(0, 1) == QPoly(3, Rational(1)));
    EXPECT_TRUE(m(1, 0).is_zero());
    EXPECT_THROW(p.fill(std::vector<Rational>{1}), std::invalid_argument);
}

TEST(Osculation, Basis)
{
    auto b = osculating_basis(OsculationPoint::at(GaussianRational(1)), 4);
    EXPECT_EQ(b(1, 0), GaussianRational(0));
    EXPECT_EQ(b(1, 1), GaussianRational(1));
    EXPECT_EQ(b(1, 2), GaussianRational(2));
    EXPECT_EQ(b(1, 3), GaussianRational(3));
    EXPECT_EQ(b(3, 3), GaussianRational(6));

    // t=0: diagonal with factorials, so F(0) is the standard flag
    auto z = osculating_basis(OsculationPoint::at(GaussianRational(0)), 5);
    long f = 1;
    for (std::size_t i = 0; i < 5; ++i) {
        if (i) f *= static_cast<long>(i);
        for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(z(i, j), GaussianRational(i == j ? f : 0));
    }
    auto inf = osculating_basis(OsculationPoint::infinity(), 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(inf(i, j), GaussianRational(i + j == 2 ? 1 : 0));

    // row 1 is the curve point
    auto t = parse_point("1/2+3i");
    auto g = osculating_basis(t, 5);
    GaussianRational pw(1);
    for (std::size_t c = 0; c < 5; ++c, pw *= t.t) EXPECT_EQ(flag_slice(g, 1)(0, c), pw);
    EXPECT_EQ(flag_slice(g, 5).a, g.a);
    EXPECT_THROW(flag_slice(g, 0), std::out_of_range);
    EXPECT_THROW(flag_slice(g, 6), std::out_of_range);
}

TEST(Osculation, SliceRankAndConjugation)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        GaussianRational t(skit::testing::small_rational(rng), skit::testing::small_rational(rng));
        int n = 3 + trial % 4;
        auto b = osculating_basis(OsculationPoint::at(t), n);
        for (std::size_t i = 1; i <= static_cast<std::size_t>(n); ++i) EXPECT_EQ(rank(flag_slice(b, i)), i);
        auto bc = osculating_basis(conj(OsculationPoint::at(t)), n);
        for (std::size_t e = 0; e < b.a.size(); ++e) EXPECT_EQ(bc.a[e], conj(b.a[e]));
    }
    EXPECT_TRUE(conj(OsculationPoint::infinity()).infinite);
}

TEST(Osculation, PointLiterals)
{
    EXPECT_TRUE(parse_point("inf").infinite);
    EXPECT_EQ(parse_point("3/2").t, GaussianRational(Rational(3, 2)));
    EXPECT_EQ(parse_point("-1/3-1/2i").t, GaussianRational(Rational(-1, 3), Rational(-1, 2)));
    EXPECT_EQ(to_string(parse_point("1+2i")), "1+2i");
    EXPECT_EQ(to_string(parse_point("inf")), "inf");
    auto pts = parse_points("0,inf,1,2");
    ASSERT_EQ(pts.size(), 4u);
    EXPECT_TRUE(pts[1].infinite);
    EXPECT_FALSE(parse_point("i").is_real());
    EXPECT_THROW(parse_point("x"), std::invalid_argument);
}

TEST(Osculation, SchubertMembershipAtZero)
{
    // members of X_α(0) from the chart satisfy every rank condition
    std::mt19937_64 rng(3);
    const OsculationPoint zero = OsculationPoint::at(GaussianRational(0));
    for (int n = 3; n <= 6; ++n)
        for (int k = 1; k < n; ++k)
            for (auto& a : all_conditions(k, n)) {
                auto p = pattern_schubert(a);
                std::vector<Rational> v(p.nvars);
                for (auto& x : v) x = skit::testing::small_rational(rng);
                GMat h = to_gaussian(p.fill(v));
                GMat F = osculating_basis(zero, n);
                for (int i = 1; i <= k; ++i) {
                    GMat s = h.stack(flag_slice(F, static_cast<std::size_t>(a[i])));
                    EXPECT_LE(rank(s), static_cast<std::size_t>(k + a[i] - i)) << a.str();
                }
            }
}

TEST(Osculation, AdaptedBasis)
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 15; ++trial) {
        int n = 3 + trial % 4;
        auto s = OsculationPoint::at(GaussianRational(skit::testing::small_rational(rng)));
        auto t = OsculationPoint::at(GaussianRational(skit::testing::small_rational(rng), Rational(trial % 3)));
        if (s == t) continue;
        GMat F = osculating_basis(s, n), G = osculating_basis(t, n);
        GMat f = pair_basis(s, t, n);
        auto N = static_cast<std::size_t>(n);
        EXPECT_EQ(rank(f), N);
        for (std::size_t i = 1; i <= N; ++i) {
            GMat one(1, N);
            for (std::size_t c = 0; c < N; ++c) one(0, c) = f(i - 1, c);
            EXPECT_EQ(rank(flag_slice(F, i).stack(one)), i);
            EXPECT_EQ(rank(flag_slice(G, N + 1 - i).stack(one)), N + 1 - i);
        }
    }
    auto zero = OsculationPoint::at(GaussianRational(0));
    EXPECT_EQ(pair_basis(zero, OsculationPoint::infinity(), 4).a, GMat::identity(4).a);
    EXPECT_THROW(pair_basis(zero, zero, 4), std::invalid_argument);
}
