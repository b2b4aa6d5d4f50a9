#include "skit/solver.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace skit;

namespace {

QPoly P(const std::string& s, std::vector<std::string> names = {"x", "y"}) { return parse_poly(s, names); }

SchubertCondition C(int n, std::vector<int> a) { return SchubertCondition(n, std::move(a)); }

InstanceSpec four_lines(const std::string& pts)
{
    return {SchubertProblem{2, 4, std::vector<SchubertCondition>(4, C(4, {2, 4}))}, parse_points(pts)};
}

// every S-polynomial of the basis reduces to zero
void expect_groebner(const GroebnerBasis& G)
{
    for (std::size_t i = 0; i < G.generators.size(); ++i)
        for (std::size_t j = i + 1; j < G.generators.size(); ++j)
            EXPECT_TRUE(normal_form(G, s_polynomial(G.generators[i], G.generators[j], G.order)).is_zero())
                << to_string(G.generators[i]) << " / " << to_string(G.generators[j]);
}

// every input reduces to zero
void expect_contains(const GroebnerBasis& G, const std::vector<QPoly>& eqs)
{
    for (auto& e : eqs) EXPECT_TRUE(normal_form(G, e).is_zero()) << to_string(e);
}

bool proportional(const QUni& a, const QUni& b) { return a.degree() == b.degree() && a.monic() == b.monic(); }

// sign changes of f on a fine grid plus exact roots at grid points; f square-free
int bisection_count(const QUni& f)
{
    // Cauchy bound
    Rational bound = 0;
    for (auto& c : f.coefficients()) bound = std::max(bound, Rational(abs(c / f.leading())));
    bound += 1;
    const int steps = 4096;
    int roots = 0;
    Rational step = 2 * bound / steps;
    Rational prev_x = -bound;
    int prev = sgn(f(prev_x));
    for (int i = 1; i <= steps; ++i) {
        Rational x = -bound + step * i;
        int s = sgn(f(x));
        if (s == 0) {
            ++roots;
            prev_x = x + step / (1 << 20);
            prev = sgn(f(prev_x));
            continue;
        }
        if (prev != 0 && s != prev) {
            // refine: count sign changes by recursive subdivision
            std::vector<std::pair<Rational, Rational>> work{{prev_x, x}};
            int found = 0;
            while (!work.empty()) {
                auto [a, b] = work.back();
                work.pop_back();
                int sa = sgn(f(a)), sb = sgn(f(b));
                Rational m = (a + b) / 2;
                if (b - a < Rational(1, 1 << 20)) {
                    if (sa != sb) ++found;
                    continue;
                }
                int sm = sgn(f(m));
                if (sm == 0) {
                    ++found;
                    continue;
                }
                if (sa != sm) work.push_back({a, m});
                if (sm != sb) work.push_back({m, b});
            }
            roots += found;
        }
        prev = s;
        prev_x = x;
    }
    return roots;
}

} // namespace

TEST(Groebner, ShapeBasisUnchanged)
{
    auto G = groebner({P("x^2-1"), P("y-x")}, 2, TermOrder::Lex);
    ASSERT_EQ(G.generators.size(), 2u);
    EXPECT_EQ(G.generators[0], P("x^2-1"));
    EXPECT_EQ(G.generators[1], P("y-x"));
    expect_groebner(G);
    auto r = shape_check(G);
    EXPECT_TRUE(r.in_shape);
    EXPECT_TRUE(r.square_free);
    EXPECT_EQ(r.degree, 2);
    EXPECT_TRUE(proportional(r.eliminant, QUni({-1, 0, 1})));
    EXPECT_TRUE(proportional(eliminant(G), QUni({-1, 0, 1})));
}

TEST(Groebner, Inconsistent)
{
    auto G = groebner({P("x"), P("x-1")}, 2, TermOrder::Lex);
    EXPECT_TRUE(G.is_unit());
    auto r = shape_check(G);
    EXPECT_EQ(r.degree, 0);
}

TEST(Groebner, DoubleRoot)
{
    auto G = groebner({P("x^2"), P("y")}, 2, TermOrder::Lex);
    auto r = shape_check(G);
    EXPECT_TRUE(r.in_shape);
    EXPECT_FALSE(r.square_free);
    EXPECT_TRUE(proportional(r.eliminant, QUni({0, 0, 1})));
}

TEST(Groebner, NotZeroDimensional)
{
    auto G = groebner({P("x*y")}, 2, TermOrder::Lex);
    EXPECT_THROW(shape_check(G), NotZeroDimensional);
}

TEST(Groebner, ShapeFallbacks)
{
    // x1 does not separate the points (1,1),(1,2); x2 does
    auto G = groebner({P("x-1"), P("y^2-3*y+2")}, 2, TermOrder::Lex);
    auto r = shape_check(G);
    EXPECT_TRUE(r.in_shape);
    EXPECT_EQ(r.permutation_used, "x2 first");
    EXPECT_EQ(r.degree, 2);

    // four points on a grid: no coordinate separates, a linear form does
    auto H = groebner({P("x^2-1"), P("y^2-1")}, 2, TermOrder::GRevLex);
    auto s = shape_check(H);
    EXPECT_TRUE(s.in_shape);
    EXPECT_EQ(s.degree, 4);
    EXPECT_EQ(s.eliminant.degree(), 4);
    EXPECT_TRUE(s.square_free);
    EXPECT_NE(s.permutation_used.find('x'), std::string::npos);

    // a double point with a tangent direction: never cyclic for coordinates, but the form is
    auto D = groebner({P("x^2"), P("x*y"), P("y^2")}, 2, TermOrder::Lex);
    EXPECT_THROW(shape_check(D), NotInShape);
}

TEST(Groebner, RandomSystemsAgreeAcrossOrders)
{
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 12; ++trial) {
        std::size_t q = 2 + trial % 2;
        std::vector<QPoly> eqs;
        for (std::size_t i = 0; i < q; ++i) {
            auto p = skit::testing::random_poly(rng, q, 4, 2);
            p += QPoly::variable(q, i) * QPoly::variable(q, i) * Rational(1 + trial);
            eqs.push_back(p);
        }
        auto L = groebner(eqs, q, TermOrder::Lex);
        auto R = groebner(eqs, q, TermOrder::GRevLex);
        expect_groebner(L);
        expect_groebner(R);
        expect_contains(L, eqs);
        expect_contains(R, eqs);
        // same ideal: each basis reduces to zero modulo the other
        expect_contains(L, R.generators);
        expect_contains(R, L.generators);
        if (L.is_unit()) continue;
        QuotientRing ql(L), qr(R);
        EXPECT_EQ(ql.dimension(), qr.dimension());
        EXPECT_TRUE(proportional(eliminant(L), eliminant(R)));
        // primitive integer generators
        for (auto& g : L.generators)
            for (auto& [m, c] : g.terms()) EXPECT_EQ(c.get_den(), 1);
    }
}

TEST(Groebner, ShapeCoordinatesSatisfyIdeal)
{
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 6; ++trial) {
        std::vector<QPoly> eqs{skit::testing::random_poly(rng, 3, 3, 1) + P("x^2", {"x", "y", "z"}),
                               skit::testing::random_poly(rng, 3, 3, 1) + P("y^2", {"x", "y", "z"}),
                               skit::testing::random_poly(rng, 3, 3, 1) + P("z^2", {"x", "y", "z"})};
        auto G = groebner(eqs, 3, TermOrder::GRevLex);
        if (G.is_unit()) continue;
        auto r = shape_check(G);
        ASSERT_TRUE(r.in_shape);
        // each input vanishes after substituting x_i = g_i(u) modulo the eliminant
        for (auto& e : eqs) {
            QUni acc({}, "u");
            for (auto& [m, c] : e.terms()) {
                QUni t({c}, "u");
                for (std::size_t v = 0; v < 3; ++v)
                    for (int p = 0; p < m[v]; ++p) t = (t * r.coordinates[v]).divmod(r.eliminant).second;
                acc += t;
            }
            EXPECT_TRUE(acc.divmod(r.eliminant).second.is_zero());
        }
        // and u = Σ form_i g_i(u)
        QUni u({}, "u");
        for (std::size_t v = 0; v < 3; ++v) u += r.coordinates[v] * r.form[v];
        EXPECT_EQ(u.divmod(r.eliminant).second, QUni({0, 1}, "u"));
    }
}

TEST(Groebner, Budget)
{
    std::vector<QPoly> eqs;
    std::mt19937_64 rng(3);
    for (int i = 0; i < 4; ++i) eqs.push_back(skit::testing::random_poly(rng, 4, 6, 3));
    Budget b;
    b.max_pairs = 1;
    EXPECT_THROW(groebner(eqs, 4, TermOrder::Lex, b), BudgetExceeded);
    Budget t;
    t.max_seconds = 0;
    EXPECT_THROW(groebner(eqs, 4, TermOrder::Lex, t), BudgetExceeded);
}

TEST(Sturm, Examples)
{
    QUni f({-2, 0, 1});
    auto s = sturm(f);
    ASSERT_EQ(s.size(), 3u);
    std::vector<QUni> expect{QUni({-2, 0, 1}), QUni({0, 2}), QUni({2})};
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_TRUE(proportional(s[i], expect[i]));
        EXPECT_GT(sgn(s[i].leading()), 0); // positive multiples
    }
    EXPECT_EQ(count_real_roots(f, Rational(0), Rational(3)), 1);
    EXPECT_EQ(count_real_roots(QUni({0, -1, 0, 1})), 3);
    EXPECT_EQ(count_real_roots(QUni({1, 0, 1})), 0);
    EXPECT_THROW(count_real_roots(QUni({-1, 0, 1}), Rational(1), Rational(3)), std::domain_error);
    EXPECT_EQ(variation(s, Rational(0)), 1);
    auto sy = sylvester(QUni({-1, 0, 1}), QUni({-1, 1}));
    EXPECT_TRUE(proportional(sy.back(), QUni({-1, 1}))); // gcd
}

TEST(Sturm, AgreesWithBisection)
{
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> deg(1, 8), coef(-20, 20);
    int tested = 0;
    while (tested < 200) {
        int d = deg(rng);
        std::vector<Rational> c(static_cast<std::size_t>(d) + 1);
        for (auto& x : c) x = coef(rng);
        if (c.back() == 0) c.back() = 1;
        // plant some real roots so the counts are not all small
        QUni f(c);
        if (tested % 3 == 0) f = f * QUni({Rational(coef(rng), 7), 1}) * QUni({Rational(coef(rng), 3), 1});
        f = square_free_part(f);
        if (f.degree() < 1 || f.degree() > 8) continue;
        EXPECT_EQ(count_real_roots(f), bisection_count(f)) << f.str();
        ++tested;
    }
}

TEST(Solve, FourLinesEliminant)
{
    // at (0, inf, a, b) the eliminant is proportional to a b x^2 - 2(a+b) x + 3
    for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 2}, {3, 8}, {-1, 5}, {2, -3}}) {
        auto s = determinantal_instance(four_lines("0,inf," + std::to_string(a) + "," + std::to_string(b)));
        auto G = groebner_lex(s);
        expect_groebner(G);
        expect_contains(G, s.equations);
        QUni expect({3, -2 * (a + b), a * b});
        EXPECT_TRUE(proportional(eliminant(G), expect)) << eliminant(G).str();
        auto r = solve_system(s);
        EXPECT_EQ(r.complex_count, 2);
        // discriminant 4(a^2 - ab + b^2) > 0
        EXPECT_EQ(r.real_count, 2);
        EXPECT_FALSE(r.multiplicity_detected);
    }
    auto r = solve_instance(four_lines("inf,0,1,2"));
    EXPECT_EQ(r.complex_count, 2);
    EXPECT_EQ(r.real_count, 2);
}

TEST(Solve, FourLinesConjugatePair)
{
    // a = i, b = -i: ab = 1, a+b = 0, so x^2 + 3 = 0 has no real root
    auto s = determinantal_instance(four_lines("0,inf,i,-i"));
    auto r = solve_system(s);
    EXPECT_EQ(r.complex_count, 2);
    QUni direct({3, 0, 1});
    EXPECT_TRUE(r.shape.eliminant.degree() == 2);
    EXPECT_EQ(r.real_count, count_real_roots(direct));
    EXPECT_EQ(r.real_count, 0);
}

TEST(Solve, ToySystemAndParity)
{
    PolySystem s;
    s.variables = {"x", "y"};
    s.equations = {P("x^2-1"), P("y-x")};
    auto r = solve_system(s);
    EXPECT_EQ(r.complex_count, 2);
    EXPECT_EQ(r.real_count, 2);

    // parity on conjugate-stable instances of Gr(2,4)
    for (auto pts : {"0,inf,1,2", "0,inf,i,-i", "1,2,3,4", "0,1,2+i,2-i"}) {
        auto res = solve_instance(four_lines(pts));
        EXPECT_EQ(res.complex_count, 2) << pts;
        EXPECT_LE(res.real_count, res.complex_count);
        if (res.shape.square_free) EXPECT_EQ((res.complex_count - res.real_count) % 2, 0) << pts;
        EXPECT_EQ(res.shape.eliminant.degree(), res.complex_count);
    }
    // the chart points must be real
    EXPECT_THROW(solve_instance(four_lines("1+i,1-i,3i,-3i")), std::domain_error);
}

TEST(Solve, FiveConicsSizeProblem)
{
    // Gr(2,5) with six box conditions has 5 solutions, all real for real points
    std::vector<SchubertCondition> conds(6, C(5, {3, 5}));
    InstanceSpec spec{SchubertProblem{2, 5, conds}, parse_points("0,inf,1,-1,2,-2")};
    auto r = solve_instance(spec);
    EXPECT_EQ(r.complex_count, 5);
    EXPECT_EQ(r.real_count, 5);
}

TEST(Solve, ChartBoundaryRetry)
{
    // at these symmetric points two of the six solutions lie off the first Pair chart
    std::vector<SchubertCondition> conds{C(6, {2, 3, 6})};
    for (int i = 0; i < 5; ++i) conds.push_back(C(6, {3, 5, 6}));
    SchubertProblem prob{3, 6, conds};
    InstanceSpec spec{prob, parse_points("0,inf,1,-1,2,-2")};
    EXPECT_EQ(problem_degree(prob), 6);
    auto first = solve_instance(spec);
    EXPECT_EQ(first.complex_count, 4);
    SolveOptions opt;
    opt.expected_degree = 6;
    auto r = solve_instance(spec, opt);
    EXPECT_EQ(r.complex_count, 6);
    EXPECT_EQ(r.real_count, 6);
    EXPECT_FALSE(r.chart_incomplete);
    EXPECT_NE(r.chart_pair, (std::pair<std::size_t, std::size_t>{0, 1}));
    // the Schubert chart sees all six but needs a linear form to separate them
    auto s = solve_system(determinantal_instance(spec, {ChartKind::Schubert, {}}));
    EXPECT_EQ(s.complex_count, 6);
    EXPECT_NE(s.shape.permutation_used, "identity");
    EXPECT_TRUE(s.multiplicity_detected);
}

TEST(Wronskian, Basics)
{
    EXPECT_EQ(wronskian({QUni({1}), QUni({0, 1})}), QUni({1}));
    // Wr(1, t^2) = 2t
    EXPECT_EQ(wronskian({QUni({1}), QUni({0, 0, 1})}), QUni({0, 2}));
    EXPECT_EQ(vanish_order(QUni({0, 0, 0, 5}), Rational(0)), 3);
    EXPECT_EQ(vanish_order(QUni({1, -2, 1}), Rational(1)), 2);
    EXPECT_EQ(vanish_order(QUni({1, 1}), Rational(0)), 0);

    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        QMat H(2, 5);
        for (auto& x : H.a) x = skit::testing::small_rational(rng);
        auto w = wronskian(rows_as_polynomials(H));
        EXPECT_LE(w.degree(), 2 * 3);
    }
}

TEST(Wronskian, OrderAtZeroFromCastelnuovo)
{
    std::mt19937_64 rng(12);
    for (int n = 4; n <= 6; ++n)
        for (int k = 2; k < n; ++k)
            for_each_condition(k, n, [&](const SchubertCondition& a) {
                auto p = pattern_schubert(a);
                std::vector<Rational> v(p.nvars);
                for (auto& x : v) x = skit::testing::small_rational(rng);
                QMat H = p.fill(v);
                // the annihilator lies in the dual Schubert variety of the flag of t-orders at 0
                QMat L = null_space(H);
                QUni d = castelnuovo_determinant(L, H);
                ASSERT_FALSE(d.is_zero());
                EXPECT_GE(vanish_order(d, Rational(0)), codim(a)) << a.str();
                EXPECT_GE(vanish_order(wronskian(rows_as_polynomials(L)), Rational(0)), codim(a));
                // H itself loses degree at infinity
                EXPECT_LE(wronskian(rows_as_polynomials(H)).degree(), k * (n - k) - codim(a));
            });
}

TEST(Wronskian, CastelnuovoCheck)
{
    std::mt19937_64 rng(31);
    std::vector<Rational> samples{0, 1, -1, Rational(1, 2), 3};
    for (int trial = 0; trial < 10; ++trial) {
        QMat H(2, 4);
        for (auto& x : H.a) x = skit::testing::small_rational(rng);
        if (rank(H) < 2) continue;
        EXPECT_TRUE(castelnuovo_check(H, samples));
    }
    QMat span(2, 4);
    span(0, 0) = 1;
    span(1, 1) = 1;
    EXPECT_TRUE(castelnuovo_check(span, samples));
    EXPECT_EQ(castelnuovo_determinant(span, null_space(span)).degree(), 0);

    QMat H(2, 4);
    H(0, 0) = 1;
    H(0, 2) = 3;
    H(1, 1) = 2;
    H(1, 3) = -1;
    QMat wrong(2, 4);
    wrong(0, 0) = 1;
    wrong(1, 3) = 1;
    EXPECT_FALSE(castelnuovo_check(H, samples, wrong));

    QMat deficient(2, 4);
    deficient(0, 1) = 1;
    deficient(1, 1) = 2;
    EXPECT_THROW(castelnuovo_check(deficient, samples), std::invalid_argument);
}
