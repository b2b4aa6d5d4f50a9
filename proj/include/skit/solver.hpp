#ifndef SKIT_SOLVER_HPP
#define SKIT_SOLVER_HPP

#include "systems.hpp"

#include <array>
#include <chrono>
#include <climits>
#include <cstdlib>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace skit {

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotZeroDimensional : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotInShape : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Limits on one Gröbner computation: processed pairs and wall clock.
struct Budget {
    std::size_t max_pairs = 5'000'000;
    double max_seconds = 600;

    /// Wall clock from SKIT_BUDGET_SECS when set.
    static Budget from_env()
    {
        Budget b;
        if (const char* s = std::getenv("SKIT_BUDGET_SECS")) {
            try {
                b.max_seconds = std::stod(s);
            } catch (const std::exception&) {
                throw std::invalid_argument(std::string("bad SKIT_BUDGET_SECS: ") + s);
            }
        }
        return b;
    }
};

enum class TermOrder { Lex, GRevLex };

namespace gb {

constexpr std::size_t kMaxVars = 32;

struct Mono {
    std::array<std::uint8_t, kMaxVars> e{};
    std::uint16_t deg = 0;
    friend bool operator==(const Mono& a, const Mono& b) { return a.e == b.e; }
    friend bool operator<(const Mono& a, const Mono& b) { return a.e < b.e; } // container key only
};

inline Mono mono_mul(const Mono& a, const Mono& b, std::size_t n)
{
    Mono r;
    for (std::size_t i = 0; i < n; ++i) {
        unsigned s = unsigned(a.e[i]) + b.e[i];
        if (s > 255) throw std::overflow_error("exponent overflow in Groebner computation");
        r.e[i] = static_cast<std::uint8_t>(s);
    }
    r.deg = static_cast<std::uint16_t>(a.deg + b.deg);
    return r;
}
inline bool mono_divides(const Mono& a, const Mono& b, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i)
        if (a.e[i] > b.e[i]) return false;
    return true;
}
inline Mono mono_div(const Mono& b, const Mono& a, std::size_t n)
{
    Mono r;
    for (std::size_t i = 0; i < n; ++i) r.e[i] = static_cast<std::uint8_t>(b.e[i] - a.e[i]);
    r.deg = static_cast<std::uint16_t>(b.deg - a.deg);
    return r;
}
inline Mono mono_lcm(const Mono& a, const Mono& b, std::size_t n)
{
    Mono r;
    for (std::size_t i = 0; i < n; ++i) {
        r.e[i] = std::max(a.e[i], b.e[i]);
        r.deg = static_cast<std::uint16_t>(r.deg + r.e[i]);
    }
    return r;
}
inline bool mono_coprime(const Mono& a, const Mono& b, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i)
        if (a.e[i] && b.e[i]) return false;
    return true;
}

struct Ring {
    std::size_t n = 0;
    TermOrder order = TermOrder::Lex;

    // last variable is the largest
    int cmp(const Mono& a, const Mono& b) const
    {
        if (order == TermOrder::Lex) {
            for (std::size_t i = n; i-- > 0;)
                if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
            return 0;
        }
        if (a.deg != b.deg) return a.deg < b.deg ? -1 : 1;
        for (std::size_t i = 0; i < n; ++i)
            if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
        return 0;
    }
};

struct Term {
    Mono m;
    Integer c;
};
/// Ascending by term order; the leading term is back().
using Poly = std::vector<Term>;

inline Integer content(const Poly& p)
{
    Integer g = 0;
    for (auto& t : p) {
        g = gcd(g, t.c);
        if (g == 1) break;
    }
    return g;
}

inline void make_primitive(Poly& p)
{
    if (p.empty()) return;
    Integer g = content(p);
    if (sgn(p.back().c) < 0) g = -g;
    if (g != 1)
        for (auto& t : p) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
}

/// a·p − b·m·q, both ascending.
inline Poly mul_sub(const Ring& R, const Poly& p, const Integer& a, const Poly& q, const Integer& b, const Mono& m)
{
    Poly r;
    r.reserve(p.size() + q.size());
    std::size_t i = 0, j = 0;
    const bool unit_a = a == 1;
    Integer tmp;
    while (i < p.size() || j < q.size()) {
        int c;
        Mono qm;
        if (j < q.size()) qm = mono_mul(q[j].m, m, R.n);
        if (i == p.size()) c = 1;
        else if (j == q.size()) c = -1;
        else c = R.cmp(p[i].m, qm);
        if (c < 0) {
            r.push_back({p[i].m, unit_a ? p[i].c : Integer(p[i].c * a)});
            ++i;
        } else if (c > 0) {
            r.push_back({qm, Integer(-(q[j].c * b))});
            ++j;
        } else {
            tmp = p[i].c * a - q[j].c * b;
            if (tmp != 0) r.push_back({qm, tmp});
            ++i;
            ++j;
        }
    }
    return r;
}

class Clock {
public:
    explicit Clock(double seconds) : start_(std::chrono::steady_clock::now()), limit_(seconds) {}
    void check() const
    {
        if (elapsed() > limit_) throw BudgetExceeded("Groebner computation exceeded the wall-clock budget");
    }
    double elapsed() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
    double limit_;
};

/// Full reduction: returns r with r = scale·NF(p).
inline Poly reduce(const Ring& R, Poly p, const std::vector<const Poly*>& G, Rational* scale = nullptr,
                   const Clock* clock = nullptr)
{
    Poly r; // descending while built
    Rational sc = 1;
    std::size_t steps = 0;
    while (!p.empty()) {
        const Term& lt = p.back();
        const Poly* red = nullptr;
        for (auto* g : G)
            if (mono_divides(g->back().m, lt.m, R.n) && (!red || g->size() < red->size())) red = g;
        if (!red) {
            r.push_back(std::move(p.back()));
            p.pop_back();
            continue;
        }
        Integer gg = gcd(lt.c, red->back().c);
        Integer a = red->back().c / gg, b = lt.c / gg;
        if (sgn(a) < 0) {
            a = -a;
            b = -b;
        }
        Mono m = mono_div(lt.m, red->back().m, R.n);
        p = mul_sub(R, p, a, *red, b, m);
        if (a != 1) {
            for (auto& t : r) t.c *= a;
            sc *= a;
        }
        if (++steps % 16 == 0) {
            if (clock) clock->check();
            Integer g = 0;
            for (auto& t : p) g = gcd(g, t.c);
            for (auto& t : r) g = gcd(g, t.c);
            if (g > 1) {
                for (auto& t : p) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
                for (auto& t : r) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
                sc /= g;
            }
        }
    }
    std::reverse(r.begin(), r.end());
    if (scale) *scale = sc;
    return r;
}

inline Poly from_qpoly(const Ring& R, const QPoly& q)
{
    Poly p;
    Integer l = 1;
    for (auto& [m, c] : q.terms()) l = lcm(l, Integer(c.get_den()));
    for (auto& [m, c] : q.terms()) {
        Term t;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] > 255) throw std::overflow_error("exponent too large");
            t.m.e[i] = static_cast<std::uint8_t>(m[i]);
            t.m.deg = static_cast<std::uint16_t>(t.m.deg + m[i]);
        }
        t.c = c.get_num() * (l / c.get_den());
        p.push_back(std::move(t));
    }
    std::sort(p.begin(), p.end(), [&](const Term& a, const Term& b) { return R.cmp(a.m, b.m) < 0; });
    return p;
}

inline QPoly to_qpoly(const Ring& R, const Poly& p)
{
    QPoly q(R.n);
    for (auto& t : p) {
        Monomial m(R.n);
        for (std::size_t i = 0; i < R.n; ++i) m[i] = t.m.e[i];
        q.add_term(m, Rational(t.c));
    }
    return q;
}

struct Stats {
    std::size_t pairs_processed = 0, zero_reductions = 0;
};

/// Buchberger with Gebauer–Möller pair elimination and the normal selection strategy.
inline std::vector<Poly> buchberger(const Ring& R, std::vector<Poly> input, const Budget& budget, Stats* stats = nullptr)
{
    Clock clock(budget.max_seconds);
    std::vector<Poly> G;
    std::vector<bool> active;
    struct Pair {
        std::size_t i, j;
        Mono lcm;
    };
    std::vector<Pair> B;
    Stats st;

    auto reducers = [&] {
        std::vector<const Poly*> v;
        for (std::size_t i = 0; i < G.size(); ++i)
            if (active[i]) v.push_back(&G[i]);
        return v;
    };

    auto update = [&](Poly h) {
        const std::size_t hi = G.size();
        const Mono& lh = h.back().m;
        G.push_back(std::move(h));
        active.push_back(true);
        const Mono hm = G[hi].back().m;
        (void)lh;
        std::vector<Pair> C, D;
        for (std::size_t g = 0; g < hi; ++g)
            if (active[g]) C.push_back({hi, g, mono_lcm(hm, G[g].back().m, R.n)});
        for (std::size_t c = 0; c < C.size(); ++c) {
            const auto& p = C[c];
            bool keep = mono_coprime(hm, G[p.j].back().m, R.n);
            if (!keep) {
                keep = true;
                for (std::size_t o = c + 1; o < C.size() && keep; ++o)
                    if (mono_divides(C[o].lcm, p.lcm, R.n)) keep = false;
                for (std::size_t o = 0; o < D.size() && keep; ++o)
                    if (mono_divides(D[o].lcm, p.lcm, R.n)) keep = false;
            }
            if (keep) D.push_back(p);
        }
        std::vector<Pair> nb;
        for (auto& p : B) {
            bool drop = mono_divides(hm, p.lcm, R.n) && !(mono_lcm(G[p.i].back().m, hm, R.n) == p.lcm) &&
                        !(mono_lcm(hm, G[p.j].back().m, R.n) == p.lcm);
            if (!drop) nb.push_back(p);
        }
        for (auto& p : D)
            if (!mono_coprime(hm, G[p.j].back().m, R.n)) nb.push_back(p);
        B = std::move(nb);
        for (std::size_t g = 0; g < hi; ++g)
            if (active[g] && mono_divides(hm, G[g].back().m, R.n)) active[g] = false;
    };

    bool unit = false;
    for (auto& f : input) {
        if (f.empty()) continue;
        Poly h = reduce(R, std::move(f), reducers(), nullptr, &clock);
        if (h.empty()) continue;
        make_primitive(h);
        if (h.back().m.deg == 0) {
            unit = true;
            break;
        }
        update(std::move(h));
    }

    while (!B.empty() && !unit) {
        if (st.pairs_processed >= budget.max_pairs) throw BudgetExceeded("Groebner computation exceeded the pair budget");
        clock.check();
        std::size_t best = 0;
        for (std::size_t i = 1; i < B.size(); ++i) {
            int c = R.cmp(B[i].lcm, B[best].lcm);
            if (c < 0 || (c == 0 && B[i].i < B[best].i)) best = i;
        }
        Pair p = B[best];
        B.erase(B.begin() + static_cast<std::ptrdiff_t>(best));
        ++st.pairs_processed;
        const Poly &f = G[p.i], &g = G[p.j];
        Integer gg = gcd(f.back().c, g.back().c);
        Integer a = g.back().c / gg, b = f.back().c / gg;
        Poly fs = mul_sub(R, Poly{}, 0, f, Integer(-a), mono_div(p.lcm, f.back().m, R.n));
        Poly s = mul_sub(R, fs, 1, g, b, mono_div(p.lcm, g.back().m, R.n));
        Poly h = reduce(R, std::move(s), reducers(), nullptr, &clock);
        if (h.empty()) {
            ++st.zero_reductions;
            continue;
        }
        make_primitive(h);
        if (h.back().m.deg == 0) {
            unit = true;
            break;
        }
        update(std::move(h));
    }
    if (stats) *stats = st;
    if (unit) {
        Term one;
        one.c = 1;
        return {Poly{one}};
    }

    // reduced basis
    std::vector<Poly> out;
    for (std::size_t i = 0; i < G.size(); ++i)
        if (active[i]) out.push_back(G[i]);
    std::vector<Poly> minimal;
    for (std::size_t i = 0; i < out.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < out.size() && !redundant; ++j)
            if (j != i && mono_divides(out[j].back().m, out[i].back().m, R.n) &&
                (!(out[j].back().m == out[i].back().m) || j < i))
                redundant = true;
        if (!redundant) minimal.push_back(out[i]);
    }
    std::vector<Poly> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<const Poly*> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(&minimal[j]);
        Poly lead{minimal[i].back()};
        Poly tail(minimal[i].begin(), minimal[i].end() - 1);
        Rational sc;
        Poly rt = reduce(R, tail, others, &sc, &clock);
        // lead·sc + rt is sc times the reduced element
        Poly h = rt;
        Term lt = lead.front();
        Rational lc = Rational(lt.c) * sc;
        Integer l = lcm(Integer(lc.get_den()), Integer(1));
        Integer mult = l;
        for (auto& t : h) t.c *= mult;
        lt.c = Integer(lc * Rational(mult));
        h.push_back(lt);
        make_primitive(h);
        reduced.push_back(std::move(h));
    }
    std::sort(reduced.begin(), reduced.end(), [&](const Poly& x, const Poly& y) { return R.cmp(x.back().m, y.back().m) < 0; });
    return reduced;
}

} // namespace gb

// ------------------------------------------------------------ public API

struct GroebnerBasis {
    std::vector<QPoly> generators; // integer-primitive, ascending by leading monomial
    TermOrder order = TermOrder::Lex;
    std::size_t nvars = 0;
    bool reduced = true;
    std::size_t pairs_processed = 0;

    bool is_unit() const { return generators.size() == 1 && generators[0].is_constant(); }
};

inline GroebnerBasis groebner(const std::vector<QPoly>& eqs, std::size_t nvars, TermOrder order,
                              const Budget& budget = Budget::from_env())
{
    if (nvars > gb::kMaxVars) throw std::invalid_argument("too many variables for the Groebner engine");
    gb::Ring R{nvars, order};
    std::vector<gb::Poly> in;
    for (auto& e : eqs) in.push_back(gb::from_qpoly(R, e));
    gb::Stats st;
    auto out = gb::buchberger(R, std::move(in), budget, &st);
    GroebnerBasis g;
    g.order = order;
    g.nvars = nvars;
    g.pairs_processed = st.pairs_processed;
    for (auto& p : out) g.generators.push_back(gb::to_qpoly(R, p));
    return g;
}

inline GroebnerBasis groebner_lex(const PolySystem& s, const Budget& budget = Budget::from_env())
{
    return groebner(s.equations, s.nvars(), TermOrder::Lex, budget);
}

/// Leading monomial of p in the basis order.
inline Monomial leading_monomial(const QPoly& p, TermOrder order)
{
    if (p.is_zero()) throw std::invalid_argument("zero polynomial has no leading monomial");
    if (order == TermOrder::Lex) return p.leading_monomial();
    gb::Ring R{p.nvars(), order};
    auto q = gb::from_qpoly(R, p);
    Monomial m(p.nvars());
    for (std::size_t i = 0; i < p.nvars(); ++i) m[i] = q.back().m.e[i];
    return m;
}

/// Remainder of p on division by the basis (exact, rational).
inline QPoly normal_form(const GroebnerBasis& G, const QPoly& p)
{
    gb::Ring R{G.nvars, G.order};
    std::vector<gb::Poly> gs;
    for (auto& g : G.generators) gs.push_back(gb::from_qpoly(R, g));
    std::vector<const gb::Poly*> ptr;
    for (auto& g : gs) ptr.push_back(&g);
    auto pp = gb::from_qpoly(R, p);
    Integer den = 1;
    for (auto& [m, c] : p.terms()) den = lcm(den, Integer(c.get_den()));
    Rational sc;
    auto r = gb::reduce(R, pp, ptr, &sc);
    QPoly q = gb::to_qpoly(R, r);
    return q * (Rational(1) / (sc * Rational(den)));
}

inline QPoly s_polynomial(const QPoly& f, const QPoly& g, TermOrder order)
{
    Monomial lf = leading_monomial(f, order), lg = leading_monomial(g, order), l(f.nvars());
    for (std::size_t i = 0; i < l.size(); ++i) l[i] = std::max(lf[i], lg[i]);
    auto coef = [&](const QPoly& p, const Monomial& m) {
        for (auto& [mm, c] : p.terms())
            if (mm == m) return c;
        return Rational(0);
    };
    Monomial uf(l.size()), ug(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) {
        uf[i] = static_cast<std::uint16_t>(l[i] - lf[i]);
        ug[i] = static_cast<std::uint16_t>(l[i] - lg[i]);
    }
    QPoly mf(f.nvars()), mg(f.nvars());
    mf.add_term(uf, Rational(1) / coef(f, lf));
    mg.add_term(ug, Rational(1) / coef(g, lg));
    return f * mf - g * mg;
}

// ------------------------------------------------------------ quotient ring

/// Finite-dimensional quotient Q[x]/I from a Gröbner basis of a zero-dimensional ideal.
class QuotientRing {
public:
    explicit QuotientRing(const GroebnerBasis& G) : R_{G.nvars, G.order}
    {
        for (auto& g : G.generators) gens_.push_back(gb::from_qpoly(R_, g));
        for (auto& g : gens_) ptrs_.push_back(&g);
        if (G.is_unit()) return;
        for (std::size_t v = 0; v < R_.n; ++v) {
            bool pure = false;
            for (auto& g : gens_) {
                const auto& m = g.back().m;
                if (m.e[v] > 0 && m.deg == m.e[v]) pure = true;
            }
            if (!pure) throw NotZeroDimensional("ideal is not zero-dimensional (no pure power of x" + std::to_string(v + 1) + ")");
        }
        // standard monomials by closure under multiplication by variables
        std::vector<gb::Mono> queue{gb::Mono{}};
        index_[gb::Mono{}] = 0;
        basis_.push_back(gb::Mono{});
        for (std::size_t q = 0; q < queue.size(); ++q)
            for (std::size_t v = 0; v < R_.n; ++v) {
                gb::Mono m = queue[q];
                ++m.e[v];
                ++m.deg;
                if (index_.count(m) || is_leading_multiple(m)) continue;
                index_[m] = basis_.size();
                basis_.push_back(m);
                queue.push_back(m);
            }
    }

    std::size_t dimension() const { return basis_.size(); }
    std::size_t nvars() const { return R_.n; }

    /// Coordinates of NF(p) in the standard-monomial basis.
    std::vector<Rational> coordinates(const QPoly& p) const
    {
        std::vector<Rational> v(basis_.size());
        Integer den = 1;
        for (auto& [m, c] : p.terms()) den = lcm(den, Integer(c.get_den()));
        Rational sc;
        auto r = gb::reduce(R_, gb::from_qpoly(R_, p), ptrs_, &sc);
        for (auto& t : r) v.at(index_.at(t.m)) = Rational(t.c) / (sc * Rational(den));
        return v;
    }

    /// Matrix of multiplication by the linear form Σ c_i x_i; column j is the image of basis j.
    QMat multiplication_matrix(const std::vector<Rational>& form) const
    {
        const std::size_t d = basis_.size();
        QMat M(d, d);
        for (std::size_t j = 0; j < d; ++j) {
            QPoly p(R_.n);
            for (std::size_t v = 0; v < R_.n; ++v) {
                if (is_zero(form[v])) continue;
                Monomial m(R_.n);
                for (std::size_t i = 0; i < R_.n; ++i) m[i] = basis_[j].e[i];
                ++m[v];
                p.add_term(m, form[v]);
            }
            auto c = coordinates(p);
            for (std::size_t i = 0; i < d; ++i) M(i, j) = c[i];
        }
        return M;
    }

private:
    bool is_leading_multiple(const gb::Mono& m) const
    {
        for (auto& g : gens_)
            if (gb::mono_divides(g.back().m, m, R_.n)) return true;
        return false;
    }
    gb::Ring R_;
    std::vector<gb::Poly> gens_;
    std::vector<const gb::Poly*> ptrs_;
    std::vector<gb::Mono> basis_;
    std::map<gb::Mono, std::size_t> index_;
};

// ------------------------------------------------------------ shape

struct ShapeReport {
    bool in_shape = false;
    QUni eliminant;                  // in the separating form u
    long degree = 0;                 // ideal degree (standard monomial count)
    bool square_free = false;
    std::vector<Rational> form;      // u = Σ form_i x_i
    std::string permutation_used;    // "identity", "x3 first", or the linear form
    std::vector<QUni> coordinates;   // x_i = coordinates[i](u) when in shape
};

namespace detail {

struct CyclicResult {
    QUni minpoly;
    bool cyclic = false;
    std::vector<QUni> coordinates;
};

/// Minimal polynomial of multiplication by u and, when 1, u, ..., u^{d-1} span the quotient,
/// each variable as a polynomial in u.
inline CyclicResult analyze_form(const QuotientRing& Q, const std::vector<Rational>& form)
{
    const std::size_t d = Q.dimension();
    CyclicResult res;
    if (d == 0) {
        res.minpoly = QUni({Rational(1)}, "u");
        res.cyclic = true;
        res.coordinates.assign(Q.nvars(), QUni({}, "u"));
        return res;
    }
    QMat M = Q.multiplication_matrix(form);
    struct Row {
        std::size_t pivot;
        std::vector<Rational> vec, combo;
    };
    std::vector<Row> rows;
    std::vector<Rational> v(d);
    v[0] = 1; // the monomial 1 is basis element 0
    auto reduce_vec = [&](std::vector<Rational>& w, std::vector<Rational>& combo, bool subtract) {
        for (auto& r : rows) {
            if (is_zero(w[r.pivot])) continue;
            Rational f = w[r.pivot] / r.vec[r.pivot];
            for (std::size_t i = 0; i < d; ++i) w[i] -= f * r.vec[i];
            for (std::size_t i = 0; i < combo.size(); ++i) combo[i] += (subtract ? -f : f) * r.combo[i];
        }
    };
    for (std::size_t j = 0; j <= d; ++j) {
        std::vector<Rational> w = v, combo(d + 1);
        combo[j] = 1;
        reduce_vec(w, combo, true);
        std::size_t piv = d;
        for (std::size_t i = 0; i < d; ++i)
            if (!is_zero(w[i])) { piv = i; break; }
        if (piv == d) {
            combo.resize(j + 1);
            res.minpoly = QUni(combo, "u").monic();
            res.cyclic = j == d;
            break;
        }
        rows.push_back({piv, w, combo});
        // next power
        std::vector<Rational> nv(d);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c)
                if (!is_zero(v[c]) && !is_zero(M(r, c))) nv[r] += M(r, c) * v[c];
        v = std::move(nv);
    }
    if (!res.cyclic) return res;
    for (std::size_t x = 0; x < Q.nvars(); ++x) {
        Monomial m(Q.nvars());
        m[x] = 1;
        QPoly px(Q.nvars());
        px.add_term(m, Rational(1));
        std::vector<Rational> w = Q.coordinates(px), combo(d + 1);
        reduce_vec(w, combo, false);
        combo.resize(d);
        res.coordinates.push_back(QUni(combo, "u"));
    }
    return res;
}

inline std::string form_string(const std::vector<Rational>& f)
{
    QPoly p(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        Monomial m(f.size());
        m[i] = 1;
        p.add_term(m, f[i]);
    }
    return to_string(p);
}

} // namespace detail

inline bool is_square_free(const QUni& f)
{
    if (f.degree() <= 0) return true;
    return gcd_uni(f, f.derivative()).degree() == 0;
}

inline QUni square_free_part(const QUni& f)
{
    if (f.degree() <= 0) return f;
    return f.divmod(gcd_uni(f, f.derivative())).first;
}

/// Eliminant: generator of I ∩ Q[x1].
inline QUni eliminant(const GroebnerBasis& G)
{
    if (G.is_unit()) return QUni({Rational(1)}, "x1");
    if (G.order == TermOrder::Lex) {
        for (auto& g : G.generators) {
            bool uni = true;
            for (auto& [m, c] : g.terms())
                for (std::size_t i = 1; i < m.size(); ++i) uni = uni && m[i] == 0;
            if (uni) return primitive_part(to_univariate(g, 0, "x1"));
        }
        throw NotZeroDimensional("lex basis has no univariate element in x1");
    }
    QuotientRing Q(G);
    std::vector<Rational> form(G.nvars);
    form[0] = 1;
    QUni g = detail::analyze_form(Q, form).minpoly;
    g.set_var("x1");
    return primitive_part(g);
}

/// Shape verdict with fallbacks: x1, then each other variable first, then one
/// random small-integer linear form.
inline ShapeReport shape_check(const GroebnerBasis& G, std::optional<long> ideal_degree_hint = std::nullopt,
                               std::uint64_t seed = 0x5eed)
{
    QuotientRing Q(G);
    const std::size_t q = G.nvars;
    ShapeReport rep;
    rep.degree = static_cast<long>(Q.dimension());
    if (ideal_degree_hint && *ideal_degree_hint != rep.degree)
        throw std::logic_error("ideal degree differs from the supplied hint");
    auto attempt = [&](std::vector<Rational> form, std::string label) {
        auto r = detail::analyze_form(Q, form);
        if (!r.cyclic) return false;
        rep.in_shape = true;
        rep.eliminant = primitive_part(r.minpoly);
        rep.square_free = is_square_free(rep.eliminant);
        rep.form = std::move(form);
        rep.permutation_used = std::move(label);
        rep.coordinates = std::move(r.coordinates);
        return true;
    };
    for (std::size_t v = 0; v < q; ++v) {
        std::vector<Rational> form(q);
        form[v] = 1;
        if (attempt(form, v == 0 ? "identity" : "x" + std::to_string(v + 1) + " first")) return rep;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(1, 9), sign(0, 1);
    std::vector<Rational> form(q);
    form[0] = 1;
    for (std::size_t v = 1; v < q; ++v) form[v] = sign(rng) ? dist(rng) : -dist(rng);
    if (attempt(form, detail::form_string(form))) return rep;
    throw NotInShape("ideal is not in shape position after all fallbacks");
}

// ------------------------------------------------------------ real roots

/// Sylvester sequence f, g, −rem, … with positive-multiple normalization.
inline std::vector<QUni> sylvester(const QUni& f, const QUni& g)
{
    auto positive_primitive = [](QUni p) {
        if (p.is_zero()) return p;
        Integer l = 1, c = 0;
        for (auto& x : p.coefficients()) l = lcm(l, Integer(x.get_den()));
        for (auto& x : p.coefficients()) c = gcd(c, Integer(x.get_num() * (l / x.get_den())));
        return p * (Rational(l) / Rational(c));
    };
    std::vector<QUni> seq{f};
    if (g.is_zero()) return seq;
    seq.push_back(g);
    while (true) {
        QUni r = seq[seq.size() - 2].divmod(seq.back()).second;
        if (r.is_zero()) break;
        seq.push_back(positive_primitive(-r));
    }
    return seq;
}

inline std::vector<QUni> sturm(const QUni& f)
{
    if (f.is_zero()) throw std::invalid_argument("Sturm sequence of the zero polynomial");
    return sylvester(f, f.derivative());
}

inline int variation(const std::vector<QUni>& seq, const Rational& a)
{
    int v = 0, last = 0;
    for (auto& p : seq) {
        int s = sgn(p(a));
        if (s == 0) continue;
        if (last && s != last) ++v;
        last = s;
    }
    return v;
}

/// Sign changes at +∞ (plus) or −∞.
inline int variation_at_infinity(const std::vector<QUni>& seq, bool plus)
{
    int v = 0, last = 0;
    for (auto& p : seq) {
        if (p.is_zero()) continue;
        int s = sgn(p.leading());
        if (!plus && p.degree() % 2) s = -s;
        if (last && s != last) ++v;
        last = s;
    }
    return v;
}

/// Distinct real roots in (a, b).
inline int count_real_roots(const QUni& f, const Rational& a, const Rational& b)
{
    if (f.is_zero()) throw std::invalid_argument("zero polynomial");
    if (is_zero(f(a)) || is_zero(f(b))) throw std::domain_error("interval endpoint is a root");
    if (b < a) return count_real_roots(f, b, a);
    auto s = sturm(f);
    return variation(s, a) - variation(s, b);
}

/// Distinct real roots on the whole line.
inline int count_real_roots(const QUni& f)
{
    if (f.is_zero()) throw std::invalid_argument("zero polynomial");
    auto s = sturm(f);
    return variation_at_infinity(s, false) - variation_at_infinity(s, true);
}

// ------------------------------------------------------------ pipeline

struct SolveResult {
    long complex_count = 0;
    long real_count = 0;
    bool multiplicity_detected = false;
    ShapeReport shape;
    double seconds = 0;
    std::pair<std::size_t, std::size_t> chart_pair{0, 1}; // conditions carried by the Pair chart
    bool chart_incomplete = false;                        // fewer solutions than expected in every chart tried
};

struct SolveOptions {
    ChartChoice chart;
    Budget budget = Budget::from_env();
    TermOrder order = TermOrder::GRevLex; // lex basis is read off the quotient when in shape
    std::optional<long> expected_degree;  // retry other Pair charts when short
};

inline SolveResult solve_system(const PolySystem& s, const SolveOptions& opt = {})
{
    gb::Clock clock(1e300);
    auto G = groebner(s.equations, s.nvars(), opt.order, opt.budget);
    SolveResult r;
    r.shape = shape_check(G);
    r.complex_count = r.shape.degree;
    r.real_count = r.complex_count ? count_real_roots(square_free_part(r.shape.eliminant)) : 0;
    r.multiplicity_detected = !r.shape.square_free || r.shape.permutation_used != "identity";
    r.seconds = clock.elapsed();
    return r;
}

/// Same instance with conditions i and j moved to the front.
inline InstanceSpec with_leading_pair(const InstanceSpec& spec, std::size_t i, std::size_t j)
{
    std::vector<std::size_t> order{i, j};
    for (std::size_t c = 0; c < spec.points.size(); ++c)
        if (c != i && c != j) order.push_back(c);
    InstanceSpec out;
    std::vector<SchubertCondition> conds;
    for (auto c : order) {
        conds.push_back(spec.problem.conditions.at(c));
        out.points.push_back(spec.points.at(c));
    }
    out.problem = SchubertProblem(spec.problem.k, spec.problem.n, std::move(conds));
    return out;
}

/// Solutions on the boundary of a chart are invisible in it; with an expected degree,
/// further real condition pairs are tried until the count is reached.
inline SolveResult solve_instance(const InstanceSpec& spec, const SolveOptions& opt = {})
{
    SolveResult best = solve_system(determinantal_instance(spec, opt.chart), opt);
    if (!opt.expected_degree || opt.chart.kind != ChartKind::Pair || best.complex_count >= *opt.expected_degree)
        return best;
    const std::size_t m = spec.points.size();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j || (i == 0 && j == 1)) continue;
            if (!spec.points[i].is_real() || !spec.points[j].is_real()) continue;
            auto moved = with_leading_pair(spec, i, j);
            try {
                (void)pattern_pair(moved.problem.conditions[0], moved.problem.conditions[1]);
            } catch (const std::invalid_argument&) {
                continue;
            }
            SolveResult r = solve_system(determinantal_instance(moved, opt.chart), opt);
            r.chart_pair = {i, j};
            r.seconds += best.seconds;
            if (r.complex_count > best.complex_count) best = r;
            else best.seconds = r.seconds;
            if (best.complex_count >= *opt.expected_degree) return best;
        }
    best.chart_incomplete = true;
    return best;
}

/// Number of complex solutions of a problem, read off one instance at random real points.
inline long problem_degree(const SchubertProblem& problem, std::uint64_t seed = 1, const Budget& budget = Budget::from_env())
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-97, 97), den(1, 13);
    InstanceSpec spec{problem, {}};
    while (spec.points.size() < problem.size()) {
        Rational t(num(rng), den(rng));
        t.canonicalize();
        auto p = OsculationPoint::at(GaussianRational(t));
        if (std::find(spec.points.begin(), spec.points.end(), p) == spec.points.end()) spec.points.push_back(p);
    }
    SolveOptions opt;
    opt.budget = budget;
    return solve_instance(spec, opt).complex_count;
}

// ------------------------------------------------------------ Wronskian

/// Row c of H as the polynomial Σ h_c t^c.
inline std::vector<QUni> rows_as_polynomials(const QMat& H)
{
    std::vector<QUni> out;
    for (std::size_t i = 0; i < H.rows; ++i) {
        std::vector<Rational> c(H.cols);
        for (std::size_t j = 0; j < H.cols; ++j) c[j] = H(i, j);
        out.push_back(QUni(c, "t"));
    }
    return out;
}

inline QUni wronskian(const std::vector<QUni>& f)
{
    const std::size_t k = f.size();
    if (k == 0) return QUni({Rational(1)}, "t");
    std::vector<std::vector<QUni>> m(k, std::vector<QUni>(k));
    for (std::size_t j = 0; j < k; ++j) {
        QUni d = f[j];
        for (std::size_t i = 0; i < k; ++i) {
            m[i][j] = d;
            d = d.derivative();
        }
    }
    QUni w = det(m);
    w.set_var("t");
    return w;
}

/// Multiplicity of t as a root; INT_MAX for the zero polynomial.
inline int vanish_order(QUni f, const Rational& t)
{
    if (f.is_zero()) return INT_MAX;
    int order = 0;
    QUni lin({-t, Rational(1)}, f.var());
    while (true) {
        auto [q, r] = f.divmod(lin);
        if (!r.is_zero()) return order;
        f = q;
        ++order;
    }
}

/// det([F_k(t); L]) as a polynomial in t, L spanning the annihilator of H.
inline QUni castelnuovo_determinant(const QMat& H, const QMat& L)
{
    const std::size_t k = H.rows, n = H.cols;
    if (L.rows + k != n || L.cols != n) throw std::invalid_argument("annihilator has the wrong shape");
    std::vector<std::vector<QUni>> m(n, std::vector<QUni>(n));
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t c = 0; c < n; ++c) {
            if (c < j) {
                m[j][c] = QUni({}, "t");
                continue;
            }
            Rational coef = 1;
            for (std::size_t f = c - j + 1; f <= c; ++f) coef *= static_cast<long>(f);
            m[j][c] = QUni::monomial(coef, c - j);
        }
    for (std::size_t r = 0; r < L.rows; ++r)
        for (std::size_t c = 0; c < n; ++c) m[k + r][c] = QUni({L(r, c)}, "t");
    QUni d = det(m);
    d.set_var("t");
    return d;
}

/// Castelnuovo determinant and Wronskian agree up to one global nonzero scalar at the samples.
inline bool castelnuovo_check(const QMat& H, const std::vector<Rational>& samples, std::optional<QMat> annihilator = std::nullopt)
{
    if (rank(H) != H.rows) throw std::invalid_argument("castelnuovo_check needs a full-rank H");
    QMat L = annihilator ? *annihilator : null_space(H);
    QUni w = wronskian(rows_as_polynomials(H));
    QUni d = castelnuovo_determinant(H, L);
    std::optional<Rational> ratio;
    for (auto& t : samples) {
        Rational wv = w(t), dv = d(t);
        if (is_zero(wv) != is_zero(dv)) return false;
        if (is_zero(wv)) continue;
        Rational q = dv / wv;
        if (ratio && *ratio != q) return false;
        ratio = q;
    }
    return true;
}

} // namespace skit

#endif
