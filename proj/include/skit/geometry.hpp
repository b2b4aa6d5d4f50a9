#ifndef SKIT_GEOMETRY_HPP
#define SKIT_GEOMETRY_HPP

#include "algebra.hpp"
#include "combinatorics.hpp"

#include <string>
#include <vector>

namespace skit {

/// Grid of fixed zeros, fixed ones and free variables.
struct CoordPattern {
    enum class Kind { Zero, One, Var };
    struct Entry {
        Kind kind = Kind::Zero;
        int var = -1;
    };

    std::size_t rows = 0, cols = 0;
    std::vector<Entry> grid;
    std::size_t nvars = 0;

    CoordPattern(std::size_t r, std::size_t c) : rows(r), cols(c), grid(r * c) {}
    Entry& at(std::size_t i, std::size_t j) { return grid.at(i * cols + j); }
    const Entry& at(std::size_t i, std::size_t j) const { return grid.at(i * cols + j); }

    /// Number free entries in reading order.
    void number_vars()
    {
        nvars = 0;
        for (auto& e : grid)
            if (e.kind == Kind::Var) e.var = static_cast<int>(nvars++);
    }

    /// Positions of the variables, indexed by id.
    std::vector<std::pair<std::size_t, std::size_t>> var_positions() const
    {
        std::vector<std::pair<std::size_t, std::size_t>> pos(nvars);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                if (at(i, j).kind == Kind::Var) pos[static_cast<std::size_t>(at(i, j).var)] = {i, j};
        return pos;
    }

    /// Polynomial matrix with pattern variable v mapped to ring variable offset+v.
    template <class T>
    ExactMatrix<T> instantiate(std::size_t ring_vars, std::size_t offset = 0) const
    {
        ExactMatrix<T> m(rows, cols, ring_vars);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                const auto& e = at(i, j);
                if (e.kind == Kind::One) m(i, j) = MultiPoly<T>(ring_vars, T(1));
                else if (e.kind == Kind::Var) m(i, j) = MultiPoly<T>::variable(ring_vars, offset + static_cast<std::size_t>(e.var));
            }
        return m;
    }

    /// Scalar matrix with the variables set to `values`.
    template <class T>
    Mat<T> fill(const std::vector<T>& values) const
    {
        if (values.size() != nvars) throw std::invalid_argument("pattern fill arity");
        Mat<T> m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                const auto& e = at(i, j);
                if (e.kind == Kind::One) m(i, j) = T(1);
                else if (e.kind == Kind::Var) m(i, j) = values[static_cast<std::size_t>(e.var)];
            }
        return m;
    }

    std::string str() const
    {
        std::string s;
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) {
                const auto& e = at(i, j);
                s += e.kind == Kind::Zero ? "0" : e.kind == Kind::One ? "1" : "*";
                s += j + 1 < cols ? " " : "";
            }
            s += "\n";
        }
        return s;
    }
};

/// Chart on the whole Grassmannian: M_{i,α_j} = δ_ij, all else free.
inline CoordPattern pattern_grassmannian(const SchubertCondition& al)
{
    const auto k = static_cast<std::size_t>(al.k()), n = static_cast<std::size_t>(al.n);
    CoordPattern p(k, n);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) p.at(i, j).kind = CoordPattern::Kind::Var;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t r = 0; r < k; ++r)
            p.at(r, static_cast<std::size_t>(al.a[i] - 1)).kind = r == i ? CoordPattern::Kind::One : CoordPattern::Kind::Zero;
    p.number_vars();
    return p;
}

/// Chart on X_α relative to the standard flag: as above, plus zeros right of each pivot.
inline CoordPattern pattern_schubert(const SchubertCondition& al)
{
    CoordPattern p = pattern_grassmannian(al);
    for (std::size_t i = 0; i < p.rows; ++i)
        for (std::size_t j = static_cast<std::size_t>(al.a[i]); j < p.cols; ++j) p.at(i, j).kind = CoordPattern::Kind::Zero;
    p.number_vars();
    return p;
}

/// Chart on X_α(F) ∩ X_β(G) for a basis adapted to both flags.
inline CoordPattern pattern_pair(const SchubertCondition& al, const SchubertCondition& be)
{
    require_same_shape(al, be);
    const int k = al.k(), n = al.n;
    for (int i = 1; i <= k; ++i)
        if (al[i] + be[k + 1 - i] < n + 1)
            throw std::invalid_argument("pattern_pair: empty zero-window at row " + std::to_string(i) + " for " +
                                        al.str() + ", " + be.str());
    CoordPattern p(static_cast<std::size_t>(k), static_cast<std::size_t>(n));
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= n; ++j) {
            auto& e = p.at(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
            if (j == al[i]) e.kind = CoordPattern::Kind::One;
            else if (j > al[i] || j < n + 1 - be[k + 1 - i]) e.kind = CoordPattern::Kind::Zero;
            else e.kind = CoordPattern::Kind::Var;
        }
    p.number_vars();
    return p;
}

/// n×(n-k) chart on X_{α⊥} in the dual space; pivots at rows n+1-α⊥_j.
inline CoordPattern pattern_dual(const SchubertCondition& ad)
{
    const int m = ad.k(), n = ad.n;
    CoordPattern p(static_cast<std::size_t>(n), static_cast<std::size_t>(m));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= m; ++j) {
            auto& e = p.at(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
            e.kind = i < n + 1 - ad[j] ? CoordPattern::Kind::Zero : CoordPattern::Kind::Var;
        }
    for (int j = 1; j <= m; ++j)
        for (int c = 1; c <= m; ++c)
            p.at(static_cast<std::size_t>(n - ad[j]), static_cast<std::size_t>(c - 1)).kind =
                c == j ? CoordPattern::Kind::One : CoordPattern::Kind::Zero;
    p.number_vars();
    return p;
}

/// n×(n-k) chart on X_α(F⊥) ∩ X_β(G⊥).
inline CoordPattern pattern_dual_pair(const SchubertCondition& al, const SchubertCondition& be)
{
    require_same_shape(al, be);
    const int m = al.k(), n = al.n;
    CoordPattern p(static_cast<std::size_t>(n), static_cast<std::size_t>(m));
    for (int j = 1; j <= m; ++j) {
        if (n + 1 - al[j] > be[m - j + 1])
            throw std::invalid_argument("pattern_dual_pair: empty zero-window at column " + std::to_string(j));
        for (int i = 1; i <= n; ++i) {
            auto& e = p.at(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
            if (i == n + 1 - al[j]) e.kind = CoordPattern::Kind::One;
            else if (i < n + 1 - al[j] || i > be[m - j + 1]) e.kind = CoordPattern::Kind::Zero;
            else e.kind = CoordPattern::Kind::Var;
        }
    }
    p.number_vars();
    return p;
}

// ------------------------------------------------------------ osculation

struct OsculationPoint {
    bool infinite = false;
    GaussianRational t;

    static OsculationPoint at(GaussianRational v) { return {false, std::move(v)}; }
    static OsculationPoint infinity() { return {true, {}}; }
    bool is_real() const { return infinite || t.is_real(); }
    friend bool operator==(const OsculationPoint& a, const OsculationPoint& b)
    {
        return a.infinite == b.infinite && (a.infinite || a.t == b.t);
    }
    friend bool operator!=(const OsculationPoint& a, const OsculationPoint& b) { return !(a == b); }
};

inline OsculationPoint conj(const OsculationPoint& p) { return p.infinite ? p : OsculationPoint::at(conj(p.t)); }

inline std::string to_string(const OsculationPoint& p) { return p.infinite ? "inf" : to_string(p.t); }

inline OsculationPoint parse_point(const std::string& s)
{
    if (s == "inf" || s == "oo" || s == "infinity") return OsculationPoint::infinity();
    return OsculationPoint::at(parse_gaussian(s));
}

inline std::vector<OsculationPoint> parse_points(const std::string& csv)
{
    std::vector<OsculationPoint> out;
    std::string cur;
    std::istringstream is(csv);
    while (std::getline(is, cur, ','))
        if (!cur.empty()) out.push_back(parse_point(cur));
    return out;
}

/// Flag basis: row j is the j-th derivative of (1, t, ..., t^{n-1}); at ∞ the
/// antidiagonal identity (standard opposite flag).
inline GMat osculating_basis(const OsculationPoint& p, int n)
{
    const auto N = static_cast<std::size_t>(n);
    GMat b(N, N);
    if (p.infinite) {
        for (std::size_t i = 0; i < N; ++i) b(i, N - 1 - i) = GaussianRational(1);
        return b;
    }
    for (std::size_t j = 0; j < N; ++j)
        for (std::size_t c = j; c < N; ++c) {
            // d^j/dt^j t^c = c!/(c-j)! t^(c-j)
            GaussianRational v(1);
            for (std::size_t f = c - j + 1; f <= c; ++f) v *= GaussianRational(static_cast<long>(f));
            for (std::size_t e = 0; e < c - j; ++e) v *= p.t;
            b(j, c) = v;
        }
    return b;
}

inline GMat flag_slice(const GMat& basis, std::size_t i)
{
    if (i < 1 || i > basis.rows) throw std::out_of_range("flag_slice index");
    return basis.top_rows(i);
}

/// Basis f with f_i spanning F_i ∩ G_{n+1-i}, for flags in general position.
inline GMat adapted_basis(const GMat& F, const GMat& G)
{
    const std::size_t n = F.rows;
    GMat out(n, n);
    for (std::size_t i = 1; i <= n; ++i) {
        // a·F_i = b·G_{n+1-i}: null space of the stacked transpose
        std::size_t g = n + 1 - i;
        GMat s(n, i + g);
        for (std::size_t c = 0; c < n; ++c) {
            for (std::size_t r = 0; r < i; ++r) s(c, r) = F(r, c);
            for (std::size_t r = 0; r < g; ++r) s(c, i + r) = -G(r, c);
        }
        GMat ns = null_space(s);
        if (ns.rows != 1) throw std::domain_error("flags are not in general position");
        // normalize: first nonzero coefficient on F_i equal to one
        GaussianRational scale(0);
        for (std::size_t r = i; r-- > 0;)
            if (!is_zero(ns(0, r))) { scale = ns(0, r); break; }
        for (std::size_t c = 0; c < n; ++c) {
            GaussianRational v(0);
            for (std::size_t r = 0; r < i; ++r) v += ns(0, r) * F(r, c);
            out(i - 1, c) = v / scale;
        }
    }
    return out;
}

/// Adapted basis for osculating flags at two distinct points; exact standard /
/// opposite bases when the points are 0 and ∞.
inline GMat pair_basis(const OsculationPoint& a, const OsculationPoint& b, int n)
{
    const auto N = static_cast<std::size_t>(n);
    if (a == b) throw std::invalid_argument("pair_basis needs distinct points");
    const OsculationPoint zero = OsculationPoint::at(GaussianRational(0));
    if (a == zero && b.infinite) return GMat::identity(N);
    if (a.infinite && b == zero) {
        GMat m(N, N);
        for (std::size_t i = 0; i < N; ++i) m(i, N - 1 - i) = GaussianRational(1);
        return m;
    }
    return adapted_basis(osculating_basis(a, n), osculating_basis(b, n));
}

/// Real Möbius map sending `zero` to 0 and `pole` to ∞, applied to t.
inline OsculationPoint mobius(const OsculationPoint& t, const OsculationPoint& zero, const OsculationPoint& pole)
{
    if (!zero.is_real() || !pole.is_real() || zero == pole) throw std::invalid_argument("mobius needs distinct real anchors");
    if (t == pole) return OsculationPoint::infinity();
    if (t == zero) return OsculationPoint::at(GaussianRational(0));
    if (pole.infinite) return OsculationPoint::at(t.t - zero.t);
    if (zero.infinite) return OsculationPoint::at(GaussianRational(1) / (t.t - pole.t));
    if (t.infinite) return OsculationPoint::at(GaussianRational(1));
    return OsculationPoint::at((t.t - zero.t) / (t.t - pole.t));
}

inline bool is_real(const GMat& m)
{
    for (auto& x : m.a)
        if (!x.is_real()) return false;
    return true;
}

inline QMat real_part(const GMat& m)
{
    QMat r(m.rows, m.cols);
    for (std::size_t i = 0; i < m.a.size(); ++i) r.a[i] = m.a[i].re;
    return r;
}

} // namespace skit

#endif
