#ifndef SKIT_POLY_HPP
#define SKIT_POLY_HPP

#include "rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace skit {

using Monomial = std::vector<std::uint16_t>;

// Lex order with the LAST variable largest: compare exponents from the end.
struct LexLess {
    bool operator()(const Monomial& a, const Monomial& b) const
    {
        for (std::size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
};

inline bool divides(const Monomial& a, const Monomial& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline unsigned total_degree(const Monomial& m)
{
    unsigned d = 0;
    for (auto e : m) d += e;
    return d;
}

/**
 * Sparse polynomial in a fixed number of variables. Terms are keyed by exponent
 * vector in lex order; zero coefficients are never stored.
 */
template <class T>
class MultiPoly {
public:
    using Terms = std::map<Monomial, T, LexLess>;

    MultiPoly() = default;
    explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}
    MultiPoly(std::size_t nvars, const T& c) : nvars_(nvars)
    {
        if (!skit::is_zero(c)) terms_.emplace(Monomial(nvars, 0), c);
    }

    static MultiPoly variable(std::size_t nvars, std::size_t i)
    {
        if (i >= nvars) throw std::out_of_range("variable index");
        MultiPoly p(nvars);
        Monomial m(nvars, 0);
        m[i] = 1;
        p.terms_.emplace(std::move(m), T(1));
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    bool is_constant() const
    {
        return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
    }
    T constant_term() const
    {
        auto it = terms_.find(Monomial(nvars_, 0));
        return it == terms_.end() ? T(0) : it->second;
    }

    const Monomial& leading_monomial() const { return terms_.rbegin()->first; }
    const T& leading_coefficient() const { return terms_.rbegin()->second; }

    unsigned degree() const
    {
        unsigned d = 0;
        for (auto& [m, c] : terms_) d = std::max(d, total_degree(m));
        return d;
    }
    unsigned degree_in(std::size_t var) const
    {
        unsigned d = 0;
        for (auto& [m, c] : terms_) d = std::max<unsigned>(d, m[var]);
        return d;
    }
    // total degree restricted to variables [first, first+count)
    unsigned degree_in_block(std::size_t first, std::size_t count) const
    {
        unsigned d = 0;
        for (auto& [m, c] : terms_) {
            unsigned s = 0;
            for (std::size_t i = first; i < first + count; ++i) s += m[i];
            d = std::max(d, s);
        }
        return d;
    }

    void add_term(const Monomial& m, const T& c)
    {
        if (m.size() != nvars_) throw std::invalid_argument("monomial arity mismatch");
        if (skit::is_zero(c)) return;
        auto [it, fresh] = terms_.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (skit::is_zero(it->second)) terms_.erase(it);
        }
    }

    MultiPoly& operator+=(const MultiPoly& o)
    {
        check(o);
        for (auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o)
    {
        check(o);
        for (auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    MultiPoly& operator*=(const T& s)
    {
        if (skit::is_zero(s)) { terms_.clear(); return *this; }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator-(MultiPoly a)
    {
        for (auto& [m, c] : a.terms_) c = -c;
        return a;
    }
    friend MultiPoly operator*(MultiPoly a, const T& s) { return a *= s; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b)
    {
        a.check(b);
        MultiPoly r(a.nvars_);
        Monomial m(a.nvars_);
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_) {
                for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
                r.add_term(m, ca * cb);
            }
        return r;
    }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b)
    {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    MultiPoly derivative(std::size_t var) const
    {
        MultiPoly r(nvars_);
        for (auto& [m, c] : terms_) {
            if (m[var] == 0) continue;
            Monomial d = m;
            --d[var];
            r.add_term(d, c * T(static_cast<long>(m[var])));
        }
        return r;
    }

    template <class V>
    V evaluate(const std::vector<V>& x) const
    {
        if (x.size() != nvars_) throw std::invalid_argument("evaluation arity mismatch");
        V total{};
        for (auto& [m, c] : terms_) {
            V t = coefficient_as<V>(c);
            for (std::size_t i = 0; i < nvars_; ++i)
                for (unsigned e = 0; e < m[i]; ++e) t *= x[i];
            total += t;
        }
        return total;
    }

    // Substitute each variable by a polynomial in a (possibly different) ring.
    MultiPoly substitute(const std::vector<MultiPoly>& images) const
    {
        if (images.size() != nvars_) throw std::invalid_argument("substitution arity mismatch");
        std::size_t out = images.empty() ? 0 : images[0].nvars();
        MultiPoly r(out);
        for (auto& [m, c] : terms_) {
            MultiPoly t(out, c);
            for (std::size_t i = 0; i < nvars_; ++i)
                for (unsigned e = 0; e < m[i]; ++e) t *= images[i];
            r += t;
        }
        return r;
    }

    // Re-embed in a ring with more variables: variable i goes to position map[i].
    MultiPoly remap(std::size_t new_nvars, const std::vector<std::size_t>& map) const
    {
        MultiPoly r(new_nvars);
        for (auto& [m, c] : terms_) {
            Monomial d(new_nvars, 0);
            for (std::size_t i = 0; i < nvars_; ++i) d[map[i]] += m[i];
            r.add_term(d, c);
        }
        return r;
    }

private:
    template <class V>
    static V coefficient_as(const T& c)
    {
        if constexpr (std::is_same_v<T, Rational>) {
            if constexpr (std::is_same_v<V, Rational> || std::is_same_v<V, GaussianRational>) return V(c);
            else return V(c.get_d());
        } else {
            if constexpr (std::is_same_v<V, GaussianRational>) return c;
            else return V(c.re.get_d(), c.im.get_d());
        }
    }
    void check(const MultiPoly& o) const
    {
        if (o.nvars_ != nvars_) throw std::invalid_argument("polynomial ring mismatch");
    }

    std::size_t nvars_ = 0;
    Terms terms_;
};

using QPoly = MultiPoly<Rational>;
using GPoly = MultiPoly<GaussianRational>;

inline GPoly to_gaussian(const QPoly& p)
{
    GPoly r(p.nvars());
    for (auto& [m, c] : p.terms()) r.add_term(m, GaussianRational(c));
    return r;
}

inline std::pair<QPoly, QPoly> split_real_imag(const GPoly& p)
{
    QPoly re(p.nvars()), im(p.nvars());
    for (auto& [m, c] : p.terms()) {
        re.add_term(m, c.re);
        im.add_term(m, c.im);
    }
    return {re, im};
}

inline GPoly conj(const GPoly& p)
{
    GPoly r(p.nvars());
    for (auto& [m, c] : p.terms()) r.add_term(m, conj(c));
    return r;
}

/// Clear denominators and content; leading coefficient made positive.
inline QPoly primitive_part(const QPoly& p)
{
    if (p.is_zero()) return p;
    Integer l = 1, g = 0;
    for (auto& [m, c] : p.terms()) l = lcm(l, Integer(c.get_den()));
    for (auto& [m, c] : p.terms()) g = gcd(g, Integer(c.get_num() * (l / c.get_den())));
    Rational s = Rational(l) / Rational(g);
    if (sgn(p.leading_coefficient()) < 0) s = -s;
    return p * s;
}

// ---------------------------------------------------------------- text form

namespace detail {
template <class T>
std::string coefficient_text(const T& c, bool& negative)
{
    if constexpr (std::is_same_v<T, Rational>) {
        negative = sgn(c) < 0;
        return Rational(abs(c)).get_str();
    } else {
        if (c.is_real()) {
            negative = sgn(c.re) < 0;
            return Rational(abs(c.re)).get_str();
        }
        negative = false;
        return "(" + to_string(c) + ")";
    }
}
} // namespace detail

inline std::vector<std::string> default_names(std::size_t n)
{
    std::vector<std::string> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back("x" + std::to_string(i + 1));
    return v;
}

/// Canonical text: terms in decreasing lex order, e.g. "3/2*x1^2*x3 - 1".
template <class T>
std::string to_string(const MultiPoly<T>& p, const std::vector<std::string>& names)
{
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        bool neg = false;
        std::string coef = detail::coefficient_text(c, neg);
        if (first) os << (neg ? "-" : "");
        else os << (neg ? " - " : " + ");
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += names.at(i);
            if (m[i] > 1) mono += "^" + std::to_string(m[i]);
        }
        if (mono.empty()) os << coef;
        else if (coef == "1") os << mono;
        else os << coef << "*" << mono;
    }
    return os.str();
}

template <class T>
std::string to_string(const MultiPoly<T>& p)
{
    return to_string(p, default_names(p.nvars()));
}

/// Parser for the canonical text form (rational coefficients).
inline QPoly parse_poly(const std::string& text, const std::vector<std::string>& names)
{
    const std::size_t n = names.size();
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("polynomial parse error at " + std::to_string(pos) + ": " + why);
    };
    auto read_int = [&]() {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) fail("expected digits");
        return text.substr(start, pos - start);
    };
    QPoly result(n);
    bool expect_term = true;
    int sign = 1;
    skip();
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
        sign = text[pos] == '-' ? -1 : 1;
        ++pos;
    }
    while (expect_term) {
        Rational coef(sign);
        Monomial mono(n, 0);
        bool have_factor = false;
        for (;;) {
            skip();
            if (pos >= text.size()) fail("unexpected end");
            if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
                std::string num = read_int();
                std::string den = "1";
                skip();
                if (pos < text.size() && text[pos] == '/') {
                    ++pos;
                    skip();
                    den = read_int();
                }
                coef *= parse_rational(num + "/" + den);
            } else if (std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_') {
                std::size_t start = pos;
                while (pos < text.size() &&
                       (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
                    ++pos;
                std::string name = text.substr(start, pos - start);
                auto it = std::find(names.begin(), names.end(), name);
                if (it == names.end()) fail("unknown variable " + name);
                unsigned e = 1;
                skip();
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    skip();
                    e = static_cast<unsigned>(std::stoul(read_int()));
                }
                mono[static_cast<std::size_t>(it - names.begin())] += static_cast<std::uint16_t>(e);
            } else {
                fail("expected factor");
            }
            have_factor = true;
            skip();
            if (pos < text.size() && text[pos] == '*') { ++pos; continue; }
            break;
        }
        if (!have_factor) fail("empty term");
        result.add_term(mono, coef);
        skip();
        if (pos >= text.size()) break;
        if (text[pos] == '+' || text[pos] == '-') {
            sign = text[pos] == '-' ? -1 : 1;
            ++pos;
        } else {
            fail("expected + or -");
        }
    }
    return result;
}

// ------------------------------------------------------------- univariate

/// Dense univariate polynomial, ascending coefficients. The zero polynomial is empty.
template <class T>
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<T> c, std::string var = "t") : c_(std::move(c)), var_(std::move(var)) { trim(); }
    static UniPoly monomial(const T& c, std::size_t d)
    {
        std::vector<T> v(d + 1, T(0));
        v[d] = c;
        return UniPoly(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const std::vector<T>& coefficients() const { return c_; }
    T coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
    const T& leading() const { return c_.back(); }
    const std::string& var() const { return var_; }
    void set_var(std::string v) { var_ = std::move(v); }

    UniPoly& operator+=(const UniPoly& o)
    {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    UniPoly& operator-=(const UniPoly& o)
    {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator-(UniPoly a)
    {
        for (auto& x : a.c_) x = -x;
        return a;
    }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b)
    {
        if (a.is_zero() || b.is_zero()) return UniPoly({}, a.var_);
        std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return UniPoly(std::move(r), a.var_);
    }
    friend UniPoly operator*(UniPoly a, const T& s)
    {
        for (auto& x : a.c_) x *= s;
        a.trim();
        return a;
    }
    UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

    T operator()(const T& x) const
    {
        T r(0);
        for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

    UniPoly derivative() const
    {
        if (c_.size() <= 1) return UniPoly({}, var_);
        std::vector<T> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * T(static_cast<long>(i));
        return UniPoly(std::move(r), var_);
    }

    /// Euclidean division over a field.
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const
    {
        if (d.is_zero()) throw std::domain_error("division by zero polynomial");
        UniPoly rem = *this;
        if (rem.degree() < d.degree()) return {UniPoly({}, var_), rem};
        std::vector<T> q(rem.c_.size() - d.c_.size() + 1, T(0));
        while (!rem.is_zero() && rem.degree() >= d.degree()) {
            std::size_t shift = static_cast<std::size_t>(rem.degree() - d.degree());
            T f = rem.leading() / d.leading();
            q[shift] = f;
            for (std::size_t i = 0; i < d.c_.size(); ++i) rem.c_[i + shift] -= f * d.c_[i];
            rem.trim();
        }
        return {UniPoly(std::move(q), var_), rem};
    }

    UniPoly monic() const
    {
        if (is_zero()) return *this;
        UniPoly r = *this;
        T l = leading();
        for (auto& x : r.c_) x /= l;
        return r;
    }

    std::string str() const
    {
        if (is_zero()) return "0";
        std::vector<std::string> names{var_};
        MultiPoly<T> p(1);
        for (std::size_t i = 0; i < c_.size(); ++i) p.add_term(Monomial{static_cast<std::uint16_t>(i)}, c_[i]);
        return to_string(p, names);
    }

private:
    void trim()
    {
        while (!c_.empty() && skit::is_zero(c_.back())) c_.pop_back();
    }
    std::vector<T> c_;
    std::string var_ = "t";
};

using QUni = UniPoly<Rational>;

/// Monic gcd; gcd(f, 0) = monic f.
template <class T>
UniPoly<T> gcd_uni(UniPoly<T> a, UniPoly<T> b)
{
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Univariate view of a polynomial that only involves variable `var`.
inline QUni to_univariate(const QPoly& p, std::size_t var, std::string name = "t")
{
    std::vector<Rational> c(p.degree_in(var) + 1, Rational(0));
    for (auto& [m, coef] : p.terms()) {
        for (std::size_t i = 0; i < m.size(); ++i)
            if (i != var && m[i] != 0) throw std::invalid_argument("polynomial is not univariate");
        c[m[var]] += coef;
    }
    return QUni(std::move(c), std::move(name));
}

/// Integer-primitive multiple with positive leading coefficient.
inline QUni primitive_part(const QUni& f)
{
    if (f.is_zero()) return f;
    Integer l = 1, g = 0;
    for (auto& c : f.coefficients()) l = lcm(l, Integer(c.get_den()));
    for (auto& c : f.coefficients()) g = gcd(g, Integer(c.get_num() * (l / c.get_den())));
    Rational s = Rational(l) / Rational(g);
    if (sgn(f.leading()) < 0) s = -s;
    return f * s;
}

} // namespace skit

#endif
