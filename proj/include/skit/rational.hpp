#ifndef SKIT_RATIONAL_HPP
#define SKIT_RATIONAL_HPP

#include <gmpxx.h>

#include <cctype>
#include <ostream>
#include <stdexcept>
#include <string>

namespace skit {

// GMP keeps mpq values canonical after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline Rational parse_rational(const std::string& text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    if (s[0] == '+') s.erase(0, 1);
    auto digits = [](const std::string& t, std::size_t from) {
        if (from >= t.size()) return false;
        for (std::size_t i = from; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!digits(num, num[0] == '-' ? 1 : 0) || !digits(den, 0))
        throw std::invalid_argument("bad rational literal: " + text);
    Rational q;
    q.get_num() = Integer(num);
    q.get_den() = Integer(den);
    if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator: " + text);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) {}
    GaussianRational(long r) : re(r) {}
    GaussianRational(int r) : re(r) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_real() const { return sgn(im) == 0; }

    GaussianRational& operator+=(const GaussianRational& o) { re += o.re; im += o.im; return *this; }
    GaussianRational& operator-=(const GaussianRational& o) { re -= o.re; im -= o.im; return *this; }
    GaussianRational& operator*=(const GaussianRational& o)
    {
        Rational r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o)
    {
        Rational n = o.re * o.re + o.im * o.im;
        if (sgn(n) == 0) throw std::domain_error("division by zero");
        Rational r = (re * o.re + im * o.im) / n;
        im = (im * o.re - re * o.im) / n;
        re = std::move(r);
        return *this;
    }
    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b)
    {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

inline GaussianRational conj(const GaussianRational& z) { return {z.re, -z.im}; }
inline Rational conj(const Rational& q) { return q; }
inline bool is_zero(const GaussianRational& z) { return sgn(z.re) == 0 && sgn(z.im) == 0; }

inline std::string to_string(const GaussianRational& z)
{
    if (z.is_real()) return z.re.get_str();
    std::string imag;
    Rational a = abs(z.im);
    imag = (a == 1 ? std::string() : a.get_str()) + "i";
    if (sgn(z.re) == 0) return (sgn(z.im) < 0 ? "-" : "") + imag;
    return z.re.get_str() + (sgn(z.im) < 0 ? "-" : "+") + imag;
}

// Accepts "3/2", "1+2i", "-1/3-1/2i", "2i", "-i".
inline GaussianRational parse_gaussian(const std::string& text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty literal");
    if (s.back() != 'i') return parse_rational(s);
    s.pop_back();
    // split at the last sign that is not the leading character
    std::size_t cut = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;)
        if (s[i] == '+' || s[i] == '-') { cut = i; break; }
    std::string re_part = cut == std::string::npos ? "" : s.substr(0, cut);
    std::string im_part = cut == std::string::npos ? s : s.substr(cut);
    if (im_part.empty() || im_part == "+") im_part = "1";
    else if (im_part == "-") im_part = "-1";
    Rational re = re_part.empty() ? Rational(0) : parse_rational(re_part);
    return {re, parse_rational(im_part)};
}

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << to_string(z); }

} // namespace skit

#endif
