#ifndef SKIT_TEST_SUPPORT_HPP
#define SKIT_TEST_SUPPORT_HPP

#include <skit/algebra.hpp>

#include <random>

namespace skit::testing {

inline Rational small_rational(std::mt19937_64& rng, int num = 9, int den = 5)
{
    std::uniform_int_distribution<int> n(-num, num), d(1, den);
    Rational q(n(rng), d(rng));
    q.canonicalize();
    return q;
}

inline QPoly random_poly(std::mt19937_64& rng, std::size_t nvars, int terms, int maxdeg)
{
    std::uniform_int_distribution<int> e(0, maxdeg);
    QPoly p(nvars);
    for (int t = 0; t < terms; ++t) {
        Monomial m(nvars);
        for (auto& x : m) x = static_cast<std::uint16_t>(e(rng));
        p.add_term(m, small_rational(rng));
    }
    return p;
}

} // namespace skit::testing

#endif
