#ifndef SKIT_BOUNDS_HPP
#define SKIT_BOUNDS_HPP

#include "combinatorics.hpp"

#include <json.hpp>

#include <optional>
#include <set>
#include <string>

namespace skit {

struct BoundReport {
    enum class Kind { Sigma, SignImbalance, Factorization, Binomial, TrivialZero };
    Kind kind;
    Integer value;
    std::string note;
};

inline const char* kind_name(BoundReport::Kind k)
{
    switch (k) {
    case BoundReport::Kind::Sigma: return "Sigma";
    case BoundReport::Kind::SignImbalance: return "SignImbalance";
    case BoundReport::Kind::Factorization: return "Factorization";
    case BoundReport::Kind::Binomial: return "Binomial";
    case BoundReport::Kind::TrivialZero: return "TrivialZero";
    }
    return "?";
}

inline nlohmann::ordered_json to_json(const BoundReport& b)
{
    nlohmann::ordered_json j;
    j["kind"] = kind_name(b.kind);
    j["value"] = b.value.fits_slong_p() ? nlohmann::ordered_json(b.value.get_si()) : nlohmann::ordered_json(b.value.get_str());
    j["note"] = b.note;
    return j;
}

/// Degree of the real Wronski map; zero when n is even.
inline Integer sigma(int k, int n)
{
    if (k < 1 || k >= n) throw std::invalid_argument("sigma needs 1 <= k < n");
    if (n % 2 == 0) return 0;
    if (k > n - k) k = n - k;
    Integer num = factorial(k * (n - k) / 2), den = 1;
    for (int i = 1; i <= k - 1; ++i) num *= factorial(i);
    for (int j = 1; j <= k - 1; ++j) num *= factorial(n - k - j);
    for (int j = 1; j <= k - 1; ++j) den *= factorial(n - 2 * k + 2 * j);
    for (int j = 0; j <= k - 1; ++j) den *= factorial((n - 2 * k + 1) / 2 + j);
    return num / den;
}

inline BoundReport sigma_report(int k, int n)
{
    if (n % 2 == 0) return {BoundReport::Kind::TrivialZero, 0, "n even: the real Wronski map has degree zero"};
    return {BoundReport::Kind::Sigma, sigma(k, n), "lower bound for problems of hypersurface conditions"};
}

/// Topological lower bound Σ(α,β) for two non-hypersurface conditions.
inline BoundReport eg_ss_bound(const SchubertCondition& alpha, const SchubertCondition& beta)
{
    return {BoundReport::Kind::SignImbalance, Integer(static_cast<long>(sign_imbalance(alpha, beta))),
            "sign imbalance of " + complement_condition(alpha).str() + "/" + beta.str()};
}

/// Number of monic real degree-(k-1) divisors of a degree-(n-2) real polynomial
/// with R real roots and (n-2-R)/2 conjugate pairs.
inline Integer factorization_count(int k, int n, int R)
{
    if (R < 0 || R > n - 2 || (n - 2 - R) % 2) throw std::invalid_argument("factorization_count: R has the wrong parity or range");
    int pairs = (n - 2 - R) / 2;
    Integer total = 0;
    for (int b = 0; 2 * b <= k - 1; ++b) total += binomial(R, k - 1 - 2 * b) * binomial(pairs, b);
    return total;
}

/// Possible real-solution counts for (ω, box^{n-1}) at osculation r.
inline std::set<long> gap_set(int k, int n, int r)
{
    if (r < 1 || r > n - 1 || (r - (n - 1)) % 2) throw std::invalid_argument("gap_set: r must satisfy r = n-1 mod 2");
    std::set<long> out;
    for (int R = r - 1; R <= n - 2; R += 2) out.insert(factorization_count(k, n, R).get_si());
    return out;
}

/// C(p+q, p) when k = 2p+1 and n = 2p+2q+2.
inline std::optional<Integer> lagrangian_binomial(int k, int n)
{
    if (k % 2 == 0 || n % 2 == 1) return std::nullopt;
    int p = (k - 1) / 2;
    int q = (n - 2 - 2 * p) / 2;
    if (q < 0) return std::nullopt;
    return binomial(p + q, p);
}

// ---------------------------------------------------------------- mod 4

struct Mod4Report {
    std::optional<int> prop_inequality_value; // unset when no admissible pair exists
    int conjecture_inequality_value = 0;
    bool applies_prop = false;
    bool applies_conjecture = false;
    std::optional<std::pair<int, int>> pair; // 1-based indices used
    std::optional<int> predicted_residue;
};

inline nlohmann::ordered_json to_json(const Mod4Report& r)
{
    nlohmann::ordered_json j;
    j["prop_inequality_value"] = r.prop_inequality_value ? nlohmann::ordered_json(*r.prop_inequality_value) : nullptr;
    j["conjecture_inequality_value"] = r.conjecture_inequality_value;
    j["applies_prop"] = r.applies_prop;
    j["applies_conjecture"] = r.applies_conjecture;
    j["pair"] = r.pair ? nlohmann::ordered_json::array({r.pair->first, r.pair->second}) : nlohmann::ordered_json(nullptr);
    j["predicted_residue"] = r.predicted_residue ? nlohmann::ordered_json(*r.predicted_residue) : nullptr;
    return j;
}

/// (i, j) may be used when the conditions differ, or a third copy exists.
inline bool mod4_pair_admissible(const SchubertProblem& p, int i, int j)
{
    if (i == j) return false;
    const auto& ci = p.conditions.at(static_cast<std::size_t>(i));
    const auto& cj = p.conditions.at(static_cast<std::size_t>(j));
    if (ci != cj) return true;
    for (int l = 0; l < static_cast<int>(p.size()); ++l)
        if (l != i && l != j && p.conditions[static_cast<std::size_t>(l)] == ci) return true;
    return false;
}

/// Pass 1-based i, j to fix the pair, or 0 to maximize over admissible pairs.
inline Mod4Report mod4_check(const SchubertProblem& p, int i = 0, int j = 0,
                             std::optional<long> complex_count = std::nullopt)
{
    if (p.n != 2 * p.k) throw std::invalid_argument("mod-4 criteria need n = 2k");
    const int m = static_cast<int>(p.size());
    const int tri = p.k * (p.k + 1) / 2;
    std::vector<int> norms;
    for (auto& c : p.conditions) {
        if (is_trivial(c)) throw std::invalid_argument("mod-4 criteria exclude trivial conditions");
        if (!is_symmetric(c)) throw std::invalid_argument("non-symmetric condition " + c.str());
        norms.push_back(sym_norm(c));
    }
    Mod4Report r;
    r.conjecture_inequality_value = -tri;
    for (int v : norms) r.conjecture_inequality_value += v;
    auto value = [&](int a, int b) {
        return m - tri + norms[static_cast<std::size_t>(a)] + norms[static_cast<std::size_t>(b)] - 2;
    };
    if (i || j) {
        if (i < 1 || j < 1 || i > m || j > m) throw std::out_of_range("mod4 pair index");
        if (mod4_pair_admissible(p, i - 1, j - 1)) {
            r.prop_inequality_value = value(i - 1, j - 1);
            r.pair = {i, j};
        }
    } else {
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b)
                if (mod4_pair_admissible(p, a, b) && (!r.prop_inequality_value || value(a, b) > *r.prop_inequality_value)) {
                    r.prop_inequality_value = value(a, b);
                    r.pair = {a + 1, b + 1};
                }
    }
    r.applies_prop = r.prop_inequality_value && *r.prop_inequality_value >= 2;
    r.applies_conjecture = r.conjecture_inequality_value >= 2;
    if (complex_count && (r.applies_prop || r.applies_conjecture))
        r.predicted_residue = static_cast<int>(((*complex_count % 4) + 4) % 4);
    return r;
}

} // namespace skit

#endif
