#ifndef SKIT_COMBINATORICS_HPP
#define SKIT_COMBINATORICS_HPP

#include "rational.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <string>
#include <vector>

namespace skit {

/// Strictly increasing k-subset of {1..n}.
struct SchubertCondition {
    int n = 0;
    std::vector<int> a; // 1-based entries

    SchubertCondition() = default;
    SchubertCondition(int n_, std::vector<int> entries) : n(n_), a(std::move(entries))
    {
        if (a.empty() || static_cast<int>(a.size()) >= n) throw std::invalid_argument("condition needs 1 <= k < n");
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] < 1 || a[i] > n) throw std::invalid_argument("condition entry out of range");
            if (i && a[i] <= a[i - 1]) throw std::invalid_argument("condition entries must increase");
        }
    }
    int k() const { return static_cast<int>(a.size()); }
    int operator[](int i) const { return a.at(static_cast<std::size_t>(i - 1)); } // 1-based

    friend bool operator==(const SchubertCondition& x, const SchubertCondition& y) { return x.n == y.n && x.a == y.a; }
    friend bool operator!=(const SchubertCondition& x, const SchubertCondition& y) { return !(x == y); }
    friend bool operator<(const SchubertCondition& x, const SchubertCondition& y)
    {
        return std::tie(x.n, x.a) < std::tie(y.n, y.a);
    }
    std::string str() const
    {
        std::string s = "(";
        for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
        return s + ")";
    }
};

inline SchubertCondition trivial_condition(int k, int n)
{
    std::vector<int> v(static_cast<std::size_t>(k));
    std::iota(v.begin(), v.end(), n - k + 1);
    return {n, v};
}

/// Codimension-one condition: d(α) is a single box.
inline SchubertCondition hypersurface_condition(int k, int n)
{
    std::vector<int> v;
    v.push_back(n - k);
    for (int i = 2; i <= k; ++i) v.push_back(n - k + i);
    return {n, v};
}

/// The condition (2, 3, ..., k, n).
inline SchubertCondition omega_condition(int k, int n)
{
    std::vector<int> v;
    for (int i = 2; i <= k; ++i) v.push_back(i);
    v.push_back(n);
    return {n, v};
}

/// Row lengths of d(α): row i has n-k+i-α_i boxes.
inline std::vector<int> diagram(const SchubertCondition& al)
{
    std::vector<int> rows;
    for (int i = 1; i <= al.k(); ++i) rows.push_back(al.n - al.k() + i - al[i]);
    return rows;
}

inline SchubertCondition from_diagram(int k, int n, std::vector<int> rows)
{
    rows.resize(static_cast<std::size_t>(k), 0);
    std::vector<int> v;
    for (int i = 1; i <= k; ++i) v.push_back(n - k + i - rows[static_cast<std::size_t>(i - 1)]);
    return {n, v};
}

inline int codim(const SchubertCondition& al)
{
    int s = al.k() * (al.n - al.k());
    for (int i = 1; i <= al.k(); ++i) s -= al[i] - i;
    return s;
}

/// dim X_α = Σ(α_i - i).
inline int dimension(const SchubertCondition& al) { return al.k() * (al.n - al.k()) - codim(al); }

inline bool is_trivial(const SchubertCondition& al) { return codim(al) == 0; }
inline bool is_hypersurface(const SchubertCondition& al) { return codim(al) == 1; }

/// α' with α'_i = n+1-α_{k+1-i}.
inline SchubertCondition complement_condition(const SchubertCondition& al)
{
    std::vector<int> v;
    for (int i = 1; i <= al.k(); ++i) v.push_back(al.n + 1 - al[al.k() + 1 - i]);
    return {al.n, v};
}

/// α^⊥ in the dual Grassmannian: first n-k entries of ω σ(α) ω.
inline SchubertCondition dual(const SchubertCondition& al)
{
    const int n = al.n;
    std::vector<int> perm(al.a);
    for (int j = 1; j <= n; ++j)
        if (!std::binary_search(al.a.begin(), al.a.end(), j)) perm.push_back(j);
    std::vector<int> v;
    for (int i = 1; i <= n - al.k(); ++i) v.push_back(n + 1 - perm[static_cast<std::size_t>(n - i)]);
    std::sort(v.begin(), v.end());
    return {n, v};
}

inline void require_same_shape(const SchubertCondition& x, const SchubertCondition& y)
{
    if (x.n != y.n || x.k() != y.k()) throw std::invalid_argument("conditions live in different Grassmannians");
}

/// Componentwise Bruhat order.
inline bool bruhat_leq(const SchubertCondition& x, const SchubertCondition& y)
{
    require_same_shape(x, y);
    for (int i = 1; i <= x.k(); ++i)
        if (x[i] > y[i]) return false;
    return true;
}

inline void for_each_condition(int k, int n, const std::function<void(const SchubertCondition&)>& f)
{
    std::vector<int> v(static_cast<std::size_t>(k));
    std::iota(v.begin(), v.end(), 1);
    for (;;) {
        f(SchubertCondition(n, v));
        int i = k;
        while (i > 0 && v[static_cast<std::size_t>(i - 1)] == n - k + i) --i;
        if (i == 0) return;
        ++v[static_cast<std::size_t>(i - 1)];
        for (int j = i; j < k; ++j) v[static_cast<std::size_t>(j)] = v[static_cast<std::size_t>(j - 1)] + 1;
    }
}

/// #{β : β ≰ α}, the number of independent determinantal equations for X_α.
inline int count_not_leq(const SchubertCondition& al)
{
    int count = 0;
    for_each_condition(al.k(), al.n, [&](const SchubertCondition& b) {
        if (!bruhat_leq(b, al)) ++count;
    });
    return count;
}

/// ℓ(α): number of entries no greater than k.
inline int length(const SchubertCondition& al)
{
    return static_cast<int>(std::count_if(al.a.begin(), al.a.end(), [&](int x) { return x <= al.k(); }));
}

inline bool is_symmetric(const SchubertCondition& al)
{
    if (al.n != 2 * al.k()) throw std::invalid_argument("symmetry needs n = 2k");
    return dual(al) == al;
}

/// ||α|| = (|α| + ℓ(α)) / 2 for symmetric α.
inline int sym_norm(const SchubertCondition& al)
{
    if (!is_symmetric(al)) throw std::invalid_argument("sym_norm of a non-symmetric condition");
    return (codim(al) + length(al)) / 2;
}

inline std::string render_diagram(const SchubertCondition& al)
{
    std::string s;
    for (int r : diagram(al)) {
        if (r == 0) continue;
        for (int j = 0; j < r; ++j) s += "[]";
        s += "\n";
    }
    return s.empty() ? "(empty)\n" : s;
}

// ---------------------------------------------------------------- problems

struct SchubertProblem {
    int k = 0, n = 0;
    std::vector<SchubertCondition> conditions;

    SchubertProblem() = default;
    SchubertProblem(int k_, int n_, std::vector<SchubertCondition> c) : k(k_), n(n_), conditions(std::move(c))
    {
        if (k < 1 || k >= n) throw std::invalid_argument("problem needs 1 <= k < n");
        for (auto& x : conditions)
            if (x.n != n || x.k() != k) throw std::invalid_argument("condition dimensions disagree with problem");
    }
    std::size_t size() const { return conditions.size(); }

    /// Distinct conditions with multiplicities, in order of first appearance.
    std::vector<std::pair<SchubertCondition, int>> compressed() const
    {
        std::vector<std::pair<SchubertCondition, int>> out;
        for (auto& c : conditions) {
            auto it = std::find_if(out.begin(), out.end(), [&](auto& p) { return p.first == c; });
            if (it == out.end()) out.emplace_back(c, 1);
            else ++it->second;
        }
        return out;
    }
};

struct ProblemCheck {
    int sum_codim;
    bool is_problem;
};

inline ProblemCheck validate_problem(const SchubertProblem& p)
{
    int s = 0;
    for (auto& c : p.conditions) {
        if (c.n != p.n || c.k() != p.k) throw std::invalid_argument("condition dimensions disagree with problem");
        s += codim(c);
    }
    return {s, s == p.k * (p.n - p.k)};
}

inline nlohmann::ordered_json to_json(const SchubertProblem& p)
{
    nlohmann::ordered_json j;
    j["k"] = p.k;
    j["n"] = p.n;
    j["conditions"] = nlohmann::json::array();
    for (auto& c : p.conditions) j["conditions"].push_back(c.a);
    return j;
}

inline SchubertProblem problem_from_json(const nlohmann::json& j)
{
    int k = j.at("k").get<int>(), n = j.at("n").get<int>();
    std::vector<SchubertCondition> cs;
    for (auto& c : j.at("conditions")) cs.emplace_back(n, c.get<std::vector<int>>());
    return {k, n, cs};
}

/// Per distinct condition, the number of real osculation points.
struct OsculationType {
    std::vector<std::pair<SchubertCondition, int>> real_points;

    int for_condition(const SchubertCondition& c) const
    {
        for (auto& [x, r] : real_points)
            if (x == c) return r;
        throw std::invalid_argument("condition missing from osculation type");
    }
    void check_against(const SchubertProblem& p) const
    {
        for (auto& [c, mult] : p.compressed()) {
            int r = for_condition(c);
            if (r < 0 || r > mult || (mult - r) % 2)
                throw std::invalid_argument("osculation type has the wrong parity for " + c.str());
        }
    }
    std::string label() const
    {
        std::string s;
        for (auto& [c, r] : real_points) s += (s.empty() ? "" : " ") + c.str() + ":" + std::to_string(r);
        return s;
    }
};

// ---------------------------------------------------------------- tableaux

/// Skew diagram outer/inner, both weakly decreasing with inner ≤ outer.
struct SkewDiagram {
    std::vector<int> outer, inner;

    SkewDiagram() = default;
    SkewDiagram(std::vector<int> o, std::vector<int> i = {}) : outer(std::move(o)), inner(std::move(i))
    {
        inner.resize(outer.size(), 0);
        for (std::size_t r = 0; r < outer.size(); ++r) {
            if (inner[r] < 0 || inner[r] > outer[r]) throw std::invalid_argument("inner row exceeds outer row");
            if (r && (outer[r] > outer[r - 1] || inner[r] > inner[r - 1]))
                throw std::invalid_argument("diagram rows must weakly decrease");
        }
    }
    int box_count() const
    {
        int s = 0;
        for (std::size_t r = 0; r < outer.size(); ++r) s += outer[r] - inner[r];
        return s;
    }
    bool is_straight() const
    {
        return std::all_of(inner.begin(), inner.end(), [](int x) { return x == 0; });
    }
    /// Boxes (row, col), 0-based, in reading order.
    std::vector<std::pair<int, int>> boxes() const
    {
        std::vector<std::pair<int, int>> b;
        for (std::size_t r = 0; r < outer.size(); ++r)
            for (int c = inner[r]; c < outer[r]; ++c) b.emplace_back(static_cast<int>(r), c);
        return b;
    }
};

inline SkewDiagram rectangle(int rows, int cols)
{
    return SkewDiagram(std::vector<int>(static_cast<std::size_t>(rows), cols));
}

/// λ(p,q): a column of p boxes to the right of a p×q block, over a row of q boxes.
inline SkewDiagram lambda_shape(int p, int q)
{
    std::vector<int> outer(static_cast<std::size_t>(p), q + 1), inner(static_cast<std::size_t>(p), q);
    outer.push_back(q);
    inner.push_back(0);
    return {outer, inner};
}

struct Tableau {
    SkewDiagram shape;
    std::vector<int> filling; // aligned with shape.boxes()
};

/// Visits every standard tableau; boxes are filled 1..N, each value going to
/// the first available box in reading order at its branch.
inline void for_each_syt(const SkewDiagram& d, const std::function<void(const std::vector<int>&)>& visit)
{
    const auto boxes = d.boxes();
    const std::size_t N = boxes.size();
    std::map<std::pair<int, int>, std::size_t> index;
    for (std::size_t i = 0; i < N; ++i) index[boxes[i]] = i;
    std::vector<int> fill(N, 0);
    auto ready = [&](std::size_t b) {
        auto [r, c] = boxes[b];
        if (c > d.inner[static_cast<std::size_t>(r)] && fill[index.at({r, c - 1})] == 0) return false;
        if (r > 0 && c >= d.inner[static_cast<std::size_t>(r - 1)] && fill[index.at({r - 1, c})] == 0) return false;
        return true;
    };
    std::function<void(int)> place = [&](int v) {
        if (v > static_cast<int>(N)) {
            visit(fill);
            return;
        }
        for (std::size_t b = 0; b < N; ++b) {
            if (fill[b] || !ready(b)) continue;
            fill[b] = v;
            place(v + 1);
            fill[b] = 0;
        }
    };
    place(1);
}

inline std::vector<Tableau> enumerate_syt(const SkewDiagram& d)
{
    std::vector<Tableau> out;
    for_each_syt(d, [&](const std::vector<int>& f) { out.push_back({d, f}); });
    return out;
}

/// Parity of the reading word relative to the standard filling.
inline int word_sign(const std::vector<int>& w)
{
    int inv = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j)
            if (w[i] > w[j]) ++inv;
    return inv % 2 ? -1 : 1;
}

inline int tableau_sign(const Tableau& t) { return word_sign(t.filling); }

inline long long signed_syt_sum(const SkewDiagram& d)
{
    long long s = 0;
    for_each_syt(d, [&](const std::vector<int>& f) { s += word_sign(f); });
    return s;
}

inline long long syt_count(const SkewDiagram& d)
{
    long long s = 0;
    for_each_syt(d, [&](const std::vector<int>&) { ++s; });
    return s;
}

/// Shape d(α')/d(β); requires α' ≤ β.
inline SkewDiagram skew_shape(const SchubertCondition& alpha, const SchubertCondition& beta)
{
    SchubertCondition ap = complement_condition(alpha);
    if (!bruhat_leq(ap, beta)) throw std::invalid_argument("skew shape undefined: complement not below beta");
    return SkewDiagram(diagram(ap), diagram(beta));
}

/// Σ(α,β) = |Σ_T sign(T)| over SYT(d(α')/d(β)).
inline long long sign_imbalance(const SchubertCondition& alpha, const SchubertCondition& beta)
{
    long long s = signed_syt_sum(skew_shape(alpha, beta));
    return s < 0 ? -s : s;
}

inline Integer factorial(long n)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

inline Integer binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

/// Hook length formula on a straight shape.
inline Integer hook_count(const SkewDiagram& d)
{
    if (!d.is_straight()) throw std::invalid_argument("hook formula needs a straight shape");
    Integer denom = 1;
    for (std::size_t r = 0; r < d.outer.size(); ++r)
        for (int c = 0; c < d.outer[r]; ++c) {
            int below = 0;
            for (std::size_t r2 = r + 1; r2 < d.outer.size() && d.outer[r2] > c; ++r2) ++below;
            denom *= d.outer[r] - c + below;
        }
    return factorial(d.box_count()) / denom;
}

/// Number of k-planes meeting k² general (k)-planes in 2k-space.
inline Integer schubert_number(int k)
{
    if (k < 1) throw std::invalid_argument("schubert_number needs k >= 1");
    Integer num = factorial(static_cast<long>(k) * k), den = 1;
    for (int i = 1; i < k; ++i) num *= factorial(i);
    for (int i = k; i < 2 * k; ++i) den *= factorial(i);
    return num / den;
}

} // namespace skit

#endif
