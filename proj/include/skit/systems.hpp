#ifndef SKIT_SYSTEMS_HPP
#define SKIT_SYSTEMS_HPP

#include "geometry.hpp"

#include <json.hpp>

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace skit {

struct InstanceSpec {
    SchubertProblem problem;
    std::vector<OsculationPoint> points;
};

inline void validate_instance(const InstanceSpec& s)
{
    if (s.points.size() != s.problem.size()) throw std::invalid_argument("one osculation point per condition required");
    for (std::size_t i = 0; i < s.points.size(); ++i)
        for (std::size_t j = i + 1; j < s.points.size(); ++j)
            if (s.points[i] == s.points[j])
                throw std::invalid_argument("osculation points must be distinct (" + to_string(s.points[i]) + ")");
}

/// Every nonreal point has its conjugate attached to the same condition.
inline bool is_conjugate_stable(const InstanceSpec& s)
{
    for (std::size_t i = 0; i < s.points.size(); ++i) {
        if (s.points[i].is_real()) continue;
        bool found = false;
        for (std::size_t j = 0; j < s.points.size() && !found; ++j)
            found = s.points[j] == conj(s.points[i]) && s.problem.conditions[j] == s.problem.conditions[i];
        if (!found) return false;
    }
    return true;
}

/// 1-based indices of the rank conditions that are not implied by the others.
inline std::vector<int> relevant_conditions(const SchubertCondition& a)
{
    std::vector<int> out;
    const int k = a.k();
    for (int i = 1; i <= k; ++i) {
        if (i < k && a[i + 1] == a[i] + 1) continue;
        if (i == k && a[k] == a.n) continue;
        out.push_back(i);
    }
    return out;
}

/// A coordinate block of a system: primal chart (H = M·basis) or dual chart
/// (annihilator columns = basis·M̂). A realified block stores M̂ = U + iW for
/// the point t; its conjugate partner is implied.
struct SystemBlock {
    enum class Kind { Primal, Dual, DualRealified };
    Kind kind;
    std::vector<std::size_t> conditions; // 0-based indices covered
    CoordPattern pattern;
    GMat basis;
    GMat basis_conj; // DualRealified only
    std::size_t first = 0, count = 0;
};

struct PolySystem {
    std::vector<std::string> variables;
    std::vector<QPoly> equations;
    std::string formulation;
    std::vector<SystemBlock> blocks;
    std::optional<long> independent_count;
    std::size_t bilinear_count = 0, determinantal_count = 0;

    std::size_t nvars() const { return variables.size(); }
};

struct SystemStats {
    std::size_t num_equations = 0, num_variables = 0;
    std::vector<int> degrees; // sorted
    bool is_square = false;
};

inline SystemStats stats(const PolySystem& s)
{
    SystemStats r;
    r.num_equations = s.equations.size();
    r.num_variables = s.nvars();
    for (auto& e : s.equations) r.degrees.push_back(e.degree());
    std::sort(r.degrees.begin(), r.degrees.end());
    r.is_square = r.num_equations == r.num_variables;
    return r;
}

enum class ChartKind { Grassmannian, Schubert, Pair };

struct ChartChoice {
    ChartKind kind = ChartKind::Pair;
    std::optional<SchubertCondition> beta; // Grassmannian chart S(β); defaults to [k]
};

namespace detail {

inline void require_real_point(const OsculationPoint& p)
{
    if (!p.is_real()) throw std::domain_error("chart conditions need real osculation points, got " + to_string(p));
}

/// Normalized, deduplicated equation sink.
class EquationSink {
public:
    explicit EquationSink(std::vector<QPoly>& out) : out_(out)
    {
        for (auto& e : out_) seen_.insert(to_string(e));
    }
    bool add(const QPoly& p)
    {
        if (p.is_zero()) return false;
        QPoly q = primitive_part(p);
        if (!seen_.insert(to_string(q)).second) return false;
        out_.push_back(std::move(q));
        return true;
    }

private:
    std::vector<QPoly>& out_;
    std::set<std::string> seen_;
};

/// All r_i × r_i minors of [H; F_{α_i}(t)] over the relevant i.
inline std::size_t add_minors(EquationSink& sink, const GExactMatrix& H, const SchubertCondition& a,
                              const OsculationPoint& t)
{
    const std::size_t k = H.rows(), nv = H.nvars();
    GMat F = osculating_basis(t, a.n);
    std::size_t added = 0;
    for (int i : relevant_conditions(a)) {
        const auto ai = static_cast<std::size_t>(a[i]);
        GExactMatrix S = H.stack(GExactMatrix::from_scalars(flag_slice(F, ai), nv));
        const std::size_t r = k + ai - static_cast<std::size_t>(i) + 1;
        auto rowsets = subsets(S.rows(), r), colsets = subsets(S.cols(), r);
        for (auto& rs : rowsets) {
            for (auto& cs : colsets) {
                GPoly m = minor(S, rs, cs);
                auto [re, im] = split_real_imag(m);
                added += sink.add(re);
                added += sink.add(im);
            }
        }
    }
    return added;
}

inline GExactMatrix primal_matrix(const SystemBlock& b, std::size_t nvars)
{
    return b.pattern.instantiate<GaussianRational>(nvars, b.first).times(b.basis);
}

/// Dual block variables as a polynomial n×(n-k) matrix; U + iW for realified blocks.
inline GExactMatrix dual_matrix(const SystemBlock& b, std::size_t nvars)
{
    const auto& p = b.pattern;
    GExactMatrix m(p.rows, p.cols, nvars);
    const std::size_t half = b.kind == SystemBlock::Kind::DualRealified ? b.count / 2 : b.count;
    for (std::size_t i = 0; i < p.rows; ++i)
        for (std::size_t j = 0; j < p.cols; ++j) {
            const auto& e = p.at(i, j);
            if (e.kind == CoordPattern::Kind::One) m(i, j) = GPoly(nvars, GaussianRational(1));
            else if (e.kind == CoordPattern::Kind::Var) {
                auto v = static_cast<std::size_t>(e.var);
                m(i, j) = GPoly::variable(nvars, b.first + v);
                if (b.kind == SystemBlock::Kind::DualRealified)
                    m(i, j) += GPoly::variable(nvars, b.first + half + v) * GaussianRational(0, 1);
            }
        }
    return m;
}

inline void name_variables(PolySystem& s)
{
    s.variables = default_names(s.variables.size());
}

/// Bilinear equations H·N = 0 for every dual block against the primal block.
inline void add_bilinear(PolySystem& s)
{
    const std::size_t nv = s.nvars();
    GExactMatrix H = primal_matrix(s.blocks.front(), nv);
    for (std::size_t bi = 1; bi < s.blocks.size(); ++bi) {
        const auto& b = s.blocks[bi];
        GExactMatrix E = H.times(b.basis) * dual_matrix(b, nv);
        for (std::size_t i = 0; i < E.rows(); ++i)
            for (std::size_t j = 0; j < E.cols(); ++j) {
                auto [re, im] = split_real_imag(E(i, j));
                if (b.kind != SystemBlock::Kind::DualRealified && !im.is_zero())
                    throw std::logic_error("nonreal coefficient in a real dual block");
                for (auto* part : {&re, &im})
                    if (!part->is_zero()) {
                        s.equations.push_back(*part);
                        ++s.bilinear_count;
                    }
            }
    }
}

inline SystemBlock primal_schubert_block(const InstanceSpec& spec, std::size_t c)
{
    require_real_point(spec.points[c]);
    const auto& a = spec.problem.conditions[c];
    auto pat = pattern_schubert(a);
    std::size_t cnt = pat.nvars;
    return {SystemBlock::Kind::Primal, {c}, std::move(pat), osculating_basis(spec.points[c], a.n), {}, 0, cnt};
}

inline SystemBlock primal_pair_block(const InstanceSpec& spec, std::size_t c1, std::size_t c2)
{
    require_real_point(spec.points[c1]);
    require_real_point(spec.points[c2]);
    const auto& a = spec.problem.conditions[c1];
    auto pat = pattern_pair(a, spec.problem.conditions[c2]);
    std::size_t cnt = pat.nvars;
    return {SystemBlock::Kind::Primal, {c1, c2}, std::move(pat), pair_basis(spec.points[c1], spec.points[c2], a.n), {}, 0, cnt};
}

inline SystemBlock dual_single_block(const InstanceSpec& spec, std::size_t c, std::size_t first)
{
    const auto& a = spec.problem.conditions[c];
    auto pat = pattern_dual(dual(a));
    std::size_t cnt = pat.nvars;
    return {SystemBlock::Kind::Dual, {c}, std::move(pat), inverse(osculating_basis(spec.points[c], a.n)), {}, first, cnt};
}

inline SystemBlock dual_realified_block(const InstanceSpec& spec, std::size_t c, std::size_t partner, std::size_t first)
{
    const auto& a = spec.problem.conditions[c];
    auto pat = pattern_dual(dual(a));
    std::size_t cnt = 2 * pat.nvars;
    return {SystemBlock::Kind::DualRealified, {c, partner}, std::move(pat),
            inverse(osculating_basis(spec.points[c], a.n)), inverse(osculating_basis(spec.points[partner], a.n)),
            first, cnt};
}

inline std::optional<SystemBlock> dual_pair_block(const InstanceSpec& spec, std::size_t c1, std::size_t c2,
                                                  std::size_t first)
{
    const auto& a = spec.problem.conditions[c1];
    try {
        auto pat = pattern_dual_pair(dual(a), dual(spec.problem.conditions[c2]));
        std::size_t cnt = pat.nvars;
        return SystemBlock{SystemBlock::Kind::Dual, {c1, c2}, std::move(pat),
                           inverse(pair_basis(spec.points[c1], spec.points[c2], a.n)), {}, first, cnt};
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

/// Index of the unused conjugate partner of condition c, if any.
inline std::optional<std::size_t> conjugate_partner(const InstanceSpec& spec, std::size_t c, const std::vector<bool>& used)
{
    for (std::size_t j = 0; j < spec.points.size(); ++j)
        if (j != c && !used[j] && spec.points[j] == conj(spec.points[c]) &&
            spec.problem.conditions[j] == spec.problem.conditions[c])
            return j;
    return std::nullopt;
}

} // namespace detail

/// Rank-condition formulation: chart variables, all minors of the remaining conditions.
inline PolySystem determinantal_instance(const InstanceSpec& spec, const ChartChoice& chart = {})
{
    validate_instance(spec);
    if (!is_conjugate_stable(spec)) throw std::domain_error("instance is not conjugation-stable");
    const auto& P = spec.problem;
    const int k = P.k, n = P.n;
    PolySystem s;
    s.formulation = "det";
    std::vector<std::size_t> rest;
    switch (chart.kind) {
    case ChartKind::Grassmannian: {
        std::vector<int> first_k(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) first_k[static_cast<std::size_t>(i)] = i + 1;
        SchubertCondition b = chart.beta ? *chart.beta : SchubertCondition(n, first_k);
        if (b.k() != k || b.n != n) throw std::invalid_argument("chart condition has the wrong shape");
        auto pat = pattern_grassmannian(b);
        std::size_t cnt = pat.nvars;
        s.blocks.push_back({SystemBlock::Kind::Primal, {}, std::move(pat), GMat::identity(static_cast<std::size_t>(n)), {}, 0, cnt});
        for (std::size_t c = 0; c < P.size(); ++c) rest.push_back(c);
        break;
    }
    case ChartKind::Schubert:
        s.blocks.push_back(detail::primal_schubert_block(spec, 0));
        for (std::size_t c = 1; c < P.size(); ++c) rest.push_back(c);
        break;
    case ChartKind::Pair:
        if (P.size() < 2) throw std::invalid_argument("pair chart needs two conditions");
        s.blocks.push_back(detail::primal_pair_block(spec, 0, 1));
        for (std::size_t c = 2; c < P.size(); ++c) rest.push_back(c);
        break;
    }
    s.variables.resize(s.blocks.front().count);
    detail::name_variables(s);
    GExactMatrix H = detail::primal_matrix(s.blocks.front(), s.nvars());
    detail::EquationSink sink(s.equations);
    long independent = 0;
    for (std::size_t c : rest) {
        s.determinantal_count += detail::add_minors(sink, H, P.conditions[c], spec.points[c]);
        independent += count_not_leq(P.conditions[c]);
    }
    s.independent_count = independent;
    return s;
}

/// Square bilinear formulation: Schubert chart on condition 1, one dual chart per other condition.
inline PolySystem primal_dual_instance(const InstanceSpec& spec)
{
    validate_instance(spec);
    const auto& P = spec.problem;
    if (P.size() < 2) throw std::invalid_argument("primal-dual formulation needs at least two conditions");
    if (!is_conjugate_stable(spec)) throw std::domain_error("instance is not conjugation-stable");
    PolySystem s;
    s.formulation = "pd";
    s.blocks.push_back(detail::primal_schubert_block(spec, 0));
    std::vector<bool> used(P.size(), false);
    used[0] = true;
    std::size_t next = s.blocks.front().count;
    for (std::size_t c = 1; c < P.size(); ++c) {
        if (used[c]) continue;
        used[c] = true;
        if (spec.points[c].is_real()) {
            s.blocks.push_back(detail::dual_single_block(spec, c, next));
        } else {
            auto partner = detail::conjugate_partner(spec, c, used);
            used[*partner] = true;
            s.blocks.push_back(detail::dual_realified_block(spec, c, *partner, next));
        }
        next += s.blocks.back().count;
    }
    s.variables.resize(next);
    detail::name_variables(s);
    detail::add_bilinear(s);
    return s;
}

/// Pair charts on both sides: conditions 1,2 primal, the rest grouped into dual pairs.
/// With `hypersurface_determinants`, hypersurface conditions not needed for pairing
/// become determinants in the primal variables.
inline PolySystem primal_dual_half_instance(const InstanceSpec& spec, bool hypersurface_determinants = false)
{
    validate_instance(spec);
    const auto& P = spec.problem;
    if (P.size() < 2) throw std::invalid_argument("primal-dual formulation needs at least two conditions");
    if (!is_conjugate_stable(spec)) throw std::domain_error("instance is not conjugation-stable");
    PolySystem s;
    s.formulation = "pd-half";
    s.blocks.push_back(detail::primal_pair_block(spec, 0, 1));
    std::vector<bool> used(P.size(), false);
    used[0] = used[1] = true;
    std::size_t next = s.blocks.front().count;
    auto push = [&](SystemBlock b) {
        next += b.count;
        s.blocks.push_back(std::move(b));
    };

    std::vector<std::size_t> hyper, real_rest;
    for (std::size_t c = 2; c < P.size(); ++c) {
        if (used[c]) continue;
        bool hyp = hypersurface_determinants && is_hypersurface(P.conditions[c]);
        if (hyp) {
            hyper.push_back(c);
            used[c] = true;
        } else if (!spec.points[c].is_real()) {
            used[c] = true;
            auto partner = detail::conjugate_partner(spec, c, used);
            used[*partner] = true;
            push(detail::dual_realified_block(spec, c, *partner, next));
        } else {
            used[c] = true;
            real_rest.push_back(c);
        }
    }
    std::size_t i = 0;
    for (; i + 1 < real_rest.size(); i += 2) {
        auto b = detail::dual_pair_block(spec, real_rest[i], real_rest[i + 1], next);
        if (b) push(std::move(*b));
        else {
            push(detail::dual_single_block(spec, real_rest[i], next));
            push(detail::dual_single_block(spec, real_rest[i + 1], next));
        }
    }
    if (i < real_rest.size()) {
        // odd one out: borrow a real hypersurface, else stand alone (pairs with a trivial condition)
        std::optional<SystemBlock> b;
        for (auto it = hyper.begin(); it != hyper.end() && !b; ++it)
            if (spec.points[*it].is_real()) {
                b = detail::dual_pair_block(spec, real_rest[i], *it, next);
                if (b) hyper.erase(it);
            }
        push(b ? std::move(*b) : detail::dual_single_block(spec, real_rest[i], next));
    }
    s.variables.resize(next);
    detail::name_variables(s);
    detail::add_bilinear(s);
    if (!hyper.empty()) {
        GExactMatrix H = detail::primal_matrix(s.blocks.front(), s.nvars());
        detail::EquationSink sink(s.equations);
        for (std::size_t c : hyper) s.determinantal_count += detail::add_minors(sink, H, P.conditions[c], spec.points[c]);
    }
    return s;
}

/// Row span of the primal block at the given variable values.
inline GMat primal_plane(const PolySystem& s, const std::vector<GaussianRational>& values)
{
    const auto& b = s.blocks.front();
    std::vector<GaussianRational> v(values.begin() + static_cast<std::ptrdiff_t>(b.first),
                                    values.begin() + static_cast<std::ptrdiff_t>(b.first + b.count));
    return b.pattern.fill(v) * b.basis;
}

/// Chart coordinates of every block for the k-plane spanned by the rows of H.
/// Throws domain_error when H is outside some chart.
inline std::vector<GaussianRational> lift_to_chart(const PolySystem& s, const GMat& H)
{
    std::vector<GaussianRational> out(s.nvars());
    auto write = [&](const CoordPattern& p, const GMat& m, std::size_t first) {
        for (std::size_t i = 0; i < p.rows; ++i)
            for (std::size_t j = 0; j < p.cols; ++j) {
                const auto& e = p.at(i, j);
                if (e.kind == CoordPattern::Kind::Var) out[first + static_cast<std::size_t>(e.var)] = m(i, j);
                else if (m(i, j) != GaussianRational(e.kind == CoordPattern::Kind::One ? 1 : 0))
                    throw std::domain_error("plane is outside the chart");
            }
    };
    // pivot positions of a pattern, by row (primal) or by column (dual)
    auto pivots = [](const CoordPattern& p, bool by_row) {
        std::vector<std::size_t> piv(by_row ? p.rows : p.cols);
        for (std::size_t i = 0; i < p.rows; ++i)
            for (std::size_t j = 0; j < p.cols; ++j)
                if (p.at(i, j).kind == CoordPattern::Kind::One) piv[by_row ? i : j] = by_row ? j : i;
        return piv;
    };
    const GMat L = null_space(H).transpose(); // columns span the annihilator
    auto dual_coords = [&](const CoordPattern& p, const GMat& basis) {
        GMat m = inverse(basis) * L;
        auto piv = pivots(p, false);
        GMat r(p.cols, p.cols);
        for (std::size_t a = 0; a < p.cols; ++a)
            for (std::size_t c = 0; c < p.cols; ++c) r(a, c) = m(piv[a], c);
        return m * inverse(r);
    };
    for (const auto& b : s.blocks) {
        if (b.kind == SystemBlock::Kind::Primal) {
            GMat A = H * inverse(b.basis);
            auto piv = pivots(b.pattern, true);
            GMat r(A.rows, A.rows);
            for (std::size_t i = 0; i < A.rows; ++i)
                for (std::size_t c = 0; c < A.rows; ++c) r(i, c) = A(i, piv[c]);
            write(b.pattern, inverse(r) * A, b.first);
        } else if (b.kind == SystemBlock::Kind::Dual) {
            write(b.pattern, dual_coords(b.pattern, b.basis), b.first);
        } else {
            GMat mt = dual_coords(b.pattern, b.basis), mc = dual_coords(b.pattern, b.basis_conj);
            const std::size_t half = b.count / 2;
            const GaussianRational two_i(0, 2);
            for (std::size_t i = 0; i < b.pattern.rows; ++i)
                for (std::size_t j = 0; j < b.pattern.cols; ++j) {
                    const auto& e = b.pattern.at(i, j);
                    if (e.kind != CoordPattern::Kind::Var) continue;
                    auto v = static_cast<std::size_t>(e.var);
                    out[b.first + v] = (mt(i, j) + mc(i, j)) / GaussianRational(2);
                    out[b.first + half + v] = (mt(i, j) - mc(i, j)) / two_i;
                }
        }
    }
    return out;
}

// -------------------------------------------------------------- output

inline std::string dump_text(const PolySystem& s)
{
    std::string out = "vars:";
    for (auto& v : s.variables) out += " " + v;
    out += "\n";
    for (auto& e : s.equations) out += to_string(e, s.variables) + "\n";
    return out;
}

inline nlohmann::ordered_json dump_json(const PolySystem& s)
{
    nlohmann::ordered_json j;
    j["formulation"] = s.formulation;
    j["variables"] = s.variables;
    auto eq = nlohmann::ordered_json::array();
    for (auto& e : s.equations) eq.push_back(to_string(e, s.variables));
    j["equations"] = eq;
    return j;
}

inline PolySystem parse_system_text(const std::string& text)
{
    std::istringstream is(text);
    std::string line;
    PolySystem s;
    if (!std::getline(is, line) || line.rfind("vars:", 0) != 0) throw std::invalid_argument("system text must start with 'vars:'");
    std::istringstream vs(line.substr(5));
    for (std::string v; vs >> v;) s.variables.push_back(v);
    while (std::getline(is, line))
        if (line.find_first_not_of(" \t\r") != std::string::npos) s.equations.push_back(parse_poly(line, s.variables));
    s.formulation = "text";
    return s;
}

} // namespace skit

#endif
