#ifndef SKIT_HARNESS_HPP
#define SKIT_HARNESS_HPP

#include "bounds.hpp"
#include "solver.hpp"

#include <json.hpp>

#include <atomic>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace skit {

struct ExperimentConfig {
    SchubertProblem problem;
    OsculationType type;
    long trials = 100;
    std::uint64_t seed = 1;
    std::string formulation = "det"; // det | pd | pd-half
    Budget budget = Budget::from_env();
    unsigned threads = 0;            // 0: hardware concurrency
    std::optional<long> expected_degree;
    bool record_timing = true;
};

inline std::string type_label(const OsculationType& t) { return t.label(); }

/// {"problem": {...}, "type": [{"condition": [..], "real": r}, ...], "trials", "seed", "formulation", "budget_secs", "threads"}
inline ExperimentConfig config_from_json(const nlohmann::json& j)
{
    ExperimentConfig c;
    c.problem = problem_from_json(j.at("problem"));
    if (j.contains("type"))
        for (auto& e : j.at("type"))
            c.type.real_points.emplace_back(SchubertCondition(c.problem.n, e.at("condition").get<std::vector<int>>()),
                                            e.at("real").get<int>());
    else
        for (auto& [cond, mult] : c.problem.compressed()) c.type.real_points.emplace_back(cond, mult);
    c.trials = j.value("trials", c.trials);
    c.seed = j.value("seed", c.seed);
    c.formulation = j.value("formulation", c.formulation);
    if (j.contains("budget_secs")) c.budget.max_seconds = j.at("budget_secs").get<double>();
    c.threads = j.value("threads", 0u);
    if (j.contains("expected_degree")) c.expected_degree = j.at("expected_degree").get<long>();
    return c;
}

inline void validate_config(const ExperimentConfig& c)
{
    if (!validate_problem(c.problem).is_problem) throw std::invalid_argument("conditions do not form a Schubert problem");
    c.type.check_against(c.problem);
    if (c.formulation != "det" && c.formulation != "pd" && c.formulation != "pd-half")
        throw std::invalid_argument("unknown formulation " + c.formulation);
    if (c.trials < 0) throw std::invalid_argument("negative trial count");
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

} // namespace detail

inline std::uint64_t trial_seed(std::uint64_t master, long index)
{
    return detail::splitmix64(detail::splitmix64(master) ^ static_cast<std::uint64_t>(index));
}

/// Random conjugation-stable instance of the configured osculation type.
inline InstanceSpec sample_instance(const ExperimentConfig& cfg, long index)
{
    cfg.type.check_against(cfg.problem);
    std::mt19937_64 rng(trial_seed(cfg.seed, index));
    std::uniform_int_distribution<int> num(-40, 40), den(1, 40);
    auto rational = [&] {
        Rational q(num(rng), den(rng));
        q.canonicalize();
        return q;
    };
    std::vector<OsculationPoint> used;
    auto fresh = [&](const OsculationPoint& p) {
        return std::find(used.begin(), used.end(), p) == used.end();
    };
    InstanceSpec spec{cfg.problem, std::vector<OsculationPoint>(cfg.problem.size())};
    for (auto& [cond, mult] : cfg.problem.compressed()) {
        int r = cfg.type.for_condition(cond);
        std::vector<std::size_t> slots;
        for (std::size_t i = 0; i < cfg.problem.size(); ++i)
            if (cfg.problem.conditions[i] == cond) slots.push_back(i);
        std::size_t s = 0;
        for (int i = 0; i < r; ++i) {
            OsculationPoint p;
            do p = OsculationPoint::at(GaussianRational(rational()));
            while (!fresh(p));
            used.push_back(p);
            spec.points[slots[s++]] = p;
        }
        for (int i = 0; i < (mult - r) / 2; ++i) {
            OsculationPoint p;
            do {
                Rational im;
                do im = rational();
                while (is_zero(im));
                p = OsculationPoint::at(GaussianRational(rational(), im));
            } while (!fresh(p) || !fresh(conj(p)));
            used.push_back(p);
            used.push_back(conj(p));
            spec.points[slots[s++]] = p;
            spec.points[slots[s++]] = conj(p);
        }
    }
    return spec;
}

struct PreparedInstance {
    InstanceSpec spec;   // reordered and moved
    ChartChoice chart;
    std::pair<std::size_t, std::size_t> anchors{0, 0}; // original indices carried by the chart
};

/// Put two real conditions admitting a Pair chart first and move their points to 0 and ∞;
/// with one real point use the Schubert chart at 0, with none the Grassmannian chart.
inline PreparedInstance prepare_instance(const InstanceSpec& spec)
{
    const std::size_t m = spec.points.size();
    std::vector<std::size_t> real;
    for (std::size_t i = 0; i < m; ++i)
        if (spec.points[i].is_real()) real.push_back(i);
    auto moved = [&](const InstanceSpec& s, const OsculationPoint& zero, const OsculationPoint& pole) {
        InstanceSpec out = s;
        for (auto& p : out.points) p = mobius(p, zero, pole);
        return out;
    };
    for (std::size_t a = 0; a < real.size(); ++a)
        for (std::size_t b = 0; b < real.size(); ++b) {
            if (a == b) continue;
            auto i = real[a], j = real[b];
            try {
                (void)pattern_pair(spec.problem.conditions[i], spec.problem.conditions[j]);
            } catch (const std::invalid_argument&) {
                continue;
            }
            auto lead = with_leading_pair(spec, i, j);
            return {moved(lead, lead.points[0], lead.points[1]), {ChartKind::Pair, {}}, {i, j}};
        }
    if (!real.empty()) {
        auto lead = with_leading_pair(spec, real[0], real[0] == 0 ? 1 : 0);
        return {moved(lead, lead.points[0], OsculationPoint::infinity()), {ChartKind::Schubert, {}}, {real[0], real[0]}};
    }
    return {spec, {ChartKind::Grassmannian, {}}, {0, 0}};
}

struct TrialRecord {
    long trial = 0;
    std::uint64_t seed = 0;
    std::string type;
    std::vector<std::string> points;
    std::string status = "ok"; // ok | failed
    std::string error;
    long complex_count = 0, real_count = 0;
    bool multiplicity = false;
    bool chart_incomplete = false;
    bool parity_ok = true;
    std::optional<bool> gap_ok;
    double wall_seconds = 0;
};

/// Field order is fixed; timing is the final field and optional.
inline nlohmann::ordered_json to_json(const TrialRecord& r, bool with_timing = true)
{
    nlohmann::ordered_json j;
    j["trial"] = r.trial;
    j["seed"] = r.seed;
    j["type"] = r.type;
    j["points"] = r.points;
    j["status"] = r.status;
    if (r.status == "ok") {
        j["complex_count"] = r.complex_count;
        j["real_count"] = r.real_count;
        j["multiplicity"] = r.multiplicity;
        j["chart_incomplete"] = r.chart_incomplete;
        j["parity_ok"] = r.parity_ok;
        if (r.gap_ok) j["gap_ok"] = *r.gap_ok;
    } else {
        j["error"] = r.error;
    }
    if (with_timing) j["timing"] = {{"wall_seconds", r.wall_seconds}};
    return j;
}

inline TrialRecord record_from_json(const nlohmann::json& j)
{
    TrialRecord r;
    r.trial = j.at("trial").get<long>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.type = j.at("type").get<std::string>();
    r.points = j.at("points").get<std::vector<std::string>>();
    r.status = j.at("status").get<std::string>();
    if (r.status == "ok") {
        r.complex_count = j.at("complex_count").get<long>();
        r.real_count = j.at("real_count").get<long>();
        r.multiplicity = j.at("multiplicity").get<bool>();
        r.chart_incomplete = j.at("chart_incomplete").get<bool>();
        r.parity_ok = j.at("parity_ok").get<bool>();
        if (j.contains("gap_ok")) r.gap_ok = j.at("gap_ok").get<bool>();
    } else {
        r.error = j.value("error", "");
    }
    if (j.contains("timing")) r.wall_seconds = j.at("timing").at("wall_seconds").get<double>();
    return r;
}

/// Real osculation count of the box conditions when the problem is (ω, box^{n-1}).
inline std::optional<int> omega_family_osculation(const ExperimentConfig& cfg)
{
    const auto& P = cfg.problem;
    auto comp = P.compressed();
    if (comp.size() != 2) return std::nullopt;
    auto omega = omega_condition(P.k, P.n), box = hypersurface_condition(P.k, P.n);
    if (!(comp[0].first == omega && comp[0].second == 1 && comp[1].first == box && comp[1].second == P.n - 1))
        return std::nullopt;
    return cfg.type.for_condition(box);
}

inline PolySystem build_system(const InstanceSpec& spec, const std::string& formulation, const ChartChoice& chart)
{
    if (formulation == "det") return determinantal_instance(spec, chart);
    if (formulation == "pd") return primal_dual_instance(spec);
    if (formulation == "pd-half") return primal_dual_half_instance(spec);
    throw std::invalid_argument("unknown formulation " + formulation);
}

inline TrialRecord run_trial(const ExperimentConfig& cfg, long index, long expected_degree)
{
    auto start = std::chrono::steady_clock::now();
    TrialRecord rec;
    rec.trial = index;
    rec.seed = trial_seed(cfg.seed, index);
    rec.type = type_label(cfg.type);
    InstanceSpec spec = sample_instance(cfg, index);
    for (auto& p : spec.points) rec.points.push_back(to_string(p));
    try {
        auto prep = prepare_instance(spec);
        SolveOptions opt;
        opt.chart = prep.chart;
        opt.budget = cfg.budget;
        opt.expected_degree = expected_degree;
        SolveResult r = cfg.formulation == "det" ? solve_instance(prep.spec, opt)
                                                 : solve_system(build_system(prep.spec, cfg.formulation, prep.chart), opt);
        rec.complex_count = r.complex_count;
        rec.real_count = r.real_count;
        rec.multiplicity = r.multiplicity_detected;
        rec.chart_incomplete = r.chart_incomplete;
        rec.parity_ok = rec.multiplicity || (r.complex_count - r.real_count) % 2 == 0;
        if (auto rb = omega_family_osculation(cfg)) rec.gap_ok = gap_set(cfg.problem.k, cfg.problem.n, *rb).count(r.real_count) > 0;
    } catch (const BudgetExceeded& e) {
        rec.status = "failed";
        rec.error = std::string("budget: ") + e.what();
    } catch (const std::exception& e) {
        rec.status = "failed";
        rec.error = e.what();
    }
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

// ------------------------------------------------------------ tables

struct FrequencyTable {
    long degree = 0;
    std::vector<std::string> types;                     // column order
    std::map<std::string, std::map<long, long>> counts; // type -> real count -> trials
    std::map<std::string, long> failed;

    void add(const TrialRecord& r)
    {
        if (std::find(types.begin(), types.end(), r.type) == types.end()) types.push_back(r.type);
        if (r.status != "ok") {
            ++failed[r.type];
            return;
        }
        degree = std::max(degree, r.complex_count);
        ++counts[r.type][r.real_count];
    }
    /// Combine a table with other columns or more trials.
    void merge(const FrequencyTable& o)
    {
        degree = std::max(degree, o.degree);
        for (auto& t : o.types)
            if (std::find(types.begin(), types.end(), t) == types.end()) types.push_back(t);
        for (auto& [t, m] : o.counts)
            for (auto& [r, c] : m) counts[t][r] += c;
        for (auto& [t, c] : o.failed) failed[t] += c;
    }
    long count(const std::string& type, long real) const
    {
        auto it = counts.find(type);
        if (it == counts.end()) return 0;
        auto jt = it->second.find(real);
        return jt == it->second.end() ? 0 : jt->second;
    }
    long failures(const std::string& type) const
    {
        auto it = failed.find(type);
        return it == failed.end() ? 0 : it->second;
    }
    long total(const std::string& type) const
    {
        long t = failures(type);
        auto it = counts.find(type);
        if (it != counts.end())
            for (auto& [r, c] : it->second) t += c;
        return t;
    }
    /// Rows shown: the parity class of the degree, plus any stray count.
    std::vector<long> rows() const
    {
        std::set<long> r;
        for (long x = degree % 2; x <= degree; x += 2) r.insert(x);
        for (auto& [t, m] : counts)
            for (auto& [x, c] : m) r.insert(x);
        return {r.begin(), r.end()};
    }
    friend bool operator==(const FrequencyTable& a, const FrequencyTable& b)
    {
        if (a.degree != b.degree || a.types != b.types) return false;
        for (auto& t : a.types) {
            for (long r : a.rows())
                if (a.count(t, r) != b.count(t, r)) return false;
            for (long r : b.rows())
                if (a.count(t, r) != b.count(t, r)) return false;
            if (a.failures(t) != b.failures(t)) return false;
        }
        return true;
    }
};

enum class TableFormat { Markdown, Csv };

namespace detail {

inline std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

inline std::vector<std::string> csv_split(const std::string& line)
{
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace detail

/// Rows = real solution counts, columns = osculation types, with a failed row and totals.
inline std::string render_table(const FrequencyTable& t, TableFormat fmt = TableFormat::Markdown)
{
    std::vector<std::vector<std::string>> grid;
    std::vector<std::string> head{"real"};
    for (auto& ty : t.types) head.push_back(ty);
    head.push_back("total");
    grid.push_back(head);
    auto row = [&](const std::string& label, auto value) {
        std::vector<std::string> r{label};
        long sum = 0;
        for (auto& ty : t.types) {
            long v = value(ty);
            sum += v;
            r.push_back(std::to_string(v));
        }
        r.push_back(std::to_string(sum));
        grid.push_back(r);
    };
    for (long x : t.rows()) row(std::to_string(x), [&](const std::string& ty) { return t.count(ty, x); });
    row("failed", [&](const std::string& ty) { return t.failures(ty); });
    row("total", [&](const std::string& ty) { return t.total(ty); });

    std::ostringstream os;
    if (fmt == TableFormat::Csv) {
        for (auto& r : grid) {
            for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << detail::csv_field(r[i]);
            os << "\n";
        }
        return os.str();
    }
    for (std::size_t g = 0; g < grid.size(); ++g) {
        os << "|";
        for (auto& c : grid[g]) os << " " << c << " |";
        os << "\n";
        if (g == 0) {
            os << "|";
            for (std::size_t i = 0; i < grid[g].size(); ++i) os << (i ? "---:|" : "---|");
            os << "\n";
        }
    }
    return os.str();
}

inline FrequencyTable parse_table_csv(const std::string& text)
{
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("empty table");
    auto head = detail::csv_split(line);
    if (head.size() < 2 || head.front() != "real" || head.back() != "total") throw std::invalid_argument("bad table header");
    FrequencyTable t;
    t.types.assign(head.begin() + 1, head.end() - 1);
    long max_row = -1;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto cells = detail::csv_split(line);
        if (cells.size() != head.size()) throw std::invalid_argument("ragged table row: " + line);
        if (cells[0] == "total") continue;
        for (std::size_t c = 1; c + 1 < cells.size(); ++c) {
            long v = std::stol(cells[c]);
            if (cells[0] == "failed") {
                if (v) t.failed[t.types[c - 1]] = v;
            } else if (v) {
                t.counts[t.types[c - 1]][std::stol(cells[0])] = v;
            }
        }
        if (cells[0] != "failed") max_row = std::max(max_row, std::stol(cells[0]));
    }
    t.degree = std::max(0L, max_row);
    return t;
}

// ------------------------------------------------------------ runs

struct ExperimentSummary {
    FrequencyTable table;
    long trials = 0, failed = 0;
    long parity_violations = 0, gap_violations = 0, incomplete = 0;
    long expected_degree = 0;
    std::vector<TrialRecord> records;
};

/// Trials run on a worker pool; records are written to `jsonl` in trial order by a single writer.
inline ExperimentSummary run_experiment(const ExperimentConfig& cfg, std::ostream* jsonl = nullptr)
{
    validate_config(cfg);
    ExperimentSummary sum;
    sum.expected_degree = cfg.expected_degree ? *cfg.expected_degree : problem_degree(cfg.problem, cfg.seed, cfg.budget);
    sum.table.degree = sum.expected_degree;
    sum.table.types.push_back(type_label(cfg.type));

    const long n = cfg.trials;
    std::vector<std::optional<TrialRecord>> done(static_cast<std::size_t>(n));
    std::mutex mu;
    std::atomic<long> next{0};
    long written = 0;

    auto flush = [&] { // caller holds mu
        while (written < n && done[static_cast<std::size_t>(written)]) {
            const auto& r = *done[static_cast<std::size_t>(written)];
            if (jsonl) *jsonl << to_json(r, cfg.record_timing).dump() << "\n";
            ++written;
        }
        if (jsonl) jsonl->flush();
    };
    auto worker = [&] {
        for (long i; (i = next++) < n;) {
            TrialRecord r = run_trial(cfg, i, sum.expected_degree);
            std::lock_guard<std::mutex> lock(mu);
            done[static_cast<std::size_t>(i)] = std::move(r);
            flush();
        }
    };
    unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<long>(threads, std::max(1L, n)));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    for (auto& r : done) {
        const auto& rec = *r;
        sum.table.add(rec);
        sum.records.push_back(rec);
        ++sum.trials;
        if (rec.status != "ok") {
            ++sum.failed;
            continue;
        }
        sum.parity_violations += !rec.parity_ok;
        sum.gap_violations += rec.gap_ok && !*rec.gap_ok;
        sum.incomplete += rec.chart_incomplete;
    }
    return sum;
}

} // namespace skit

#endif
