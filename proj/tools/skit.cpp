#include <skit/certify.hpp>
#include <skit/harness.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace skit;
using ojson = nlohmann::ordered_json;

namespace {

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// inline JSON when the argument starts with '{' or '[', otherwise a file
nlohmann::json json_arg(const std::string& arg)
{
    auto first = arg.find_first_not_of(" \t\n");
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return nlohmann::json::parse(arg);
    return nlohmann::json::parse(slurp(arg));
}

std::vector<int> int_list(const std::string& s)
{
    std::vector<int> out;
    std::stringstream ss(s);
    for (std::string tok; std::getline(ss, tok, ',');) out.push_back(std::stoi(tok));
    return out;
}

ChartChoice chart_from(const std::string& name)
{
    if (name == "pair") return {ChartKind::Pair, {}};
    if (name == "schubert") return {ChartKind::Schubert, {}};
    if (name == "grassmannian") return {ChartKind::Grassmannian, {}};
    throw CLI::ValidationError("--coords", "expected pair, schubert or grassmannian");
}

PolySystem system_from_json(const nlohmann::json& j)
{
    PolySystem s;
    s.variables = j.at("variables").get<std::vector<std::string>>();
    for (auto& e : j.at("equations")) s.equations.push_back(parse_poly(e.get<std::string>(), s.variables));
    s.formulation = j.value("formulation", "json");
    return s;
}

// text dump or JSON, by first character
PolySystem load_system(const std::string& path)
{
    std::string text = slurp(path);
    auto first = text.find_first_not_of(" \t\n");
    if (first != std::string::npos && text[first] == '{') return system_from_json(nlohmann::json::parse(text));
    return parse_system_text(text);
}

ojson solve_json(const SolveResult& r)
{
    ojson j;
    j["complex_count"] = r.complex_count;
    j["real_count"] = r.real_count;
    j["multiplicity_detected"] = r.multiplicity_detected;
    j["in_shape"] = r.shape.in_shape;
    j["eliminant"] = r.shape.eliminant.str();
    j["square_free"] = r.shape.square_free;
    j["permutation_used"] = r.shape.permutation_used;
    j["chart_pair"] = {r.chart_pair.first, r.chart_pair.second};
    j["chart_incomplete"] = r.chart_incomplete;
    j["seconds"] = r.seconds;
    return j;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"skit: real Schubert calculus toolkit"};
    app.require_subcommand(1);

    // bounds
    auto* bounds = app.add_subcommand("bounds", "lower bounds and mod-4 criteria");
    bounds->require_subcommand(1);
    int bk = 0, bn = 0, bR = 0;
    auto* b_sigma = bounds->add_subcommand("sigma", "degree of the real Wronski map");
    b_sigma->add_option("k", bk)->required();
    b_sigma->add_option("n", bn)->required();
    std::string alpha_s, beta_s;
    auto* b_imb = bounds->add_subcommand("imbalance", "sign-imbalance bound for two conditions");
    b_imb->add_option("--n", bn, "ambient dimension")->required();
    b_imb->add_option("--alpha", alpha_s, "comma list")->required();
    b_imb->add_option("--beta", beta_s, "comma list")->required();
    auto* b_fac = bounds->add_subcommand("factor", "factorization count for the omega family");
    b_fac->add_option("k", bk)->required();
    b_fac->add_option("n", bn)->required();
    b_fac->add_option("R", bR, "real roots of the degree n-2 polynomial")->required();
    std::string problem_arg, pair_arg;
    long complex_count = -1;
    auto* b_mod4 = bounds->add_subcommand("mod4", "mod-4 criteria for a symmetric problem in Gr(k,2k)");
    b_mod4->add_option("--problem", problem_arg, "problem JSON file or inline JSON")->required();
    b_mod4->add_option("--pair", pair_arg, "1-based pair i,j");
    b_mod4->add_option("--complex-count", complex_count);

    // system build
    auto* system = app.add_subcommand("system", "polynomial systems");
    system->require_subcommand(1);
    auto* build = system->add_subcommand("build", "build a polynomial system for an instance");
    std::string formulation = "det", points_arg, coords = "pair", format = "text";
    bool hybrid = false, with_stats = false;
    build->add_option("--formulation", formulation)->check(CLI::IsMember({"det", "pd", "pd-half"}));
    build->add_option("--problem", problem_arg)->required();
    build->add_option("--points", points_arg, "comma list, e.g. inf,0,1,2 or 1+2i")->required();
    build->add_option("--coords", coords)->check(CLI::IsMember({"pair", "schubert", "grassmannian"}));
    build->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
    build->add_flag("--hybrid", hybrid, "pd-half: hypersurfaces as determinants");
    build->add_flag("--stats", with_stats, "print counts instead of equations");

    // solve
    auto* solve = app.add_subcommand("solve", "Groebner basis, eliminant and real root count");
    std::string system_path;
    long expected = 0;
    solve->add_option("--problem", problem_arg);
    solve->add_option("--points", points_arg);
    solve->add_option("--coords", coords)->check(CLI::IsMember({"pair", "schubert", "grassmannian"}));
    solve->add_option("--system", system_path, "system file (text dump or JSON) instead of an instance");
    solve->add_option("--expected", expected, "expected number of solutions; retries other charts when short");

    // experiment
    auto* exper = app.add_subcommand("experiment", "run a seeded batch of random instances");
    std::string config_arg, out_path, table = "md";
    std::optional<std::uint64_t> seed;
    std::optional<long> trials;
    std::optional<unsigned> threads;
    bool no_timing = false;
    exper->add_option("--config", config_arg)->required();
    exper->add_option("--seed", seed);
    exper->add_option("--trials", trials);
    exper->add_option("--threads", threads);
    exper->add_option("--out", out_path, "JSONL output");
    exper->add_option("--table", table)->check(CLI::IsMember({"md", "csv", "none"}));
    exper->add_flag("--no-timing", no_timing, "omit the timing field for byte-identical replays");

    // certify
    auto* cert = app.add_subcommand("certify", "alpha-theory certification of approximate solutions");
    std::string cert_points, at_points;
    int steps = 3;
    cert->add_option("--system", system_path, "square system (text dump or JSON)");
    cert->add_option("--points", cert_points, "JSON array of points, each a list of [re, im] or reals");
    cert->add_option("--problem", problem_arg, "seed from the symbolic solve instead");
    cert->add_option("--at", at_points, "osculation points for --problem");
    cert->add_option("--formulation", formulation)->check(CLI::IsMember({"pd", "pd-half"}));
    cert->add_option("--newton", steps, "Newton steps before certifying");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (b_sigma->parsed()) {
            std::cout << to_json(sigma_report(bk, bn)).dump(2) << "\n";
        } else if (b_imb->parsed()) {
            std::cout << to_json(eg_ss_bound(SchubertCondition(bn, int_list(alpha_s)), SchubertCondition(bn, int_list(beta_s)))).dump(2)
                      << "\n";
        } else if (b_fac->parsed()) {
            ojson j;
            j["k"] = bk;
            j["n"] = bn;
            j["R"] = bR;
            j["count"] = factorization_count(bk, bn, bR).get_str();
            std::cout << j.dump(2) << "\n";
        } else if (b_mod4->parsed()) {
            auto p = problem_from_json(json_arg(problem_arg));
            int i = 0, j = 0;
            if (!pair_arg.empty()) {
                auto v = int_list(pair_arg);
                if (v.size() != 2) throw CLI::ValidationError("--pair", "expected i,j");
                i = v[0];
                j = v[1];
            }
            std::optional<long> cc;
            if (complex_count >= 0) cc = complex_count;
            std::cout << to_json(mod4_check(p, i, j, cc)).dump(2) << "\n";
        } else if (build->parsed()) {
            InstanceSpec spec{problem_from_json(json_arg(problem_arg)), parse_points(points_arg)};
            PolySystem s = formulation == "det" ? determinantal_instance(spec, chart_from(coords))
                           : formulation == "pd" ? primal_dual_instance(spec)
                                                 : primal_dual_half_instance(spec, hybrid);
            if (with_stats) {
                auto st = stats(s);
                ojson j;
                j["formulation"] = s.formulation;
                j["equations"] = st.num_equations;
                j["variables"] = st.num_variables;
                j["square"] = st.is_square;
                j["degrees"] = st.degrees;
                j["bilinear"] = s.bilinear_count;
                j["determinantal"] = s.determinantal_count;
                if (s.independent_count) j["independent"] = *s.independent_count;
                std::cout << j.dump(2) << "\n";
            } else if (format == "json") {
                std::cout << dump_json(s).dump(2) << "\n";
            } else {
                std::cout << dump_text(s);
            }
        } else if (solve->parsed()) {
            SolveOptions opt;
            opt.chart = chart_from(coords);
            if (expected > 0) opt.expected_degree = expected;
            SolveResult r;
            if (!system_path.empty()) {
                r = solve_system(load_system(system_path), opt);
            } else {
                if (problem_arg.empty() || points_arg.empty())
                    throw CLI::ValidationError("solve", "give --system, or --problem with --points");
                r = solve_instance({problem_from_json(json_arg(problem_arg)), parse_points(points_arg)}, opt);
            }
            std::cout << solve_json(r).dump(2) << "\n";
        } else if (exper->parsed()) {
            auto cfg = config_from_json(json_arg(config_arg));
            if (seed) cfg.seed = *seed;
            if (trials) cfg.trials = *trials;
            if (threads) cfg.threads = *threads;
            cfg.record_timing = !no_timing;
            std::ofstream out;
            if (!out_path.empty()) {
                out.open(out_path, std::ios::app);
                if (!out) throw std::runtime_error("cannot write " + out_path);
            }
            auto sum = run_experiment(cfg, out_path.empty() ? nullptr : &out);
            if (table != "none") std::cout << render_table(sum.table, table == "csv" ? TableFormat::Csv : TableFormat::Markdown);
            std::cerr << "trials " << sum.trials << ", failed " << sum.failed << ", parity violations " << sum.parity_violations
                      << ", gap violations " << sum.gap_violations << ", incomplete charts " << sum.incomplete << "\n";
            if (sum.parity_violations || sum.gap_violations) return 4;
        } else if (cert->parsed()) {
            PolySystem s;
            std::vector<NumericPoint> pts;
            if (!problem_arg.empty()) {
                if (at_points.empty()) throw CLI::ValidationError("--at", "required with --problem");
                InstanceSpec spec{problem_from_json(json_arg(problem_arg)), parse_points(at_points)};
                s = formulation == "pd-half" ? primal_dual_half_instance(spec) : primal_dual_instance(spec);
                pts = seed_from_symbolic(spec, s);
            } else {
                if (system_path.empty() || cert_points.empty())
                    throw CLI::ValidationError("certify", "give --system with --points, or --problem with --at");
                s = load_system(system_path);
                for (auto& p : json_arg(cert_points)) pts.push_back(point_from_json(p));
            }
            NumericSystem ns(s);
            ojson reports = ojson::array();
            std::vector<NumericPoint> refined;
            bool all = true;
            for (auto& x : pts) {
                NumericPoint y = steps > 0 ? newton_iterate(ns, x, steps).points.back() : x;
                auto rep = alpha_number(ns, y);
                all = all && rep.certified;
                auto j = to_json(rep);
                j["point"] = to_json(y);
                reports.push_back(j);
                refined.push_back(y);
            }
            ojson out;
            out["reports"] = reports;
            if (all && !refined.empty()) {
                auto c = classify(ns, refined);
                out["real_count"] = c.real_count;
                out["distinct_count"] = c.distinct_count;
            }
            std::cout << out.dump(2) << "\n";
            if (!all) return 5;
        }
    } catch (const CLI::Error& e) {
        app.exit(e);
        return 2;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
