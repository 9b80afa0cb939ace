// cfgtc: command-line front end for the cohomology engine, TC bounds and the
// moving-obstacle planner.
//
// Exit codes: 0 success, 1 domain error, 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "cfgtc/cohomology.hpp"
#include "cfgtc/error.hpp"
#include "cfgtc/planner.hpp"
#include "cfgtc/tc_bounds.hpp"
#include "cfgtc/tensor_square.hpp"

namespace {

using namespace cfgtc;

struct SpecFlags {
    int r = 1;
    int n = 1;
    int m = 0;

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--r", r, "generator degree (objects move in R^{r+1})")->required()->check(CLI::PositiveNumber);
        cmd->add_option("--n", n, "number of moving objects")->required()->check(CLI::PositiveNumber);
        cmd->add_option("--m", m, "number of obstacles")->required()->check(CLI::NonNegativeNumber);
    }

    AlgebraSpec spec() const { return AlgebraSpec::make(r, n, m); }
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t default_budget()
{
    if (const char* env = std::getenv("CFGTC_BUDGET")) {
        try {
            long long v = std::stoll(env);
            if (v >= 1)
                return static_cast<std::uint64_t>(v);
        } catch (const std::exception&) {
        }
        throw UsageError(std::string("CFGTC_BUDGET must be a positive integer, got \"") + env + "\"");
    }
    return 1'000'000;
}

nlohmann::json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_json(const std::string& path, const nlohmann::json& j)
{
    if (path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw UsageError("cannot write " + path);
    out << j.dump(2) << "\n";
}

nlohmann::json spec_json(const AlgebraSpec& s)
{
    return {{"r", s.r}, {"n", s.n}, {"m", s.m}};
}

std::string poincare_text(const std::vector<Integer>& ranks)
{
    std::string s;
    for (std::size_t d = 0; d < ranks.size(); ++d) {
        if (ranks[d] == 0)
            continue;
        if (!s.empty())
            s += " + ";
        s += ranks[d].str();
        if (d == 1)
            s += "*t";
        else if (d > 1)
            s += "*t^" + std::to_string(d);
    }
    return s.empty() ? "0" : s;
}

Witness parse_factor_list(const std::string& text)
{
    // "i,j[,mult];i,j[,mult];..."
    Witness w;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.find_first_not_of(" \t") == std::string::npos)
            continue;
        std::stringstream is(item);
        std::string field;
        std::vector<int> v;
        while (std::getline(is, field, ',')) {
            try {
                std::size_t used = 0;
                v.push_back(std::stoi(field, &used));
                if (field.find_first_not_of(" \t", used) != std::string::npos)
                    throw UsageError("bad factor \"" + item + "\"");
            } catch (const std::logic_error&) {
                throw UsageError("bad factor \"" + item + "\"");
            }
        }
        if (v.size() != 2 && v.size() != 3)
            throw UsageError("factor must be i,j or i,j,multiplicity: \"" + item + "\"");
        w.push_back({v[0], v[1], v.size() == 3 ? v[2] : 1});
    }
    if (w.empty())
        throw UsageError("empty factor list");
    return w;
}

Witness spatial_witness(const AlgebraSpec& s)
{
    Witness w;
    if (s.m == 0) {
        for (int i = 1; i < s.n; ++i)
            w.push_back({i, s.n, 2});
    } else {
        for (int i = 1; i <= s.n; ++i)
            w.push_back({i, s.n + 1, 2});
    }
    return w;
}

Witness planar_witness(const AlgebraSpec& s)
{
    if (s.m < 2)
        throw UsageError("--planar needs m >= 2");
    Witness w;
    for (int i = 1; i <= s.n; ++i) {
        w.push_back({i, s.n + 1, 1});
        w.push_back({i, s.n + 2, 1});
    }
    return w;
}

int run(int argc, char** argv)
{
    CLI::App app{"Cohomology of configuration spaces with obstacles, TC bounds, and moving-obstacle planning"};
    app.require_subcommand(1);
    bool json = false;
    app.add_flag("--json", json, "machine-readable output")->configurable(false);

    // basis
    SpecFlags basis_spec;
    std::optional<int> basis_degree, basis_length;
    bool basis_json = false;
    auto* basis = app.add_subcommand("basis", "list basis monomials");
    basis_spec.attach(basis);
    basis->add_option("--degree", basis_degree, "cohomological degree (multiple of r)")->check(CLI::NonNegativeNumber);
    basis->add_option("--length", basis_length, "monomial length")->check(CLI::NonNegativeNumber);
    basis->add_flag("--json", basis_json);

    // poincare
    SpecFlags poincare_spec;
    bool poincare_json = false;
    auto* poincare = app.add_subcommand("poincare", "Poincare polynomial (ranks by degree)");
    poincare_spec.attach(poincare);
    poincare->add_flag("--json", poincare_json);

    // normal-form
    SpecFlags nf_spec;
    std::string nf_expr = "-";
    bool nf_json = false;
    auto* nf = app.add_subcommand("normal-form", "basis expansion of a word expression such as \"e(1,2)e(1,3)\"");
    nf_spec.attach(nf);
    nf->add_option("expression", nf_expr, "expression, or - to read stdin");
    nf->add_flag("--json", nf_json);

    // zcl
    SpecFlags zcl_spec;
    std::optional<int> zcl_max;
    std::optional<std::uint64_t> zcl_budget;
    bool zcl_json = false;
    auto* zcl = app.add_subcommand("zcl", "longest nonzero product of basic zero-divisors");
    zcl_spec.attach(zcl);
    zcl->add_option("--max-length", zcl_max)->check(CLI::NonNegativeNumber);
    zcl->add_option("--budget", zcl_budget, "node limit (default $CFGTC_BUDGET or 1000000)")->check(CLI::PositiveNumber);
    zcl->add_flag("--json", zcl_json);

    // tc
    SpecFlags tc_spec;
    std::optional<std::uint64_t> tc_budget;
    bool tc_json = false, tc_table = false;
    auto* tc = app.add_subcommand("tc", "TC bounds report");
    tc->add_option("--r", tc_spec.r)->check(CLI::PositiveNumber);
    tc->add_option("--n", tc_spec.n)->check(CLI::PositiveNumber);
    tc->add_option("--m", tc_spec.m)->check(CLI::NonNegativeNumber);
    tc->add_option("--budget", tc_budget)->check(CLI::PositiveNumber);
    tc->add_flag("--table", tc_table, "report the grid r in {1,2}, n in {2,3}, m in {0,1,2}");
    tc->add_flag("--json", tc_json);

    // witness
    SpecFlags w_spec;
    bool w_spatial = false, w_planar = false, w_json = false;
    std::string w_factors;
    auto* wit = app.add_subcommand("witness", "evaluate a product of zero-divisors");
    w_spec.attach(wit);
    auto* o_sp = wit->add_flag("--spatial", w_spatial, "squares of e_{i,n} (m = 0) or e_{i,n+1} (m >= 1)");
    auto* o_pl = wit->add_flag("--planar", w_planar, "product over i <= n, j in {n+1, n+2}");
    auto* o_f = wit->add_option("--factors", w_factors, "explicit list \"i,j[,mult];...\"");
    o_sp->excludes(o_pl)->excludes(o_f);
    o_pl->excludes(o_f);
    wit->add_flag("--json", w_json);

    // plan
    std::string plan_obstacles, plan_problem, plan_out = "-", plan_obstacles_out;
    std::optional<double> plan_radius;
    double plan_margin = 0.05;
    int plan_budget = 2000, plan_refine = 1;
    bool plan_auto_refine = false, plan_json = false;
    std::uint64_t plan_seed = 1;
    auto* plan = app.add_subcommand("plan", "plan object paths around moving obstacles");
    plan->add_option("--obstacles", plan_obstacles, "obstacle trajectory JSON")->required();
    plan->add_option("--problem", plan_problem, "start/goal JSON")->required();
    plan->add_option("--out", plan_out, "object paths JSON (- for stdout)");
    plan->add_option("--radius", plan_radius, "bump radius (default min(0.5, 0.45 * min_sep))")->check(CLI::PositiveNumber);
    plan->add_option("--margin", plan_margin, "clearance for the stationary planner")->check(CLI::PositiveNumber);
    plan->add_option("--budget", plan_budget, "via-point attempts per move")->check(CLI::PositiveNumber);
    plan->add_option("--seed", plan_seed);
    plan->add_option("--refine", plan_refine, "refine the obstacle grid by this factor")->check(CLI::PositiveNumber);
    plan->add_flag("--auto-refine", plan_auto_refine, "refine as much as the bump radius requires");
    plan->add_option("--obstacles-out", plan_obstacles_out, "write the (possibly refined) obstacle trajectory");
    plan->add_flag("--json", plan_json, "print a JSON summary");

    // verify
    std::string v_obstacles, v_problem, v_paths;
    VerifyOptions v_opts;
    bool v_json = false;
    auto* ver = app.add_subcommand("verify", "check object paths against the collision conditions");
    ver->add_option("--obstacles", v_obstacles)->required();
    ver->add_option("--problem", v_problem)->required();
    ver->add_option("--paths", v_paths)->required();
    ver->add_option("--margin", v_opts.margin)->check(CLI::NonNegativeNumber);
    ver->add_option("--max-step", v_opts.max_step)->check(CLI::PositiveNumber);
    ver->add_option("--endpoint-tol", v_opts.endpoint_tol)->check(CLI::NonNegativeNumber);
    ver->add_flag("--json", v_json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (*basis) {
        AlgebraSpec s = basis_spec.spec();
        std::optional<int> length = basis_length;
        if (basis_degree) {
            if (*basis_degree % s.r != 0)
                throw UsageError("--degree must be a multiple of r");
            if (basis_length && *basis_length != *basis_degree / s.r)
                throw UsageError("--degree and --length disagree");
            length = *basis_degree / s.r;
        }
        auto monos = enumerate_basis(s, length);
        if (basis_json || json) {
            auto arr = nlohmann::json::array();
            for (const auto& mono : monos)
                arr.push_back(monomial_to_json(mono));
            std::cout << nlohmann::json{{"spec", spec_json(s)}, {"basis", arr}}.dump(2) << "\n";
        } else {
            for (const auto& mono : monos)
                std::cout << monomial_to_string(mono) << "\n";
        }
        return 0;
    }

    if (*poincare) {
        AlgebraSpec s = poincare_spec.spec();
        auto ranks = poincare_polynomial(s);
        if (poincare_json || json) {
            auto arr = nlohmann::json::array();
            for (const auto& c : ranks)
                arr.push_back(c.str());
            std::cout << nlohmann::json{{"spec", spec_json(s)}, {"ranks", arr}}.dump(2) << "\n";
        } else {
            std::cout << poincare_text(ranks) << "\n";
        }
        return 0;
    }

    if (*nf) {
        AlgebraSpec s = nf_spec.spec();
        std::string text = nf_expr;
        if (text == "-")
            text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
        Element e = parse_element(s, text);
        if (nf_json || json)
            std::cout << nlohmann::json{{"spec", spec_json(s)}, {"element", to_json(e)}}.dump(2) << "\n";
        else
            std::cout << to_string(e) << "\n";
        return 0;
    }

    if (*zcl) {
        AlgebraSpec s = zcl_spec.spec();
        ZclResult res = zcl_search(s, zcl_max, zcl_budget ? *zcl_budget : default_budget());
        if (zcl_json || json) {
            std::cout << nlohmann::json{{"spec", spec_json(s)},
                                        {"length", res.length},
                                        {"witness", to_json(res.witness)},
                                        {"exhaustive", res.exhaustive},
                                        {"nodes_visited", res.nodes_visited}}
                             .dump(2)
                      << "\n";
        } else {
            std::cout << "zcl >= " << res.length << (res.exhaustive ? " (search exhaustive)" : " (budget exhausted)")
                      << "\nwitness:";
            for (const auto& f : res.witness)
                std::cout << " e(" << f.i << "," << f.j << ")^" << f.multiplicity;
            std::cout << "\nnodes visited: " << res.nodes_visited << "\n";
        }
        return 0;
    }

    if (*tc) {
        const std::uint64_t budget = tc_budget ? *tc_budget : default_budget();
        std::vector<BoundsReport> reports;
        if (tc_table) {
            for (int r : {1, 2})
                for (int n : {2, 3})
                    for (int m : {0, 1, 2})
                        reports.push_back(bounds_report(AlgebraSpec::make(r, n, m), budget));
        } else {
            if (tc->count("--r") == 0 || tc->count("--n") == 0 || tc->count("--m") == 0)
                throw UsageError("tc needs --r, --n and --m (or --table)");
            reports.push_back(bounds_report(tc_spec.spec(), budget));
        }
        if (tc_json || json) {
            if (tc_table) {
                auto arr = nlohmann::json::array();
                for (const auto& rep : reports)
                    arr.push_back(to_json(rep));
                std::cout << arr.dump(2) << "\n";
            } else {
                std::cout << to_json(reports.front()).dump(2) << "\n";
            }
        } else {
            std::cout << table_header() << "\n";
            for (const auto& rep : reports)
                std::cout << table_row(rep) << "\n";
            if (!tc_table && reports.front().exact)
                std::cout << "source: " << citation_text(reports.front().exact->source) << "\n";
        }
        return 0;
    }

    if (*wit) {
        AlgebraSpec s = w_spec.spec();
        Witness w;
        if (w_spatial)
            w = spatial_witness(s);
        else if (w_planar)
            w = planar_witness(s);
        else if (!w_factors.empty())
            w = parse_factor_list(w_factors);
        else
            throw UsageError("witness needs --spatial, --planar or --factors");
        TensorElement prod = witness_product(s, w);
        if (w_json || json) {
            std::cout << nlohmann::json{{"spec", spec_json(s)},
                                        {"witness", to_json(w)},
                                        {"length", witness_length(w)},
                                        {"nonzero", !prod.is_zero()},
                                        {"terms", prod.size()},
                                        {"product", to_json(prod)}}
                             .dump(2)
                      << "\n";
        } else {
            std::cout << "length " << witness_length(w) << ", " << prod.size() << " terms, "
                      << (prod.is_zero() ? "zero" : "nonzero") << "\n"
                      << to_string(prod) << "\n";
        }
        return 0;
    }

    if (*plan) {
        ObstacleTrajectory obstacles(paths_from_json(read_json(plan_obstacles)));
        PlanningProblem problem = problem_from_json(read_json(plan_problem));
        const double radius = plan_radius ? *plan_radius : std::min(0.5, 0.45 * obstacles.min_sep());
        int factor = plan_refine;
        if (plan_auto_refine)
            factor = std::max(factor, refinement_needed(obstacles, radius));
        obstacles = obstacles.refined(factor);
        PlannerOptions opts;
        opts.margin = plan_margin;
        opts.budget = plan_budget;
        opts.seed = plan_seed;
        MovingPlan result = plan_with_moving_obstacles(problem.start, problem.goal, obstacles, radius, opts);
        write_json(plan_out, to_json(result.paths));
        if (!plan_obstacles_out.empty())
            write_json(plan_obstacles_out, to_json(obstacles.samples()));
        nlohmann::json summary{{"steps", obstacles.steps()},
                               {"refinement", factor},
                               {"radius", radius},
                               {"layers", result.isotopy.layer_count()},
                               {"achieved_margin", result.margin}};
        if (plan_json || json)
            std::cerr << summary.dump(2) << "\n";
        else
            std::cerr << "planned " << problem.start.points.size() << " objects over " << obstacles.steps()
                      << " steps; achieved margin " << result.margin << "\n";
        return 0;
    }

    if (*ver) {
        ObstacleTrajectory obstacles(paths_from_json(read_json(v_obstacles)));
        PlanningProblem problem = problem_from_json(read_json(v_problem));
        ObjectPaths paths = paths_from_json(read_json(v_paths));
        VerifyReport rep = verify_plan(paths, obstacles, problem.start, problem.goal, v_opts);
        if (v_json || json) {
            std::cout << to_json(rep).dump(2) << "\n";
        } else {
            auto line = [](const char* name, const ConditionResult& c) {
                std::cout << name << (c.pass ? " PASS  " : " FAIL  ") << c.detail << "\n";
            };
            if (!rep.grid_ok)
                std::cout << "grid mismatch: " << rep.grid_detail << "\n";
            line("(alpha) continuity     ", rep.continuity);
            line("(beta)  endpoints      ", rep.endpoints);
            line("(gamma) object spacing ", rep.separation);
            line("(delta) obstacle spacing", rep.avoidance);
        }
        return 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv)
{
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const cfgtc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
