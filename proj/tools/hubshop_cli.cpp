// Command-line surface: generate instances, solve them to bi-objective
// fronts, compare fronts by the mean-ideal-distance metric, and export
// schedules or MILP models.
//
// Exit codes: 0 success; 2 usage or input error; 3 solver limit hit (any
// partial results are written and flagged); 4 internal numerical error.
// The HUBSHOP_TIME_LIMIT environment variable (seconds) overrides the
// --time-limit flag. All randomness flows through explicit --seed values.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hubshop/evaluate.hpp"
#include "hubshop/generate.hpp"
#include "hubshop/json_io.hpp"
#include "hubshop/milp/lp_format.hpp"
#include "hubshop/model_build.hpp"
#include "hubshop/moea.hpp"
#include "hubshop/scalarize.hpp"

using namespace hubshop;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open '" + path + "' for writing");
    f << content;
    if (!f) throw std::invalid_argument("write to '" + path + "' failed");
}

// Seconds from HUBSHOP_TIME_LIMIT; overrides the flag when set.
void apply_time_limit_env(milp::SolverConfig& cfg) {
    const char* env = std::getenv("HUBSHOP_TIME_LIMIT");
    if (!env || !*env) return;
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v >= 0.0))
        throw std::invalid_argument(
            "HUBSHOP_TIME_LIMIT must be a nonnegative number of seconds, got '" +
            std::string(env) + "'");
    cfg.timeLimitSec = v;
}

// "w1:w2,w1:w2,..." -> weight pairs.
std::vector<std::pair<double, double>> parse_weights(const std::string& text) {
    std::vector<std::pair<double, double>> out;
    std::istringstream ss(text);
    std::string pair;
    while (std::getline(ss, pair, ',')) {
        auto colon = pair.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("--weights entries must look like w1:w2, got '" + pair +
                                        "'");
        try {
            std::size_t used = 0;
            double w1 = std::stod(pair.substr(0, colon), &used);
            if (used != colon) throw std::invalid_argument(pair);
            std::string rest = pair.substr(colon + 1);
            double w2 = std::stod(rest, &used);
            if (used != rest.size()) throw std::invalid_argument(pair);
            out.emplace_back(w1, w2);
        } catch (const std::exception&) {
            throw std::invalid_argument("--weights entries must look like w1:w2, got '" + pair +
                                        "'");
        }
    }
    if (out.empty()) throw std::invalid_argument("--weights must contain at least one w1:w2 pair");
    return out;
}

struct GenArgs {
    int problem = 0;
    GenSpec spec;
    bool haveSeed = false;
    std::uint64_t seed = 0;
    std::string fixture;
    std::string out;
};

int cmd_gen(const GenArgs& a) {
    if (!a.fixture.empty()) {
        if (a.fixture == "paper-small") {
            write_file(a.out, save_instance(paper_small_instance()));
        } else if (a.fixture == "paper-gantt") {
            GanttFixture g = paper_gantt();
            auto ev = evaluate_solution(g.instance, g.decision);
            write_file(a.out, save_solution(g.instance, g.decision, &ev.first));
        } else {
            throw std::invalid_argument("--fixture must be paper-small or paper-gantt, got '" +
                                        a.fixture + "'");
        }
        std::printf("wrote %s\n", a.out.c_str());
        return 0;
    }
    if (!a.haveSeed)
        throw std::invalid_argument("--seed is required when generating a random instance");
    Instance in;
    if (a.problem != 0) {
        in = generate_problem(a.problem, a.seed);  // throws naming [1,10] on bad ids
    } else {
        const GenSpec& g = a.spec;
        if (g.nStages < 1 || g.nNCHC < 1 || g.nProducts < 1 || g.nCentralHubs < 1 ||
            g.nFactories < 1 || g.nNCHF < 1 || g.nCustomers < 1)
            throw std::invalid_argument(
                "without --problem, all of --stages --nchc --products --central-hubs "
                "--factories --nchf --customers must be given and positive");
        in = generate(g, a.seed);
    }
    write_file(a.out, save_instance(in));
    std::printf("wrote %s\n", a.out.c_str());
    return 0;
}

struct SolveArgs {
    std::string instancePath;
    std::string method;
    std::string weightsText;
    int points = 8;
    MoeaConfig moea;         // fully resolved (file + flag overrides) by main
    bool moeaSeeded = false; // a seed came from --seed or the config file
    milp::SolverConfig solver;
    std::string out = "front";
};

// Strict field whitelist so typos fail loudly; returns which fields were set.
struct MoeaFileConfig {
    MoeaConfig cfg;
    bool sawSeed = false;
};

MoeaFileConfig moea_config_from_json(const std::string& text) {
    ojson j = parse_json(text);
    if (!j.is_object()) throw SchemaError("moea config must be a JSON object");
    MoeaFileConfig out;
    for (const auto& [key, val] : j.items()) {
        if (key == "population") out.cfg.population = val.get<int>();
        else if (key == "generations") out.cfg.generations = val.get<int>();
        else if (key == "seed") { out.cfg.seed = val.get<std::uint64_t>(); out.sawSeed = true; }
        else if (key == "crossoverRate") out.cfg.crossoverRate = val.get<double>();
        else if (key == "mutationRate") out.cfg.mutationRate = val.get<double>();
        else throw SchemaError("unknown moea config field '" + key + "'");
    }
    return out;
}

int cmd_solve(SolveArgs& a) {
    Instance in = load_instance(read_file(a.instancePath));
    apply_time_limit_env(a.solver);

    ParetoFront front;
    ScalarizeReport rep;
    if (a.method == "wsum") {
        auto weights = a.weightsText.empty() ? default_weight_set() : parse_weights(a.weightsText);
        front = weighted_sum_front(in, weights, a.solver, &rep);
    } else if (a.method == "eps") {
        front = epsilon_constraint_front(in, a.points, a.solver, &rep);
    } else if (a.method == "moea") {
        if (!a.moeaSeeded)
            throw std::invalid_argument("--method moea needs --seed (or a seed in --moea-config)");
        front = solve_moea(in, a.moea).front;
    } else {
        throw std::invalid_argument("--method must be wsum, eps, or moea, got '" + a.method + "'");
    }

    write_file(a.out + ".csv", front_csv(front));
    write_file(a.out + ".json", save_front(in, front, a.method, rep.hitLimit));
    std::printf("method %s: %zu points -> %s.csv, %s.json\n", a.method.c_str(),
                front.points.size(), a.out.c_str(), a.out.c_str());
    if (rep.hitLimit) {
        std::fprintf(stderr, "solver limit hit; results are partial and flagged\n");
        return 3;
    }
    return 0;
}

int cmd_compare(const std::vector<std::string>& files, const std::string& outPath) {
    std::vector<std::pair<std::string, double>> rows;
    for (const std::string& path : files) {
        LoadedFront lf = load_front(read_file(path));
        if (lf.front.points.empty())
            throw std::invalid_argument("front '" + path + "' is empty; MID is undefined");
        rows.emplace_back(path, mid(lf.front));
    }
    std::size_t width = 5;
    for (const auto& [label, m] : rows) width = std::max(width, label.size());
    std::printf("%-*s  mid\n", (int)width, "front");
    for (const auto& [label, m] : rows)
        std::printf("%-*s  %s\n", (int)width, label.c_str(), format_double(m).c_str());
    if (!outPath.empty()) {
        write_file(outPath, mid_table_csv(rows));
        std::printf("wrote %s\n", outPath.c_str());
    }
    return 0;
}

struct ExportArgs {
    std::string inputPath;
    std::string kind;
    std::string out = "export";
    double w1 = 0.5, w2 = 0.5;
};

int cmd_export(const ExportArgs& a) {
    std::string text = read_file(a.inputPath);
    if (a.kind == "gantt") {
        LoadedSolution ls = load_solution(text);
        auto issues = check_feasibility(ls.instance, ls.decision);
        if (!issues.empty())
            throw std::invalid_argument("solution in '" + a.inputPath +
                                        "' is infeasible: " + issues.front());
        auto [obj, st] = evaluate_solution(ls.instance, ls.decision);
        auto rows = gantt_rows(ls.instance, ls.decision, st);
        write_file(a.out + ".csv", gantt_csv(rows));
        write_file(a.out + ".json", gantt_json(rows));
        std::printf("%zu bars -> %s.csv, %s.json\n", rows.size(), a.out.c_str(), a.out.c_str());
        return 0;
    }
    if (a.kind == "lp") {
        // Accepts an instance file or a solution file (whose instance is used).
        ojson j = parse_json(text);
        Instance in;
        auto it = j.find("schema");
        if (it != j.end() && it->is_string() && it->get<std::string>() == kSolutionSchema)
            in = load_solution(text).instance;
        else
            in = instance_from_json(j);
        milp::Model m = build_milp(in);
        set_weighted_objective(m, a.w1, a.w2);
        milp::write_lp_file(m, a.out + ".lp");
        std::printf("%d vars, %d rows -> %s.lp\n", m.num_vars(), m.num_cons(), a.out.c_str());
        return 0;
    }
    throw std::invalid_argument("--kind must be gantt or lp, got '" + a.kind + "'");
}

void print_error(const char* what) { std::fprintf(stderr, "error: %s\n", what); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Bi-objective toolkit for the hub-network flexible-flow-shop problem.\n"
        "Exit codes: 0 ok, 2 usage/input error, 3 solver limit (partial output), "
        "4 internal numerical error."};
    app.require_subcommand(1);

    GenArgs gen;
    CLI::App* cgen = app.add_subcommand("gen", "Generate an instance file");
    cgen->add_option("--problem", gen.problem, "benchmark row id in [1,10]");
    cgen->add_option("--stages", gen.spec.nStages, "flow-shop stages");
    cgen->add_option("--nchc", gen.spec.nNCHC, "customer-side hubs");
    cgen->add_option("--products", gen.spec.nProducts, "products");
    cgen->add_option("--central-hubs", gen.spec.nCentralHubs, "central hubs");
    cgen->add_option("--factories", gen.spec.nFactories, "factories");
    cgen->add_option("--nchf", gen.spec.nNCHF, "factory-side hubs");
    cgen->add_option("--customers", gen.spec.nCustomers, "customers");
    cgen->add_option("--max-machines", gen.spec.maxMachines, "machines per stage cap")
        ->default_val(2);
    cgen->add_option("--pr-max", gen.spec.prMax, "processing-time draw cap")->default_val(2);
    cgen->add_flag("--round-demands", gen.spec.roundDemands, "round demand draws to integers");
    CLI::Option* genSeed = cgen->add_option("--seed", gen.seed, "generator seed");
    cgen->add_option("--fixture", gen.fixture,
                     "write a named fixture instead (paper-small | paper-gantt)");
    cgen->add_option("--out", gen.out, "output file")->required();

    SolveArgs solve;
    std::uint64_t solveSeedVal = 0;
    MoeaConfig moeaFlags;  // raw flag values, merged over the config file below
    std::string moeaConfigPath;
    CLI::App* csolve = app.add_subcommand("solve", "Solve an instance to a Pareto front");
    csolve->add_option("instance", solve.instancePath, "instance JSON file")->required();
    csolve->add_option("--method", solve.method, "wsum | eps | moea")->required();
    csolve->add_option("--weights", solve.weightsText,
                       "wsum weight pairs 'w1:w2,w1:w2,...' (default: the five standard pairs)");
    csolve->add_option("--points", solve.points, "eps grid size")->default_val(8);
    CLI::Option* solveSeed = csolve->add_option("--seed", solveSeedVal, "moea seed");
    CLI::Option* optPop = csolve->add_option("--population", moeaFlags.population, "moea population");
    CLI::Option* optGen =
        csolve->add_option("--generations", moeaFlags.generations, "moea generations");
    CLI::Option* optCx =
        csolve->add_option("--crossover-rate", moeaFlags.crossoverRate, "moea crossover rate");
    CLI::Option* optMu =
        csolve->add_option("--mutation-rate", moeaFlags.mutationRate, "moea mutation rate");
    csolve->add_option("--moea-config", moeaConfigPath,
                       "JSON file with moea settings (flags win on conflict)");
    csolve->add_option("--node-limit", solve.solver.nodeLimit, "branch-and-bound node cap");
    csolve->add_option("--time-limit", solve.solver.timeLimitSec,
                       "per-run time limit in seconds (HUBSHOP_TIME_LIMIT overrides)");
    csolve->add_option("--gap", solve.solver.gap, "relative optimality gap");
    csolve->add_option("--out", solve.out, "output basename (writes .csv and .json)")
        ->default_val("front");

    std::vector<std::string> compareFiles;
    std::string compareOut;
    CLI::App* ccmp = app.add_subcommand("compare", "Rank front files by mean ideal distance");
    ccmp->add_option("fronts", compareFiles, "front JSON files")->expected(2, 1000000);
    ccmp->add_option("--out", compareOut, "also write the table as CSV");

    ExportArgs exp;
    CLI::App* cexp = app.add_subcommand("export", "Export a gantt chart or an LP model");
    cexp->add_option("input", exp.inputPath, "solution file (gantt) or instance/solution (lp)")
        ->required();
    cexp->add_option("--kind", exp.kind, "gantt | lp")->required();
    cexp->add_option("--out", exp.out, "output basename")->default_val("export");
    cexp->add_option("--w1", exp.w1, "lp objective weight on cost")->default_val(0.5);
    cexp->add_option("--w2", exp.w2, "lp objective weight on arrival time")->default_val(0.5);

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

    try {
        if (cgen->parsed()) {
            gen.haveSeed = genSeed->count() > 0;
            return cmd_gen(gen);
        }
        if (csolve->parsed()) {
            // Resolve the moea config: defaults < config file < explicit flags.
            bool seedInFile = false;
            if (!moeaConfigPath.empty()) {
                MoeaFileConfig fc = moea_config_from_json(read_file(moeaConfigPath));
                solve.moea = fc.cfg;
                seedInFile = fc.sawSeed;
            }
            if (optPop->count()) solve.moea.population = moeaFlags.population;
            if (optGen->count()) solve.moea.generations = moeaFlags.generations;
            if (optCx->count()) solve.moea.crossoverRate = moeaFlags.crossoverRate;
            if (optMu->count()) solve.moea.mutationRate = moeaFlags.mutationRate;
            if (solveSeed->count()) solve.moea.seed = solveSeedVal;
            solve.moeaSeeded = solveSeed->count() > 0 || seedInFile;
            return cmd_solve(solve);
        }
        if (ccmp->parsed()) return cmd_compare(compareFiles, compareOut);
        if (cexp->parsed()) return cmd_export(exp);
        return 2;
    } catch (const ScalarizeError& e) {
        print_error(e.what());
        return (e.status == milp::SolveStatus::NodeLimit ||
                e.status == milp::SolveStatus::TimeLimit)
                   ? 3
                   : 4;
    } catch (const SchemaError& e) {
        print_error(e.what());
        return 2;
    } catch (const FeasibilityError& e) {
        print_error(e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        print_error(e.what());
        return 2;
    } catch (const NumericError& e) {
        print_error(e.what());
        return 4;
    } catch (const std::exception& e) {
        print_error(e.what());
        return 4;
    }
}
