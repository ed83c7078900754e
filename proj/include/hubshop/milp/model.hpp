#pragma once

// Minimal mixed binary-continuous linear model container. Objective sense is
// always minimize. Named expressions carry the two objective components so
// scalarizers can recombine them without rebuilding the model.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hubshop/common.hpp"

namespace hubshop::milp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarKind { Continuous, Binary };
enum class Sense { LessEq, GreaterEq, Equal };

struct Variable {
    std::string name;
    VarKind kind = VarKind::Continuous;
    double lo = 0.0;
    double hi = kInf;
};

// Sparse linear expression; terms stay sorted by variable id and coalesced.
struct LinearExpr {
    std::vector<std::pair<int, double>> terms;

    LinearExpr& add(int var, double coeff) {
        if (coeff == 0.0) return *this;
        auto it = std::lower_bound(terms.begin(), terms.end(), var,
                                   [](const auto& t, int v) { return t.first < v; });
        if (it != terms.end() && it->first == var)
            it->second += coeff;
        else
            terms.insert(it, {var, coeff});
        return *this;
    }
    LinearExpr& add_scaled(const LinearExpr& e, double scale) {
        for (const auto& [v, c] : e.terms) add(v, scale * c);
        return *this;
    }
    double value_at(const std::vector<double>& x) const {
        double s = 0.0;
        for (const auto& [v, c] : terms) s += c * x[v];
        return s;
    }
    bool empty() const { return terms.empty(); }
};

struct Constraint {
    std::string name;
    LinearExpr expr;
    Sense sense = Sense::LessEq;
    double rhs = 0.0;
};

struct Model {
    std::vector<Variable> vars;
    std::vector<Constraint> cons;
    LinearExpr objective;
    std::map<std::string, LinearExpr> named;  // "F1", "F2"

    int add_var(const std::string& name, VarKind kind, double lo, double hi) {
        vars.push_back({name, kind, lo, hi});
        return static_cast<int>(vars.size()) - 1;
    }
    int add_continuous(const std::string& name, double lo = 0.0, double hi = kInf) {
        return add_var(name, VarKind::Continuous, lo, hi);
    }
    int add_binary(const std::string& name) { return add_var(name, VarKind::Binary, 0.0, 1.0); }
    void add_constraint(const std::string& name, LinearExpr e, Sense s, double rhs) {
        cons.push_back({name, std::move(e), s, rhs});
    }

    int num_vars() const { return static_cast<int>(vars.size()); }
    int num_cons() const { return static_cast<int>(cons.size()); }
    int num_binaries() const {
        int n = 0;
        for (const auto& v : vars) n += (v.kind == VarKind::Binary);
        return n;
    }

    // Structural sanity: finite coefficient values, consistent bounds,
    // binaries exactly [0,1], every binary used by some constraint.
    std::vector<std::string> validate() const {
        std::vector<std::string> out;
        std::vector<char> seen(vars.size(), 0);
        for (std::size_t i = 0; i < vars.size(); ++i) {
            const auto& v = vars[i];
            if (v.kind == VarKind::Binary && (v.lo != 0.0 || v.hi != 1.0))
                out.push_back("binary variable " + v.name + " must have bounds [0,1]");
            if (v.lo > v.hi) out.push_back("variable " + v.name + " has lo > hi");
            if (std::isnan(v.lo) || std::isnan(v.hi))
                out.push_back("variable " + v.name + " has NaN bound");
        }
        auto scan = [&](const LinearExpr& e, const std::string& where) {
            for (const auto& [var, coeff] : e.terms) {
                if (var < 0 || var >= (int)vars.size()) {
                    out.push_back(where + " references unknown variable id");
                    continue;
                }
                if (!std::isfinite(coeff)) out.push_back(where + " has non-finite coefficient");
            }
        };
        scan(objective, "objective");
        for (const auto& c : cons) {
            scan(c.expr, "constraint " + c.name);
            if (!std::isfinite(c.rhs)) out.push_back("constraint " + c.name + " has non-finite rhs");
            for (const auto& [var, coeff] : c.expr.terms)
                if (var >= 0 && var < (int)vars.size()) seen[var] = 1;
        }
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i].kind == VarKind::Binary && !seen[i])
                out.push_back("binary variable " + vars[i].name + " appears in no constraint");
        return out;
    }

    // Max violation of constraints and bounds at x; solutions from the solver
    // must keep this within the feasibility tolerance.
    double max_violation(const std::vector<double>& x) const {
        double worst = 0.0;
        for (const auto& c : cons) {
            double a = c.expr.value_at(x);
            double v = 0.0;
            if (c.sense == Sense::LessEq) v = a - c.rhs;
            else if (c.sense == Sense::GreaterEq) v = c.rhs - a;
            else v = std::fabs(a - c.rhs);
            worst = std::max(worst, v);
        }
        for (std::size_t i = 0; i < vars.size(); ++i) {
            worst = std::max(worst, vars[i].lo - x[i]);
            worst = std::max(worst, x[i] - vars[i].hi);
        }
        return worst;
    }
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, NodeLimit, TimeLimit };

inline const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unbounded: return "unbounded";
        case SolveStatus::NodeLimit: return "nodeLimit";
        case SolveStatus::TimeLimit: return "timeLimit";
    }
    return "unknown";
}

struct SolverConfig {
    double gap = 1e-6;        // relative optimality gap
    double feasTol = 1e-7;    // primal feasibility tolerance
    double intTol = 1e-6;     // integrality tolerance
    long long nodeLimit = 50'000'000;
    double timeLimitSec = 0.0;  // 0 = no limit
    bool parallel = false;      // parallel node exploration; serial is deterministic
    int threads = 0;            // 0 = hardware default when parallel
};

struct SolveResult {
    SolveStatus status = SolveStatus::Infeasible;
    bool hasIncumbent = false;
    std::vector<double> x;      // incumbent values, size num_vars when present
    double objective = kInf;    // incumbent objective
    double bound = -kInf;       // proven lower bound
    long long nodes = 0;
    double elapsedSec = 0.0;
};

}  // namespace hubshop::milp
