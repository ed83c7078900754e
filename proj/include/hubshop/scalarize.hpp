#pragma once

// Exact Pareto-front construction through scalarized MILP solves: the
// weighted-sum method over a caller-supplied weight set, and the
// epsilon-constraint method over an evenly spaced cap grid.
//
// Every returned point carries the evaluator's objective values for its
// extracted decision vector, not raw solver numbers, so downstream consumers
// see the same (f1, f2) the simulation reports. Assembly is canonical
// (dedup, dominance filter, tag by argmin) which makes the result
// deterministic and certificate-clean regardless of solve order.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hubshop/common.hpp"
#include "hubshop/evaluate.hpp"
#include "hubshop/milp/branch_bound.hpp"
#include "hubshop/model_build.hpp"
#include "hubshop/pareto.hpp"

namespace hubshop {

// A scalarized solve proved infeasible or unbounded, or a range solve hit a
// limit with no incumbent. Valid instances are always feasible, so this
// signals a model bug or an unusable limit configuration.
class ScalarizeError : public std::runtime_error {
  public:
    ScalarizeError(const std::string& msg, milp::SolveStatus st)
        : std::runtime_error(msg), status(st) {}
    milp::SolveStatus status;
};

// The five weight pairs the benchmark comparison runs with. Raw objective
// values are combined unnormalized, and F1 dwarfs F2 at benchmark scale,
// which is why most of the mass sits on w2.
inline std::vector<std::pair<double, double>> default_weight_set() {
    return {{0.1, 0.9}, {0.2, 0.8}, {0.091, 0.909}, {0.0001, 0.9999}, {0.9, 0.1}};
}

struct ScalarizeReport {
    std::vector<milp::SolveStatus> statuses;  // one entry per MILP solve, in solve order
    std::vector<double> epsGrid;              // epsilon caps, one per grid solve
    bool hitLimit = false;                    // some solve stopped on a node or time limit
    long long nodes = 0;                      // branch-and-bound nodes across all solves
};

namespace scalarize_detail {

struct SolveOutcome {
    milp::SolveResult res;
    std::optional<FrontPoint> point;  // evaluated incumbent when one exists
};

inline SolveOutcome run_solve(const Instance& in, const milp::Model& m,
                              const milp::SolverConfig& cfg, ScalarizeReport* rep,
                              const std::string& what,
                              const std::vector<double>* warm = nullptr) {
    SolveOutcome out;
    out.res = milp::branch_and_bound(m, cfg, warm);
    if (rep) {
        rep->statuses.push_back(out.res.status);
        rep->nodes += out.res.nodes;
        if (out.res.status == milp::SolveStatus::NodeLimit ||
            out.res.status == milp::SolveStatus::TimeLimit)
            rep->hitLimit = true;
    }
    if (out.res.status == milp::SolveStatus::Infeasible ||
        out.res.status == milp::SolveStatus::Unbounded)
        throw ScalarizeError(what + ": scalarized solve came back " +
                                 milp::to_string(out.res.status) +
                                 "; a valid instance is always feasible",
                             out.res.status);
    if (out.res.hasIncumbent) {
        std::vector<double> cleaned = clean_solution(in, out.res.x);
        FrontPoint p;
        p.dv = extract_decision_vector(in, cleaned);
        p.obj = evaluate_solution(in, p.dv).first;
        out.point = std::move(p);
    }
    return out;
}

// Identical objectives collapse onto the first-found pool entry, which keeps
// every contributor's provenance tag.
inline void pool_insert(std::vector<FrontPoint>& pool, FrontPoint p) {
    for (auto& u : pool)
        if (same_objectives(u.obj, p.obj)) {
            u.tags.insert(u.tags.end(), p.tags.begin(), p.tags.end());
            return;
        }
    pool.push_back(std::move(p));
}

}  // namespace scalarize_detail

// Solves min w1*F1 + w2*F2 per weight pair, then assembles the front: dedup,
// dominance filter, and only then tag each weight's argmin among the
// survivors. Tagging after the filter guarantees the optimality certificate
// holds exactly over the returned points, even when a limit-hit incumbent
// lands in the pool. Survivors no weight claims are dropped; every returned
// point records the weight pairs it wins.
inline ParetoFront weighted_sum_front(const Instance& in,
                                      const std::vector<std::pair<double, double>>& weights,
                                      const milp::SolverConfig& cfg = {},
                                      ScalarizeReport* rep = nullptr) {
    if (weights.empty()) throw std::invalid_argument("weighted_sum_front: empty weight set");
    for (auto [w1, w2] : weights)
        if (!(w1 >= 0.0) || !(w2 >= 0.0) || !(w1 + w2 > 0.0))
            throw std::invalid_argument(
                "weighted_sum_front: weights must be nonnegative with a positive sum");

    milp::Model m = build_milp(in);
    std::vector<FrontPoint> pool;
    std::vector<double> lastX;  // previous incumbent warm-starts the next weight
    for (auto [w1, w2] : weights) {
        set_weighted_objective(m, w1, w2);
        auto out = scalarize_detail::run_solve(in, m, cfg, rep, "weighted_sum_front",
                                               lastX.empty() ? nullptr : &lastX);
        if (out.res.hasIncumbent) lastX = out.res.x;
        if (out.point) scalarize_detail::pool_insert(pool, std::move(*out.point));
    }

    std::vector<FrontPoint> survivors = filter_front_points(std::move(pool));
    for (auto [w1, w2] : weights) {
        int best = -1;
        double bestVal = 0.0;
        for (std::size_t i = 0; i < survivors.size(); ++i) {
            double v = w1 * survivors[i].obj.f1 + w2 * survivors[i].obj.f2;
            if (best < 0 || v < bestVal) {
                best = static_cast<int>(i);
                bestVal = v;
            }
        }
        if (best >= 0)
            survivors[best].tags.push_back("wsum(" + format_double(w1) + "," +
                                           format_double(w2) + ")");
    }

    ParetoFront front;
    for (auto& p : survivors)
        if (!p.tags.empty()) front.points.push_back(std::move(p));
    return front;
}

// Epsilon-constraint method: two lexicographic range solves bracket F2, then
// min F1 subject to F2 <= eps runs over an evenly spaced inclusive grid.
// Solve order in the report: min F1, min F2, min F2 under the F1 cap, then
// the grid solves in ascending eps order.
inline ParetoFront epsilon_constraint_front(const Instance& in, int nPoints = 8,
                                            const milp::SolverConfig& cfg = {},
                                            ScalarizeReport* rep = nullptr) {
    if (nPoints < 2)
        throw std::invalid_argument("epsilon_constraint_front: need at least 2 grid points");

    milp::Model m = build_milp(in);
    std::vector<double> xF2low, xF1min;
    auto range_solve = [&](const std::string& what, const std::vector<double>* warm,
                           std::vector<double>* keep) -> double {
        auto out = scalarize_detail::run_solve(in, m, cfg, rep, what, warm);
        if (!out.res.hasIncumbent)
            throw ScalarizeError(what + ": range solve stopped on " +
                                     milp::to_string(out.res.status) + " with no incumbent",
                                 out.res.status);
        if (keep) *keep = out.res.x;
        return out.res.objective;
    };

    // Cost minimization goes first: the cost objective steers the dive to an
    // incumbent far more reliably than the flat timing objective, and that
    // incumbent then warm-starts every later solve.
    set_weighted_objective(m, 1.0, 0.0);
    double f1min = range_solve("epsilon_constraint_front: min f1", nullptr, &xF1min);

    set_weighted_objective(m, 0.0, 1.0);
    double f2low = range_solve("epsilon_constraint_front: min f2", &xF1min, &xF2low);

    // Least F2 among cost-optimal solutions caps the grid. The hairline
    // relative slack keeps the cap row from cutting the cost optimum off
    // through floating-point noise; it also keeps the min-f1 incumbent valid
    // as the warm start here, so this solve always holds a solution.
    set_weighted_objective(m, 0.0, 1.0);
    m.add_constraint("lex_f1_cap", m.named.at("F1"), milp::Sense::LessEq,
                     f1min + std::max(1.0, std::fabs(f1min)) * 1e-9);
    double f2high = range_solve("epsilon_constraint_front: min f2 at min f1", &xF1min, nullptr);
    m.cons.pop_back();

    double width = f2high - f2low;
    ParetoFront front;
    front.degenerate = !(width > 0.0);

    std::vector<double> grid;
    if (front.degenerate) {
        grid.push_back(f2low);
    } else {
        for (int i = 0; i < nPoints; ++i)
            grid.push_back(i + 1 == nPoints
                               ? f2high
                               : f2low + width * (static_cast<double>(i) /
                                                  static_cast<double>(nPoints - 1)));
    }

    set_weighted_objective(m, 1.0, 0.0);
    std::vector<FrontPoint> pool;
    // The min-f2 point satisfies every cap on the ascending grid, and each
    // grid incumbent stays feasible for all later caps, so every grid solve
    // starts warm and keeps an incumbent even when it hits a limit.
    std::vector<double> gridWarm = xF2low;
    for (double eps : grid) {
        if (rep) rep->epsGrid.push_back(eps);
        m.add_constraint("eps_cap", m.named.at("F2"), milp::Sense::LessEq, eps);
        auto out = scalarize_detail::run_solve(in, m, cfg, rep, "epsilon_constraint_front",
                                               &gridWarm);
        m.cons.pop_back();
        if (out.res.hasIncumbent) gridWarm = out.res.x;
        if (!out.point) continue;
        out.point->tags.push_back("eps(" + format_double(eps) + ")");
        scalarize_detail::pool_insert(pool, std::move(*out.point));
    }
    front.points = filter_front_points(std::move(pool));
    return front;
}

}  // namespace hubshop
