#pragma once

// Deterministic random model generators for solver cross-checks. Coefficients
// live on a half-integer grid so the vertex systems stay well conditioned,
// and right-hand sides are anchored at a random interior point so most
// instances come out feasible.

#include "hubshop/common.hpp"
#include "hubshop/milp/model.hpp"

namespace hubshop::test_support {

inline milp::Model random_lp(std::uint64_t seed) {
    Rng rng(seed);
    const int n = rng.uniform_int(2, 6);
    const int rows = rng.uniform_int(1, 8);

    milp::Model m;
    std::vector<double> x0(n);
    for (int j = 0; j < n; ++j) {
        double lo = rng.uniform(-3.0, 0.0);
        double hi = lo + rng.uniform(0.5, 4.0);
        m.add_continuous("x" + std::to_string(j), lo, hi);
        x0[j] = rng.uniform(lo, hi);
    }
    for (int i = 0; i < rows; ++i) {
        milp::LinearExpr e;
        double lhs0 = 0.0;
        int used = 0;
        for (int j = 0; j < n; ++j) {
            if (rng.uniform(0.0, 1.0) > 0.7) continue;
            double a = rng.uniform_int(-10, 10) / 2.0;
            if (a == 0.0) continue;
            e.add(j, a);
            lhs0 += a * x0[j];
            ++used;
        }
        if (used == 0) {
            double a = (double)rng.uniform_int(1, 4);
            int j = rng.uniform_int(0, n - 1);
            e.add(j, a);
            lhs0 = a * x0[j];
        }
        // A skewed row ignores the anchor, so some instances are infeasible.
        double skew = rng.uniform(0.0, 1.0) < 0.2 ? rng.uniform(-4.0, 0.0) : 0.0;
        int pick = rng.uniform_int(0, 9);
        if (pick <= 5) {
            m.add_constraint("r" + std::to_string(i), std::move(e), milp::Sense::LessEq,
                             lhs0 + skew + rng.uniform(0.0, 3.0));
        } else if (pick <= 8) {
            m.add_constraint("r" + std::to_string(i), std::move(e), milp::Sense::GreaterEq,
                             lhs0 - skew - rng.uniform(0.0, 3.0));
        } else {
            m.add_constraint("r" + std::to_string(i), std::move(e), milp::Sense::Equal,
                             lhs0 + skew);
        }
    }
    for (int j = 0; j < n; ++j) m.objective.add(j, rng.uniform_int(-10, 10) / 2.0);
    return m;
}

// Mixed binary/continuous model, guaranteed to pass Model::validate: every
// binary is touched by the first row.
inline milp::Model random_milp(std::uint64_t seed, int maxBinaries = 10) {
    Rng rng(seed);
    const int nb = rng.uniform_int(3, maxBinaries);
    const int nc = rng.uniform_int(0, 3);

    milp::Model m;
    for (int j = 0; j < nb; ++j) m.add_binary("b" + std::to_string(j));
    std::vector<double> x0(nb + nc);
    for (int j = 0; j < nb; ++j) x0[j] = rng.uniform_int(0, 1);
    for (int j = 0; j < nc; ++j) {
        m.add_continuous("x" + std::to_string(j), 0.0, 2.0);
        x0[nb + j] = rng.uniform(0.0, 2.0);
    }
    const int n = nb + nc;
    const int rows = rng.uniform_int(2, n + 3);
    for (int i = 0; i < rows; ++i) {
        milp::LinearExpr e;
        double lhs0 = 0.0;
        for (int j = 0; j < n; ++j) {
            bool force = i == 0 && j < nb;  // row 0 covers all binaries
            if (!force && rng.uniform(0.0, 1.0) > 0.6) continue;
            double a = rng.uniform_int(-10, 10) / 2.0;
            if (a == 0.0) a = 1.0;
            e.add(j, a);
            lhs0 += a * x0[j];
        }
        if (e.empty()) {
            e.add(rng.uniform_int(0, n - 1), 1.0);
            lhs0 = x0[e.terms[0].first];
        }
        double skew = rng.uniform(0.0, 1.0) < 0.15 ? rng.uniform(-3.0, 0.0) : 0.0;
        int pick = rng.uniform_int(0, 9);
        if (pick <= 5) {
            m.add_constraint("r" + std::to_string(i), std::move(e), milp::Sense::LessEq,
                             lhs0 + skew + rng.uniform(0.0, 2.0));
        } else if (pick <= 8) {
            m.add_constraint("r" + std::to_string(i), std::move(e), milp::Sense::GreaterEq,
                             lhs0 - skew - rng.uniform(0.0, 2.0));
        } else {
            m.add_constraint("r" + std::to_string(i), std::move(e), milp::Sense::Equal,
                             lhs0 + skew);
        }
    }
    for (int j = 0; j < n; ++j) m.objective.add(j, rng.uniform_int(-10, 10) / 2.0);
    return m;
}

}  // namespace hubshop::test_support
