#pragma once

// Bounded revised primal simplex.
//
// Rows become equalities with one slack each; the slack sign encodes the
// sense. Phase 1 minimizes the total bound violation of the basic variables
// (composite method, short steps), which doubles as the warm-start repair
// when branch-and-bound tightens bounds on an already-factorized basis.
// The basis inverse is a dense LU (Eigen) plus product-form eta updates,
// refactorized periodically. Dantzig pricing with a Bland's-rule fallback
// after a degeneracy streak guarantees termination.

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "hubshop/milp/model.hpp"

namespace hubshop::milp {

struct LpResult {
    SolveStatus status = SolveStatus::Infeasible;
    double objective = 0.0;
    std::vector<double> x;  // structural variable values (model order)
    long long iterations = 0;
};

class SimplexSolver {
public:
    explicit SimplexSolver(const Model& model) : model_(&model) {
        n_ = model.num_vars();
        m_ = model.num_cons();
        total_ = n_ + m_;
        cols_.resize(total_);
        for (int i = 0; i < m_; ++i) {
            const auto& con = model.cons[i];
            for (const auto& [v, c] : con.expr.terms) cols_[v].push_back({i, c});
        }
        for (int i = 0; i < m_; ++i) cols_[n_ + i].push_back({i, 1.0});
        rhs_.resize(m_);
        slackLo_.resize(m_);
        slackHi_.resize(m_);
        for (int i = 0; i < m_; ++i) {
            const auto& con = model.cons[i];
            rhs_[i] = con.rhs;
            switch (con.sense) {
                case Sense::LessEq: slackLo_[i] = 0.0; slackHi_[i] = kInf; break;
                case Sense::GreaterEq: slackLo_[i] = -kInf; slackHi_[i] = 0.0; break;
                case Sense::Equal: slackLo_[i] = 0.0; slackHi_[i] = 0.0; break;
            }
        }
        cost_.assign(total_, 0.0);
        for (const auto& [v, c] : model.objective.terms) cost_[v] = c;
        basisValid_ = false;
    }

    // Solves with the given structural bounds. warm reuses the previous
    // basis; phase 1 absorbs any resulting infeasibility.
    LpResult solve(const std::vector<double>& lo, const std::vector<double>& hi,
                   bool warm, double feasTol = 1e-7) {
        feasTol_ = feasTol;
        lo_.assign(total_, 0.0);
        hi_.assign(total_, 0.0);
        for (int j = 0; j < n_; ++j) {
            lo_[j] = lo[j];
            hi_[j] = hi[j];
        }
        for (int i = 0; i < m_; ++i) {
            lo_[n_ + i] = slackLo_[i];
            hi_[n_ + i] = slackHi_[i];
        }
        if (!warm || !basisValid_) reset_basis();
        sanitize_statuses();
        if (!refactorize()) {
            reset_basis();
            if (!refactorize()) throw NumericError("simplex: initial basis is singular");
        }
        compute_basics();

        LpResult res;
        res.status = run(res.iterations);
        if (res.status == SolveStatus::Optimal) {
            res.x = structural_values();
            // One clean recomputation for reporting accuracy.
            res.objective = 0.0;
            for (const auto& [v, c] : model_->objective.terms) res.objective += c * res.x[v];
        }
        basisValid_ = true;
        return res;
    }

    // Values of every variable (structural order) at the current basis.
    std::vector<double> structural_values() const {
        std::vector<double> x(n_);
        for (int j = 0; j < n_; ++j) x[j] = value_of(j);
        return x;
    }

private:
    enum class St : unsigned char { Basic, AtLower, AtUpper, Free };

    const Model* model_;
    int n_ = 0, m_ = 0, total_ = 0;
    std::vector<std::vector<std::pair<int, double>>> cols_;
    std::vector<double> rhs_, slackLo_, slackHi_, cost_;
    std::vector<double> lo_, hi_;

    std::vector<int> basic_;        // row -> variable
    std::vector<int> rowOf_;        // variable -> row or -1
    std::vector<St> status_;
    std::vector<double> xB_;        // basic values by row
    double feasTol_ = 1e-7;

    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
    struct Eta {
        int row;
        std::vector<std::pair<int, double>> d;  // sparse pivot column
        double dr;
    };
    std::vector<Eta> etas_;
    bool basisValid_ = false;

    static constexpr double kPivTol = 1e-9;
    static constexpr double kDualTol = 1e-9;
    static constexpr int kRefactorEvery = 64;

    void reset_basis() {
        basic_.resize(m_);
        rowOf_.assign(total_, -1);
        status_.assign(total_, St::AtLower);
        for (int j = 0; j < total_; ++j) status_[j] = default_status(j);
        for (int i = 0; i < m_; ++i) {
            basic_[i] = n_ + i;
            status_[n_ + i] = St::Basic;
            rowOf_[n_ + i] = i;
        }
    }

    St default_status(int j) const {
        if (std::isfinite(lo_[j])) return St::AtLower;
        if (std::isfinite(hi_[j])) return St::AtUpper;
        return St::Free;
    }

    // After bound changes a nonbasic status can dangle (e.g. AtLower with an
    // infinite lower bound); snap those to a representable state.
    void sanitize_statuses() {
        rowOf_.assign(total_, -1);
        for (int i = 0; i < m_; ++i) rowOf_[basic_[i]] = i;
        for (int j = 0; j < total_; ++j) {
            if (status_[j] == St::Basic) {
                if (rowOf_[j] < 0) status_[j] = default_status(j);
                continue;
            }
            if (rowOf_[j] >= 0) continue;  // stale, fixed below
            if (status_[j] == St::AtLower && !std::isfinite(lo_[j])) status_[j] = default_status(j);
            if (status_[j] == St::AtUpper && !std::isfinite(hi_[j])) status_[j] = default_status(j);
            if (status_[j] == St::Free && (std::isfinite(lo_[j]) || std::isfinite(hi_[j])))
                status_[j] = default_status(j);
        }
        for (int i = 0; i < m_; ++i) status_[basic_[i]] = St::Basic;
    }

    double nonbasic_value(int j) const {
        switch (status_[j]) {
            case St::AtLower: return lo_[j];
            case St::AtUpper: return hi_[j];
            default: return 0.0;
        }
    }

    double value_of(int j) const {
        return status_[j] == St::Basic ? xB_[rowOf_[j]] : nonbasic_value(j);
    }

    bool refactorize() {
        Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m_, m_);
        for (int i = 0; i < m_; ++i)
            for (const auto& [r, c] : cols_[basic_[i]]) B(r, i) = c;
        lu_.compute(B);
        etas_.clear();
        // PartialPivLU has no rank query; test against a solve residual.
        Eigen::VectorXd probe = Eigen::VectorXd::Ones(m_);
        Eigen::VectorXd sol = lu_.solve(probe);
        Eigen::VectorXd back = B * sol;
        double err = (back - probe).lpNorm<Eigen::Infinity>();
        return std::isfinite(err) && err < 1e-6 * (1.0 + probe.lpNorm<Eigen::Infinity>());
    }

    void compute_basics() {
        Eigen::VectorXd r(m_);
        for (int i = 0; i < m_; ++i) r[i] = rhs_[i];
        for (int j = 0; j < total_; ++j) {
            if (status_[j] == St::Basic) continue;
            double v = nonbasic_value(j);
            if (v == 0.0) continue;
            for (const auto& [row, c] : cols_[j]) r[row] -= c * v;
        }
        Eigen::VectorXd sol = ftran(r);
        xB_.resize(m_);
        for (int i = 0; i < m_; ++i) xB_[i] = sol[i];
    }

    Eigen::VectorXd ftran(const Eigen::VectorXd& v) const {
        Eigen::VectorXd r = lu_.solve(v);
        for (const auto& e : etas_) {
            double pr = r[e.row] / e.dr;
            if (pr != 0.0)
                for (const auto& [i, di] : e.d) r[i] -= di * pr;
            r[e.row] = pr;
        }
        return r;
    }

    Eigen::VectorXd btran(const Eigen::VectorXd& v) const {
        Eigen::VectorXd r = v;
        for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
            double acc = r[it->row];
            for (const auto& [i, di] : it->d)
                if (i != it->row) acc -= di * r[i];
            r[it->row] = acc / it->dr;
        }
        return lu_.transpose().solve(r);
    }

    double col_dot(int j, const Eigen::VectorXd& y) const {
        double s = 0.0;
        for (const auto& [row, c] : cols_[j]) s += c * y[row];
        return s;
    }

    double infeasibility() const {
        double s = 0.0;
        for (int i = 0; i < m_; ++i) {
            int j = basic_[i];
            if (xB_[i] < lo_[j]) s += lo_[j] - xB_[i];
            else if (xB_[i] > hi_[j]) s += xB_[i] - hi_[j];
        }
        return s;
    }

    SolveStatus run(long long& iterations) {
        const long long maxIter = 200000 + 200LL * (m_ + n_);
        int stall = 0;
        bool bland = false;
        double lastObj = kInf;

        while (true) {
            if (++iterations > maxIter)
                throw NumericError("simplex: iteration limit hit; numerical trouble suspected");

            bool phase1 = false;
            Eigen::VectorXd cB = Eigen::VectorXd::Zero(m_);
            for (int i = 0; i < m_; ++i) {
                int j = basic_[i];
                if (xB_[i] < lo_[j] - feasTol_) { cB[i] = -1.0; phase1 = true; }
                else if (xB_[i] > hi_[j] + feasTol_) { cB[i] = 1.0; phase1 = true; }
            }
            if (!phase1)
                for (int i = 0; i < m_; ++i) cB[i] = cost_[basic_[i]];

            double curObj = phase1 ? infeasibility() : current_objective();
            if (curObj < lastObj - 1e-12 * (1.0 + std::fabs(lastObj))) {
                stall = 0;
                bland = false;
            } else if (++stall > 200) {
                bland = true;
            }
            lastObj = curObj;

            Eigen::VectorXd y = btran(cB);

            // Pricing.
            int q = -1;
            int dir = 0;
            double best = 0.0;
            for (int j = 0; j < total_; ++j) {
                if (status_[j] == St::Basic) continue;
                if (hi_[j] - lo_[j] < 1e-30) continue;  // fixed
                double d = (phase1 ? 0.0 : cost_[j]) - col_dot(j, y);
                int cand = 0;
                if (status_[j] == St::AtLower && d < -kDualTol) cand = +1;
                else if (status_[j] == St::AtUpper && d > kDualTol) cand = -1;
                else if (status_[j] == St::Free && std::fabs(d) > kDualTol) cand = d < 0 ? +1 : -1;
                if (!cand) continue;
                if (bland) { q = j; dir = cand; break; }
                if (std::fabs(d) > best) {
                    best = std::fabs(d);
                    q = j;
                    dir = cand;
                }
            }
            if (q < 0) {
                if (phase1) {
                    if (infeasibility() > feasTol_ * (1.0 + m_)) return SolveStatus::Infeasible;
                    continue;  // feasible after all; rerun pricing in phase 2
                }
                finalize();
                return SolveStatus::Optimal;
            }

            // Direction through the basis.
            Eigen::VectorXd aq = Eigen::VectorXd::Zero(m_);
            for (const auto& [row, c] : cols_[q]) aq[row] = c;
            Eigen::VectorXd w = ftran(aq);

            // Ratio test. rate_i is the change of basic i per unit increase
            // of the entering variable along dir.
            double limit = hi_[q] - lo_[q];  // bound-flip distance, may be inf
            double step = limit;
            int leaveRow = -1;
            double leaveAt = 0.0;  // bound the leaving variable stops at
            double leavePivot = 0.0;
            for (int i = 0; i < m_; ++i) {
                double rate = -dir * w[i];
                if (std::fabs(rate) < kPivTol) continue;
                int jb = basic_[i];
                double cap = kInf;
                double target = 0.0;
                if (phase1 && xB_[i] < lo_[jb] - feasTol_) {
                    // Below its range: blocks only when rising into it.
                    if (rate > 0.0) { cap = (lo_[jb] - xB_[i]) / rate; target = lo_[jb]; }
                } else if (phase1 && xB_[i] > hi_[jb] + feasTol_) {
                    if (rate < 0.0) { cap = (hi_[jb] - xB_[i]) / rate; target = hi_[jb]; }
                } else {
                    if (rate > 0.0 && std::isfinite(hi_[jb])) {
                        cap = (hi_[jb] - xB_[i]) / rate;
                        target = hi_[jb];
                    } else if (rate < 0.0 && std::isfinite(lo_[jb])) {
                        cap = (lo_[jb] - xB_[i]) / rate;
                        target = lo_[jb];
                    }
                }
                if (cap == kInf) continue;
                cap = std::max(cap, 0.0);
                bool better = cap < step - 1e-12;
                bool tie = std::fabs(cap - step) <= 1e-12;
                if (better || (tie && leaveRow >= 0 &&
                               (bland ? basic_[i] < basic_[leaveRow]
                                      : std::fabs(w[i]) > std::fabs(leavePivot)))) {
                    step = cap;
                    leaveRow = i;
                    leaveAt = target;
                    leavePivot = w[i];
                }
            }

            if (step == kInf) {
                if (phase1)
                    throw NumericError("simplex: unbounded phase-1 direction");
                return SolveStatus::Unbounded;
            }

            if (leaveRow < 0) {
                // Bound flip: the entering variable crosses its whole range.
                status_[q] = (status_[q] == St::AtLower) ? St::AtUpper : St::AtLower;
                apply_step(w, dir, step);
                continue;
            }

            if (std::fabs(leavePivot) < kPivTol) {
                if (!etas_.empty()) {
                    if (!refactorize())
                        throw NumericError("simplex: singular basis after refactorization");
                    compute_basics();
                    continue;  // retry with a fresh factorization
                }
                throw NumericError("simplex: vanishing pivot on a fresh factorization");
            }

            apply_step(w, dir, step);
            int jLeave = basic_[leaveRow];
            status_[jLeave] = (leaveAt == hi_[jLeave]) ? St::AtUpper : St::AtLower;
            rowOf_[jLeave] = -1;
            double enterVal = nonbasic_value(q) + dir * step;
            status_[q] = St::Basic;
            rowOf_[q] = leaveRow;
            basic_[leaveRow] = q;
            xB_[leaveRow] = enterVal;

            Eta e;
            e.row = leaveRow;
            e.dr = w[leaveRow];
            for (int i = 0; i < m_; ++i)
                if (std::fabs(w[i]) > 1e-14) e.d.push_back({i, w[i]});
            etas_.push_back(std::move(e));
            if ((int)etas_.size() >= kRefactorEvery) {
                if (!refactorize())
                    throw NumericError("simplex: singular basis after refactorization");
                compute_basics();
            }
        }
    }

    // Moves all basic values along the direction; the entering variable's
    // own new value is written by the caller when it enters the basis.
    void apply_step(const Eigen::VectorXd& w, int dir, double step) {
        if (step == 0.0) return;
        for (int i = 0; i < m_; ++i) {
            double rate = -dir * w[i];
            if (rate != 0.0) xB_[i] += rate * step;
        }
    }

    double current_objective() const {
        double s = 0.0;
        for (int j = 0; j < total_; ++j) {
            if (cost_[j] == 0.0) continue;
            s += cost_[j] * value_of(j);
        }
        return s;
    }

    // Final cleanup: refactorize and recompute for maximum accuracy.
    void finalize() {
        if (!etas_.empty()) {
            if (!refactorize()) throw NumericError("simplex: singular basis at finalize");
        }
        compute_basics();
    }
};

// One-shot LP solve of the model with binaries relaxed to their [lo, hi]
// boxes. This is the milp-core entry point for plain LPs.
inline LpResult simplex_solve(const Model& model, double feasTol = 1e-7) {
    std::vector<double> lo(model.num_vars()), hi(model.num_vars());
    for (int j = 0; j < model.num_vars(); ++j) {
        lo[j] = model.vars[j].lo;
        hi[j] = model.vars[j].hi;
    }
    SimplexSolver s(model);
    return s.solve(lo, hi, /*warm=*/false, feasTol);
}

}  // namespace hubshop::milp
