#pragma once

// Branch and bound over the binary variables. Node selection is best-bound
// with depth-first plunging for early incumbents; branching picks the most
// fractional binary (ties: lowest variable id). Serial mode is bit-for-bit
// deterministic; the optional parallel mode shares the queue and incumbent
// across workers and keeps the same optimum without the determinism.

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <mutex>
#include <queue>
#include <thread>

#include "hubshop/milp/simplex.hpp"

namespace hubshop::milp {

namespace detail {

struct Node {
    int parent = -1;
    int branchVar = -1;
    double blo = 0.0, bhi = 0.0;
    double bound = -kInf;
    long long id = 0;
};

struct NodeOrder {
    // Min-heap on (bound, id): best bound first, oldest node on ties.
    bool operator()(const std::pair<double, long long>& a,
                    const std::pair<double, long long>& b) const {
        if (a.first != b.first) return a.first > b.first;
        return a.second > b.second;
    }
};

class Search {
public:
    Search(const Model& model, const SolverConfig& cfg)
        : model_(model), cfg_(cfg), start_(std::chrono::steady_clock::now()) {
        baseLo_.resize(model.num_vars());
        baseHi_.resize(model.num_vars());
        for (int j = 0; j < model.num_vars(); ++j) {
            baseLo_[j] = model.vars[j].lo;
            baseHi_[j] = model.vars[j].hi;
        }
        for (int j = 0; j < model.num_vars(); ++j)
            if (model.vars[j].kind == VarKind::Binary) binaries_.push_back(j);
    }

    // Installs a known feasible point as the initial incumbent. Only prunes,
    // so the optimum is unchanged, but limit-hit solves keep a solution to
    // report. Points that fail the feasibility or integrality tolerances are
    // ignored rather than trusted.
    void seed_incumbent(const std::vector<double>& x) {
        if ((int)x.size() != model_.num_vars()) return;
        for (double v : x)
            if (!std::isfinite(v)) return;
        for (int b : binaries_)
            if (std::fabs(x[b] - std::round(x[b])) > cfg_.intTol) return;
        if (model_.max_violation(x) > cfg_.feasTol) return;
        result_.hasIncumbent = true;
        result_.x = x;
        result_.objective = model_.objective.value_at(x);
    }

    SolveResult run() {
        nodes_.push_back(Node{});
        heap_.push({-kInf, 0});
        heapIdx_.push_back(0);
        if (cfg_.parallel) {
            int t = cfg_.threads > 0 ? cfg_.threads
                                     : (int)std::max(1u, std::thread::hardware_concurrency());
            std::vector<std::thread> pool;
            for (int i = 0; i < t; ++i) pool.emplace_back([this] { worker(); });
            for (auto& th : pool) th.join();
        } else {
            worker();
        }
        if (numericFailure_) throw NumericError(numericMsg_);

        SolveResult res = result_;
        res.nodes = processed_;
        res.elapsedSec = elapsed();
        if (stop_ == StopReason::None) {
            if (unbounded_) {
                res.status = SolveStatus::Unbounded;
                res.bound = -kInf;
                res.hasIncumbent = false;
            } else if (!res.hasIncumbent) {
                res.status = SolveStatus::Infeasible;
                res.bound = kInf;
                res.objective = kInf;
            } else {
                res.status = SolveStatus::Optimal;
                res.bound = std::min(res.objective, prunedBound_);
            }
        } else {
            res.status = stop_ == StopReason::Nodes ? SolveStatus::NodeLimit
                                                    : SolveStatus::TimeLimit;
            double b = heap_.empty() ? kInf : heap_.top().first;
            b = std::min(b, prunedBound_);
            if (res.hasIncumbent) b = std::min(b, res.objective);
            res.bound = b;
        }
        return res;
    }

private:
    enum class StopReason { None, Nodes, Time };

    const Model& model_;
    SolverConfig cfg_;
    std::chrono::steady_clock::time_point start_;
    std::vector<double> baseLo_, baseHi_;
    std::vector<int> binaries_;

    std::mutex mu_;
    std::condition_variable cv_;
    std::vector<Node> nodes_;
    std::priority_queue<std::pair<double, long long>, std::vector<std::pair<double, long long>>,
                        NodeOrder>
        heap_;
    std::vector<int> heapIdx_;  // parallel array keyed by heap entry id... see push_open
    int active_ = 0;
    long long processed_ = 0;
    long long nextId_ = 1;
    SolveResult result_;
    StopReason stop_ = StopReason::None;
    bool unbounded_ = false;
    bool numericFailure_ = false;
    std::string numericMsg_;
    double prunedBound_ = kInf;  // min LP bound of any subtree cut off early

    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

    double cutoff_locked() const {
        if (!result_.hasIncumbent) return kInf;
        return result_.objective - cfg_.gap * std::max(1.0, std::fabs(result_.objective));
    }

    void build_bounds(int nodeIdx, std::vector<double>& lo, std::vector<double>& hi) const {
        lo = baseLo_;
        hi = baseHi_;
        for (int i = nodeIdx; i > 0; i = nodes_[i].parent) {
            int v = nodes_[i].branchVar;
            lo[v] = std::max(lo[v], nodes_[i].blo);
            hi[v] = std::min(hi[v], nodes_[i].bhi);
        }
    }

    void worker() {
        SimplexSolver solver(model_);
        std::vector<double> lo, hi;
        std::unique_lock<std::mutex> lock(mu_);
        while (true) {
            while (heap_.empty() && active_ > 0 && stop_ == StopReason::None) cv_.wait(lock);
            if (heap_.empty() || stop_ != StopReason::None) break;
            auto [bound, heapId] = heap_.top();
            heap_.pop();
            int idx = heapIdx_[heapId];
            if (bound >= cutoff_locked()) {
                prunedBound_ = std::min(prunedBound_, bound);
                continue;
            }
            ++active_;

            int cur = idx;
            while (cur >= 0 && stop_ == StopReason::None && !unbounded_) {
                if (cfg_.timeLimitSec > 0.0 && elapsed() > cfg_.timeLimitSec) {
                    prunedBound_ = std::min(prunedBound_, nodes_[cur].bound);
                    stop_ = StopReason::Time;
                    break;
                }
                if (processed_ >= cfg_.nodeLimit) {
                    prunedBound_ = std::min(prunedBound_, nodes_[cur].bound);
                    stop_ = StopReason::Nodes;
                    break;
                }
                build_bounds(cur, lo, hi);
                double parentBound = nodes_[cur].bound;
                ++processed_;
                lock.unlock();
                LpResult lp;
                try {
                    try {
                        lp = solver.solve(lo, hi, /*warm=*/true, cfg_.feasTol);
                    } catch (const NumericError&) {
                        lp = solver.solve(lo, hi, /*warm=*/false, cfg_.feasTol);
                    }
                } catch (const NumericError& e) {
                    lock.lock();
                    numericFailure_ = true;
                    numericMsg_ = e.what();
                    stop_ = StopReason::Time;  // drain workers; rethrown in run()
                    break;
                }
                lock.lock();

                if (lp.status == SolveStatus::Infeasible) break;
                if (lp.status == SolveStatus::Unbounded) {
                    // Branching only shrinks the feasible set, so a ray here
                    // is a ray of every ancestor: the MILP itself is open.
                    unbounded_ = true;
                    break;
                }
                double obj = lp.objective;
                double nodeBound = std::max(parentBound, obj);
                nodes_[cur].bound = nodeBound;
                if (obj >= cutoff_locked()) {
                    prunedBound_ = std::min(prunedBound_, nodeBound);
                    break;
                }

                int q = -1;
                double worst = cfg_.intTol;
                for (int v : binaries_) {
                    double x = lp.x[v];
                    double frac = x - std::floor(x);
                    double dist = std::min(frac, 1.0 - frac);
                    if (dist > worst) {
                        worst = dist;
                        q = v;
                    }
                }
                if (q < 0) {
                    // Integral within intTol. Every stored point must be
                    // exactly integral with its continuous part re-optimized
                    // against the exact pins, so re-solve with all binaries
                    // pinned to their snapped values. The re-solve starts
                    // cold on purpose: pricing skips fixed variables, so
                    // pins start and stay nonbasic at their exact value,
                    // whereas a warm basis could keep a pinned variable
                    // basic with sub-feasTol dust on it, which is the very
                    // thing this step removes.
                    constexpr double genuineTol = 1e-9;
                    constexpr double pinTol = 1e-10;
                    double maxDev = 0.0;
                    for (int v : binaries_)
                        maxDev = std::max(maxDev,
                                          std::fabs(lp.x[v] - std::floor(lp.x[v] + 0.5)));
                    std::vector<double> plo = lo, phi = hi;
                    for (int v : binaries_) {
                        double snap = std::floor(lp.x[v] + 0.5);
                        plo[v] = phi[v] = snap;
                    }
                    lock.unlock();
                    LpResult polished;
                    bool honest = false;
                    try {
                        polished = solver.solve(plo, phi, /*warm=*/false, cfg_.feasTol);
                        honest = polished.status == SolveStatus::Optimal;
                    } catch (const NumericError&) {
                    }
                    if (honest) {
                        for (int v : binaries_) {
                            if (std::fabs(polished.x[v] - plo[v]) > pinTol) {
                                honest = false;  // a pin went basic and drifted
                                break;
                            }
                        }
                    }
                    if (honest)
                        for (int v : binaries_) polished.x[v] = plo[v];  // shave residue
                    lock.lock();

                    if (honest) {
                        if (!result_.hasIncumbent || polished.objective < result_.objective) {
                            result_.hasIncumbent = true;
                            result_.objective = polished.objective;
                            result_.x = polished.x;
                        }
                        // The LP optimum is realized (near-)exactly by the
                        // snapped configuration: classic fathoming.
                        if (maxDev <= genuineTol) break;
                    }
                    // Either fractional dust inside intTol was doing real
                    // work (the snapped configuration is costlier than the
                    // LP pretends, or infeasible under tight side
                    // constraints), or the re-solve failed outright. The LP
                    // bound stands, but the point cannot fathom the node:
                    // its subtree still holds unexplored flips of the free
                    // binaries. Branch on the dustiest still-free binary so
                    // the search resolves the point honestly.
                    q = -1;
                    double dust = -1.0;
                    for (int v : binaries_) {
                        if (lo[v] >= hi[v]) continue;
                        double dist = std::fabs(lp.x[v] - std::floor(lp.x[v] + 0.5));
                        if (dist > dust) {
                            dust = dist;
                            q = v;
                        }
                    }
                    if (q < 0) break;  // everything pinned: configuration closed
                }

                bool upFirst = lp.x[q] >= 0.5;
                Node near, far;
                near.parent = far.parent = cur;
                near.branchVar = far.branchVar = q;
                near.bound = far.bound = nodeBound;
                near.blo = upFirst ? 1.0 : 0.0;
                near.bhi = near.blo;
                far.blo = upFirst ? 0.0 : 1.0;
                far.bhi = far.blo;
                near.id = nextId_++;
                far.id = nextId_++;
                nodes_.push_back(far);
                int farIdx = (int)nodes_.size() - 1;
                nodes_.push_back(near);
                int nearIdx = (int)nodes_.size() - 1;
                if (far.bound < cutoff_locked()) {
                    heapIdx_.push_back(farIdx);
                    heap_.push({far.bound, (long long)heapIdx_.size() - 1});
                    cv_.notify_one();
                } else {
                    prunedBound_ = std::min(prunedBound_, far.bound);
                }
                cur = nearIdx;
            }

            --active_;
            if (heap_.empty() && active_ == 0) cv_.notify_all();

            // Early finish once the open tree cannot improve the incumbent
            // beyond the gap.
            if (result_.hasIncumbent && active_ == 0 && !heap_.empty()) {
                double b = heap_.top().first;
                if (result_.objective - b <=
                    cfg_.gap * std::max(1.0, std::fabs(result_.objective))) {
                    prunedBound_ = std::min(prunedBound_, b);
                    while (!heap_.empty()) heap_.pop();
                    cv_.notify_all();
                }
            }
        }
        cv_.notify_all();
    }
};

}  // namespace detail

// Exact MILP solve. Throws std::invalid_argument on an invalid model and
// NumericError when the LP machinery breaks down irrecoverably. A warm-start
// point, when given and feasible, becomes the initial incumbent; it tightens
// pruning and guarantees limit-hit solves still carry a solution.
inline SolveResult branch_and_bound(const Model& model, const SolverConfig& cfg = {},
                                    const std::vector<double>* warmStart = nullptr) {
    {
        auto issues = model.validate();
        if (!issues.empty())
            throw std::invalid_argument("branch_and_bound: invalid model: " + issues.front());
    }
    detail::Search search(model, cfg);
    if (warmStart) search.seed_incumbent(*warmStart);
    return search.run();
}

}  // namespace hubshop::milp
