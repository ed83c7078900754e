#pragma once

// Independent optimum for micro instances: exhaustively enumerate every
// discrete configuration (hub assignments, producer sets, machine placement,
// processing orders, route usage) and solve the residual flow/timing LP with
// all binaries pinned through variable bounds. Covers exactly the model's
// decision space but never calls branch_and_bound, so it serves as the
// search oracle. Cost grows combinatorially; intended for cardinalities of
// at most 2 with one or two machines.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "hubshop/milp/simplex.hpp"
#include "hubshop/model_build.hpp"

namespace hubshop::test_support {

struct StructuredOpt {
    bool feasible = false;
    double objective = milp::kInf;
    long long lpSolves = 0;
};

namespace detail {

// Odometer step over fixed-radix digit vectors; false once exhausted.
inline bool next_digits(std::vector<int>& v, int radix) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (++v[i] < radix) return true;
        v[i] = 0;
    }
    return false;
}

inline bool covers_all(const std::vector<int>& assign, int k) {
    std::vector<char> hit(k, 0);
    for (int a : assign) hit[a] = 1;
    for (char c : hit)
        if (!c) return false;
    return true;
}

}  // namespace detail

inline StructuredOpt structured_opt(const Instance& in, double w1, double w2) {
    milp::Model model = build_milp(in);
    set_weighted_objective(model, w1, w2);
    const MilpLayout L = layout_for(in);

    {
        double space = 1.0;
        for (int c = 0; c < L.C; ++c) space *= L.H;
        for (int f = 0; f < L.F; ++f) space *= L.J;
        for (int j = 0; j < L.J; ++j) space *= L.K;
        for (int h = 0; h < L.H; ++h) space *= L.K;
        for (int p = 0; p < L.P; ++p) space *= (1 << L.F);
        if (space > 5e6)
            throw std::logic_error("structured_opt: structure space too large for enumeration");
    }

    milp::SimplexSolver solver(model);
    std::vector<double> baseLo(model.num_vars()), baseHi(model.num_vars());
    for (int i = 0; i < model.num_vars(); ++i) {
        baseLo[i] = model.vars[i].lo;
        baseHi[i] = model.vars[i].hi;
    }

    StructuredOpt out;
    std::vector<double> lo, hi;

    auto solve_config = [&](const std::vector<int>& ones) {
        lo = baseLo;
        hi = baseHi;
        for (int b = 0; b < L.numBinaries(); ++b) lo[b] = hi[b] = 0.0;
        for (int b : ones) lo[b] = hi[b] = 1.0;
        ++out.lpSolves;
        milp::LpResult r;
        try {
            r = solver.solve(lo, hi, /*warm=*/true);
        } catch (const NumericError&) {
            r = solver.solve(lo, hi, /*warm=*/false);
        }
        if (r.status == milp::SolveStatus::Optimal) {
            out.feasible = true;
            out.objective = std::min(out.objective, r.objective);
        }
    };

    std::vector<int> zA(L.C, 0);
    do {
        std::vector<int> zzA(L.F, 0);
        do {
            std::vector<int> xA(L.J, 0);
            do {
                if (!detail::covers_all(xA, L.K)) continue;
                std::vector<int> yA(L.H, 0);
                do {
                    if (!detail::covers_all(yA, L.K)) continue;

                    // Producer sets: one nonzero mask per demanded product.
                    std::vector<int> uMask(L.P, 0);
                    for (int p = 0; p < L.P; ++p) uMask[p] = in.totalDemand(p) > 0.0 ? 1 : 0;
                    bool uMore = true;
                    while (uMore) {
                        bool uOk = true;
                        for (int p = 0; p < L.P && uOk; ++p) {
                            int nProd = 0;
                            for (int f = 0; f < L.F; ++f) nProd += (uMask[p] >> f) & 1;
                            // Each producer ships at least one unit.
                            if (nProd > in.totalDemand(p)) uOk = false;
                        }
                        if (!uOk) {
                            uMore = [&] {
                                for (int p = 0; p < L.P; ++p) {
                                    if (++uMask[p] < (1 << L.F)) return true;
                                    uMask[p] = in.totalDemand(p) > 0.0 ? 1 : 0;
                                }
                                return false;
                            }();
                            continue;
                        }

                        // NCHFs holding product p under this structure.
                        std::vector<std::vector<int>> activeJ(L.P);
                        for (int p = 0; p < L.P; ++p) {
                            std::vector<char> seen(L.J, 0);
                            for (int f = 0; f < L.F; ++f)
                                if ((uMask[p] >> f) & 1) seen[zzA[f]] = 1;
                            for (int j = 0; j < L.J; ++j)
                                if (seen[j]) activeJ[p].push_back(j);
                        }
                        // Demand at each NCHC under this customer assignment.
                        std::vector<double> dHP((std::size_t)L.H * L.P, 0.0);
                        bool reachable = true;
                        for (int h = 0; h < L.H; ++h)
                            for (int p = 0; p < L.P; ++p) {
                                double d = 0.0;
                                for (int c = 0; c < L.C; ++c)
                                    if (zA[c] == h) d += in.demand[in.idxCP(c, p)];
                                dHP[h * L.P + p] = d;
                                if (d > 0.0 && activeJ[p].empty()) reachable = false;
                            }
                        if (!reachable) {
                            uMore = [&] {
                                for (int p = 0; p < L.P; ++p) {
                                    if (++uMask[p] < (1 << L.F)) return true;
                                    uMask[p] = in.totalDemand(p) > 0.0 ? 1 : 0;
                                }
                                return false;
                            }();
                            continue;
                        }

                        // Machine placement: mixed radix over produced (f,p,s).
                        struct Slot {
                            int f, p, s, radix;
                        };
                        std::vector<Slot> slots;
                        for (int f = 0; f < L.F; ++f)
                            for (int p = 0; p < L.P; ++p)
                                if ((uMask[p] >> f) & 1)
                                    for (int s = 0; s < L.S; ++s)
                                        slots.push_back({f, p, s, in.machines(f, s)});
                        std::vector<int> mPick(slots.size(), 0);
                        bool mMore = true;
                        while (mMore) {
                            // Orders: per machine, all permutations of its set.
                            struct MachineSeq {
                                int f, s, m;
                                std::vector<std::vector<int>> perms;
                            };
                            std::vector<MachineSeq> mseqs;
                            for (int f = 0; f < L.F; ++f)
                                for (int s = 0; s < L.S; ++s)
                                    for (int m = 0; m < in.machines(f, s); ++m) {
                                        std::vector<int> set;
                                        for (std::size_t i = 0; i < slots.size(); ++i)
                                            if (slots[i].f == f && slots[i].s == s &&
                                                mPick[i] == m)
                                                set.push_back(slots[i].p);
                                        if (set.size() < 2) {
                                            if (!set.empty()) mseqs.push_back({f, s, m, {set}});
                                            continue;
                                        }
                                        MachineSeq ms{f, s, m, {}};
                                        std::sort(set.begin(), set.end());
                                        do ms.perms.push_back(set);
                                        while (std::next_permutation(set.begin(), set.end()));
                                        mseqs.push_back(std::move(ms));
                                    }
                            std::vector<int> sPick(mseqs.size(), 0);
                            bool sMore = true;
                            while (sMore) {
                                // Route usage: per (p,h) with demand, every
                                // nonempty subset of the active NCHFs.
                                struct Cell {
                                    int p, h;
                                    std::vector<int> subsets;  // masks over activeJ[p]
                                };
                                std::vector<Cell> cells;
                                bool cellsOk = true;
                                for (int p = 0; p < L.P && cellsOk; ++p)
                                    for (int h = 0; h < L.H && cellsOk; ++h) {
                                        double d = dHP[h * L.P + p];
                                        if (d <= 0.0) continue;
                                        Cell cell{p, h, {}};
                                        int nj = (int)activeJ[p].size();
                                        for (int mask = 1; mask < (1 << nj); ++mask) {
                                            int bits = 0;
                                            for (int b = 0; b < nj; ++b) bits += (mask >> b) & 1;
                                            if (bits <= d) cell.subsets.push_back(mask);
                                        }
                                        if (cell.subsets.empty()) cellsOk = false;
                                        cells.push_back(std::move(cell));
                                    }
                                if (cellsOk) {
                                    std::vector<int> aPick(cells.size(), 0);
                                    bool aMore = true;
                                    while (aMore) {
                                        std::vector<int> ones;
                                        for (int c = 0; c < L.C; ++c)
                                            ones.push_back(L.z(c, zA[c]));
                                        for (int f = 0; f < L.F; ++f)
                                            ones.push_back(L.zz(f, zzA[f]));
                                        for (int j = 0; j < L.J; ++j)
                                            ones.push_back(L.x(j, xA[j]));
                                        for (int h = 0; h < L.H; ++h)
                                            ones.push_back(L.y(h, yA[h]));
                                        for (int p = 0; p < L.P; ++p)
                                            for (int f = 0; f < L.F; ++f)
                                                if ((uMask[p] >> f) & 1)
                                                    ones.push_back(L.u(f, p));
                                        for (std::size_t i = 0; i < slots.size(); ++i)
                                            ones.push_back(L.xx(slots[i].f, slots[i].p,
                                                               slots[i].s, mPick[i]));
                                        for (std::size_t i = 0; i < mseqs.size(); ++i) {
                                            const auto& seq = mseqs[i].perms[sPick[i]];
                                            ones.push_back(L.xp(mseqs[i].f, mseqs[i].s,
                                                                mseqs[i].m, seq[0], seq[0]));
                                            for (std::size_t t = 1; t < seq.size(); ++t)
                                                ones.push_back(L.xp(mseqs[i].f, mseqs[i].s,
                                                                    mseqs[i].m, seq[t - 1],
                                                                    seq[t]));
                                        }
                                        for (std::size_t i = 0; i < cells.size(); ++i) {
                                            int mask = cells[i].subsets[aPick[i]];
                                            int p = cells[i].p, h = cells[i].h;
                                            for (std::size_t b = 0; b < activeJ[p].size(); ++b) {
                                                if (!((mask >> b) & 1)) continue;
                                                int j = activeJ[p][b];
                                                int kj = xA[j], kh = yA[h];
                                                ones.push_back(kj == kh
                                                                   ? L.vp(p, j, kj, h)
                                                                   : L.v(p, j, kj, kh, h));
                                            }
                                        }
                                        solve_config(ones);
                                        aMore = false;
                                        for (std::size_t i = 0; i < cells.size(); ++i) {
                                            if (++aPick[i] < (int)cells[i].subsets.size()) {
                                                aMore = true;
                                                break;
                                            }
                                            aPick[i] = 0;
                                        }
                                    }
                                }
                                sMore = false;
                                for (std::size_t i = 0; i < mseqs.size(); ++i) {
                                    if (++sPick[i] < (int)mseqs[i].perms.size()) {
                                        sMore = true;
                                        break;
                                    }
                                    sPick[i] = 0;
                                }
                            }
                            mMore = false;
                            for (std::size_t i = 0; i < slots.size(); ++i) {
                                if (++mPick[i] < slots[i].radix) {
                                    mMore = true;
                                    break;
                                }
                                mPick[i] = 0;
                            }
                        }
                        uMore = [&] {
                            for (int p = 0; p < L.P; ++p) {
                                if (++uMask[p] < (1 << L.F)) return true;
                                uMask[p] = in.totalDemand(p) > 0.0 ? 1 : 0;
                            }
                            return false;
                        }();
                    }
                } while (detail::next_digits(yA, L.K));
            } while (detail::next_digits(xA, L.K));
        } while (detail::next_digits(zzA, L.J));
    } while (detail::next_digits(zA, L.H));

    return out;
}

}  // namespace hubshop::test_support
