#pragma once

// Builds the mixed binary-continuous model for one instance and maps solver
// points back to DecisionVectors.
//
// Variable creation order is a frozen contract. All binaries come first
// (assignments, machine placement, succession, route-use flags), then flows,
// then timing. The cost expression "F1" lists its terms in exactly the order
// total_cost accumulates them, and the flow blocks are laid out so that id
// order equals the lexicographic key order of the solution maps; evaluating
// "F1" at a cleaned solver point and total_cost on the extracted
// DecisionVector therefore produce bit-identical doubles.

#include <string>

#include "hubshop/milp/model.hpp"
#include "hubshop/solution.hpp"

namespace hubshop {

struct MilpLayout {
    int C = 0, H = 0, J = 0, K = 0, F = 0, P = 0, S = 0, M = 0;
    int z0 = 0, zz0 = 0, x0 = 0, y0 = 0, u0 = 0, xx0 = 0, xp0 = 0, v0 = 0, vp0 = 0;
    int fr0 = 0, f40 = 0, ff0 = 0, st0 = 0, sf0 = 0, sg0 = 0, ht0 = 0, cm0 = 0, sa0 = 0;
    int total = 0;

    // Ordered pairs (k, kp != k); kp is stored packed so the id order equals
    // ascending (k, kp) with the diagonal removed.
    int pairs() const { return K * (K - 1); }
    int packKK(int k, int kp) const { return k * (K - 1) + (kp < k ? kp : kp - 1); }

    int z(int c, int h) const { return z0 + c * H + h; }
    int zz(int f, int j) const { return zz0 + f * J + j; }
    int x(int j, int k) const { return x0 + j * K + k; }
    int y(int h, int k) const { return y0 + h * K + k; }
    int u(int f, int p) const { return u0 + f * P + p; }
    int xx(int f, int p, int s, int m) const { return xx0 + ((f * P + p) * S + s) * M + m; }
    // Succession on a machine: diagonal q == p marks the head of the order,
    // off-diagonal means p immediately precedes q.
    int xp(int f, int s, int m, int p, int q) const {
        return xp0 + (((f * S + s) * M + m) * P + p) * P + q;
    }
    int v(int p, int j, int k, int kp, int h) const {
        return v0 + ((p * J + j) * pairs() + packKK(k, kp)) * H + h;
    }
    int vp(int p, int j, int k, int h) const { return vp0 + ((p * J + j) * K + k) * H + h; }
    int fr(int p, int f, int j) const { return fr0 + (p * F + f) * J + j; }
    int f4(int p, int j, int k, int kp, int h) const {
        return f40 + ((p * J + j) * pairs() + packKK(k, kp)) * H + h;
    }
    int ff(int p, int j, int k, int h) const { return ff0 + ((p * J + j) * K + k) * H + h; }
    int st(int p, int j) const { return st0 + p * J + j; }
    int sf(int p, int h) const { return sf0 + p * H + h; }
    int sg(int p, int c, int h) const { return sg0 + (p * C + c) * H + h; }
    int ht(int f, int p, int s) const { return ht0 + (f * P + p) * S + s; }
    int cmax(int f) const { return cm0 + f; }
    int sa() const { return sa0; }

    int numBinaries() const { return fr0; }
};

inline MilpLayout layout_for(const Instance& in) {
    MilpLayout L;
    L.C = in.nCustomers;
    L.H = in.nNCHC;
    L.J = in.nNCHF;
    L.K = in.nCentralHubs;
    L.F = in.nFactories;
    L.P = in.nProducts;
    L.S = in.nStages;
    L.M = in.maxMachines;
    int at = 0;
    L.z0 = at;
    at += L.C * L.H;
    L.zz0 = at;
    at += L.F * L.J;
    L.x0 = at;
    at += L.J * L.K;
    L.y0 = at;
    at += L.H * L.K;
    L.u0 = at;
    at += L.F * L.P;
    L.xx0 = at;
    at += L.F * L.P * L.S * L.M;
    L.xp0 = at;
    at += L.F * L.S * L.M * L.P * L.P;
    L.v0 = at;
    at += L.P * L.J * L.pairs() * L.H;
    L.vp0 = at;
    at += L.P * L.J * L.K * L.H;
    L.fr0 = at;
    at += L.P * L.F * L.J;
    L.f40 = at;
    at += L.P * L.J * L.pairs() * L.H;
    L.ff0 = at;
    at += L.P * L.J * L.K * L.H;
    L.st0 = at;
    at += L.P * L.J;
    L.sf0 = at;
    at += L.P * L.H;
    L.sg0 = at;
    at += L.P * L.C * L.H;
    L.ht0 = at;
    at += L.F * L.P * L.S;
    L.cm0 = at;
    at += L.F;
    L.sa0 = at;
    at += 1;
    L.total = at;
    return L;
}

// Activation constants. Flow gates use a per-product constant; timing gates
// use constants derived from worst-case completion and transit chains so
// every gated row is slack at any least-start solution when its flag is off.
struct BigMSet {
    std::vector<double> flow;  // per product
    double ready = 1.0;        // hub readiness vs factory completion
    double route4 = 1.0;       // two-hub route arrival
    double route3 = 1.0;       // one-hub route arrival
    double deliver = 1.0;      // customer arrival
    double seq = 1.0;          // same-machine precedence
};

inline BigMSet derive_big_m(const Instance& in) {
    BigMSet m;
    m.flow.resize(in.nProducts);
    if (in.bigM.mode == BigMPolicy::Mode::Global) {
        for (auto& v : m.flow) v = in.bigM.value;
        m.ready = m.route4 = m.route3 = m.deliver = m.seq = in.bigM.value;
        return m;
    }
    for (int p = 0; p < in.nProducts; ++p)
        m.flow[p] = std::max(1.0, in.totalDemand(p));

    auto maxOf = [](const std::vector<double>& v) {
        double t = 0.0;
        for (double x : v) t = std::max(t, x);
        return t;
    };
    // A factory that made everything alone would finish by sum over products
    // and stages of demand * unit time; no least-start schedule exceeds it.
    double maxWork = 0.0;
    for (int f = 0; f < in.nFactories; ++f) {
        double w = 0.0;
        for (int p = 0; p < in.nProducts; ++p)
            for (int s = 0; s < in.nStages; ++s)
                w += in.totalDemand(p) * in.procTime[in.idxFPS(f, p, s)];
        maxWork = std::max(maxWork, w);
    }
    m.ready = std::max(1.0, maxWork + maxOf(in.tFacToJ));
    m.route4 = m.ready + maxOf(in.tJToK) + maxOf(in.tKToK) + maxOf(in.tKToH);
    m.route3 = m.ready + maxOf(in.tJToK) + maxOf(in.tKToH);
    m.deliver = std::max(m.route4, m.route3) + maxOf(in.tHToC);
    m.seq = std::max(1.0, 2.0 * maxWork);
    return m;
}

inline milp::Model build_milp(const Instance& in) {
    {
        auto issues = validate_instance(in);
        if (!issues.empty())
            throw std::invalid_argument("build_milp: invalid instance: " + issues.front());
    }
    const MilpLayout L = layout_for(in);
    const BigMSet M = derive_big_m(in);
    milp::Model mod;
    mod.vars.reserve(L.total);

    auto N = [](int v) { return std::to_string(v + 1); };
    using milp::LinearExpr;
    using milp::Sense;

    // --- variables, in frozen id order ---
    for (int c = 0; c < L.C; ++c)
        for (int h = 0; h < L.H; ++h) mod.add_binary("z_c" + N(c) + "_h" + N(h));
    for (int f = 0; f < L.F; ++f)
        for (int j = 0; j < L.J; ++j) mod.add_binary("zz_f" + N(f) + "_j" + N(j));
    for (int j = 0; j < L.J; ++j)
        for (int k = 0; k < L.K; ++k) mod.add_binary("x_j" + N(j) + "_k" + N(k));
    for (int h = 0; h < L.H; ++h)
        for (int k = 0; k < L.K; ++k) mod.add_binary("y_h" + N(h) + "_k" + N(k));
    for (int f = 0; f < L.F; ++f)
        for (int p = 0; p < L.P; ++p) mod.add_binary("u_f" + N(f) + "_p" + N(p));
    for (int f = 0; f < L.F; ++f)
        for (int p = 0; p < L.P; ++p)
            for (int s = 0; s < L.S; ++s)
                for (int m = 0; m < L.M; ++m)
                    mod.add_binary("xx_f" + N(f) + "_p" + N(p) + "_s" + N(s) + "_m" + N(m));
    for (int f = 0; f < L.F; ++f)
        for (int s = 0; s < L.S; ++s)
            for (int m = 0; m < L.M; ++m)
                for (int p = 0; p < L.P; ++p)
                    for (int q = 0; q < L.P; ++q)
                        mod.add_binary("xs_f" + N(f) + "_s" + N(s) + "_m" + N(m) + "_p" + N(p) +
                                       "_q" + N(q));
    for (int p = 0; p < L.P; ++p)
        for (int j = 0; j < L.J; ++j)
            for (int k = 0; k < L.K; ++k)
                for (int kp = 0; kp < L.K; ++kp) {
                    if (kp == k) continue;
                    for (int h = 0; h < L.H; ++h)
                        mod.add_binary("v4_p" + N(p) + "_j" + N(j) + "_k" + N(k) + "_q" + N(kp) +
                                       "_h" + N(h));
                }
    for (int p = 0; p < L.P; ++p)
        for (int j = 0; j < L.J; ++j)
            for (int k = 0; k < L.K; ++k)
                for (int h = 0; h < L.H; ++h)
                    mod.add_binary("v3_p" + N(p) + "_j" + N(j) + "_k" + N(k) + "_h" + N(h));

    for (int p = 0; p < L.P; ++p)
        for (int f = 0; f < L.F; ++f)
            for (int j = 0; j < L.J; ++j)
                mod.add_continuous("fr_p" + N(p) + "_f" + N(f) + "_j" + N(j));
    for (int p = 0; p < L.P; ++p)
        for (int j = 0; j < L.J; ++j)
            for (int k = 0; k < L.K; ++k)
                for (int kp = 0; kp < L.K; ++kp) {
                    if (kp == k) continue;
                    for (int h = 0; h < L.H; ++h)
                        mod.add_continuous("f4_p" + N(p) + "_j" + N(j) + "_k" + N(k) + "_q" +
                                           N(kp) + "_h" + N(h));
                }
    for (int p = 0; p < L.P; ++p)
        for (int j = 0; j < L.J; ++j)
            for (int k = 0; k < L.K; ++k)
                for (int h = 0; h < L.H; ++h)
                    mod.add_continuous("f3_p" + N(p) + "_j" + N(j) + "_k" + N(k) + "_h" + N(h));
    for (int p = 0; p < L.P; ++p)
        for (int j = 0; j < L.J; ++j) mod.add_continuous("st_p" + N(p) + "_j" + N(j));
    for (int p = 0; p < L.P; ++p)
        for (int h = 0; h < L.H; ++h) mod.add_continuous("sf_p" + N(p) + "_h" + N(h));
    for (int p = 0; p < L.P; ++p)
        for (int c = 0; c < L.C; ++c)
            for (int h = 0; h < L.H; ++h)
                mod.add_continuous("sg_p" + N(p) + "_c" + N(c) + "_h" + N(h));
    for (int f = 0; f < L.F; ++f)
        for (int p = 0; p < L.P; ++p)
            for (int s = 0; s < L.S; ++s)
                mod.add_continuous("ht_f" + N(f) + "_p" + N(p) + "_s" + N(s));
    for (int f = 0; f < L.F; ++f) mod.add_continuous("cmax_f" + N(f));
    mod.add_continuous("sa");

    // --- objective components ---
    {
        LinearExpr f1;
        for (int c = 0; c < L.C; ++c)
            for (int h = 0; h < L.H; ++h) f1.add(L.z(c, h), in.custLinkCost[in.idxCH(c, h)]);
        for (int f = 0; f < L.F; ++f)
            for (int j = 0; j < L.J; ++j) f1.add(L.zz(f, j), in.facLinkCost[in.idxFJ(f, j)]);
        for (int j = 0; j < L.J; ++j)
            for (int k = 0; k < L.K; ++k) f1.add(L.x(j, k), in.hubLinkCostJ[in.idxJK(j, k)]);
        for (int h = 0; h < L.H; ++h)
            for (int k = 0; k < L.K; ++k) f1.add(L.y(h, k), in.hubLinkCostH[in.idxHK(h, k)]);
        for (int p = 0; p < L.P; ++p)
            for (int f = 0; f < L.F; ++f)
                for (int j = 0; j < L.J; ++j)
                    f1.add(L.fr(p, f, j), in.prodCost[in.idxPFJ(p, f, j)]);
        for (int p = 0; p < L.P; ++p)
            for (int j = 0; j < L.J; ++j)
                for (int k = 0; k < L.K; ++k)
                    for (int kp = 0; kp < L.K; ++kp) {
                        if (kp == k) continue;
                        for (int h = 0; h < L.H; ++h)
                            f1.add(L.f4(p, j, k, kp, h),
                                   in.routeCost4[in.idxPJKKH(p, j, k, kp, h)]);
                    }
        for (int p = 0; p < L.P; ++p)
            for (int j = 0; j < L.J; ++j)
                for (int k = 0; k < L.K; ++k)
                    for (int h = 0; h < L.H; ++h)
                        f1.add(L.ff(p, j, k, h), in.routeCost3[in.idxPJKH(p, j, k, h)]);
        mod.named["F1"] = std::move(f1);
        LinearExpr f2;
        f2.add(L.sa(), 1.0);
        mod.named["F2"] = std::move(f2);
    }

    // --- assignment and coverage ---
    for (int f = 0; f < L.F; ++f) {
        LinearExpr e;
        for (int j = 0; j < L.J; ++j) e.add(L.zz(f, j), 1.0);
        mod.add_constraint("pick_j_f" + N(f), std::move(e), Sense::Equal, 1.0);
    }
    for (int j = 0; j < L.J; ++j) {
        LinearExpr e;
        for (int k = 0; k < L.K; ++k) e.add(L.x(j, k), 1.0);
        mod.add_constraint("pick_k_j" + N(j), std::move(e), Sense::Equal, 1.0);
    }
    for (int k = 0; k < L.K; ++k) {
        LinearExpr e;
        for (int j = 0; j < L.J; ++j) e.add(L.x(j, k), 1.0);
        mod.add_constraint("cover_j_k" + N(k), std::move(e), Sense::GreaterEq, 1.0);
    }
    for (int c = 0; c < L.C; ++c) {
        LinearExpr e;
        for (int h = 0; h < L.H; ++h) e.add(L.z(c, h), 1.0);
        mod.add_constraint("pick_h_c" + N(c), std::move(e), Sense::Equal, 1.0);
    }
    for (int k = 0; k < L.K; ++k) {
        LinearExpr e;
        for (int h = 0; h < L.H; ++h) e.add(L.y(h, k), 1.0);
        mod.add_constraint("cover_h_k" + N(k), std::move(e), Sense::GreaterEq, 1.0);
    }
    for (int h = 0; h < L.H; ++h) {
        LinearExpr e;
        for (int k = 0; k < L.K; ++k) e.add(L.y(h, k), 1.0);
        mod.add_constraint("pick_k_h" + N(h), std::move(e), Sense::Equal, 1.0);
    }

    // --- flow balance ---
    // Demand assigned to an NCHC equals what arrives there.
    for (int h = 0; h < L.H; ++h)
        for (int p = 0; p < L.P; ++p) {
            LinearExpr e;
            for (int c = 0; c < L.C; ++c) e.add(L.z(c, h), in.demand[in.idxCP(c, p)]);
            for (int j = 0; j < L.J; ++j)
                for (int k = 0; k < L.K; ++k)
                    for (int kp = 0; kp < L.K; ++kp) {
                        if (kp == k) continue;
                        e.add(L.f4(p, j, k, kp, h), -1.0);
                    }
            for (int j = 0; j < L.J; ++j)
                for (int k = 0; k < L.K; ++k) e.add(L.ff(p, j, k, h), -1.0);
            mod.add_constraint("bal_h" + N(h) + "_p" + N(p), std::move(e), Sense::Equal, 0.0);
        }
    // Production received at an NCHF equals what it ships onward.
    for (int j = 0; j < L.J; ++j)
        for (int p = 0; p < L.P; ++p) {
            LinearExpr e;
            for (int f = 0; f < L.F; ++f) e.add(L.fr(p, f, j), 1.0);
            for (int k = 0; k < L.K; ++k)
                for (int kp = 0; kp < L.K; ++kp) {
                    if (kp == k) continue;
                    for (int h = 0; h < L.H; ++h) e.add(L.f4(p, j, k, kp, h), -1.0);
                }
            for (int k = 0; k < L.K; ++k)
                for (int h = 0; h < L.H; ++h) e.add(L.ff(p, j, k, h), -1.0);
            mod.add_constraint("bal_j" + N(j) + "_p" + N(p), std::move(e), Sense::Equal, 0.0);
        }

    // --- flows only on links the assignments open ---
    for (int p = 0; p < L.P; ++p)
        for (int j = 0; j < L.J; ++j)
            for (int k = 0; k < L.K; ++k)
                for (int kp = 0; kp < L.K; ++kp) {
                    if (kp == k) continue;
                    for (int h = 0; h < L.H; ++h) {
                        std::string tag =
                            "_p" + N(p) + "_j" + N(j) + "_k" + N(k) + "_q" + N(kp) + "_h" + N(h);
                        LinearExpr a;
                        a.add(L.f4(p, j, k, kp, h), 1.0).add(L.x(j, k), -M.flow[p]);
                        mod.add_constraint("gate4x" + tag, std::move(a), Sense::LessEq, 0.0);
                        LinearExpr b;
                        b.add(L.f4(p, j, k, kp, h), 1.0).add(L.y(h, kp), -M.flow[p]);
                        mod.add_constraint("gate4y" + tag, std::move(b), Sense::LessEq, 0.0);
                    }
                }
    for (int p = 0; p < L.P; ++p)
        for (int j = 0; j < L.J; ++j)
            for (int k = 0; k < L.K; ++k)
                for (int h = 0; h < L.H; ++h) {
                    std::string tag = "_p" + N(p) + "_j" + N(j) + "_k" + N(k) + "_h" + N(h);
                    LinearExpr a;
                    a.add(L.ff(p, j, k, h), 1.0).add(L.x(j, k), -M.flow[p]);
                    mod.add_constraint("gate3x" + tag, std::move(a), Sense::LessEq, 0.0);
                    LinearExpr b;
                    b.add(L.ff(p, j, k, h), 1.0).add(L.y(h, k), -M.flow[p]);
                    mod.add_constraint("gate3y" + tag, std::move(b), Sense::LessEq, 0.0);
                }
    for (int p = 0; p < L.P; ++p)
        for (int f = 0; f < L.F; ++f)
            for (int j = 0; j < L.J; ++j) {
                LinearExpr e;
                e.add(L.fr(p, f, j), 1.0).add(L.zz(f, j), -M.flow[p]);
                mod.add_constraint("gatefr_p" + N(p) + "_f" + N(f) + "_j" + N(j), std::move(e),
                                   Sense::LessEq, 0.0);
            }

    // --- machine placement ---
    // A produced (f,p) sits on exactly one machine per stage; machine slots
    // beyond the stage's count are pinned off.
    for (int f = 0; f < L.F; ++f)
        for (int p = 0; p < L.P; ++p)
            for (int s = 0; s < L.S; ++s) {
                LinearExpr e;
                for (int m = 0; m < in.machines(f, s); ++m) e.add(L.xx(f, p, s, m), 1.0);
                e.add(L.u(f, p), -1.0);
                mod.add_constraint("onemach_f" + N(f) + "_p" + N(p) + "_s" + N(s), std::move(e),
                                   Sense::Equal, 0.0);
            }
    for (int f = 0; f < L.F; ++f)
        for (int p = 0; p < L.P; ++p)
            for (int s = 0; s < L.S; ++s)
                for (int m = in.machines(f, s); m < L.M; ++m) {
                    LinearExpr e;
                    e.add(L.xx(f, p, s, m), 1.0);
                    mod.add_constraint(
                        "pin_xx_f" + N(f) + "_p" + N(p) + "_s" + N(s) + "_m" + N(m), std::move(e),
                        Sense::Equal, 0.0);
                }
    // Production flag ties to shipped quantity: nothing without the flag, at
    // least one unit with it.
    for (int f = 0; f < L.F; ++f)
        for (int p = 0; p < L.P; ++p) {
            LinearExpr a;
            for (int j = 0; j < L.J; ++j) a.add(L.fr(p, f, j), 1.0);
            a.add(L.u(f, p), -M.flow[p]);
            mod.add_constraint("prodcap_f" + N(f) + "_p" + N(p), std::move(a), Sense::LessEq, 0.0);
            LinearExpr b;
            for (int j = 0; j < L.J; ++j) b.add(L.fr(p, f, j), 1.0);
            b.add(L.u(f, p), -1.0);
            mod.add_constraint("prodmin_f" + N(f) + "_p" + N(p), std::move(b), Sense::GreaterEq,
                               0.0);
        }

    // --- succession structure per machine ---
    for (int f = 0; f < L.F; ++f)
        for (int s = 0; s < L.S; ++s) {
            for (int m = 0; m < in.machines(f, s); ++m) {
                std::string fsm = "_f" + N(f) + "_s" + N(s) + "_m" + N(m);
                LinearExpr heads;
                for (int p = 0; p < L.P; ++p) heads.add(L.xp(f, s, m, p, p), 1.0);
                mod.add_constraint("onehead" + fsm, std::move(heads), Sense::LessEq, 1.0);
                for (int p = 0; p < L.P; ++p) {
                    LinearExpr e;
                    e.add(L.xp(f, s, m, p, p), 1.0).add(L.xx(f, p, s, m), -1.0);
                    mod.add_constraint("headon" + fsm + "_p" + N(p), std::move(e), Sense::LessEq,
                                       0.0);
                }
            }
            // Every assigned product has exactly one predecessor (itself when
            // it is the head). Emitted for all machine slots: on pinned slots
            // this zeroes the whole succession block.
            for (int m = 0; m < L.M; ++m)
                for (int q = 0; q < L.P; ++q) {
                    LinearExpr e;
                    for (int p = 0; p < L.P; ++p) e.add(L.xp(f, s, m, p, q), 1.0);
                    e.add(L.xx(f, q, s, m), -1.0);
                    mod.add_constraint(
                        "onepred_f" + N(f) + "_s" + N(s) + "_m" + N(m) + "_q" + N(q), std::move(e),
                        Sense::Equal, 0.0);
                }
            for (int m = 0; m < in.machines(f, s); ++m)
                for (int p = 0; p < L.P; ++p) {
                    LinearExpr e;
                    for (int q = 0; q < L.P; ++q)
                        if (q != p) e.add(L.xp(f, s, m, p, q), 1.0);
                    e.add(L.xx(f, p, s, m), -1.0);
                    mod.add_constraint(
                        "onesucc_f" + N(f) + "_s" + N(s) + "_m" + N(m) + "_p" + N(p), std::move(e),
                        Sense::LessEq, 0.0);
                }
        }

    // --- route-use flags tied to their flows ---
    // A flow forces its flag on; a flag forces the one-unit minimum load, so
    // open routes always carry at least one unit.
    for (int p = 0; p < L.P; ++p)
        for (int j = 0; j < L.J; ++j)
            for (int k = 0; k < L.K; ++k)
                for (int kp = 0; kp < L.K; ++kp) {
                    if (kp == k) continue;
                    for (int h = 0; h < L.H; ++h) {
                        std::string tag =
                            "_p" + N(p) + "_j" + N(j) + "_k" + N(k) + "_q" + N(kp) + "_h" + N(h);
                        LinearExpr a;
                        a.add(L.f4(p, j, k, kp, h), 1.0).add(L.v(p, j, k, kp, h), -M.flow[p]);
                        mod.add_constraint("use4hi" + tag, std::move(a), Sense::LessEq, 0.0);
                        LinearExpr b;
                        b.add(L.v(p, j, k, kp, h), 1.0).add(L.f4(p, j, k, kp, h), -1.0);
                        mod.add_constraint("use4lo" + tag, std::move(b), Sense::LessEq, 0.0);
                    }
                }
    for (int p = 0; p < L.P; ++p)
        for (int j = 0; j < L.J; ++j)
            for (int k = 0; k < L.K; ++k)
                for (int h = 0; h < L.H; ++h) {
                    std::string tag = "_p" + N(p) + "_j" + N(j) + "_k" + N(k) + "_h" + N(h);
                    LinearExpr a;
                    a.add(L.ff(p, j, k, h), 1.0).add(L.vp(p, j, k, h), -M.flow[p]);
                    mod.add_constraint("use3hi" + tag, std::move(a), Sense::LessEq, 0.0);
                    LinearExpr b;
                    b.add(L.vp(p, j, k, h), 1.0).add(L.ff(p, j, k, h), -1.0);
                    mod.add_constraint("use3lo" + tag, std::move(b), Sense::LessEq, 0.0);
                }

    // --- timing chain ---
    // Product p is ready to leave NCHF j no earlier than the completion of
    // any factory that ships it there, plus the inbound leg.
    for (int p = 0; p < L.P; ++p)
        for (int j = 0; j < L.J; ++j)
            for (int f = 0; f < L.F; ++f) {
                LinearExpr e;
                e.add(L.st(p, j), 1.0)
                    .add(L.cmax(f), -1.0)
                    .add(L.zz(f, j), -M.ready)
                    .add(L.u(f, p), -M.ready);
                mod.add_constraint("ready_p" + N(p) + "_j" + N(j) + "_f" + N(f), std::move(e),
                                   Sense::GreaterEq,
                                   in.tFacToJ[in.idxPFJ(p, f, j)] - 2.0 * M.ready);
            }
    for (int p = 0; p < L.P; ++p)
        for (int j = 0; j < L.J; ++j)
            for (int k = 0; k < L.K; ++k)
                for (int kp = 0; kp < L.K; ++kp) {
                    if (kp == k) continue;
                    for (int h = 0; h < L.H; ++h) {
                        LinearExpr e;
                        e.add(L.sf(p, h), 1.0)
                            .add(L.st(p, j), -1.0)
                            .add(L.v(p, j, k, kp, h), -M.route4);
                        double t = in.tJToK[in.idxPJK(p, j, k)] + in.tKToK[in.idxPKK(p, k, kp)] +
                                   in.tKToH[in.idxPKH(p, kp, h)];
                        mod.add_constraint("route4_p" + N(p) + "_j" + N(j) + "_k" + N(k) + "_q" +
                                               N(kp) + "_h" + N(h),
                                           std::move(e), Sense::GreaterEq, t - M.route4);
                    }
                }
    for (int p = 0; p < L.P; ++p)
        for (int j = 0; j < L.J; ++j)
            for (int k = 0; k < L.K; ++k)
                for (int h = 0; h < L.H; ++h) {
                    LinearExpr e;
                    e.add(L.sf(p, h), 1.0)
                        .add(L.st(p, j), -1.0)
                        .add(L.vp(p, j, k, h), -M.route3);
                    double t = in.tJToK[in.idxPJK(p, j, k)] + in.tKToH[in.idxPKH(p, k, h)];
                    mod.add_constraint(
                        "route3_p" + N(p) + "_j" + N(j) + "_k" + N(k) + "_h" + N(h), std::move(e),
                        Sense::GreaterEq, t - M.route3);
                }
    // Delivery and the system arrival time, for demanded (c,p) pairs only.
    for (int p = 0; p < L.P; ++p)
        for (int c = 0; c < L.C; ++c) {
            if (in.demand[in.idxCP(c, p)] <= 0.0) continue;
            for (int h = 0; h < L.H; ++h) {
                LinearExpr e;
                e.add(L.sg(p, c, h), 1.0).add(L.sf(p, h), -1.0).add(L.z(c, h), -M.deliver);
                mod.add_constraint("deliver_p" + N(p) + "_c" + N(c) + "_h" + N(h), std::move(e),
                                   Sense::GreaterEq,
                                   in.tHToC[in.idxPCH(p, c, h)] - M.deliver);
                LinearExpr s;
                s.add(L.sa(), 1.0).add(L.sg(p, c, h), -1.0);
                mod.add_constraint("system_p" + N(p) + "_c" + N(c) + "_h" + N(h), std::move(s),
                                   Sense::GreaterEq, 0.0);
            }
        }

    // --- factory floor ---
    // A batch finishes stage s no earlier than its own previous stage plus
    // its full processing there (quantity times unit time).
    for (int f = 0; f < L.F; ++f)
        for (int p = 0; p < L.P; ++p)
            for (int s = 0; s < L.S; ++s) {
                LinearExpr e;
                e.add(L.ht(f, p, s), 1.0);
                if (s > 0) e.add(L.ht(f, p, s - 1), -1.0);
                for (int j = 0; j < L.J; ++j)
                    e.add(L.fr(p, f, j), -in.procTime[in.idxFPS(f, p, s)]);
                mod.add_constraint("stage_f" + N(f) + "_p" + N(p) + "_s" + N(s), std::move(e),
                                   Sense::GreaterEq, 0.0);
            }
    // Same-machine order: a successor finishes after its predecessor plus its
    // own processing.
    for (int f = 0; f < L.F; ++f)
        for (int s = 0; s < L.S; ++s)
            for (int m = 0; m < in.machines(f, s); ++m)
                for (int p = 0; p < L.P; ++p)
                    for (int q = 0; q < L.P; ++q) {
                        if (q == p) continue;
                        LinearExpr e;
                        e.add(L.ht(f, q, s), 1.0)
                            .add(L.ht(f, p, s), -1.0)
                            .add(L.xp(f, s, m, p, q), -M.seq);
                        for (int j = 0; j < L.J; ++j)
                            e.add(L.fr(q, f, j), -in.procTime[in.idxFPS(f, q, s)]);
                        mod.add_constraint("seq_f" + N(f) + "_s" + N(s) + "_m" + N(m) + "_p" +
                                               N(p) + "_q" + N(q),
                                           std::move(e), Sense::GreaterEq, -M.seq);
                    }
    for (int f = 0; f < L.F; ++f)
        for (int p = 0; p < L.P; ++p)
            for (int s = 0; s < L.S; ++s) {
                LinearExpr e;
                e.add(L.cmax(f), 1.0).add(L.ht(f, p, s), -1.0);
                mod.add_constraint("makespan_f" + N(f) + "_p" + N(p) + "_s" + N(s), std::move(e),
                                   Sense::GreaterEq, 0.0);
            }

    return mod;
}

// Objective = w1 * F1 + w2 * F2, recombined from the named components.
inline void set_weighted_objective(milp::Model& mod, double w1, double w2) {
    milp::LinearExpr obj;
    obj.add_scaled(mod.named.at("F1"), w1);
    obj.add_scaled(mod.named.at("F2"), w2);
    mod.objective = std::move(obj);
}

// Tidies a solver point for extraction and reporting: binaries snapped to
// exact 0/1, flows zeroed wherever their gates are off, kept flows clamped
// non-negative, and kept flows a hair under the one-unit minimum lifted onto
// it. Timing values pass through untouched.
inline std::vector<double> clean_solution(const Instance& in, std::vector<double> x) {
    const MilpLayout L = layout_for(in);
    for (int i = 0; i < L.numBinaries(); ++i) x[i] = std::floor(x[i] + 0.5);

    auto tidy = [](double& flow, bool open) {
        if (!open) {
            flow = 0.0;
            return;
        }
        if (flow < 0.0) flow = 0.0;
        if (flow < 1.0 && flow >= 1.0 - 1e-6) flow = 1.0;
    };
    for (int p = 0; p < L.P; ++p)
        for (int f = 0; f < L.F; ++f)
            for (int j = 0; j < L.J; ++j)
                tidy(x[L.fr(p, f, j)], x[L.zz(f, j)] == 1.0 && x[L.u(f, p)] == 1.0);
    for (int p = 0; p < L.P; ++p)
        for (int j = 0; j < L.J; ++j)
            for (int k = 0; k < L.K; ++k)
                for (int kp = 0; kp < L.K; ++kp) {
                    if (kp == k) continue;
                    for (int h = 0; h < L.H; ++h)
                        tidy(x[L.f4(p, j, k, kp, h)], x[L.v(p, j, k, kp, h)] == 1.0);
                }
    for (int p = 0; p < L.P; ++p)
        for (int j = 0; j < L.J; ++j)
            for (int k = 0; k < L.K; ++k)
                for (int h = 0; h < L.H; ++h)
                    tidy(x[L.ff(p, j, k, h)], x[L.vp(p, j, k, h)] == 1.0);
    return x;
}

// Rebuilds the discrete solution from a cleaned point. Structure comes from
// the binaries, machine orders from the succession chains, flows verbatim.
inline DecisionVector extract_decision_vector(const Instance& in, const std::vector<double>& x) {
    const MilpLayout L = layout_for(in);
    DecisionVector dv;

    auto pick = [&](int base, int count, int stride) {
        int best = 0;
        double bestVal = -1.0;
        for (int i = 0; i < count; ++i)
            if (x[base + i * stride] > bestVal) {
                bestVal = x[base + i * stride];
                best = i;
            }
        return best;
    };
    dv.custToHub.resize(L.C);
    for (int c = 0; c < L.C; ++c) dv.custToHub[c] = pick(L.z(c, 0), L.H, 1);
    dv.facToHub.resize(L.F);
    for (int f = 0; f < L.F; ++f) dv.facToHub[f] = pick(L.zz(f, 0), L.J, 1);
    dv.jToCentral.resize(L.J);
    for (int j = 0; j < L.J; ++j) dv.jToCentral[j] = pick(L.x(j, 0), L.K, 1);
    dv.hToCentral.resize(L.H);
    for (int h = 0; h < L.H; ++h) dv.hToCentral[h] = pick(L.y(h, 0), L.K, 1);

    dv.produced.assign((std::size_t)L.F * L.P, 0);
    dv.machineOf.assign((std::size_t)L.F * L.P * L.S, -1);
    for (int f = 0; f < L.F; ++f)
        for (int p = 0; p < L.P; ++p) {
            bool made = x[L.u(f, p)] > 0.5;
            dv.produced[in.idxFP(f, p)] = made ? 1 : 0;
            if (!made) continue;
            for (int s = 0; s < L.S; ++s)
                dv.machineOf[in.idxFPS(f, p, s)] = pick(L.xx(f, p, s, 0), in.machines(f, s), 1);
        }

    dv.sequences.assign((std::size_t)L.F * L.S * L.M, {});
    for (int f = 0; f < L.F; ++f)
        for (int s = 0; s < L.S; ++s)
            for (int m = 0; m < in.machines(f, s); ++m) {
                std::vector<char> assigned(L.P, 0);
                int nAssigned = 0;
                for (int p = 0; p < L.P; ++p)
                    if (x[L.xx(f, p, s, m)] > 0.5) {
                        assigned[p] = 1;
                        ++nAssigned;
                    }
                if (nAssigned == 0) continue;
                auto& seq = dv.sequences[dv.seqIndex(in, f, s, m)];
                int cur = -1;
                for (int p = 0; p < L.P; ++p)
                    if (assigned[p] && x[L.xp(f, s, m, p, p)] > 0.5) cur = p;
                std::vector<char> placed(L.P, 0);
                while (cur >= 0 && !placed[cur] && (int)seq.size() < nAssigned) {
                    seq.push_back(cur);
                    placed[cur] = 1;
                    int next = -1;
                    for (int q = 0; q < L.P; ++q)
                        if (q != cur && assigned[q] && !placed[q] &&
                            x[L.xp(f, s, m, cur, q)] > 0.5)
                            next = q;
                    cur = next;
                }
                // A feasible integral point always yields a full chain; any
                // leftovers mean a malformed input, kept in index order so
                // the feasibility checker can report it downstream.
                for (int p = 0; p < L.P; ++p)
                    if (assigned[p] && !placed[p]) seq.push_back(p);
            }

    for (int p = 0; p < L.P; ++p)
        for (int f = 0; f < L.F; ++f)
            for (int j = 0; j < L.J; ++j) {
                double val = x[L.fr(p, f, j)];
                if (val > 0.0) dv.flowFR[{p, f, j}] = val;
            }
    for (int p = 0; p < L.P; ++p)
        for (int j = 0; j < L.J; ++j)
            for (int k = 0; k < L.K; ++k)
                for (int kp = 0; kp < L.K; ++kp) {
                    if (kp == k) continue;
                    for (int h = 0; h < L.H; ++h) {
                        double val = x[L.f4(p, j, k, kp, h)];
                        if (val > 0.0) dv.flow4[{p, j, k, kp, h}] = val;
                    }
                }
    for (int p = 0; p < L.P; ++p)
        for (int j = 0; j < L.J; ++j)
            for (int k = 0; k < L.K; ++k)
                for (int h = 0; h < L.H; ++h) {
                    double val = x[L.ff(p, j, k, h)];
                    if (val > 0.0) dv.flow3[{p, j, k, h}] = val;
                }
    return dv;
}

}  // namespace hubshop
