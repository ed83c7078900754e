#pragma once

// Direct evaluation of a feasible DecisionVector: recomputes both objectives
// and the full timetable without touching the MILP machinery, so it serves
// as the independent check on solver output.

#include <algorithm>
#include <utility>

#include "hubshop/feasibility.hpp"

namespace hubshop {

// Total cost. Term groups and per-group loop order mirror the MILP objective
// term order exactly; evaluating either on the same solution values must
// produce the same double, bit for bit.
inline double total_cost(const Instance& in, const DecisionVector& dv) {
    double f1 = 0.0;
    for (int c = 0; c < in.nCustomers; ++c)
        f1 += in.custLinkCost[in.idxCH(c, dv.custToHub[c])];
    for (int f = 0; f < in.nFactories; ++f)
        f1 += in.facLinkCost[in.idxFJ(f, dv.facToHub[f])];
    for (int j = 0; j < in.nNCHF; ++j)
        f1 += in.hubLinkCostJ[in.idxJK(j, dv.jToCentral[j])];
    for (int h = 0; h < in.nNCHC; ++h)
        f1 += in.hubLinkCostH[in.idxHK(h, dv.hToCentral[h])];
    for (const auto& [key, v] : dv.flowFR)
        f1 += in.prodCost[in.idxPFJ(key[0], key[1], key[2])] * v;
    for (const auto& [key, v] : dv.flow4)
        f1 += in.routeCost4[in.idxPJKKH(key[0], key[1], key[2], key[3], key[4])] * v;
    for (const auto& [key, v] : dv.flow3)
        f1 += in.routeCost3[in.idxPJKH(key[0], key[1], key[2], key[3])] * v;
    return f1;
}

// List-schedules every factory and propagates completion times through the
// hub network. Precondition: check_feasibility(in, dv) is empty.
inline std::pair<ObjectivePair, ScheduleTimes> evaluate_solution(const Instance& in,
                                                                 const DecisionVector& dv) {
    {
        auto viol = check_feasibility(in, dv);
        if (!viol.empty())
            throw FeasibilityError("evaluate_solution: infeasible input: " + viol.front());
    }

    ScheduleTimes st;
    st.cmax.assign(in.nFactories, 0.0);

    // Factory floor: batch completion ht(f,p,s) = max(own previous stage,
    // predecessor on the machine) + qty * unit time.
    for (int f = 0; f < in.nFactories; ++f) {
        bool any = false;
        for (int s = 0; s < in.nStages; ++s) {
            for (int m = 0; m < in.machines(f, s); ++m) {
                double machineFree = 0.0;
                for (int p : dv.sequence(in, f, s, m)) {
                    double ready = 0.0;
                    if (s > 0) ready = st.ht.at(Key3{f, p, s - 1});
                    double start = std::max(ready, machineFree);
                    double end = start + dv.qty(in, f, p) * in.procTime[in.idxFPS(f, p, s)];
                    st.ht[Key3{f, p, s}] = end;
                    machineFree = end;
                    any = true;
                }
            }
        }
        if (any) {
            double cm = 0.0;
            for (int p = 0; p < in.nProducts; ++p)
                if (dv.isProduced(in, f, p))
                    cm = std::max(cm, st.ht.at(Key3{f, p, in.nStages - 1}));
            st.cmax[f] = cm;
        }
    }

    // Arrival readiness at each NCHF: the slowest producing factory that
    // ships product p to j, plus its transit.
    for (int p = 0; p < in.nProducts; ++p)
        for (int j = 0; j < in.nNCHF; ++j) {
            bool found = false;
            double t = 0.0;
            for (int f = 0; f < in.nFactories; ++f) {
                if (dv.facToHub[f] != j || !dv.isProduced(in, f, p)) continue;
                auto it = dv.flowFR.find(Key3{p, f, j});
                if (it == dv.flowFR.end() || it->second <= 0.0) continue;
                found = true;
                t = std::max(t, st.cmax[f] + in.tFacToJ[in.idxPFJ(p, f, j)]);
            }
            if (found) st.stJ[Key2{p, j}] = t;
        }

    // Arrival at each NCHC: max over used routes of departure + route transit.
    for (const auto& [key, v] : dv.flow4) {
        if (v < 1.0) continue;
        auto [p, j, k, kp, h] = std::tuple(key[0], key[1], key[2], key[3], key[4]);
        double t = st.stJ.at(Key2{p, j}) + in.tJToK[in.idxPJK(p, j, k)] +
                   in.tKToK[in.idxPKK(p, k, kp)] + in.tKToH[in.idxPKH(p, kp, h)];
        auto [it, inserted] = st.sfH.try_emplace(Key2{p, h}, t);
        if (!inserted) it->second = std::max(it->second, t);
    }
    for (const auto& [key, v] : dv.flow3) {
        if (v < 1.0) continue;
        auto [p, j, k, h] = std::tuple(key[0], key[1], key[2], key[3]);
        double t = st.stJ.at(Key2{p, j}) + in.tJToK[in.idxPJK(p, j, k)] +
                   in.tKToH[in.idxPKH(p, k, h)];
        auto [it, inserted] = st.sfH.try_emplace(Key2{p, h}, t);
        if (!inserted) it->second = std::max(it->second, t);
    }

    // Delivery to customers; only demanded goods count toward the system time.
    for (int p = 0; p < in.nProducts; ++p)
        for (int c = 0; c < in.nCustomers; ++c) {
            if (in.demand[in.idxCP(c, p)] <= 0.0) continue;
            int h = dv.custToHub[c];
            double t = st.sfH.at(Key2{p, h}) + in.tHToC[in.idxPCH(p, c, h)];
            st.sgC[Key3{p, c, h}] = t;
            st.sa = std::max(st.sa, t);
        }

    ObjectivePair obj;
    obj.f1 = total_cost(in, dv);
    obj.f2 = st.sa;
    return {obj, st};
}

// Flattens the factory timetable into Gantt rows, ordered by (factory,
// stage, machine, sequence position).
inline std::vector<GanttRow> gantt_rows(const Instance& in, const DecisionVector& dv,
                                        const ScheduleTimes& st) {
    std::vector<GanttRow> rows;
    for (int f = 0; f < in.nFactories; ++f)
        for (int s = 0; s < in.nStages; ++s)
            for (int m = 0; m < in.machines(f, s); ++m)
                for (int p : dv.sequence(in, f, s, m)) {
                    GanttRow r;
                    r.factory = f;
                    r.stage = s;
                    r.machine = m;
                    r.product = p;
                    r.end = st.ht.at(Key3{f, p, s});
                    r.start = r.end - dv.qty(in, f, p) * in.procTime[in.idxFPS(f, p, s)];
                    rows.push_back(r);
                }
    return rows;
}

}  // namespace hubshop
