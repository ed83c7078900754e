#pragma once

// Structural feasibility of a DecisionVector against an Instance. Each check
// names the model rule it enforces; an empty result is the precondition for
// evaluate_solution.

#include <cmath>
#include <string>
#include <tuple>
#include <vector>

#include "hubshop/solution.hpp"

namespace hubshop {

// Both the checker and the metaheuristic repair aggregate customer demand at
// a hub with this exact loop, so repaired flows balance bit-exactly.
inline double demand_at_hub(const Instance& in, const DecisionVector& dv, int h, int p) {
    double d = 0.0;
    for (int c = 0; c < in.nCustomers; ++c)
        if (dv.custToHub[c] == h) d += in.demand[in.idxCP(c, p)];
    return d;
}

inline constexpr double kBalanceTol = 1e-9;

inline std::vector<std::string> check_feasibility(const Instance& in, const DecisionVector& dv) {
    std::vector<std::string> out;
    auto bad = [&](const std::string& m) { out.push_back(m); };
    auto id = [](int v) { return std::to_string(v + 1); };

    // Assignment totality and ranges: one NCHC per customer, one NCHF per
    // factory, one central hub per NCHF and per NCHC.
    if ((int)dv.custToHub.size() != in.nCustomers) bad("custToHub must cover every customer");
    if ((int)dv.facToHub.size() != in.nFactories) bad("facToHub must cover every factory");
    if ((int)dv.jToCentral.size() != in.nNCHF) bad("jToCentral must cover every NCHF");
    if ((int)dv.hToCentral.size() != in.nNCHC) bad("hToCentral must cover every NCHC");
    if ((int)dv.produced.size() != in.nFactories * in.nProducts) bad("produced has wrong size");
    if ((int)dv.machineOf.size() != in.nFactories * in.nProducts * in.nStages)
        bad("machineOf has wrong size");
    if ((int)dv.sequences.size() != in.nFactories * in.nStages * in.maxMachines)
        bad("sequences has wrong size");
    if (!out.empty()) return out;

    for (int c = 0; c < in.nCustomers; ++c)
        if (dv.custToHub[c] < 0 || dv.custToHub[c] >= in.nNCHC)
            bad("custToHub out of range for customer " + id(c));
    for (int f = 0; f < in.nFactories; ++f)
        if (dv.facToHub[f] < 0 || dv.facToHub[f] >= in.nNCHF)
            bad("facToHub out of range for factory " + id(f));
    for (int j = 0; j < in.nNCHF; ++j)
        if (dv.jToCentral[j] < 0 || dv.jToCentral[j] >= in.nCentralHubs)
            bad("jToCentral out of range for NCHF " + id(j));
    for (int h = 0; h < in.nNCHC; ++h)
        if (dv.hToCentral[h] < 0 || dv.hToCentral[h] >= in.nCentralHubs)
            bad("hToCentral out of range for NCHC " + id(h));
    if (!out.empty()) return out;

    // Central-hub coverage: every central hub serves >= 1 NCHF and >= 1 NCHC.
    std::vector<int> jCover(in.nCentralHubs, 0), hCover(in.nCentralHubs, 0);
    for (int j = 0; j < in.nNCHF; ++j) ++jCover[dv.jToCentral[j]];
    for (int h = 0; h < in.nNCHC; ++h) ++hCover[dv.hToCentral[h]];
    for (int k = 0; k < in.nCentralHubs; ++k) {
        if (jCover[k] == 0) bad("central hub " + id(k) + " has no assigned NCHF");
        if (hCover[k] == 0) bad("central hub " + id(k) + " has no assigned NCHC");
    }

    // Production vs. shipped quantity: produced(f,p) <=> total flowFR >= 1,
    // and a non-producer ships nothing.
    for (int f = 0; f < in.nFactories; ++f)
        for (int p = 0; p < in.nProducts; ++p) {
            double q = dv.qty(in, f, p);
            bool prod = dv.isProduced(in, f, p);
            if (prod && q < 1.0)
                bad("factory " + id(f) + " marks product " + id(p) +
                    " produced but ships less than 1 unit");
            if (!prod && q != 0.0)
                bad("factory " + id(f) + " ships product " + id(p) + " without producing it");
        }

    // Machine assignment: defined exactly for produced (f,p), within the
    // stage's machine count.
    for (int f = 0; f < in.nFactories; ++f)
        for (int p = 0; p < in.nProducts; ++p)
            for (int s = 0; s < in.nStages; ++s) {
                int m = dv.machineOf[in.idxFPS(f, p, s)];
                if (dv.isProduced(in, f, p)) {
                    if (m < 0 || m >= in.machines(f, s))
                        bad("machineOf out of range at factory " + id(f) + ", product " + id(p) +
                            ", stage " + id(s));
                } else if (m != -1) {
                    bad("machineOf set for unproduced product " + id(p) + " at factory " + id(f));
                }
            }
    if (!out.empty()) return out;

    // Sequences: per (f,s,m) exactly the assigned products, each once.
    for (int f = 0; f < in.nFactories; ++f)
        for (int s = 0; s < in.nStages; ++s)
            for (int m = 0; m < in.maxMachines; ++m) {
                const auto& seq = dv.sequence(in, f, s, m);
                std::vector<int> want;
                if (m < in.machines(f, s))
                    for (int p = 0; p < in.nProducts; ++p)
                        if (dv.isProduced(in, f, p) && dv.machineOf[in.idxFPS(f, p, s)] == m)
                            want.push_back(p);
                std::vector<char> seen(in.nProducts, 0);
                bool ok = seq.size() == want.size();
                for (int p : seq) {
                    if (p < 0 || p >= in.nProducts || seen[p]) { ok = false; break; }
                    seen[p] = 1;
                    bool expected = false;
                    for (int w : want) expected |= (w == p);
                    if (!expected) { ok = false; break; }
                }
                if (!ok)
                    bad("sequence at factory " + id(f) + ", stage " + id(s) + ", machine " +
                        id(m) + " does not list exactly its assigned products");
            }

    // Flow support: flows only on links the assignments open.
    for (const auto& [key, v] : dv.flowFR) {
        auto [p, f, j] = std::tuple(key[0], key[1], key[2]);
        if (v < 0.0) bad("negative flowFR entry");
        if (v > 0.0 && dv.facToHub[f] != j)
            bad("flowFR from factory " + id(f) + " to NCHF " + id(j) +
                " but the factory is linked elsewhere");
    }
    for (const auto& [key, v] : dv.flow4) {
        auto [p, j, k, kp, h] = std::tuple(key[0], key[1], key[2], key[3], key[4]);
        if (v < 0.0) bad("negative flow4 entry");
        if (k == kp) bad("flow4 route must use two distinct central hubs");
        if (v > 0.0 && (dv.jToCentral[j] != k || dv.hToCentral[h] != kp))
            bad("flow4 route (" + id(j) + "," + id(k) + "," + id(kp) + "," + id(h) +
                ") is not opened by the hub assignments");
        if (v > 0.0 && v < 1.0)
            bad("flow4 on route (" + id(j) + "," + id(k) + "," + id(kp) + "," + id(h) +
                ") is below the minimum shipment of 1");
    }
    for (const auto& [key, v] : dv.flow3) {
        auto [p, j, k, h] = std::tuple(key[0], key[1], key[2], key[3]);
        if (v < 0.0) bad("negative flow3 entry");
        if (v > 0.0 && (dv.jToCentral[j] != k || dv.hToCentral[h] != k))
            bad("flow3 route (" + id(j) + "," + id(k) + "," + id(h) +
                ") is not opened by the hub assignments");
        if (v > 0.0 && v < 1.0)
            bad("flow3 on route (" + id(j) + "," + id(k) + "," + id(h) +
                ") is below the minimum shipment of 1");
    }

    // Demand balance at each NCHC: arriving flow equals assigned demand.
    for (int h = 0; h < in.nNCHC; ++h)
        for (int p = 0; p < in.nProducts; ++p) {
            double want = demand_at_hub(in, dv, h, p);
            double got = 0.0;
            for (const auto& [key, v] : dv.flow4)
                if (key[0] == p && key[4] == h) got += v;
            for (const auto& [key, v] : dv.flow3)
                if (key[0] == p && key[3] == h) got += v;
            if (std::fabs(got - want) > kBalanceTol)
                bad("demand balance broken at NCHC " + id(h) + " for product " + id(p));
        }

    // Shipment balance at each NCHF: outgoing flow equals received production.
    for (int j = 0; j < in.nNCHF; ++j)
        for (int p = 0; p < in.nProducts; ++p) {
            double inflow = 0.0, outflow = 0.0;
            for (int f = 0; f < in.nFactories; ++f) {
                auto it = dv.flowFR.find(Key3{p, f, j});
                if (it != dv.flowFR.end()) inflow += it->second;
            }
            for (const auto& [key, v] : dv.flow4)
                if (key[0] == p && key[1] == j) outflow += v;
            for (const auto& [key, v] : dv.flow3)
                if (key[0] == p && key[1] == j) outflow += v;
            if (std::fabs(inflow - outflow) > kBalanceTol)
                bad("shipment balance broken at NCHF " + id(j) + " for product " + id(p));
        }

    return out;
}

}  // namespace hubshop
