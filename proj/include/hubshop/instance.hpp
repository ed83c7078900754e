#pragma once

// Problem data for the two-echelon hub network with factory-side flow shops.
// Goods flow factory -> NCHF (factory-side hub) -> central hub [-> central
// hub] -> NCHC (customer-side hub) -> customer. Each factory runs a flexible
// flow shop: every product visits stages 1..nStages in order, each stage
// having machinesPerStage(f,s) identical parallel machines.
//
// All tables are total over their index domain. Indices are 0-based in
// memory; file formats use origin 1 (see docs/formats.md).

#include <cstddef>
#include <string>
#include <vector>

#include "hubshop/common.hpp"

namespace hubshop {

struct BigMPolicy {
    enum class Mode { Derived, Global };
    Mode mode = Mode::Derived;
    double value = 0.0;  // used when mode == Global
};

struct Instance {
    int nStages = 0;       // S
    int nNCHC = 0;         // H, customer-side hubs
    int nProducts = 0;     // P
    int nFactories = 0;    // F
    int nNCHF = 0;         // J, factory-side hubs
    int nCentralHubs = 0;  // K
    int nCustomers = 0;    // C
    int maxMachines = 0;   // M, machine index universe per (factory, stage)

    std::vector<int> machinesPerStage;  // (f,s) -> count in [1, maxMachines]

    std::vector<double> prodCost;       // (p,f,j) unit production cost at f when linked to j
    std::vector<double> routeCost4;     // (p,j,k,kp,h) unit cost, two-central-hub route
    std::vector<double> routeCost3;     // (p,j,k,h) unit cost, single-central-hub route
    std::vector<double> custLinkCost;   // (c,h) cost of linking customer c to NCHC h
    std::vector<double> hubLinkCostH;   // (h,k) cost of linking NCHC h to central hub k
    std::vector<double> facLinkCost;    // (f,j) cost of linking factory f to NCHF j
    std::vector<double> hubLinkCostJ;   // (j,k) cost of linking NCHF j to central hub k
    std::vector<double> demand;         // (c,p) demanded quantity

    std::vector<double> tFacToJ;  // (p,f,j) transit time factory -> NCHF
    std::vector<double> tJToK;    // (p,j,k) transit time NCHF -> central hub
    std::vector<double> tKToH;    // (p,kp,h) transit time central hub -> NCHC
    std::vector<double> tKToK;    // (p,k,kp) transit time between central hubs
    std::vector<double> tHToC;    // (p,c,h) transit time NCHC -> customer
    std::vector<double> procTime; // (f,p,s) unit processing time, > 0

    BigMPolicy bigM;

    // Flat index helpers; each mirrors the table's documented index order.
    int idxFS(int f, int s) const { return f * nStages + s; }
    int idxPFJ(int p, int f, int j) const { return (p * nFactories + f) * nNCHF + j; }
    int idxPJKKH(int p, int j, int k, int kp, int h) const {
        return (((p * nNCHF + j) * nCentralHubs + k) * nCentralHubs + kp) * nNCHC + h;
    }
    int idxPJKH(int p, int j, int k, int h) const {
        return ((p * nNCHF + j) * nCentralHubs + k) * nNCHC + h;
    }
    int idxCH(int c, int h) const { return c * nNCHC + h; }
    int idxHK(int h, int k) const { return h * nCentralHubs + k; }
    int idxFJ(int f, int j) const { return f * nNCHF + j; }
    int idxJK(int j, int k) const { return j * nCentralHubs + k; }
    int idxCP(int c, int p) const { return c * nProducts + p; }
    int idxPJK(int p, int j, int k) const { return (p * nNCHF + j) * nCentralHubs + k; }
    int idxPKH(int p, int kp, int h) const { return (p * nCentralHubs + kp) * nNCHC + h; }
    int idxPKK(int p, int k, int kp) const { return (p * nCentralHubs + k) * nCentralHubs + kp; }
    int idxPCH(int p, int c, int h) const { return (p * nCustomers + c) * nNCHC + h; }
    int idxFPS(int f, int p, int s) const { return (f * nProducts + p) * nStages + s; }
    int idxFP(int f, int p) const { return f * nProducts + p; }

    int machines(int f, int s) const { return machinesPerStage[idxFS(f, s)]; }
    double totalDemand(int p) const {
        double t = 0.0;
        for (int c = 0; c < nCustomers; ++c) t += demand[idxCP(c, p)];
        return t;
    }
};

// Checks sizes, ranges, and the structural rules that make every valid
// instance feasible. Returns human-readable violations; empty means valid.
inline std::vector<std::string> validate_instance(const Instance& in) {
    std::vector<std::string> out;
    auto bad = [&](const std::string& m) { out.push_back(m); };

    if (in.nStages < 1) bad("nStages must be >= 1");
    if (in.nNCHC < 1) bad("nNCHC must be >= 1");
    if (in.nProducts < 2) bad("nProducts must be >= 2");
    if (in.nFactories < 1) bad("nFactories must be >= 1");
    if (in.nNCHF < 1) bad("nNCHF must be >= 1");
    if (in.nCentralHubs < 1) bad("nCentralHubs must be >= 1");
    if (in.nCustomers < 1) bad("nCustomers must be >= 1");
    if (in.maxMachines < 1) bad("maxMachines must be >= 1");
    if (!out.empty()) return out;  // sizes below would be meaningless

    // Hub coverage: every central hub must receive at least one NCHF and one
    // NCHC, so the hub counts bound the central-hub count.
    if (in.nCentralHubs > in.nNCHF)
        bad("nCentralHubs exceeds nNCHF; central-hub coverage is impossible");
    if (in.nCentralHubs > in.nNCHC)
        bad("nCentralHubs exceeds nNCHC; central-hub coverage is impossible");

    struct Tab {
        const char* name;
        const std::vector<double>* v;
        std::size_t want;
    };
    const std::size_t P = in.nProducts, F = in.nFactories, J = in.nNCHF, K = in.nCentralHubs,
                      H = in.nNCHC, C = in.nCustomers, S = in.nStages;
    const Tab tabs[] = {
        {"prodCost", &in.prodCost, P * F * J},
        {"routeCost4", &in.routeCost4, P * J * K * K * H},
        {"routeCost3", &in.routeCost3, P * J * K * H},
        {"custLinkCost", &in.custLinkCost, C * H},
        {"hubLinkCostH", &in.hubLinkCostH, H * K},
        {"facLinkCost", &in.facLinkCost, F * J},
        {"hubLinkCostJ", &in.hubLinkCostJ, J * K},
        {"demand", &in.demand, C * P},
        {"tFacToJ", &in.tFacToJ, P * F * J},
        {"tJToK", &in.tJToK, P * J * K},
        {"tKToH", &in.tKToH, P * K * H},
        {"tKToK", &in.tKToK, P * K * K},
        {"tHToC", &in.tHToC, P * C * H},
        {"procTime", &in.procTime, F * P * S},
    };
    if (in.machinesPerStage.size() != F * S)
        bad("machinesPerStage has wrong size (want nFactories*nStages entries)");
    for (const auto& t : tabs) {
        if (t.v->size() != t.want) {
            bad(std::string(t.name) + " has wrong size");
            continue;
        }
        for (double x : *t.v) {
            if (!(x >= 0.0) || !std::isfinite(x)) {
                bad(std::string(t.name) + " has a negative or non-finite entry");
                break;
            }
        }
    }
    if (!out.empty()) return out;

    for (int f = 0; f < in.nFactories; ++f)
        for (int s = 0; s < in.nStages; ++s) {
            int m = in.machines(f, s);
            if (m < 1 || m > in.maxMachines) {
                bad("machinesPerStage out of [1, maxMachines] at factory " +
                    std::to_string(f + 1) + ", stage " + std::to_string(s + 1));
            }
        }
    for (double x : in.procTime)
        if (!(x > 0.0)) {
            bad("procTime entries must be > 0");
            break;
        }

    // Any positive route flow is forced to be >= 1 by the route-use coupling,
    // so a product with total demand strictly inside (0,1) cannot be shipped.
    for (int p = 0; p < in.nProducts; ++p) {
        double d = in.totalDemand(p);
        if (d > 0.0 && d < 1.0)
            bad("total demand of product " + std::to_string(p + 1) +
                " is in (0,1); it cannot satisfy the minimum-shipment rule");
    }
    if (in.bigM.mode == BigMPolicy::Mode::Global && !(in.bigM.value > 0.0))
        bad("global big-M value must be > 0");
    return out;
}

}  // namespace hubshop
