#pragma once

// Deterministic instance generation. Every parameter family draws from its
// own SplitMix64 stream keyed by (masterSeed, family tag), so adding a family
// never perturbs existing ones and identical seeds give identical instances
// on every platform (the generator uses no libm calls, only exact IEEE
// add/sub/mul/divide).
//
// Family tags and draw orders (frozen; changing them breaks golden files):
//   "co"  custLinkCost   for c, for h            U(50,80)
//   "c4"  routeCost4     for p,j,k,kp,h          U(30,60)   (full k x kp grid)
//   "cc"  routeCost3     for p,j,k,h             U(40,70)
//   "d"   demand         for c, for p            U(10,20)   (round optional)
//   "cfr" prodCost       for p,f,j               U(40,50)
//   "t"   tFacToJ        for p,f,j               U(4,6)
//   "tt"  tJToK          for p,j,k               round(U(6,9))
//   "tp"  tKToH          for p,kp,h              round(U(1,5))
//   "ta"  tKToK          for p,k,kp              round(U(3,6)) (full grid)
//   "td"  tHToC          for p,c,h               round(U(2,8))
//   "cg"  hubLinkCostH   for h,k                 U(40,50)
//   "cd"  facLinkCost    for f,j                 U(40,80)
//   "cb"  hubLinkCostJ   for j,k                 U(30,50)
//   "pr"  procTime       for f,p,s               max(1, round(U(1, prMax)))
//   "v"   machinesPerStage for f,s               uniform int [1, maxMachines]
// round() is round-half-up on the uniform real draw.

#include <stdexcept>

#include "hubshop/instance.hpp"
#include "hubshop/solution.hpp"

namespace hubshop {

struct GenSpec {
    int nStages = 0;
    int nNCHC = 0;
    int nProducts = 0;
    int nCentralHubs = 0;
    int nFactories = 0;
    int nNCHF = 0;
    int nCustomers = 0;
    int maxMachines = 2;
    int prMax = 2;             // processing times drawn as round(U(1, prMax))
    bool roundDemands = false; // demands are continuous by default
};

// Benchmark rows: (H, J, P, K, F, C, S) with the processing-time cap.
inline GenSpec benchmark_spec(int problemId) {
    struct Row {
        int h, j, p, k, f, c, s, prMax;
    };
    static constexpr Row rows[10] = {
        {2, 2, 2, 2, 2, 2, 2, 2},  // 1
        {3, 2, 2, 2, 3, 2, 2, 2},  // 2
        {2, 2, 3, 2, 2, 3, 2, 2},  // 3
        {2, 2, 3, 2, 2, 3, 2, 2},  // 4 (intentionally identical to 3)
        {2, 2, 2, 1, 3, 3, 2, 2},  // 5
        {2, 2, 2, 2, 3, 3, 2, 2},  // 6
        {2, 2, 2, 2, 1, 2, 3, 3},  // 7
        {3, 2, 3, 2, 1, 2, 3, 3},  // 8
        {2, 1, 3, 1, 1, 3, 4, 3},  // 9
        {3, 3, 2, 3, 1, 4, 2, 5},  // 10
    };
    if (problemId < 1 || problemId > 10)
        throw std::invalid_argument("benchmark_spec: problem id must be in [1,10], got " +
                                    std::to_string(problemId));
    const Row& r = rows[problemId - 1];
    GenSpec g;
    g.nNCHC = r.h;
    g.nNCHF = r.j;
    g.nProducts = r.p;
    g.nCentralHubs = r.k;
    g.nFactories = r.f;
    g.nCustomers = r.c;
    g.nStages = r.s;
    g.maxMachines = 2;
    g.prMax = r.prMax;
    return g;
}

inline Instance generate(const GenSpec& g, std::uint64_t seed) {
    Instance in;
    in.nStages = g.nStages;
    in.nNCHC = g.nNCHC;
    in.nProducts = g.nProducts;
    in.nCentralHubs = g.nCentralHubs;
    in.nFactories = g.nFactories;
    in.nNCHF = g.nNCHF;
    in.nCustomers = g.nCustomers;
    in.maxMachines = g.maxMachines;

    const int S = g.nStages, H = g.nNCHC, P = g.nProducts, K = g.nCentralHubs;
    const int F = g.nFactories, J = g.nNCHF, C = g.nCustomers;

    auto fill = [&](std::vector<double>& dst, const char* family, std::size_t count, double lo,
                    double hi, bool rounded) {
        Rng rng = family_stream(seed, family);
        dst.resize(count);
        for (std::size_t i = 0; i < count; ++i) {
            double v = rng.uniform(lo, hi);
            dst[i] = rounded ? round_half_up(v) : v;
        }
    };

    fill(in.custLinkCost, "co", (std::size_t)C * H, 50, 80, false);
    fill(in.routeCost4, "c4", (std::size_t)P * J * K * K * H, 30, 60, false);
    fill(in.routeCost3, "cc", (std::size_t)P * J * K * H, 40, 70, false);
    fill(in.demand, "d", (std::size_t)C * P, 10, 20, g.roundDemands);
    fill(in.prodCost, "cfr", (std::size_t)P * F * J, 40, 50, false);
    fill(in.tFacToJ, "t", (std::size_t)P * F * J, 4, 6, false);
    fill(in.tJToK, "tt", (std::size_t)P * J * K, 6, 9, true);
    fill(in.tKToH, "tp", (std::size_t)P * K * H, 1, 5, true);
    fill(in.tKToK, "ta", (std::size_t)P * K * K, 3, 6, true);
    fill(in.tHToC, "td", (std::size_t)P * C * H, 2, 8, true);
    fill(in.hubLinkCostH, "cg", (std::size_t)H * K, 40, 50, false);
    fill(in.facLinkCost, "cd", (std::size_t)F * J, 40, 80, false);
    fill(in.hubLinkCostJ, "cb", (std::size_t)J * K, 30, 50, false);

    {
        Rng rng = family_stream(seed, "pr");
        in.procTime.resize((std::size_t)F * P * S);
        for (auto& v : in.procTime) {
            double r = round_half_up(rng.uniform(1.0, (double)g.prMax));
            v = r < 1.0 ? 1.0 : r;
        }
    }
    {
        Rng rng = family_stream(seed, "v");
        in.machinesPerStage.resize((std::size_t)F * S);
        for (auto& v : in.machinesPerStage) v = rng.uniform_int(1, g.maxMachines);
    }

    auto issues = validate_instance(in);
    if (!issues.empty())
        throw std::logic_error("generate: produced an invalid instance: " + issues.front());
    return in;
}

inline Instance generate_problem(int problemId, std::uint64_t seed) {
    return generate(benchmark_spec(problemId), seed);
}

// Named fixture "paper-small": the validation-scale instance. Cardinalities
// all 2, machine layout fixed to stage counts [1,2] in factory 1 and [2,1]
// in factory 2, parameters drawn with a frozen seed.
inline constexpr std::uint64_t kPaperSmallSeed = 1001;

inline Instance paper_small_instance() {
    GenSpec g = benchmark_spec(1);
    Instance in = generate(g, kPaperSmallSeed);
    in.machinesPerStage = {1, 2, 2, 1};
    return in;
}

struct GanttFixture {
    Instance instance;
    DecisionVector decision;
};

// Named fixture "paper-gantt": a worked factory-floor example with hand
// checkable completion times. Only the schedule slice (quantities, unit
// times, sequences) is meaningful; network parameters are simple constants
// chosen so the fixture is a complete, feasible instance. Factory 1 runs stage 1 on
// one machine with sequence (p2, p1) and stage 2 on two parallel machines;
// factory 2 runs stage 1 on two parallel machines and stage 2 on one machine
// with sequence (p1, p2). Quantities: factory 1 makes 4 of p1 and 1 of p2;
// factory 2 makes 5 of p1 and 10 of p2. Expected completion times:
// factory 1 ht = {p2s1: 1, p1s1: 9, p2s2: 3, p1s2: 17}, cmax 17;
// factory 2 ht = {p1s1: 10, p2s1: 20, p1s2: 20, p2s2: 40}, cmax 40.
inline GanttFixture paper_gantt() {
    Instance in;
    in.nStages = 2;
    in.nNCHC = 2;
    in.nProducts = 2;
    in.nFactories = 2;
    in.nNCHF = 2;
    in.nCentralHubs = 2;
    in.nCustomers = 2;
    in.maxMachines = 2;
    in.machinesPerStage = {1, 2, 2, 1};

    const int S = 2, H = 2, P = 2, K = 2, F = 2, J = 2, C = 2;
    in.custLinkCost.assign((std::size_t)C * H, 50.0);
    in.routeCost4.assign((std::size_t)P * J * K * K * H, 30.0);
    in.routeCost3.assign((std::size_t)P * J * K * H, 40.0);
    in.prodCost.assign((std::size_t)P * F * J, 40.0);
    in.hubLinkCostH.assign((std::size_t)H * K, 40.0);
    in.facLinkCost.assign((std::size_t)F * J, 40.0);
    in.hubLinkCostJ.assign((std::size_t)J * K, 30.0);
    in.tFacToJ.assign((std::size_t)P * F * J, 4.0);
    in.tJToK.assign((std::size_t)P * J * K, 6.0);
    in.tKToH.assign((std::size_t)P * K * H, 1.0);
    in.tKToK.assign((std::size_t)P * K * K, 3.0);
    in.tHToC.assign((std::size_t)P * C * H, 2.0);

    // demand(c,p): customer 1 wants (4,5), customer 2 wants (5,6); per-product
    // totals 9 and 11 match the reported route flows.
    in.demand = {4.0, 5.0, 5.0, 6.0};

    // procTime(f,p,s): factory 1 = [p1: (2,2), p2: (1,2)], factory 2 all 2.
    in.procTime = {2.0, 2.0, 1.0, 2.0, 2.0, 2.0, 2.0, 2.0};

    DecisionVector dv;
    dv.custToHub = {0, 0};   // both customers on NCHC 1
    dv.facToHub = {1, 1};    // both factories on NCHF 2
    dv.jToCentral = {1, 0};  // NCHF 1 -> central 2 (coverage), NCHF 2 -> central 1
    dv.hToCentral = {1, 0};  // NCHC 1 -> central 2, NCHC 2 -> central 1
    dv.produced.assign((std::size_t)F * P, 1);
    dv.machineOf.assign((std::size_t)F * P * S, -1);
    auto setMachine = [&](int f, int p, int s, int m) {
        dv.machineOf[(std::size_t)(f * P + p) * S + s] = m;
    };
    setMachine(0, 0, 0, 0);  // factory 1 stage 1: single machine
    setMachine(0, 1, 0, 0);
    setMachine(0, 0, 1, 1);  // factory 1 stage 2: parallel
    setMachine(0, 1, 1, 0);
    setMachine(1, 0, 0, 0);  // factory 2 stage 1: parallel
    setMachine(1, 1, 0, 1);
    setMachine(1, 0, 1, 0);  // factory 2 stage 2: single machine
    setMachine(1, 1, 1, 0);

    dv.sequences.assign((std::size_t)F * S * in.maxMachines, {});
    dv.sequences[dv.seqIndex(in, 0, 0, 0)] = {1, 0};  // f1 s1 m1: p2 then p1
    dv.sequences[dv.seqIndex(in, 0, 1, 0)] = {1};     // f1 s2 m1: p2
    dv.sequences[dv.seqIndex(in, 0, 1, 1)] = {0};     // f1 s2 m2: p1
    dv.sequences[dv.seqIndex(in, 1, 0, 0)] = {0};     // f2 s1 m1: p1
    dv.sequences[dv.seqIndex(in, 1, 0, 1)] = {1};     // f2 s1 m2: p2
    dv.sequences[dv.seqIndex(in, 1, 1, 0)] = {0, 1};  // f2 s2 m1: p1 then p2

    dv.flowFR[{0, 0, 1}] = 4.0;   // p1 from factory 1 via NCHF 2
    dv.flowFR[{0, 1, 1}] = 5.0;   // p1 from factory 2
    dv.flowFR[{1, 0, 1}] = 1.0;   // p2 from factory 1
    dv.flowFR[{1, 1, 1}] = 10.0;  // p2 from factory 2

    // Single used route NCHF 2 -> central 1 -> central 2 -> NCHC 1.
    dv.flow4[{0, 1, 0, 1, 0}] = 9.0;
    dv.flow4[{1, 1, 0, 1, 0}] = 11.0;

    return {in, dv};
}

}  // namespace hubshop
