#pragma once

// Solution-side value types: a complete set of discrete choices plus flows
// (DecisionVector), the derived timetable (ScheduleTimes), and the objective
// pair. All immutable by convention once built.

#include <array>
#include <map>
#include <vector>

#include "hubshop/instance.hpp"

namespace hubshop {

// Map keys; component order matches the documented index order of the
// corresponding flow table, so std::map iteration is the canonical order.
using Key3 = std::array<int, 3>;  // flowFR: (p,f,j)
using Key4 = std::array<int, 4>;  // flow3:  (p,j,k,h)
using Key5 = std::array<int, 5>;  // flow4:  (p,j,k,kp,h)

struct DecisionVector {
    std::vector<int> custToHub;   // c -> h
    std::vector<int> facToHub;    // f -> j
    std::vector<int> jToCentral;  // j -> k
    std::vector<int> hToCentral;  // h -> k
    std::vector<char> produced;   // (f,p) -> does factory f make product p

    // (f,p,s) -> machine, -1 where produced(f,p) is false.
    std::vector<int> machineOf;

    // (f,s,m) -> processing order of the products assigned to that machine.
    std::vector<std::vector<int>> sequences;

    std::map<Key3, double> flowFR;  // production shipped factory -> NCHF
    std::map<Key5, double> flow4;   // NCHF -> k -> kp -> NCHC, k != kp
    std::map<Key4, double> flow3;   // NCHF -> k -> NCHC

    int seqIndex(const Instance& in, int f, int s, int m) const {
        return (f * in.nStages + s) * in.maxMachines + m;
    }
    const std::vector<int>& sequence(const Instance& in, int f, int s, int m) const {
        return sequences[seqIndex(in, f, s, m)];
    }
    bool isProduced(const Instance& in, int f, int p) const {
        return produced[in.idxFP(f, p)] != 0;
    }
    double qty(const Instance& in, int f, int p) const {
        double q = 0.0;
        for (int j = 0; j < in.nNCHF; ++j) {
            auto it = flowFR.find(Key3{p, f, j});
            if (it != flowFR.end()) q += it->second;
        }
        return q;
    }
};

struct ObjectivePair {
    double f1 = 0.0;  // total cost
    double f2 = 0.0;  // system arrival time (makespan at the customers)
};

using Key2 = std::array<int, 2>;

struct ScheduleTimes {
    // Batch completion per produced (f,p,s); the factory flow-shop timetable.
    std::map<Key3, double> ht;
    std::vector<double> cmax;      // per factory; 0 for idle factories
    std::map<Key2, double> stJ;    // (p,j): departure-ready time at NCHF j
    std::map<Key2, double> sfH;    // (p,h): latest arrival at NCHC h over used routes
    std::map<Key3, double> sgC;    // (p,c,h): arrival at customer c via its hub
    double sa = 0.0;               // max customer arrival over demanded goods
};

// One bar of the factory Gantt chart. start = end - qty * procTime.
struct GanttRow {
    int factory = 0;  // origin-1 in exports
    int stage = 0;
    int machine = 0;
    int product = 0;
    double start = 0.0;
    double end = 0.0;
};

}  // namespace hubshop
