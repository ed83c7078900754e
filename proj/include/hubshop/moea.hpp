#pragma once

// Evolutionary bi-objective solver for instances beyond exact reach: an
// NSGA-II scheme (fast nondominated sort, crowding distance, binary
// tournament) over a genome of assignment, sourcing, and sequencing genes.
//
// Decode-time repair makes every genome feasible by construction:
//   1. central-hub coverage is patched by reassigning surplus NCHF/NCHC;
//   2. each (hub, product) demand is sourced from one gene-chosen NCHF that
//      has a linked factory, along the unique route the hub assignments
//      open (same central hub -> 3-hub route, else the 4-hub route);
//   3. one gene-chosen linked factory produces each NCHF's outflow, summed
//      with exactly the feasibility checker's loop so balances are bitwise;
//   4. per (factory, stage) a product permutation is cut at gene-chosen
//      split points into per-machine sequences.
// Route flows equal whole hub demands, so the minimum-shipment rule holds
// whenever per-customer demands are (as everywhere in this toolkit) >= 1.
//
// The external archive uses exact weak dominance, which makes its
// hypervolume nondecreasing across generations; the banded duplicate
// collapse is applied once at the end, on the returned front. All
// randomness comes from the seeded SplitMix64 stream, and evaluation is
// serial, so a fixed seed reproduces the run exactly.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hubshop/common.hpp"
#include "hubshop/evaluate.hpp"
#include "hubshop/feasibility.hpp"
#include "hubshop/instance.hpp"
#include "hubshop/pareto.hpp"
#include "hubshop/solution.hpp"

namespace hubshop {

struct MoeaConfig {
    int population = 40;
    int generations = 60;
    std::uint64_t seed = 1;
    double crossoverRate = 0.9;  // probability a child pair is recombined
    double mutationRate = 0.3;   // per genome part, one-gene perturbation
};

struct MoeaResult {
    ParetoFront front;              // final archive, duplicate-collapsed, tagged "moea"
    ObjectivePair hvRef;            // component-wise max of the initial population
    std::vector<double> hvHistory;  // archive hypervolume after each generation,
                                    // index 0 = initial population
    std::size_t evaluations = 0;
};

// Dominated-area hypervolume of a nondominated 2-objective set w.r.t. ref;
// points outside the reference box contribute their clipped part.
inline double hypervolume(std::vector<ObjectivePair> pts, const ObjectivePair& ref) {
    std::erase_if(pts, [&](const ObjectivePair& p) { return p.f1 >= ref.f1 || p.f2 >= ref.f2; });
    std::sort(pts.begin(), pts.end(), [](const ObjectivePair& a, const ObjectivePair& b) {
        return a.f1 != b.f1 ? a.f1 < b.f1 : a.f2 < b.f2;
    });
    // Horizontal strips: in ascending-f1 order each point adds the slab
    // between the best f2 so far and its own, across [f1, ref.f1).
    double hv = 0.0, bestF2 = ref.f2;
    for (const ObjectivePair& p : pts) {
        if (p.f2 >= bestF2) continue;  // dominated within the box
        hv += (ref.f1 - p.f1) * (bestF2 - p.f2);
        bestF2 = p.f2;
    }
    return hv;
}

namespace moea_detail {

struct Genome {
    std::vector<int> custToHub;           // c -> h
    std::vector<int> facToHub;            // f -> j
    std::vector<int> jToCentral;          // j -> k
    std::vector<int> hToCentral;          // h -> k
    std::vector<int> sourceJ;             // (h,p) -> serving NCHF
    std::vector<int> producerF;           // (j,p) -> producing factory pick
    std::vector<std::vector<int>> perm;   // (f,s) -> product order
    std::vector<std::vector<int>> cuts;   // (f,s) -> machine split points, size maxMachines-1
};

inline Genome random_genome(const Instance& in, Rng& rng) {
    Genome g;
    g.custToHub.resize(in.nCustomers);
    for (int& v : g.custToHub) v = rng.uniform_int(0, in.nNCHC - 1);
    g.facToHub.resize(in.nFactories);
    for (int& v : g.facToHub) v = rng.uniform_int(0, in.nNCHF - 1);
    g.jToCentral.resize(in.nNCHF);
    for (int& v : g.jToCentral) v = rng.uniform_int(0, in.nCentralHubs - 1);
    g.hToCentral.resize(in.nNCHC);
    for (int& v : g.hToCentral) v = rng.uniform_int(0, in.nCentralHubs - 1);
    g.sourceJ.resize((std::size_t)in.nNCHC * in.nProducts);
    for (int& v : g.sourceJ) v = rng.uniform_int(0, in.nNCHF - 1);
    g.producerF.resize((std::size_t)in.nNCHF * in.nProducts);
    for (int& v : g.producerF) v = rng.uniform_int(0, in.nFactories - 1);
    g.perm.resize((std::size_t)in.nFactories * in.nStages);
    for (auto& p : g.perm) {
        p.resize(in.nProducts);
        for (int i = 0; i < in.nProducts; ++i) p[i] = i;
        for (int i = in.nProducts - 1; i > 0; --i)
            std::swap(p[i], p[rng.uniform_int(0, i)]);
    }
    g.cuts.resize((std::size_t)in.nFactories * in.nStages);
    for (auto& c : g.cuts) {
        c.resize(in.maxMachines - 1);
        for (int& v : c) v = rng.uniform_int(0, in.nProducts);
    }
    return g;
}

// Reassigns surplus members until every central hub has >= 1 of them;
// solvable because validate_instance guarantees count >= nCentralHubs.
inline void repair_coverage(std::vector<int>& assign, int nCentral) {
    std::vector<int> cover(nCentral, 0);
    for (int v : assign) ++cover[v];
    for (int k = 0; k < nCentral; ++k) {
        while (cover[k] == 0) {
            for (std::size_t i = 0; i < assign.size(); ++i) {
                if (cover[assign[i]] >= 2) {
                    --cover[assign[i]];
                    assign[i] = k;
                    ++cover[k];
                    break;
                }
            }
        }
    }
}

inline DecisionVector decode(const Instance& in, const Genome& g) {
    DecisionVector dv;
    dv.custToHub = g.custToHub;
    dv.facToHub = g.facToHub;
    dv.jToCentral = g.jToCentral;
    dv.hToCentral = g.hToCentral;
    repair_coverage(dv.jToCentral, in.nCentralHubs);
    repair_coverage(dv.hToCentral, in.nCentralHubs);

    // NCHFs that can receive production, ascending.
    std::vector<int> openJ;
    for (int j = 0; j < in.nNCHF; ++j)
        for (int f = 0; f < in.nFactories; ++f)
            if (dv.facToHub[f] == j) {
                openJ.push_back(j);
                break;
            }

    // Route each hub demand from its gene-chosen source along the single
    // route the assignments open.
    for (int h = 0; h < in.nNCHC; ++h)
        for (int p = 0; p < in.nProducts; ++p) {
            double d = demand_at_hub(in, dv, h, p);
            if (d == 0.0) continue;
            int j = g.sourceJ[(std::size_t)h * in.nProducts + p];
            bool open = false;
            for (int oj : openJ) open |= (oj == j);
            if (!open) j = openJ[(std::size_t)j % openJ.size()];
            int k = dv.jToCentral[j], kp = dv.hToCentral[h];
            if (k == kp)
                dv.flow3[{p, j, k, h}] = d;
            else
                dv.flow4[{p, j, k, kp, h}] = d;
        }

    // One linked factory produces each NCHF's outflow. The outflow total is
    // summed with the feasibility checker's own loop so the balance it later
    // recomputes is bit-identical.
    for (int j = 0; j < in.nNCHF; ++j)
        for (int p = 0; p < in.nProducts; ++p) {
            double outflow = 0.0;
            bool used = false;
            for (const auto& [key, v] : dv.flow4)
                if (key[0] == p && key[1] == j) {
                    outflow += v;
                    used = true;
                }
            for (const auto& [key, v] : dv.flow3)
                if (key[0] == p && key[1] == j) {
                    outflow += v;
                    used = true;
                }
            if (!used) continue;
            std::vector<int> linked;
            for (int f = 0; f < in.nFactories; ++f)
                if (dv.facToHub[f] == j) linked.push_back(f);
            int f = linked[(std::size_t)g.producerF[(std::size_t)j * in.nProducts + p] %
                           linked.size()];
            dv.flowFR[{p, f, j}] = outflow;
            if (dv.produced.empty()) dv.produced.assign((std::size_t)in.nFactories * in.nProducts, 0);
            dv.produced[in.idxFP(f, p)] = 1;
        }
    if (dv.produced.empty()) dv.produced.assign((std::size_t)in.nFactories * in.nProducts, 0);

    // Cut each (factory, stage) permutation into per-machine sequences.
    dv.machineOf.assign((std::size_t)in.nFactories * in.nProducts * in.nStages, -1);
    dv.sequences.assign((std::size_t)in.nFactories * in.nStages * in.maxMachines, {});
    for (int f = 0; f < in.nFactories; ++f) {
        std::vector<int> mine;
        for (int s = 0; s < in.nStages; ++s) {
            const auto& perm = g.perm[(std::size_t)f * in.nStages + s];
            mine.clear();
            for (int p : perm)
                if (dv.produced[in.idxFP(f, p)]) mine.push_back(p);
            const int mc = in.machines(f, s);
            std::vector<int> bounds(g.cuts[(std::size_t)f * in.nStages + s]);
            for (int& b : bounds) b = std::min<int>(b, (int)mine.size());
            std::sort(bounds.begin(), bounds.end());
            // The last machine's stop is the list end, so every product lands.
            int at = 0;
            for (int m = 0; m < mc; ++m) {
                int stop = m + 1 < mc ? bounds[m] : (int)mine.size();
                stop = std::max(stop, at);
                auto& seq = dv.sequences[dv.seqIndex(in, f, s, m)];
                for (; at < stop; ++at) {
                    seq.push_back(mine[at]);
                    dv.machineOf[in.idxFPS(f, mine[at], s)] = m;
                }
            }
        }
    }

    auto issues = check_feasibility(in, dv);
    if (!issues.empty())
        throw std::logic_error("moea decode produced an infeasible solution: " + issues.front());
    return dv;
}

// Exact weak dominance (no tolerance band): the archive relation.
inline bool exact_weak_dominates(const ObjectivePair& a, const ObjectivePair& b) {
    return a.f1 <= b.f1 && a.f2 <= b.f2;
}

struct Individual {
    Genome genome;
    DecisionVector dv;
    ObjectivePair obj;
    int rank = 0;
    double crowding = 0.0;
};

// Classic fast nondominated sort; returns fronts of indices and fills ranks.
inline std::vector<std::vector<int>> sort_fronts(std::vector<Individual>& pop) {
    const int n = (int)pop.size();
    std::vector<std::vector<int>> dominatesList(n);
    std::vector<int> domCount(n, 0);
    std::vector<std::vector<int>> fronts(1);
    for (int i = 0; i < n; ++i)
        for (int q = 0; q < n; ++q) {
            if (i == q) continue;
            if (dominates(pop[i].obj, pop[q].obj)) dominatesList[i].push_back(q);
            else if (dominates(pop[q].obj, pop[i].obj)) ++domCount[i];
        }
    for (int i = 0; i < n; ++i)
        if (domCount[i] == 0) {
            pop[i].rank = 0;
            fronts[0].push_back(i);
        }
    for (std::size_t fi = 0; fi < fronts.size(); ++fi) {
        std::vector<int> next;
        for (int i : fronts[fi])
            for (int q : dominatesList[i])
                if (--domCount[q] == 0) {
                    pop[q].rank = (int)fi + 1;
                    next.push_back(q);
                }
        if (!next.empty()) fronts.push_back(std::move(next));
    }
    return fronts;
}

inline void assign_crowding(std::vector<Individual>& pop, const std::vector<int>& front) {
    for (int i : front) pop[i].crowding = 0.0;
    if (front.size() <= 2) {
        for (int i : front) pop[i].crowding = std::numeric_limits<double>::infinity();
        return;
    }
    auto by = [&](auto key) {
        std::vector<int> idx = front;
        std::sort(idx.begin(), idx.end(),
                  [&](int a, int b) { return key(pop[a].obj) < key(pop[b].obj); });
        double lo = key(pop[idx.front()].obj), hi = key(pop[idx.back()].obj);
        pop[idx.front()].crowding = pop[idx.back()].crowding =
            std::numeric_limits<double>::infinity();
        if (hi <= lo) return;
        for (std::size_t i = 1; i + 1 < idx.size(); ++i)
            pop[idx[i]].crowding +=
                (key(pop[idx[i + 1]].obj) - key(pop[idx[i - 1]].obj)) / (hi - lo);
    };
    by([](const ObjectivePair& o) { return o.f1; });
    by([](const ObjectivePair& o) { return o.f2; });
}

// Lower rank wins; within a rank, larger crowding; ties keep the first.
inline bool better(const Individual& a, const Individual& b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    return a.crowding > b.crowding;
}

inline std::vector<int> crossover_uniform(const std::vector<int>& a, const std::vector<int>& b,
                                          Rng& rng) {
    std::vector<int> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = rng.next_unit() < 0.5 ? a[i] : b[i];
    return c;
}

// Order crossover: keep a slice of a, fill the rest in b's order.
inline std::vector<int> crossover_order(const std::vector<int>& a, const std::vector<int>& b,
                                        Rng& rng) {
    const int n = (int)a.size();
    if (n <= 2) return a;
    int lo = rng.uniform_int(0, n - 1), hi = rng.uniform_int(0, n - 1);
    if (lo > hi) std::swap(lo, hi);
    std::vector<int> c(n, -1);
    std::vector<char> taken(n, 0);
    for (int i = lo; i <= hi; ++i) {
        c[i] = a[i];
        taken[a[i]] = 1;
    }
    int at = (hi + 1) % n;
    for (int i = 0; i < n; ++i) {
        int v = b[(hi + 1 + i) % n];
        if (taken[v]) continue;
        c[at] = v;
        at = (at + 1) % n;
    }
    return c;
}

inline Genome crossover(const Genome& a, const Genome& b, Rng& rng) {
    Genome c;
    c.custToHub = crossover_uniform(a.custToHub, b.custToHub, rng);
    c.facToHub = crossover_uniform(a.facToHub, b.facToHub, rng);
    c.jToCentral = crossover_uniform(a.jToCentral, b.jToCentral, rng);
    c.hToCentral = crossover_uniform(a.hToCentral, b.hToCentral, rng);
    c.sourceJ = crossover_uniform(a.sourceJ, b.sourceJ, rng);
    c.producerF = crossover_uniform(a.producerF, b.producerF, rng);
    c.perm.resize(a.perm.size());
    for (std::size_t i = 0; i < a.perm.size(); ++i)
        c.perm[i] = crossover_order(a.perm[i], b.perm[i], rng);
    c.cuts.resize(a.cuts.size());
    for (std::size_t i = 0; i < a.cuts.size(); ++i)
        c.cuts[i] = crossover_uniform(a.cuts[i], b.cuts[i], rng);
    return c;
}

inline void mutate(const Instance& in, Genome& g, double rate, Rng& rng) {
    auto pick = [&](std::vector<int>& v, int hi) {
        if (v.empty() || rng.next_unit() >= rate) return;
        v[(std::size_t)rng.uniform_int(0, (int)v.size() - 1)] = rng.uniform_int(0, hi);
    };
    pick(g.custToHub, in.nNCHC - 1);
    pick(g.facToHub, in.nNCHF - 1);
    pick(g.jToCentral, in.nCentralHubs - 1);
    pick(g.hToCentral, in.nCentralHubs - 1);
    pick(g.sourceJ, in.nNCHF - 1);
    pick(g.producerF, in.nFactories - 1);
    for (auto& p : g.perm) {
        if ((int)p.size() < 2 || rng.next_unit() >= rate) continue;
        int i = rng.uniform_int(0, (int)p.size() - 2);
        std::swap(p[i], p[i + 1]);
    }
    for (auto& c : g.cuts) pick(c, in.nProducts);
}

// Archive insert under exact weak dominance; returns true if p was added.
inline bool archive_insert(std::vector<FrontPoint>& archive, FrontPoint p) {
    for (const auto& q : archive)
        if (exact_weak_dominates(q.obj, p.obj)) return false;
    std::erase_if(archive,
                  [&](const FrontPoint& q) { return exact_weak_dominates(p.obj, q.obj); });
    archive.push_back(std::move(p));
    return true;
}

}  // namespace moea_detail

inline MoeaResult solve_moea(const Instance& in, const MoeaConfig& cfg = {}) {
    using namespace moea_detail;
    if (cfg.population < 2) throw std::invalid_argument("solve_moea: population must be >= 2");
    if (cfg.generations < 0) throw std::invalid_argument("solve_moea: generations must be >= 0");
    {
        auto issues = validate_instance(in);
        if (!issues.empty())
            throw std::invalid_argument("solve_moea: invalid instance: " + issues.front());
    }

    Rng rng = family_stream(cfg.seed, "moea");
    MoeaResult res;
    std::vector<FrontPoint> archive;

    auto make_individual = [&](Genome g) {
        Individual ind;
        ind.genome = std::move(g);
        ind.dv = decode(in, ind.genome);
        ind.obj = evaluate_solution(in, ind.dv).first;
        ++res.evaluations;
        return ind;
    };
    auto archive_add = [&](const Individual& ind) {
        FrontPoint p;
        p.obj = ind.obj;
        p.dv = ind.dv;
        p.tags = {"moea"};
        archive_insert(archive, std::move(p));
    };

    std::vector<Individual> pop;
    pop.reserve(cfg.population);
    for (int i = 0; i < cfg.population; ++i) pop.push_back(make_individual(random_genome(in, rng)));

    res.hvRef = pop.front().obj;
    for (const auto& ind : pop) {
        res.hvRef.f1 = std::max(res.hvRef.f1, ind.obj.f1);
        res.hvRef.f2 = std::max(res.hvRef.f2, ind.obj.f2);
    }
    for (const auto& ind : pop) archive_add(ind);

    auto archive_hv = [&]() {
        std::vector<ObjectivePair> objs;
        objs.reserve(archive.size());
        for (const auto& p : archive) objs.push_back(p.obj);
        return hypervolume(std::move(objs), res.hvRef);
    };
    res.hvHistory.push_back(archive_hv());

    for (int gen = 0; gen < cfg.generations; ++gen) {
        auto fronts = sort_fronts(pop);
        for (const auto& fr : fronts) assign_crowding(pop, fr);

        auto tournament = [&]() -> const Individual& {
            int a = rng.uniform_int(0, (int)pop.size() - 1);
            int b = rng.uniform_int(0, (int)pop.size() - 1);
            return better(pop[b], pop[a]) ? pop[b] : pop[a];
        };

        std::vector<Individual> offspring;
        offspring.reserve(cfg.population);
        while ((int)offspring.size() < cfg.population) {
            const Individual& p1 = tournament();
            const Individual& p2 = tournament();
            Genome c1, c2;
            if (rng.next_unit() < cfg.crossoverRate) {
                c1 = crossover(p1.genome, p2.genome, rng);
                c2 = crossover(p2.genome, p1.genome, rng);
            } else {
                c1 = p1.genome;
                c2 = p2.genome;
            }
            mutate(in, c1, cfg.mutationRate, rng);
            mutate(in, c2, cfg.mutationRate, rng);
            offspring.push_back(make_individual(std::move(c1)));
            if ((int)offspring.size() < cfg.population)
                offspring.push_back(make_individual(std::move(c2)));
        }
        for (const auto& ind : offspring) archive_add(ind);

        // Environmental selection over parents + offspring.
        for (auto& ind : offspring) pop.push_back(std::move(ind));
        auto combinedFronts = sort_fronts(pop);
        for (const auto& fr : combinedFronts) assign_crowding(pop, fr);
        std::vector<int> keep;
        keep.reserve(cfg.population);
        for (const auto& fr : combinedFronts) {
            if ((int)(keep.size() + fr.size()) <= cfg.population) {
                keep.insert(keep.end(), fr.begin(), fr.end());
                continue;
            }
            std::vector<int> rest = fr;
            std::stable_sort(rest.begin(), rest.end(), [&](int a, int b) {
                return pop[a].crowding > pop[b].crowding;
            });
            for (int i : rest) {
                if ((int)keep.size() >= cfg.population) break;
                keep.push_back(i);
            }
            break;
        }
        std::vector<Individual> next;
        next.reserve(keep.size());
        for (int i : keep) next.push_back(std::move(pop[i]));
        pop = std::move(next);

        res.hvHistory.push_back(archive_hv());
    }

    res.front.points = filter_front_points(archive);
    return res;
}

}  // namespace hubshop
