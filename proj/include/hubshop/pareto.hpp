#pragma once

// Pareto-front assembly: dominance filtering, provenance-tagged points, and
// the mean-ideal-distance quality metric.
//
// Comparison semantics, shared by every front in the toolkit: f1 compares
// exactly (costs accumulate from rational inputs), f2 compares with a 1e-6
// absolute band (arrival times pass through big-M timing rows). Points whose
// f1 match exactly and whose f2 fall inside the band are one point; the
// first-found copy survives and absorbs the other's provenance tags.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "hubshop/solution.hpp"

namespace hubshop {

inline constexpr double kF2Tol = 1e-6;

// p dominates q: no worse in both coordinates, better in at least one.
// The f2 band means a point must beat another by more than kF2Tol to count
// as strictly better there.
inline bool dominates(const ObjectivePair& p, const ObjectivePair& q) {
    if (p.f1 > q.f1 || p.f2 > q.f2 + kF2Tol) return false;
    return p.f1 < q.f1 || p.f2 < q.f2 - kF2Tol;
}

inline bool same_objectives(const ObjectivePair& p, const ObjectivePair& q) {
    return p.f1 == q.f1 && std::fabs(p.f2 - q.f2) <= kF2Tol;
}

struct FrontPoint {
    ObjectivePair obj;
    DecisionVector dv;
    std::vector<std::string> tags;  // provenance: weight pairs or epsilon values
};

struct ParetoFront {
    std::vector<FrontPoint> points;  // strictly ascending f1, mutually nondominated
    bool degenerate = false;         // epsilon range collapsed to a single point
};

namespace pareto_detail {

// Sort ascending (f1, then f2), stably so exact ties keep input order, then
// sweep keeping points that improve the best f2 seen by more than the band.
// Every dropped point is dominated by the kept point the sweep last accepted,
// or is a duplicate of it.
template <typename T, typename Obj>
std::vector<T> filter(std::vector<T> pts, Obj obj) {
    std::vector<int> order(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const ObjectivePair& pa = obj(pts[a]);
        const ObjectivePair& pb = obj(pts[b]);
        if (pa.f1 != pb.f1) return pa.f1 < pb.f1;
        return pa.f2 < pb.f2;
    });
    std::vector<T> kept;
    for (int id : order) {
        if (!kept.empty() && obj(pts[id]).f2 >= obj(kept.back()).f2 - kF2Tol) continue;
        kept.push_back(std::move(pts[id]));
    }
    return kept;
}

}  // namespace pareto_detail

// Maximal nondominated subset in ascending f1 order; duplicates collapse to
// the first-found copy.
inline std::vector<ObjectivePair> dominance_filter(std::vector<ObjectivePair> pts) {
    return pareto_detail::filter(std::move(pts), [](const ObjectivePair& p) -> const ObjectivePair& {
        return p;
    });
}

// Front-point variant: duplicates collapse to the first-found copy (which
// absorbs their provenance tags) before the dominance sweep runs, so a tag
// can never ride on a point the sweep then drops as a duplicate.
inline std::vector<FrontPoint> filter_front_points(std::vector<FrontPoint> pts) {
    std::vector<FrontPoint> uniq;
    uniq.reserve(pts.size());
    for (auto& p : pts) {
        FrontPoint* hit = nullptr;
        for (auto& u : uniq)
            if (same_objectives(u.obj, p.obj)) {
                hit = &u;
                break;
            }
        if (hit)
            hit->tags.insert(hit->tags.end(), p.tags.begin(), p.tags.end());
        else
            uniq.push_back(std::move(p));
    }
    return pareto_detail::filter(std::move(uniq),
                                 [](const FrontPoint& p) -> const ObjectivePair& { return p.obj; });
}

// Mean distance of the front from the ideal origin: the average Euclidean
// norm of the points. Norms are summed in sorted order so the result is
// bit-identical under any permutation of the input.
inline double mid(const std::vector<ObjectivePair>& pts) {
    if (pts.empty()) throw std::invalid_argument("mid: empty front");
    std::vector<double> norms;
    norms.reserve(pts.size());
    for (const auto& p : pts) norms.push_back(std::hypot(p.f1, p.f2));
    std::sort(norms.begin(), norms.end());
    double sum = 0.0;
    for (double v : norms) sum += v;
    return sum / static_cast<double>(pts.size());
}

inline double mid(const ParetoFront& front) {
    std::vector<ObjectivePair> objs;
    objs.reserve(front.points.size());
    for (const auto& p : front.points) objs.push_back(p.obj);
    return mid(objs);
}

}  // namespace hubshop
