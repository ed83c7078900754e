#pragma once

// File interchange: JSON schemas for instances, solutions, and fronts, plus
// the CSV artifact writers. Schemas are versioned by a "schema" field
// ("hubshop-instance-v1", "hubshop-solution-v1", "hubshop-front-v1"); field
// names mirror the in-memory types, flat tables keep their documented index
// order, and every index value written to or read from a file is origin 1
// (0 = none for optional slots). Loaders check shape, ranges, and instance
// validity and throw SchemaError; malformed JSON reports its byte offset.
// Number output relies on the serializer's shortest round-trip form, so
// load(save(x)) reproduces every double bit for bit.

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hubshop/common.hpp"
#include "hubshop/instance.hpp"
#include "hubshop/pareto.hpp"
#include "hubshop/solution.hpp"

namespace hubshop {

// ordered_json keeps insertion order, so saved files have a stable byte
// layout suitable for golden-file comparison.
using ojson = nlohmann::ordered_json;

inline constexpr const char* kInstanceSchema = "hubshop-instance-v1";
inline constexpr const char* kSolutionSchema = "hubshop-solution-v1";
inline constexpr const char* kFrontSchema = "hubshop-front-v1";
inline constexpr const char* kGanttSchema = "hubshop-gantt-v1";

inline ojson parse_json(const std::string& text) {
    try {
        return ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError("JSON parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

namespace json_detail {

inline void require_schema(const ojson& j, const char* want) {
    if (!j.is_object())
        throw SchemaError(std::string("expected a JSON object with schema '") + want + "'");
    auto it = j.find("schema");
    if (it == j.end() || !it->is_string())
        throw SchemaError(std::string("missing 'schema' field; expected '") + want + "'");
    if (it->get<std::string>() != want)
        throw SchemaError("schema mismatch: file says '" + it->get<std::string>() +
                          "', expected '" + want + "'");
}

inline const ojson& need(const ojson& j, const char* field) {
    auto it = j.find(field);
    if (it == j.end()) throw SchemaError(std::string("missing field '") + field + "'");
    return *it;
}

inline int need_int(const ojson& j, const char* field) {
    const ojson& v = need(j, field);
    if (!v.is_number_integer())
        throw SchemaError(std::string("field '") + field + "' must be an integer");
    return v.get<int>();
}

inline double need_num(const ojson& j, const char* field) {
    const ojson& v = need(j, field);
    if (!v.is_number()) throw SchemaError(std::string("field '") + field + "' must be a number");
    return v.get<double>();
}

inline const ojson& need_array(const ojson& j, const char* field, std::size_t want) {
    const ojson& v = need(j, field);
    if (!v.is_array())
        throw SchemaError(std::string("field '") + field + "' must be an array");
    if (v.size() != want)
        throw SchemaError(std::string("field '") + field + "' must have " +
                          std::to_string(want) + " entries, found " + std::to_string(v.size()));
    return v;
}

inline std::vector<double> need_num_vec(const ojson& j, const char* field, std::size_t want) {
    const ojson& v = need_array(j, field, want);
    std::vector<double> out;
    out.reserve(want);
    for (const auto& e : v) {
        if (!e.is_number())
            throw SchemaError(std::string("field '") + field + "' must contain only numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

inline std::vector<int> need_int_vec(const ojson& j, const char* field, std::size_t want) {
    const ojson& v = need_array(j, field, want);
    std::vector<int> out;
    out.reserve(want);
    for (const auto& e : v) {
        if (!e.is_number_integer())
            throw SchemaError(std::string("field '") + field + "' must contain only integers");
        out.push_back(e.get<int>());
    }
    return out;
}

// Origin-1 range check for index values read from a file.
inline void check_range(const char* field, int v, int lo, int hi) {
    if (v < lo || v > hi)
        throw SchemaError(std::string("field '") + field + "': index " + std::to_string(v) +
                          " out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

}  // namespace json_detail

// ---------------------------------------------------------------------------
// Instance

inline ojson instance_to_json(const Instance& in) {
    ojson j;
    j["schema"] = kInstanceSchema;
    j["nStages"] = in.nStages;
    j["nNCHC"] = in.nNCHC;
    j["nProducts"] = in.nProducts;
    j["nFactories"] = in.nFactories;
    j["nNCHF"] = in.nNCHF;
    j["nCentralHubs"] = in.nCentralHubs;
    j["nCustomers"] = in.nCustomers;
    j["maxMachines"] = in.maxMachines;
    j["machinesPerStage"] = in.machinesPerStage;
    j["prodCost"] = in.prodCost;
    j["routeCost4"] = in.routeCost4;
    j["routeCost3"] = in.routeCost3;
    j["custLinkCost"] = in.custLinkCost;
    j["hubLinkCostH"] = in.hubLinkCostH;
    j["facLinkCost"] = in.facLinkCost;
    j["hubLinkCostJ"] = in.hubLinkCostJ;
    j["demand"] = in.demand;
    j["tFacToJ"] = in.tFacToJ;
    j["tJToK"] = in.tJToK;
    j["tKToH"] = in.tKToH;
    j["tKToK"] = in.tKToK;
    j["tHToC"] = in.tHToC;
    j["procTime"] = in.procTime;
    ojson bm;
    bm["mode"] = in.bigM.mode == BigMPolicy::Mode::Global ? "global" : "derived";
    if (in.bigM.mode == BigMPolicy::Mode::Global) bm["value"] = in.bigM.value;
    j["bigM"] = bm;
    return j;
}

inline Instance instance_from_json(const ojson& j) {
    using namespace json_detail;
    require_schema(j, kInstanceSchema);
    Instance in;
    in.nStages = need_int(j, "nStages");
    in.nNCHC = need_int(j, "nNCHC");
    in.nProducts = need_int(j, "nProducts");
    in.nFactories = need_int(j, "nFactories");
    in.nNCHF = need_int(j, "nNCHF");
    in.nCentralHubs = need_int(j, "nCentralHubs");
    in.nCustomers = need_int(j, "nCustomers");
    in.maxMachines = need_int(j, "maxMachines");
    if (in.nStages < 1 || in.nNCHC < 1 || in.nProducts < 1 || in.nFactories < 1 ||
        in.nNCHF < 1 || in.nCentralHubs < 1 || in.nCustomers < 1 || in.maxMachines < 1)
        throw SchemaError("instance counts must all be >= 1");

    const std::size_t P = in.nProducts, F = in.nFactories, J = in.nNCHF, K = in.nCentralHubs,
                      H = in.nNCHC, C = in.nCustomers, S = in.nStages;
    in.machinesPerStage = need_int_vec(j, "machinesPerStage", F * S);
    in.prodCost = need_num_vec(j, "prodCost", P * F * J);
    in.routeCost4 = need_num_vec(j, "routeCost4", P * J * K * K * H);
    in.routeCost3 = need_num_vec(j, "routeCost3", P * J * K * H);
    in.custLinkCost = need_num_vec(j, "custLinkCost", C * H);
    in.hubLinkCostH = need_num_vec(j, "hubLinkCostH", H * K);
    in.facLinkCost = need_num_vec(j, "facLinkCost", F * J);
    in.hubLinkCostJ = need_num_vec(j, "hubLinkCostJ", J * K);
    in.demand = need_num_vec(j, "demand", C * P);
    in.tFacToJ = need_num_vec(j, "tFacToJ", P * F * J);
    in.tJToK = need_num_vec(j, "tJToK", P * J * K);
    in.tKToH = need_num_vec(j, "tKToH", P * K * H);
    in.tKToK = need_num_vec(j, "tKToK", P * K * K);
    in.tHToC = need_num_vec(j, "tHToC", P * C * H);
    in.procTime = need_num_vec(j, "procTime", F * P * S);

    const ojson& bm = need(j, "bigM");
    if (!bm.is_object()) throw SchemaError("field 'bigM' must be an object");
    const ojson& mode = need(bm, "mode");
    if (!mode.is_string()) throw SchemaError("field 'bigM.mode' must be a string");
    const std::string ms = mode.get<std::string>();
    if (ms == "derived") {
        in.bigM.mode = BigMPolicy::Mode::Derived;
    } else if (ms == "global") {
        in.bigM.mode = BigMPolicy::Mode::Global;
        in.bigM.value = need_num(bm, "value");
    } else {
        throw SchemaError("field 'bigM.mode' must be 'derived' or 'global'");
    }

    auto issues = validate_instance(in);
    if (!issues.empty()) throw SchemaError("invalid instance: " + issues.front());
    return in;
}

inline std::string save_instance(const Instance& in) { return instance_to_json(in).dump(2) + "\n"; }

inline Instance load_instance(const std::string& text) {
    return instance_from_json(parse_json(text));
}

// ---------------------------------------------------------------------------
// DecisionVector. Assignments are positional arrays whose values are origin-1
// target indices; machineOf uses 0 for "not produced"; flow tables are arrays
// of [key..., qty] pairs in canonical (sorted) key order.

inline ojson decision_to_json(const DecisionVector& dv) {
    auto plus1 = [](const std::vector<int>& v) {
        ojson a = ojson::array();
        for (int x : v) a.push_back(x + 1);
        return a;
    };
    ojson j;
    j["custToHub"] = plus1(dv.custToHub);
    j["facToHub"] = plus1(dv.facToHub);
    j["jToCentral"] = plus1(dv.jToCentral);
    j["hToCentral"] = plus1(dv.hToCentral);
    {
        ojson a = ojson::array();
        for (char c : dv.produced) a.push_back(c ? 1 : 0);
        j["produced"] = a;
    }
    {
        // -1 (not produced) maps to 0; real machines are origin 1.
        ojson a = ojson::array();
        for (int m : dv.machineOf) a.push_back(m < 0 ? 0 : m + 1);
        j["machineOf"] = a;
    }
    {
        ojson a = ojson::array();
        for (const auto& seq : dv.sequences) a.push_back(plus1(seq));
        j["sequences"] = a;
    }
    auto flow_array = [](const auto& flow) {
        ojson a = ojson::array();
        for (const auto& [key, qty] : flow) {
            ojson entry = ojson::array();
            ojson k = ojson::array();
            for (int c : key) k.push_back(c + 1);
            entry.push_back(k);
            entry.push_back(qty);
            a.push_back(entry);
        }
        return a;
    };
    j["flowFR"] = flow_array(dv.flowFR);
    j["flow4"] = flow_array(dv.flow4);
    j["flow3"] = flow_array(dv.flow3);
    return j;
}

inline DecisionVector decision_from_json(const Instance& in, const ojson& j) {
    using namespace json_detail;
    if (!j.is_object()) throw SchemaError("decision must be a JSON object");
    DecisionVector dv;
    const int P = in.nProducts, F = in.nFactories, J = in.nNCHF, K = in.nCentralHubs,
              H = in.nNCHC, C = in.nCustomers, S = in.nStages, M = in.maxMachines;

    auto assign = [&](const char* field, std::size_t count, int hi) {
        std::vector<int> v = need_int_vec(j, field, count);
        for (int& x : v) {
            check_range(field, x, 1, hi);
            --x;
        }
        return v;
    };
    dv.custToHub = assign("custToHub", (std::size_t)C, H);
    dv.facToHub = assign("facToHub", (std::size_t)F, J);
    dv.jToCentral = assign("jToCentral", (std::size_t)J, K);
    dv.hToCentral = assign("hToCentral", (std::size_t)H, K);

    {
        std::vector<int> p = need_int_vec(j, "produced", (std::size_t)F * P);
        dv.produced.resize(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i] != 0 && p[i] != 1)
                throw SchemaError("field 'produced' must contain only 0 or 1");
            dv.produced[i] = (char)p[i];
        }
    }
    {
        std::vector<int> m = need_int_vec(j, "machineOf", (std::size_t)F * P * S);
        for (int& x : m) {
            check_range("machineOf", x, 0, M);
            --x;  // 0 (none) becomes the in-memory -1 sentinel
        }
        dv.machineOf = m;
    }
    {
        const ojson& a = need_array(j, "sequences", (std::size_t)F * S * M);
        dv.sequences.resize(a.size());
        std::size_t i = 0;
        for (const auto& seq : a) {
            if (!seq.is_array()) throw SchemaError("field 'sequences' must contain arrays");
            for (const auto& e : seq) {
                if (!e.is_number_integer())
                    throw SchemaError("field 'sequences' must contain integer product ids");
                int p = e.get<int>();
                check_range("sequences", p, 1, P);
                dv.sequences[i].push_back(p - 1);
            }
            ++i;
        }
    }

    auto read_flow = [&](const char* field, auto& dst, std::size_t arity,
                         const std::vector<int>& his) {
        const ojson& a = need(j, field);
        if (!a.is_array()) throw SchemaError(std::string("field '") + field + "' must be an array");
        for (const auto& entry : a) {
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_array() ||
                entry[0].size() != arity || !entry[1].is_number())
                throw SchemaError(std::string("field '") + field +
                                  "' entries must be [[indices...], qty] pairs");
            typename std::decay_t<decltype(dst)>::key_type key{};
            for (std::size_t i = 0; i < arity; ++i) {
                if (!entry[0][i].is_number_integer())
                    throw SchemaError(std::string("field '") + field + "' has a non-integer index");
                int v = entry[0][i].get<int>();
                check_range(field, v, 1, his[i]);
                key[i] = v - 1;
            }
            double qty = entry[1].get<double>();
            if (!(qty >= 0.0) || !std::isfinite(qty))
                throw SchemaError(std::string("field '") + field +
                                  "' has a negative or non-finite quantity");
            if (!dst.emplace(key, qty).second)
                throw SchemaError(std::string("field '") + field + "' has a duplicate key");
        }
    };
    read_flow("flowFR", dv.flowFR, 3, {P, F, J});
    read_flow("flow4", dv.flow4, 5, {P, J, K, K, H});
    read_flow("flow3", dv.flow3, 4, {P, J, K, H});
    return dv;
}

// A solution file is self-contained: it embeds its instance so downstream
// commands need no second input. objectives are informational output; loaders
// ignore them and recompute from the decision when needed.
inline std::string save_solution(const Instance& in, const DecisionVector& dv,
                                 const ObjectivePair* obj = nullptr) {
    ojson j;
    j["schema"] = kSolutionSchema;
    j["instance"] = instance_to_json(in);
    if (obj) {
        ojson o;
        o["f1"] = obj->f1;
        o["f2"] = obj->f2;
        j["objectives"] = o;
    }
    j["decision"] = decision_to_json(dv);
    return j.dump(2) + "\n";
}

struct LoadedSolution {
    Instance instance;
    DecisionVector decision;
};

inline LoadedSolution load_solution(const std::string& text) {
    using namespace json_detail;
    ojson j = parse_json(text);
    require_schema(j, kSolutionSchema);
    LoadedSolution out;
    out.instance = instance_from_json(need(j, "instance"));
    out.decision = decision_from_json(out.instance, need(j, "decision"));
    return out;
}

// ---------------------------------------------------------------------------
// Fronts. The JSON variant embeds the instance and the full decision vector
// of every point; the CSV variant is the flat (method, provenance, f1, f2)
// table. method is the tag prefix (text before '('), provenance joins all
// tags of the point with ';'.

inline std::string tag_method(const std::vector<std::string>& tags) {
    if (tags.empty()) return "unknown";
    const std::string& t = tags.front();
    auto pos = t.find('(');
    return pos == std::string::npos ? t : t.substr(0, pos);
}

inline std::string join_tags(const std::vector<std::string>& tags) {
    std::string out;
    for (std::size_t i = 0; i < tags.size(); ++i) {
        if (i) out += ';';
        out += tags[i];
    }
    return out;
}

inline std::string save_front(const Instance& in, const ParetoFront& front,
                              const std::string& method, bool partial = false) {
    ojson j;
    j["schema"] = kFrontSchema;
    j["method"] = method;
    j["partial"] = partial;  // true when a solver limit interrupted the run
    j["degenerate"] = front.degenerate;
    j["instance"] = instance_to_json(in);
    ojson pts = ojson::array();
    for (const auto& p : front.points) {
        ojson e;
        e["tags"] = p.tags;
        e["f1"] = p.obj.f1;
        e["f2"] = p.obj.f2;
        e["decision"] = decision_to_json(p.dv);
        pts.push_back(e);
    }
    j["points"] = pts;
    return j.dump(2) + "\n";
}

struct LoadedFront {
    Instance instance;
    ParetoFront front;
    std::string method;
    bool partial = false;
};

inline LoadedFront load_front(const std::string& text) {
    using namespace json_detail;
    ojson j = parse_json(text);
    require_schema(j, kFrontSchema);
    LoadedFront out;
    const ojson& method = need(j, "method");
    if (!method.is_string()) throw SchemaError("field 'method' must be a string");
    out.method = method.get<std::string>();
    const ojson& partial = need(j, "partial");
    if (!partial.is_boolean()) throw SchemaError("field 'partial' must be a boolean");
    out.partial = partial.get<bool>();
    const ojson& degen = need(j, "degenerate");
    if (!degen.is_boolean()) throw SchemaError("field 'degenerate' must be a boolean");
    out.front.degenerate = degen.get<bool>();
    out.instance = instance_from_json(need(j, "instance"));
    const ojson& pts = need(j, "points");
    if (!pts.is_array()) throw SchemaError("field 'points' must be an array");
    for (const auto& e : pts) {
        if (!e.is_object()) throw SchemaError("front points must be JSON objects");
        FrontPoint p;
        const ojson& tags = need(e, "tags");
        if (!tags.is_array()) throw SchemaError("field 'tags' must be an array");
        for (const auto& t : tags) {
            if (!t.is_string()) throw SchemaError("field 'tags' must contain strings");
            p.tags.push_back(t.get<std::string>());
        }
        p.obj.f1 = need_num(e, "f1");
        p.obj.f2 = need_num(e, "f2");
        p.dv = decision_from_json(out.instance, need(e, "decision"));
        out.front.points.push_back(std::move(p));
    }
    return out;
}

// ---------------------------------------------------------------------------
// CSV artifacts. RFC 4180 quoting: fields containing comma, quote, or
// newline are wrapped in double quotes with embedded quotes doubled.

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

inline std::string front_csv(const ParetoFront& front) {
    std::string out = "method,provenance,f1,f2\n";
    for (const auto& p : front.points) {
        out += csv_escape(tag_method(p.tags));
        out += ',';
        out += csv_escape(join_tags(p.tags));
        out += ',';
        out += format_double(p.obj.f1);
        out += ',';
        out += format_double(p.obj.f2);
        out += '\n';
    }
    return out;
}

// Gantt bars, one row per (factory, stage, machine, product) interval. The
// machine index alone does not identify a machine (machines are per stage),
// so the stage column disambiguates. All indices origin 1.
inline std::string gantt_csv(const std::vector<GanttRow>& rows) {
    std::string out = "factory,stage,machine,product,start,end\n";
    for (const auto& r : rows) {
        out += std::to_string(r.factory + 1);
        out += ',';
        out += std::to_string(r.stage + 1);
        out += ',';
        out += std::to_string(r.machine + 1);
        out += ',';
        out += std::to_string(r.product + 1);
        out += ',';
        out += format_double(r.start);
        out += ',';
        out += format_double(r.end);
        out += '\n';
    }
    return out;
}

// JSON variant: bars grouped per factory, in timetable order.
inline std::string gantt_json(const std::vector<GanttRow>& rows) {
    ojson j;
    j["schema"] = kGanttSchema;
    ojson facs = ojson::array();
    std::size_t i = 0;
    while (i < rows.size()) {
        int f = rows[i].factory;
        ojson fac;
        fac["factory"] = f + 1;
        ojson bars = ojson::array();
        for (; i < rows.size() && rows[i].factory == f; ++i) {
            ojson b;
            b["stage"] = rows[i].stage + 1;
            b["machine"] = rows[i].machine + 1;
            b["product"] = rows[i].product + 1;
            b["start"] = rows[i].start;
            b["end"] = rows[i].end;
            bars.push_back(b);
        }
        fac["bars"] = bars;
        facs.push_back(fac);
    }
    j["factories"] = facs;
    return j.dump(2) + "\n";
}

// Comparison table: one row per front, label -> MID.
inline std::string mid_table_csv(const std::vector<std::pair<std::string, double>>& rows) {
    std::string out = "front,mid\n";
    for (const auto& [label, mid] : rows) {
        out += csv_escape(label);
        out += ',';
        out += format_double(mid);
        out += '\n';
    }
    return out;
}

}  // namespace hubshop
