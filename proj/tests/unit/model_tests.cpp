#include <catch2/catch_amalgamated.hpp>

#include "hubshop/generate.hpp"
#include "hubshop/milp/branch_bound.hpp"
#include "hubshop/milp/lp_format.hpp"
#include "hubshop/model_build.hpp"
#include "support/embed.hpp"
#include "support/micro.hpp"
#include "support/structured_enum.hpp"

using namespace hubshop;
using test_support::micro_spec;

namespace {

bool same_dv(const DecisionVector& a, const DecisionVector& b) {
    return a.custToHub == b.custToHub && a.facToHub == b.facToHub &&
           a.jToCentral == b.jToCentral && a.hToCentral == b.hToCentral &&
           a.produced == b.produced && a.machineOf == b.machineOf &&
           a.sequences == b.sequences && a.flowFR == b.flowFR && a.flow4 == b.flow4 &&
           a.flow3 == b.flow3;
}

}  // namespace

TEST_CASE("variable layout matches the hand-counted block sizes") {
    auto [in, dv] = paper_gantt();
    (void)dv;
    MilpLayout L = layout_for(in);
    CHECK(L.zz0 - L.z0 == 4);
    CHECK(L.x0 - L.zz0 == 4);
    CHECK(L.y0 - L.x0 == 4);
    CHECK(L.u0 - L.y0 == 4);
    CHECK(L.xx0 - L.u0 == 4);
    CHECK(L.xp0 - L.xx0 == 16);
    CHECK(L.v0 - L.xp0 == 32);
    CHECK(L.vp0 - L.v0 == 16);
    CHECK(L.fr0 - L.vp0 == 16);
    CHECK(L.f40 - L.fr0 == 8);
    CHECK(L.ff0 - L.f40 == 16);
    CHECK(L.st0 - L.ff0 == 16);
    CHECK(L.sf0 - L.st0 == 4);
    CHECK(L.sg0 - L.sf0 == 4);
    CHECK(L.ht0 - L.sg0 == 8);
    CHECK(L.cm0 - L.ht0 == 8);
    CHECK(L.sa0 - L.cm0 == 2);
    CHECK(L.total == 167);
    CHECK(L.numBinaries() == 100);

    // One central hub leaves no two-hub routes at all.
    Instance m1 = generate(micro_spec(1), 5);
    MilpLayout L1 = layout_for(m1);
    CHECK(L1.pairs() == 0);
    CHECK(L1.vp0 == L1.v0);
    CHECK(L1.ff0 == L1.f40);
    milp::Model mod1 = build_milp(m1);
    CHECK(mod1.num_vars() == L1.total);
    CHECK(mod1.validate().empty());
}

TEST_CASE("the built model accepts the worked fixture verbatim") {
    auto [in, dv] = paper_gantt();
    milp::Model mod = build_milp(in);
    REQUIRE(mod.validate().empty());
    CHECK(mod.num_vars() == 167);

    auto x = test_support::embed_solution(in, dv);
    CHECK(mod.max_violation(x) <= 1e-9);

    CHECK(mod.named.at("F1").value_at(x) == 1720.0);
    CHECK(mod.named.at("F2").value_at(x) == 56.0);

    // The encoding round-trips: extraction recovers the exact fixture.
    auto back = extract_decision_vector(in, x);
    CHECK(same_dv(back, dv));
}

TEST_CASE("model construction rejects invalid instances") {
    auto [in, dv] = paper_gantt();
    (void)dv;
    in.procTime[0] = -1.0;
    CHECK_THROWS_AS(build_milp(in), std::invalid_argument);
}

TEST_CASE("cleaning snaps binaries and silences gated flows") {
    auto [in, dv] = paper_gantt();
    MilpLayout L = layout_for(in);
    auto x = test_support::embed_solution(in, dv);

    auto noisy = x;
    for (int b = 0; b < L.numBinaries(); ++b)
        noisy[b] += (noisy[b] > 0.5 ? -1.0 : 1.0) * 4e-7;
    noisy[L.ff(0, 0, 0, 0)] = 3e-8;            // closed route picks up lint
    noisy[L.f4(0, 1, 0, 1, 0)] = 9.0 - 4e-7;   // open flow lands a hair low
    noisy[L.fr(1, 0, 1)] = 1.0 - 4e-7;         // minimum shipment a hair low

    auto cleaned = clean_solution(in, noisy);
    for (int b = 0; b < L.numBinaries(); ++b)
        CHECK((cleaned[b] == 0.0 || cleaned[b] == 1.0));
    CHECK(cleaned[L.ff(0, 0, 0, 0)] == 0.0);
    CHECK(cleaned[L.f4(0, 1, 0, 1, 0)] == 9.0 - 4e-7);  // above 1: kept verbatim
    CHECK(cleaned[L.fr(1, 0, 1)] == 1.0);               // lifted onto the minimum

    auto back = extract_decision_vector(in, cleaned);
    CHECK(back.custToHub == dv.custToHub);
    CHECK(back.sequences == dv.sequences);
    CHECK(back.flow3.empty());
}

TEST_CASE("exact solves match the structured enumeration on micro instances") {
    for (std::uint64_t seed : {101ull, 102ull}) {
        CAPTURE(seed);
        Instance in = generate(micro_spec(1), seed);
        milp::Model mod = build_milp(in);
        set_weighted_objective(mod, 0.5, 0.5);
        REQUIRE(mod.validate().empty());

        auto res = milp::branch_and_bound(mod);
        REQUIRE(res.status == milp::SolveStatus::Optimal);
        auto oracle = test_support::structured_opt(in, 0.5, 0.5);
        REQUIRE(oracle.feasible);
        double scale = std::max(1.0, std::fabs(oracle.objective));
        CHECK(std::fabs(res.objective - oracle.objective) <= 1e-6 * scale);

        // Solver output re-evaluates to the same objectives it claims.
        auto xc = clean_solution(in, res.x);
        auto dvOut = extract_decision_vector(in, xc);
        REQUIRE(check_feasibility(in, dvOut).empty());
        auto [obj, st] = evaluate_solution(in, dvOut);
        (void)st;
        CHECK(mod.named.at("F1").value_at(xc) == obj.f1);
        CHECK(std::fabs(mod.named.at("F2").value_at(xc) - obj.f2) <= 1e-6);
        double recombined = 0.5 * obj.f1 + 0.5 * obj.f2;
        CHECK(std::fabs(recombined - res.objective) <= 1e-6 * scale);
    }
}

TEST_CASE("the built model round-trips through the lp format") {
    auto [in, dv] = paper_gantt();
    (void)dv;
    milp::Model mod = build_milp(in);
    set_weighted_objective(mod, 0.5, 0.5);

    std::string text = milp::write_lp(mod);
    milp::Model back = milp::read_lp(text);

    REQUIRE(back.num_vars() == mod.num_vars());
    REQUIRE(back.num_cons() == mod.num_cons());
    for (int i = 0; i < mod.num_vars(); ++i) {
        CHECK(back.vars[i].name == mod.vars[i].name);
        CHECK(back.vars[i].kind == mod.vars[i].kind);
        CHECK(back.vars[i].lo == mod.vars[i].lo);
        CHECK(back.vars[i].hi == mod.vars[i].hi);
    }
    REQUIRE(back.objective.terms == mod.objective.terms);
    for (int r = 0; r < mod.num_cons(); ++r) {
        CAPTURE(r);
        CHECK(back.cons[r].expr.terms == mod.cons[r].expr.terms);
        CHECK(back.cons[r].sense == mod.cons[r].sense);
        CHECK(back.cons[r].rhs == mod.cons[r].rhs);
    }
}
