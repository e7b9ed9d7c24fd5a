#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "glad/cost.hpp"
#include "glad/errors.hpp"
#include "glad/glad_dynamic.hpp"
#include "glad/glad_static.hpp"
#include "glad/model.hpp"
#include "test_util.hpp"

using namespace glad;

namespace {

Instance two_server_instance(int n_vertices, const std::vector<Link>& links,
                             std::vector<std::vector<double>> upload, double tau = 1.0) {
    std::vector<EdgeServer> servers(2);
    servers[0].id = 0;
    servers[1].id = 1;
    Instance inst{EdgeNetwork::full_mesh(std::move(servers), {{0.0, tau}, {tau, 0.0}}),
                  DataGraph::from_links(n_vertices, links), GnnModelSpec{{3, 2}},
                  std::move(upload)};
    inst.validate();
    return inst;
}

GraphLayout place(std::vector<ServerId> a) {
    GraphLayout layout(static_cast<int>(a.size()));
    for (VertexId v = 0; v < static_cast<VertexId>(a.size()); ++v) layout.assign(v, a[v]);
    return layout;
}

}  // namespace

TEST_CASE("event replay: identity, cascade deletion, inverse pairs") {
    const DataGraph path = DataGraph::from_links(3, {{0, 1}, {1, 2}});

    const DataGraph same = apply_events(path, {});
    CHECK(same.links() == path.links());
    CHECK(same.vertices() == path.vertices());

    const DataGraph cut = apply_events(path, {VertexDelete{1}});
    CHECK(cut.vertices() == std::vector<VertexId>{0, 2});
    CHECK(cut.link_count() == 0);

    const DataGraph back =
        apply_events(path, {EvolutionEvent{LinkInsert{0, 2}}, EvolutionEvent{LinkDelete{0, 2}}});
    CHECK(back.links() == path.links());
}

TEST_CASE("event replay rejects inconsistent events") {
    const DataGraph path = DataGraph::from_links(3, {{0, 1}, {1, 2}});
    CHECK_THROWS_AS(apply_events(path, {EvolutionEvent{LinkInsert{0, 1}}}), ValidationError);
    CHECK_THROWS_AS(apply_events(path, {EvolutionEvent{LinkDelete{0, 2}}}), ValidationError);
    CHECK_THROWS_AS(apply_events(path, {EvolutionEvent{LinkInsert{0, 9}}}), ValidationError);
    CHECK_THROWS_AS(apply_events(path, {EvolutionEvent{VertexDelete{9}}}), ValidationError);
}

TEST_CASE("slot application appends upload rows for inserted vertices") {
    Instance inst = two_server_instance(2, {{0, 1}}, {{1, 2}, {3, 4}});
    SlotTrace slot;
    slot.slot = 1;
    VertexInsert ins;
    ins.vertex = 2;
    ins.upload_row = {5, 6};
    ins.links = {0};
    slot.events.emplace_back(ins);

    const Instance next = apply_slot(inst, slot);
    CHECK(next.graph.vertex_count() == 3);
    CHECK(next.graph.has_link(0, 2));
    CHECK(next.upload_cost[2] == std::vector<double>{5, 6});

    VertexInsert bad = ins;
    bad.vertex = 3;
    bad.upload_row = {5};
    SlotTrace bad_slot;
    bad_slot.events.emplace_back(bad);
    CHECK_THROWS_AS(apply_slot(next, bad_slot), ValidationError);
}

TEST_CASE("affected filter: deletions and same-server links are invisible") {
    Instance inst = two_server_instance(4, {{0, 1}, {1, 2}, {2, 3}},
                                        {{0, 0}, {0, 0}, {0, 0}, {0, 0}});
    const GraphLayout layout = place({0, 0, 1, 1});

    const DataGraph del = apply_events(inst.graph, {EvolutionEvent{LinkDelete{1, 2}}});
    CHECK(filter_affected(inst.graph, del, layout).empty());

    const DataGraph same = apply_events(inst.graph, {EvolutionEvent{LinkInsert{1, 3}}});
    CHECK(filter_affected(inst.graph, same, place({0, 1, 1, 1})).empty());

    const DataGraph cross = apply_events(inst.graph, {EvolutionEvent{LinkInsert{0, 3}}});
    CHECK(filter_affected(inst.graph, cross, layout) == std::vector<VertexId>{0, 3});
}

TEST_CASE("affected filter: inserted vertices are always picked up") {
    Instance inst = two_server_instance(2, {{0, 1}}, {{0, 0}, {0, 0}});
    const GraphLayout layout = place({0, 0});

    VertexInsert ins;
    ins.vertex = 2;
    ins.links = {1};
    const DataGraph grown = apply_events(inst.graph, {EvolutionEvent{ins}});
    // The new vertex joins; its existing endpoint does not (the new link has
    // no previous residence on the far side).
    CHECK(filter_affected(inst.graph, grown, layout) == std::vector<VertexId>{2});
}

TEST_CASE("incremental pass keeps survivors on a pure-deletion slot") {
    const Instance inst = testutil::make_instance(
        {.n_vertices = 10, .n_servers = 3, .link_p = 0.5, .seed = 21});
    const GraphLayout prev = testutil::random_valid_layout(inst, 4);

    SlotTrace slot;
    slot.slot = 1;
    const auto links = inst.graph.links();
    slot.events.emplace_back(LinkDelete{links[0].u, links[0].v});
    slot.events.emplace_back(VertexDelete{inst.graph.vertices().back()});

    const Instance next = apply_slot(inst, slot);
    GladConfig cfg;
    const GladResult res = glad_e(next, inst.graph, prev, cfg);
    for (VertexId v : next.graph.vertices())
        CHECK(res.layout.server_of(v) == prev.server_of(v));
}

TEST_CASE("an isolated insert lands on its cheapest server") {
    Instance inst = two_server_instance(2, {{0, 1}}, {{0, 1}, {0, 1}});
    const GraphLayout prev = place({0, 0});

    SlotTrace slot;
    slot.slot = 1;
    VertexInsert ins;
    ins.vertex = 2;
    ins.upload_row = {4, 1};  // server 1 cheaper, all else equal
    slot.events.emplace_back(ins);

    const Instance next = apply_slot(inst, slot);
    GladConfig cfg;
    const GladResult res = glad_e(next, inst.graph, prev, cfg);
    CHECK(res.layout.server_of(2) == 1);
    CHECK(res.layout.server_of(0) == 0);
    CHECK(res.layout.server_of(1) == 0);
}

TEST_CASE("a cross-server insert cannot leave the merged layout worse") {
    for (uint64_t seed = 1; seed <= 20; ++seed) {
        const Instance inst = testutil::make_instance(
            {.n_vertices = 12, .n_servers = 3, .link_p = 0.4, .seed = 600 + seed});
        GladConfig cfg;
        cfg.seed = seed;
        const GraphLayout prev = glad_s(inst, cfg).layout;

        // Insert a link between two differently-placed vertices, if any.
        VertexId a = -1, b = -1;
        const auto verts = inst.graph.vertices();
        for (VertexId u : verts) {
            for (VertexId v : verts) {
                if (u < v && !inst.graph.has_link(u, v) &&
                    prev.server_of(u) != prev.server_of(v)) {
                    a = u;
                    b = v;
                }
            }
        }
        if (a < 0) continue;

        SlotTrace slot;
        slot.slot = 1;
        slot.events.emplace_back(LinkInsert{a, b});
        const Instance next = apply_slot(inst, slot);

        const auto unchanged = total_cost_if_feasible(prev, next);
        const GladResult res = glad_e(next, inst.graph, prev, cfg);
        if (unchanged)
            CHECK(total_cost(res.layout, next).total <= unchanged->total + 1e-9);
    }
}

TEST_CASE("drift estimate: deletions free, same-server links free, inserts at the worst server") {
    Instance inst = two_server_instance(3, {{0, 1}, {1, 2}}, {{1, 1}, {1, 1}, {1, 1}});
    const GraphLayout prev = place({0, 0, 0});
    const double prev_cost = total_cost(prev, inst).total;

    SlotTrace deletions;
    deletions.slot = 1;
    deletions.events.emplace_back(LinkDelete{0, 1});
    CHECK(estimate_drift_bound(inst.graph, prev, prev_cost,
                               apply_slot(inst, deletions)) == 0.0);

    SlotTrace same_server;
    same_server.slot = 1;
    same_server.events.emplace_back(LinkInsert{0, 2});
    CHECK(estimate_drift_bound(inst.graph, prev, prev_cost,
                               apply_slot(inst, same_server)) == 0.0);

    SlotTrace grow;
    grow.slot = 1;
    VertexInsert ins;
    ins.vertex = 3;
    ins.upload_row = {4, 9};
    grow.events.emplace_back(ins);
    CHECK(estimate_drift_bound(inst.graph, prev, prev_cost, apply_slot(inst, grow)) ==
          9.0);
}

TEST_CASE("drift estimate prices an inserted cross link at twice tau") {
    Instance inst = two_server_instance(3, {{0, 1}}, {{0, 0}, {0, 0}, {0, 0}}, 2.5);
    const GraphLayout prev = place({0, 0, 1});
    const double prev_cost = total_cost(prev, inst).total;

    SlotTrace slot;
    slot.slot = 1;
    slot.events.emplace_back(LinkInsert{0, 2});  // spans servers 0 and 1
    const double est = estimate_drift_bound(inst.graph, prev, prev_cost,
                                            apply_slot(inst, slot));
    CHECK(est == 5.0);
}

TEST_CASE("adaptive decision follows the accumulated budget") {
    Instance inst = two_server_instance(1, {}, {{1, 1}});
    const GraphLayout prev = place({0});
    const double prev_cost = total_cost(prev, inst).total;

    SlotTrace grow;
    grow.slot = 1;
    VertexInsert ins;
    ins.vertex = 1;
    ins.upload_row = {0.2, 0.5};
    grow.events.emplace_back(ins);
    const Instance next = apply_slot(inst, grow);

    TimelineState state;
    state.layout = prev;
    state.current_cost = prev_cost;
    state.theta = 1.0;
    state.drift_accumulator = 0.6;
    CHECK(glad_a(state, inst.graph, next) == AdjustDecision::UseGladS);
    CHECK(state.drift_accumulator == doctest::Approx(1.1));

    TimelineState fresh;
    fresh.layout = prev;
    fresh.current_cost = prev_cost;
    fresh.theta = std::numeric_limits<double>::infinity();
    CHECK(glad_a(fresh, inst.graph, next) == AdjustDecision::UseGladE);

    TimelineState strict;
    strict.layout = prev;
    strict.current_cost = prev_cost;
    strict.theta = 0.0;
    CHECK(glad_a(strict, inst.graph, next) == AdjustDecision::UseGladS);
}

TEST_CASE("an empty trace leaves a single baseline record") {
    const Instance inst = testutil::make_instance(
        {.n_vertices = 8, .n_servers = 2, .link_p = 0.4, .seed = 31});
    TimelineOptions opt;
    opt.policy = TimelinePolicy::NoAdjustment;
    const TimelineReport report = run_timeline(inst, {}, opt);
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0].slot == 0);
    CHECK(report.rows[0].decision == "baseline");
}

TEST_CASE("no-adjustment cost never rises under pure deletions") {
    const Instance inst = testutil::make_instance(
        {.n_vertices = 12, .n_servers = 3, .link_p = 0.6, .seed = 77});
    std::vector<SlotTrace> trace;
    DataGraph working = inst.graph;
    for (int t = 1; t <= 4; ++t) {
        SlotTrace slot;
        slot.slot = t;
        const auto links = working.links();
        REQUIRE_FALSE(links.empty());
        slot.events.emplace_back(LinkDelete{links[0].u, links[0].v});
        working = apply_events(working, slot.events);
        trace.push_back(slot);
    }

    TimelineOptions opt;
    opt.policy = TimelinePolicy::NoAdjustment;
    const TimelineReport report = run_timeline(inst, trace, opt);
    REQUIRE(report.rows.size() == 5);
    for (size_t k = 1; k < report.rows.size(); ++k)
        CHECK(report.rows[k].cost.total <= report.rows[k - 1].cost.total + 1e-9);
}

TEST_CASE("policies share the slot schema and deterministic replays") {
    const Instance inst = testutil::make_instance(
        {.n_vertices = 10, .n_servers = 3, .link_p = 0.5, .seed = 91});

    std::vector<SlotTrace> trace;
    {
        SlotTrace s1;
        s1.slot = 1;
        const auto links = inst.graph.links();
        s1.events.emplace_back(LinkDelete{links[0].u, links[0].v});
        VertexId u = inst.graph.vertices()[0];
        VertexId w = inst.graph.vertices()[3];
        if (!inst.graph.has_link(std::min(u, w), std::max(u, w)) && u != w)
            s1.events.emplace_back(LinkInsert{std::min(u, w), std::max(u, w)});
        trace.push_back(s1);

        SlotTrace s2;
        s2.slot = 2;
        VertexInsert ins;
        ins.vertex = inst.graph.capacity();
        ins.upload_row = std::vector<double>(3, 0.5);
        ins.links = {inst.graph.vertices()[1]};
        s2.events.emplace_back(ins);
        trace.push_back(s2);
    }

    for (TimelinePolicy policy :
         {TimelinePolicy::NoAdjustment, TimelinePolicy::GreedyOnline,
          TimelinePolicy::GladEOnly, TimelinePolicy::Adaptive, TimelinePolicy::GladSOnly}) {
        TimelineOptions opt;
        opt.policy = policy;
        opt.theta = 0.75;
        const TimelineReport a = run_timeline(inst, trace, opt);
        const TimelineReport b = run_timeline(inst, trace, opt);
        REQUIRE(a.rows.size() == trace.size() + 1);
        REQUIRE(b.rows.size() == a.rows.size());
        for (size_t k = 0; k < a.rows.size(); ++k) {
            CHECK(a.rows[k].slot == static_cast<int>(k));
            CHECK(a.rows[k].policy == to_string(policy));
            CHECK(a.rows[k].cost.total == b.rows[k].cost.total);
            CHECK(a.rows[k].decision == b.rows[k].decision);
            CHECK(a.rows[k].migrations == b.rows[k].migrations);
        }
    }
}

TEST_CASE("full re-optimization is never beaten by the incremental merge") {
    const Instance inst = testutil::make_instance(
        {.n_vertices = 15, .n_servers = 3, .link_p = 0.4, .seed = 101});
    std::vector<SlotTrace> trace;
    DataGraph working = inst.graph;
    Rng rng(55);
    for (int t = 1; t <= 5; ++t) {
        SlotTrace slot;
        slot.slot = t;
        const auto verts = working.vertices();
        for (int tries = 0; tries < 20 && slot.events.size() < 2; ++tries) {
            const VertexId u = verts[rng.below(verts.size())];
            const VertexId v = verts[rng.below(verts.size())];
            if (u == v || working.has_link(std::min(u, v), std::max(u, v))) continue;
            slot.events.emplace_back(LinkInsert{std::min(u, v), std::max(u, v)});
            working = apply_events(working, {slot.events.back()});
        }
        trace.push_back(slot);
    }

    TimelineOptions opt;
    opt.policy = TimelinePolicy::GladSOnly;
    const TimelineReport report = run_timeline(inst, trace, opt);
    for (const SlotRecord& row : report.rows) {
        if (row.slot == 0) continue;
        CHECK(row.decision == "glad-s");
        if (!std::isnan(row.realized_drift)) CHECK(row.realized_drift >= -1e-9);
    }
}
