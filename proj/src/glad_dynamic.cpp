#include "glad/glad_dynamic.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace glad {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

ServerId cheapest_unary_server(VertexId v, const Instance& inst) {
    const int d = inst.network.size();
    ServerId arg = 0;
    double best = inst.upload_cost[v][0] + vertex_compute_cost(v, 0, inst) +
                  inst.network.server(0).rho;
    for (ServerId i = 1; i < d; ++i) {
        const double c = inst.upload_cost[v][i] + vertex_compute_cost(v, i, inst) +
                         inst.network.server(i).rho;
        if (c < best) {
            best = c;
            arg = i;
        }
    }
    return arg;
}

ServerId cheapest_upload_server(VertexId v, const Instance& inst) {
    const int d = inst.network.size();
    ServerId arg = 0;
    for (ServerId i = 1; i < d; ++i)
        if (inst.upload_cost[v][i] < inst.upload_cost[v][arg]) arg = i;
    return arg;
}

}  // namespace

DataGraph apply_events(const DataGraph& graph, const std::vector<EvolutionEvent>& events) {
    DataGraph g = graph;
    for (const EvolutionEvent& ev : events) {
        std::visit(
            [&](const auto& e) {
                using T = std::decay_t<decltype(e)>;
                if constexpr (std::is_same_v<T, VertexInsert>) {
                    g.insert_vertex(e.vertex);
                    g.set_coords(e.vertex, e.coords);
                    for (VertexId u : e.links) g.insert_link(e.vertex, u);
                } else if constexpr (std::is_same_v<T, VertexDelete>) {
                    g.remove_vertex(e.vertex);
                } else if constexpr (std::is_same_v<T, LinkInsert>) {
                    g.insert_link(e.u, e.v);
                } else {
                    g.remove_link(e.u, e.v);
                }
            },
            ev);
    }
    return g;
}

Instance apply_slot(const Instance& inst, const SlotTrace& slot) {
    Instance out = inst;
    out.graph = apply_events(inst.graph, slot.events);
    const int d = out.network.size();
    if (static_cast<int>(out.upload_cost.size()) < out.graph.capacity())
        out.upload_cost.resize(out.graph.capacity());
    for (const EvolutionEvent& ev : slot.events) {
        if (const VertexInsert* ins = std::get_if<VertexInsert>(&ev)) {
            if (static_cast<int>(ins->upload_row.size()) != d)
                throw ValidationError("inserted vertex " + std::to_string(ins->vertex) +
                                      " needs one upload cost per server");
            out.upload_cost[ins->vertex] = ins->upload_row;
        }
    }
    out.validate();
    return out;
}

std::vector<VertexId> filter_affected(const DataGraph& prev_graph,
                                      const DataGraph& new_graph,
                                      const GraphLayout& prev_layout) {
    std::vector<uint8_t> mark(new_graph.capacity(), 0);
    for (VertexId v = 0; v < new_graph.capacity(); ++v)
        if (new_graph.has_vertex(v) && !prev_graph.has_vertex(v)) mark[v] = 1;
    for (const Link& l : new_graph.links()) {
        if (prev_graph.has_link(l.u, l.v)) continue;
        if (!prev_graph.has_vertex(l.u) || !prev_graph.has_vertex(l.v))
            continue;  // endpoints without a previous residence are covered above
        if (prev_layout.server_of(l.u) != prev_layout.server_of(l.v)) {
            mark[l.u] = 1;
            mark[l.v] = 1;
        }
    }
    std::vector<VertexId> out;
    for (VertexId v = 0; v < new_graph.capacity(); ++v)
        if (mark[v]) out.push_back(v);
    return out;
}

namespace {

// prev_layout restricted to the new graph; vertices without a previous
// residence are placed by `seed_rule`.
template <typename SeedRule>
GraphLayout carry_layout(const DataGraph& new_graph, const GraphLayout& prev_layout,
                         const Instance& inst_t, SeedRule seed_rule) {
    GraphLayout out(new_graph.capacity());
    for (VertexId v = 0; v < new_graph.capacity(); ++v) {
        if (!new_graph.has_vertex(v)) continue;
        if (prev_layout.assigned(v))
            out.assign(v, prev_layout.server_of(v));
        else
            out.assign(v, seed_rule(v, inst_t));
    }
    return out;
}

}  // namespace

GladResult glad_e(const Instance& inst_t, const DataGraph& prev_graph,
                  const GraphLayout& prev_layout, const GladConfig& cfg) {
    const std::vector<VertexId> affected =
        filter_affected(prev_graph, inst_t.graph, prev_layout);

    GraphLayout start = carry_layout(
        inst_t.graph, prev_layout, inst_t,
        [](VertexId v, const Instance& inst) { return cheapest_unary_server(v, inst); });

    if (affected.empty()) {
        GladResult res;
        res.log.initial_cost = total_cost(start, inst_t).total;
        res.layout = std::move(start);
        return res;
    }

    std::vector<uint8_t> movable(inst_t.graph.capacity(), 0);
    for (VertexId v : affected) movable[v] = 1;
    return optimize_layout(inst_t, std::move(start), movable, cfg);
}

double estimate_drift_bound(const DataGraph& prev_graph, const GraphLayout& prev_layout,
                            double prev_cost, const Instance& inst_t) {
    (void)prev_cost;  // the estimate is the pure increment over it
    const int d = inst_t.network.size();
    const DataGraph& now = inst_t.graph;

    // Inserted vertices priced at their costliest server; remember the pick
    // so their links are charged from there.
    std::vector<ServerId> loc(now.capacity(), GraphLayout::kUnassigned);
    double delta = 0.0;
    for (VertexId v = 0; v < now.capacity(); ++v) {
        if (!now.has_vertex(v)) continue;
        if (prev_graph.has_vertex(v)) {
            loc[v] = prev_layout.server_of(v);
            continue;
        }
        ServerId arg = 0;
        double worst = -1.0;
        for (ServerId i = 0; i < d; ++i) {
            const double c = inst_t.upload_cost[v][i] + vertex_compute_cost(v, i, inst_t) +
                             inst_t.network.server(i).rho;
            if (c > worst) {
                worst = c;
                arg = i;
            }
        }
        delta += worst;
        loc[v] = arg;
    }

    for (const Link& l : now.links()) {
        if (prev_graph.has_link(l.u, l.v)) continue;
        const ServerId a = loc[l.u];
        const ServerId b = loc[l.v];
        if (a == b) continue;
        const auto t = inst_t.network.traffic_unit_cost(a, b);
        if (!t) return std::numeric_limits<double>::infinity();
        delta += 2.0 * *t;
    }
    return std::max(0.0, delta);
}

AdjustDecision glad_a(TimelineState& state, const DataGraph& prev_graph,
                      const Instance& inst_t) {
    state.drift_accumulator +=
        estimate_drift_bound(prev_graph, state.layout, state.current_cost, inst_t);
    return state.drift_accumulator <= state.theta ? AdjustDecision::UseGladE
                                                  : AdjustDecision::UseGladS;
}

const char* to_string(TimelinePolicy p) {
    switch (p) {
        case TimelinePolicy::NoAdjustment: return "no-adjustment";
        case TimelinePolicy::GreedyOnline: return "greedy-online";
        case TimelinePolicy::GladEOnly: return "glad-e-only";
        case TimelinePolicy::Adaptive: return "adaptive";
        case TimelinePolicy::GladSOnly: return "glad-s-only";
    }
    return "?";
}

TimelineReport run_timeline(const Instance& inst0, const std::vector<SlotTrace>& trace,
                            const TimelineOptions& opt) {
    inst0.validate();
    TimelineReport report;
    const std::string policy_name = to_string(opt.policy);

    auto t0 = std::chrono::steady_clock::now();
    GladResult base = glad_s(inst0, opt.glad);
    double wall = ms_since(t0);

    Instance inst = inst0;
    GraphLayout layout = std::move(base.layout);
    CostBreakdown cost = total_cost(layout, inst);
    report.rows.push_back({0, policy_name, "baseline", cost, 0.0, 0, wall, kNan});

    TimelineState state{layout, cost.total, 0.0, opt.theta};

    std::vector<uint8_t> all_movable;
    for (const SlotTrace& slot : trace) {
        const DataGraph prev_graph = inst.graph;
        const Instance next = apply_slot(inst, slot);
        const double est = estimate_drift_bound(prev_graph, layout, cost.total, next);

        GraphLayout new_layout;
        std::string decision;
        double realized = kNan;
        t0 = std::chrono::steady_clock::now();
        switch (opt.policy) {
            case TimelinePolicy::NoAdjustment: {
                new_layout = carry_layout(next.graph, layout, next,
                                          [](VertexId v, const Instance& in) {
                                              return cheapest_upload_server(v, in);
                                          });
                decision = "none";
                break;
            }
            case TimelinePolicy::GreedyOnline: {
                new_layout = carry_layout(next.graph, layout, next,
                                          [](VertexId v, const Instance& in) {
                                              return cheapest_unary_server(v, in);
                                          });
                for (VertexId v : filter_affected(prev_graph, next.graph, layout))
                    new_layout.assign(v, cheapest_unary_server(v, next));
                decision = "greedy";
                break;
            }
            case TimelinePolicy::GladEOnly: {
                new_layout = glad_e(next, prev_graph, layout, opt.glad).layout;
                decision = "glad-e";
                break;
            }
            case TimelinePolicy::GladSOnly:
            case TimelinePolicy::Adaptive: {
                bool full = opt.policy == TimelinePolicy::GladSOnly;
                if (!full) {
                    state.layout = layout;
                    state.current_cost = cost.total;
                    full = glad_a(state, prev_graph, next) == AdjustDecision::UseGladS;
                }
                GraphLayout merged = glad_e(next, prev_graph, layout, opt.glad).layout;
                if (full) {
                    const double merged_cost = total_cost(merged, next).total;
                    all_movable.assign(next.graph.capacity(), 0);
                    for (VertexId v = 0; v < next.graph.capacity(); ++v)
                        if (next.graph.has_vertex(v)) all_movable[v] = 1;
                    new_layout =
                        optimize_layout(next, std::move(merged), all_movable, opt.glad)
                            .layout;
                    realized = merged_cost - total_cost(new_layout, next).total;
                    state.drift_accumulator = 0.0;
                    decision = "glad-s";
                } else {
                    new_layout = std::move(merged);
                    decision = "glad-e";
                }
                break;
            }
        }
        wall = ms_since(t0);

        int migrations = 0;
        for (VertexId v = 0; v < next.graph.capacity(); ++v)
            if (next.graph.has_vertex(v) && prev_graph.has_vertex(v) &&
                new_layout.server_of(v) != layout.server_of(v))
                ++migrations;

        cost = total_cost(new_layout, next);
        report.rows.push_back(
            {slot.slot, policy_name, decision, cost, est, migrations, wall, realized});

        inst = next;
        layout = std::move(new_layout);
        state.layout = layout;
        state.current_cost = cost.total;
    }
    return report;
}

}  // namespace glad
