#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "glad/glad_static.hpp"
#include "glad/model.hpp"

namespace glad {

struct VertexInsert {
    VertexId vertex = 0;
    std::array<double, 2> coords{0.0, 0.0};
    std::vector<double> upload_row;  // one entry per server
    std::vector<VertexId> links;     // initial neighbors, must exist
};

struct VertexDelete {
    VertexId vertex = 0;
};

struct LinkInsert {
    VertexId u = 0;
    VertexId v = 0;
};

struct LinkDelete {
    VertexId u = 0;
    VertexId v = 0;
};

using EvolutionEvent = std::variant<VertexInsert, VertexDelete, LinkInsert, LinkDelete>;

struct SlotTrace {
    int slot = 0;
    std::vector<EvolutionEvent> events;
};

// Replay events onto a copy of the graph. Throws ValidationError when an
// event does not apply (unknown vertex, duplicate link, missing link).
DataGraph apply_events(const DataGraph& graph, const std::vector<EvolutionEvent>& events);

// Same, lifted to a full instance: upload-cost rows are appended for
// inserted vertices (validated against the server count).
Instance apply_slot(const Instance& inst, const SlotTrace& slot);

// Vertices that must be reconsidered after a change: newly inserted ones,
// plus existing vertices that gained a link whose other endpoint resides on
// a different server under prev_layout. Ascending ids.
std::vector<VertexId> filter_affected(const DataGraph& prev_graph,
                                      const DataGraph& new_graph,
                                      const GraphLayout& prev_layout);

// Incremental re-optimization: only affected vertices move; surviving
// placements are kept and act as fixed context. New vertices start at their
// cheapest server by unary cost. A slot with an empty affected set returns
// prev_layout restricted to the new graph.
GladResult glad_e(const Instance& inst_t, const DataGraph& prev_graph,
                  const GraphLayout& prev_layout, const GladConfig& cfg);

// Upper estimate of the cost drift caused by one evolution step, priced
// without re-optimizing: deletions are ignored (they cannot raise cost),
// inserted links are charged at their endpoints' current servers, and each
// inserted vertex is charged at its costliest server. Infinity when an
// inserted link would span a disconnected pair.
double estimate_drift_bound(const DataGraph& prev_graph, const GraphLayout& prev_layout,
                            double prev_cost, const Instance& inst_t);

enum class AdjustDecision { UseGladE, UseGladS };

struct TimelineState {
    GraphLayout layout;
    double current_cost = 0.0;
    double drift_accumulator = 0.0;
    double theta = 0.0;
};

// Accumulate the drift estimate for the step into the state, then choose:
// stay incremental while the accumulator is within theta, otherwise ask for
// a full re-optimization. The caller resets the accumulator after actually
// running one.
AdjustDecision glad_a(TimelineState& state, const DataGraph& prev_graph,
                      const Instance& inst_t);

enum class TimelinePolicy { NoAdjustment, GreedyOnline, GladEOnly, Adaptive, GladSOnly };

const char* to_string(TimelinePolicy p);

struct TimelineOptions {
    TimelinePolicy policy = TimelinePolicy::Adaptive;
    double theta = 0.0;  // Adaptive only
    GladConfig glad;
};

struct SlotRecord {
    int slot = 0;
    std::string policy;
    std::string decision;  // baseline | none | greedy | glad-e | glad-s
    CostBreakdown cost;
    double est_drift = 0.0;
    int migrations = 0;
    double wall_ms = 0.0;
    // Cost of the incremental layout minus the full re-optimization, for
    // slots where both were computed; NaN otherwise.
    double realized_drift = 0.0;
};

struct TimelineReport {
    std::vector<SlotRecord> rows;
};

// Drive a policy across the trace. Slot 0 is the initial full optimization;
// every subsequent row reports the slot's decision, cost breakdown, drift
// estimate, migration count and wall time.
TimelineReport run_timeline(const Instance& inst0, const std::vector<SlotTrace>& trace,
                            const TimelineOptions& opt);

}  // namespace glad
