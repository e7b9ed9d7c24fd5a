#pragma once

#include <iosfwd>
#include <vector>

#include "glad/errors.hpp"

namespace glad {

struct FlowArc {
    int tail = 0;
    int head = 0;
    double capacity = 0.0;
};

// Directed flow network with one source and one sink. Arcs keep their
// insertion order; parallel arcs are allowed.
class FlowNetwork {
public:
    FlowNetwork(int node_count, int source, int sink);

    int add_arc(int tail, int head, double capacity);  // returns arc index

    int node_count() const { return n_; }
    int source() const { return s_; }
    int sink() const { return t_; }
    const std::vector<FlowArc>& arcs() const { return arcs_; }

private:
    int n_;
    int s_;
    int t_;
    std::vector<FlowArc> arcs_;
};

struct CutResult {
    double flow_value = 0.0;
    // Nodes reachable from the source in the final residual network. The
    // source-minimal min cut; deterministic for a fixed input.
    std::vector<uint8_t> source_side;
    // Indices of input arcs crossing source side -> sink side with positive
    // capacity. Their capacities sum to flow_value.
    std::vector<int> cut_arcs;
    // Flow routed through each input arc, aligned with the arc list.
    std::vector<double> arc_flows;
};

// Max-flow / min-cut via Dinic's blocked augmentation. A disconnected sink is
// a valid input: flow 0, empty cut.
CutResult min_st_cut(const FlowNetwork& net);

// DIMACS max-flow dump, for debugging auxiliary networks.
void dump_dimacs(const FlowNetwork& net, std::ostream& os);

}  // namespace glad
