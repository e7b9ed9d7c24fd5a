#pragma once

#include <optional>
#include <vector>

#include "glad/model.hpp"

namespace glad {

struct CostBreakdown {
    double c_u = 0.0;  // data collection (upload)
    double c_p = 0.0;  // GNN compute
    double c_t = 0.0;  // cross-server traffic
    double c_m = 0.0;  // maintenance
    double total = 0.0;
};

// Sum of upload costs under the layout.
double data_collection_cost(const GraphLayout& layout, const Instance& inst);

// Cost of computing vertex v's embedding on server i: per layer, aggregation
// over deg(v) neighbor vectors, the dense transform, and the activation.
double vertex_compute_cost(VertexId v, ServerId i, const Instance& inst);

double compute_cost(const GraphLayout& layout, const Instance& inst);

// Every cross-server link is charged twice its unit traffic cost (once per
// endpoint's server pulling the other side). Throws UnreachablePairError if a
// cross link spans a disconnected pair.
double traffic_cost(const GraphLayout& layout, const Instance& inst);

// Per-resident-vertex rho plus every server's one-shot epsilon (charged
// whether or not the server hosts anything).
double maintenance_cost(const GraphLayout& layout, const Instance& inst);

CostBreakdown total_cost(const GraphLayout& layout, const Instance& inst);

// nullopt instead of throwing when the layout is infeasible.
std::optional<CostBreakdown> total_cost_if_feasible(const GraphLayout& layout,
                                                    const Instance& inst);

// Pseudo-boolean view of the objective: a constant, a per-(vertex, server)
// unary table, and a per-server-pair coefficient applied to every link whose
// endpoints split across that pair.
class CostDecomposition {
public:
    CostDecomposition(const Instance& inst);

    double c0() const { return c0_; }
    double unary(VertexId v, ServerId i) const { return unary_[v][i]; }
    const std::vector<std::vector<double>>& unary_table() const { return unary_; }

    // Pairwise coefficient for one link split across (i, j): 2 * tau_ij.
    // nullopt when the pair is unreachable; zero when i == j.
    std::optional<double> pairwise(ServerId i, ServerId j) const;

    // c0 + sum of unaries + sum of pairwise terms; nullopt if any cross link
    // is unreachable. Matches total_cost().total up to rounding.
    std::optional<double> evaluate(const GraphLayout& layout, const Instance& inst) const;

private:
    double c0_ = 0.0;
    std::vector<std::vector<double>> unary_;
    int n_servers_ = 0;
    std::vector<uint8_t> pair_connected_;  // n*n
    std::vector<double> pair_coeff_;       // n*n, 2*tau
};

CostDecomposition decompose(const Instance& inst);

// Marginal cost of appending v to an already-placed subset. The charge is
// v's own unary cost, compute for v's neighbors not yet covered by the
// subset or its neighborhood (their embeddings must be produced alongside
// v's, priced at v's server), plus traffic on v's links to placed vertices.
// `layout` must place subset and v; placements of further vertices, when
// present, extend the traffic charge.
double marginal_cost(const std::vector<VertexId>& subset, VertexId v,
                     const GraphLayout& layout, const Instance& inst);

}  // namespace glad
