#include "glad/cost.hpp"

#include <algorithm>
#include <cmath>

namespace glad {

namespace {

void require_valid(const GraphLayout& layout, const Instance& inst) {
    const LayoutValidation v = validate_layout(layout, inst);
    if (!v.ok) {
        const LayoutIssue& i = v.issues.front();
        if (i.kind == LayoutIssue::Kind::MissingVertex)
            throw ValidationError("layout does not place vertex " + std::to_string(i.vertex));
        throw ValidationError("layout places vertex " + std::to_string(i.vertex) +
                              " on unknown server " + std::to_string(i.server));
    }
}

}  // namespace

double data_collection_cost(const GraphLayout& layout, const Instance& inst) {
    require_valid(layout, inst);
    double sum = 0.0;
    for (VertexId v = 0; v < inst.graph.capacity(); ++v)
        if (inst.graph.has_vertex(v)) sum += inst.upload_cost[v][layout.server_of(v)];
    return sum;
}

double vertex_compute_cost(VertexId v, ServerId i, const Instance& inst) {
    const EdgeServer& s = inst.network.server(i);
    const double deg = inst.graph.degree(v);
    const auto& dims = inst.model.layer_dims;
    double sum = 0.0;
    for (size_t k = 1; k < dims.size(); ++k) {
        const double s_in = dims[k - 1];
        const double s_out = dims[k];
        sum += s.alpha * deg * s_in + s.beta * s_in * s_out + s.gamma * s_out;
    }
    return sum;
}

double compute_cost(const GraphLayout& layout, const Instance& inst) {
    require_valid(layout, inst);
    double sum = 0.0;
    for (VertexId v = 0; v < inst.graph.capacity(); ++v)
        if (inst.graph.has_vertex(v)) sum += vertex_compute_cost(v, layout.server_of(v), inst);
    return sum;
}

double traffic_cost(const GraphLayout& layout, const Instance& inst) {
    require_valid(layout, inst);
    double sum = 0.0;
    for (VertexId u = 0; u < inst.graph.capacity(); ++u) {
        if (!inst.graph.has_vertex(u)) continue;
        for (VertexId v : inst.graph.neighbors(u)) {
            if (v <= u) continue;
            const ServerId a = layout.server_of(u);
            const ServerId b = layout.server_of(v);
            if (a == b) continue;
            const auto t = inst.network.traffic_unit_cost(a, b);
            if (!t) throw UnreachablePairError(a, b);
            sum += 2.0 * *t;
        }
    }
    return sum;
}

double maintenance_cost(const GraphLayout& layout, const Instance& inst) {
    require_valid(layout, inst);
    double sum = 0.0;
    for (VertexId v = 0; v < inst.graph.capacity(); ++v)
        if (inst.graph.has_vertex(v)) sum += inst.network.server(layout.server_of(v)).rho;
    for (const EdgeServer& s : inst.network.servers()) sum += s.epsilon;
    return sum;
}

CostBreakdown total_cost(const GraphLayout& layout, const Instance& inst) {
    CostBreakdown b;
    b.c_u = data_collection_cost(layout, inst);
    b.c_p = compute_cost(layout, inst);
    b.c_t = traffic_cost(layout, inst);
    b.c_m = maintenance_cost(layout, inst);
    b.total = b.c_u + b.c_p + b.c_t + b.c_m;
    return b;
}

std::optional<CostBreakdown> total_cost_if_feasible(const GraphLayout& layout,
                                                    const Instance& inst) {
    try {
        return total_cost(layout, inst);
    } catch (const UnreachablePairError&) {
        return std::nullopt;
    }
}

// ---------------------------------------------------------- CostDecomposition

CostDecomposition::CostDecomposition(const Instance& inst) {
    const int d = inst.network.size();
    n_servers_ = d;
    for (const EdgeServer& s : inst.network.servers()) c0_ += s.epsilon;
    unary_.assign(inst.graph.capacity(), {});
    for (VertexId v = 0; v < inst.graph.capacity(); ++v) {
        if (!inst.graph.has_vertex(v)) continue;
        unary_[v].resize(d);
        for (ServerId i = 0; i < d; ++i)
            unary_[v][i] = inst.upload_cost[v][i] + vertex_compute_cost(v, i, inst) +
                           inst.network.server(i).rho;
    }
    pair_connected_.assign(static_cast<size_t>(d) * d, 0);
    pair_coeff_.assign(static_cast<size_t>(d) * d, 0.0);
    for (ServerId i = 0; i < d; ++i) {
        for (ServerId j = 0; j < d; ++j) {
            if (const auto t = inst.network.traffic_unit_cost(i, j)) {
                pair_connected_[static_cast<size_t>(i) * d + j] = 1;
                pair_coeff_[static_cast<size_t>(i) * d + j] = 2.0 * *t;
            }
        }
    }
}

std::optional<double> CostDecomposition::pairwise(ServerId i, ServerId j) const {
    const size_t at = static_cast<size_t>(i) * n_servers_ + j;
    if (!pair_connected_[at]) return std::nullopt;
    return pair_coeff_[at];
}

std::optional<double> CostDecomposition::evaluate(const GraphLayout& layout,
                                                  const Instance& inst) const {
    double sum = c0_;
    for (VertexId v = 0; v < inst.graph.capacity(); ++v) {
        if (!inst.graph.has_vertex(v)) continue;
        sum += unary_[v][layout.server_of(v)];
        for (VertexId u : inst.graph.neighbors(v)) {
            if (u <= v) continue;
            const ServerId a = layout.server_of(v);
            const ServerId b = layout.server_of(u);
            if (a == b) continue;
            const size_t at = static_cast<size_t>(a) * n_servers_ + b;
            if (!pair_connected_[at]) return std::nullopt;
            sum += pair_coeff_[at];
        }
    }
    return sum;
}

CostDecomposition decompose(const Instance& inst) { return CostDecomposition(inst); }

// -------------------------------------------------------------- marginal cost

double marginal_cost(const std::vector<VertexId>& subset, VertexId v,
                     const GraphLayout& layout, const Instance& inst) {
    if (!inst.graph.has_vertex(v))
        throw ValidationError("vertex " + std::to_string(v) + " is not present");
    if (!layout.assigned(v))
        throw ValidationError("layout does not place vertex " + std::to_string(v));
    const ServerId d = layout.server_of(v);
    if (d < 0 || d >= inst.network.size())
        throw ValidationError("layout places vertex " + std::to_string(v) +
                              " on unknown server " + std::to_string(d));

    // covered = subset plus its one-hop neighborhood; embeddings for those
    // vertices are already accounted for by the subset's own cost.
    std::vector<uint8_t> covered(inst.graph.capacity(), 0);
    for (VertexId x : subset) {
        if (!inst.graph.has_vertex(x))
            throw ValidationError("subset vertex " + std::to_string(x) + " is not present");
        if (x == v) throw ValidationError("vertex to append is already in the subset");
        covered[x] = 1;
        for (VertexId u : inst.graph.neighbors(x)) covered[u] = 1;
    }

    double sum = inst.upload_cost[v][d] + inst.network.server(d).rho +
                 vertex_compute_cost(v, d, inst);
    for (VertexId u : inst.graph.neighbors(v)) {
        if (!covered[u]) sum += vertex_compute_cost(u, d, inst);
        if (layout.assigned(u)) {
            const ServerId su = layout.server_of(u);
            if (su != d) {
                const auto t = inst.network.traffic_unit_cost(d, su);
                if (!t) throw UnreachablePairError(d, su);
                sum += 2.0 * *t;
            }
        }
    }
    return sum;
}

}  // namespace glad
