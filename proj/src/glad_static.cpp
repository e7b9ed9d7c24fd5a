#include "glad/glad_static.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "glad/rng.hpp"

namespace glad {

namespace {

// Stand-in weight for a placement that would route traffic over a missing
// connection. Large enough that any feasible relabeling wins, small enough to
// stay clear of overflow inside the flow solver.
constexpr double kUnreachableWeight = 1e30;

}  // namespace

void GladConfig::validate() const {
    if (r_max < 1) throw ValidationError("r_max must be >= 1");
    if (max_iterations < 0) throw ValidationError("max_iterations must be >= 0");
    if (init == InitKind::WarmStart && !warm_start)
        throw ValidationError("warm start requested but no layout given");
}

int exhaustive_r(const EdgeNetwork& network) {
    const long d = network.size();
    const long r = d * (d - 1) / 2;
    return static_cast<int>(r < 1 ? 1 : r);
}

VisitCounter::VisitCounter(const EdgeNetwork& network)
    : pairs_(network.connected_pairs()), counts_(pairs_.size(), 0) {}

long VisitCounter::count(ServerId i, ServerId j) const {
    if (i > j) std::swap(i, j);
    for (size_t k = 0; k < pairs_.size(); ++k)
        if (pairs_[k] == std::make_pair(i, j)) return counts_[k];
    throw ValidationError("pair (" + std::to_string(i) + ", " + std::to_string(j) +
                          ") is not a connected pair");
}

std::pair<ServerId, ServerId> select_pair(VisitCounter& visits, PairTieBreak tie_break,
                                          Rng* rng) {
    const auto& pairs = visits.pairs();
    if (pairs.empty()) throw NoConnectedPairsError();
    long best = std::numeric_limits<long>::max();
    for (size_t k = 0; k < pairs.size(); ++k) best = std::min(best, visits.count_at(k));

    size_t chosen = pairs.size();
    if (tie_break == PairTieBreak::LowestIndex || rng == nullptr) {
        for (size_t k = 0; k < pairs.size(); ++k) {
            if (visits.count_at(k) == best) {
                chosen = k;
                break;
            }
        }
    } else {
        size_t n_min = 0;
        for (size_t k = 0; k < pairs.size(); ++k)
            if (visits.count_at(k) == best) ++n_min;
        uint64_t pick = rng->below(n_min);
        for (size_t k = 0; k < pairs.size(); ++k) {
            if (visits.count_at(k) == best && pick-- == 0) {
                chosen = k;
                break;
            }
        }
    }
    visits.increment(chosen);
    return pairs[chosen];
}

GraphLayout init_layout(const Instance& inst, const GladConfig& cfg) {
    cfg.validate();
    GraphLayout out(inst.graph.capacity());
    const int d = inst.network.size();
    switch (cfg.init) {
        case InitKind::Random: {
            Rng rng = Rng(cfg.seed).child("init");
            for (VertexId v = 0; v < inst.graph.capacity(); ++v)
                if (inst.graph.has_vertex(v))
                    out.assign(v, static_cast<ServerId>(rng.below(d)));
            break;
        }
        case InitKind::UploadFirst: {
            for (VertexId v = 0; v < inst.graph.capacity(); ++v) {
                if (!inst.graph.has_vertex(v)) continue;
                ServerId arg = 0;
                for (ServerId i = 1; i < d; ++i)
                    if (inst.upload_cost[v][i] < inst.upload_cost[v][arg]) arg = i;
                out.assign(v, arg);
            }
            break;
        }
        case InitKind::WarmStart: {
            const LayoutValidation val = validate_layout(*cfg.warm_start, inst);
            if (!val.ok) throw ValidationError("warm start layout is not total/valid");
            out = *cfg.warm_start;
            break;
        }
    }
    return out;
}

namespace {

struct AuxBuild {
    FlowNetwork net;
    std::vector<VertexId> members;  // ascending vertex ids; node 2+k
};

// movable==nullptr means every present vertex is movable.
AuxBuild build_aux(ServerId i, ServerId j, const GraphLayout& layout, const Instance& inst,
                   const CostDecomposition& dec, const std::vector<uint8_t>* movable) {
    if (i == j) throw ValidationError("auxiliary graph needs two distinct servers");
    const auto tau_ij = inst.network.traffic_unit_cost(i, j);
    if (!tau_ij)
        throw ValidationError("servers " + std::to_string(i) + " and " + std::to_string(j) +
                              " are not connected");
    const double split_cost = 2.0 * *tau_ij;

    std::vector<VertexId> members;
    std::vector<int> node_of(inst.graph.capacity(), -1);
    for (VertexId v = 0; v < inst.graph.capacity(); ++v) {
        if (!inst.graph.has_vertex(v)) continue;
        if (movable && !(*movable)[v]) continue;
        const ServerId s = layout.server_of(v);
        if (s == i || s == j) {
            node_of[v] = 2 + static_cast<int>(members.size());
            members.push_back(v);
        }
    }

    AuxBuild out{FlowNetwork(2 + static_cast<int>(members.size()), 0, 1), std::move(members)};

    for (size_t k = 0; k < out.members.size(); ++k) {
        const VertexId v = out.members[k];
        double wi = dec.unary(v, i);  // cost of placing v at i
        double wj = dec.unary(v, j);
        for (VertexId u : inst.graph.neighbors(v)) {
            if (node_of[u] >= 0) continue;  // handled by a pair arc below
            const ServerId su = layout.server_of(u);
            if (su != i) {
                const auto c = dec.pairwise(i, su);
                wi = c ? wi + *c : kUnreachableWeight;
            }
            if (su != j) {
                const auto c = dec.pairwise(j, su);
                wj = c ? wj + *c : kUnreachableWeight;
            }
        }
        out.net.add_arc(0, 2 + static_cast<int>(k), std::min(wi, kUnreachableWeight));
        out.net.add_arc(2 + static_cast<int>(k), 1, std::min(wj, kUnreachableWeight));
    }
    for (const VertexId v : out.members) {
        for (VertexId u : inst.graph.neighbors(v)) {
            if (u > v && node_of[u] >= 0) {
                out.net.add_arc(node_of[v], node_of[u], split_cost);
                out.net.add_arc(node_of[u], node_of[v], split_cost);
            }
        }
    }
    return out;
}

}  // namespace

FlowNetwork build_auxiliary_graph(ServerId i, ServerId j, const GraphLayout& layout,
                                  const Instance& inst) {
    const CostDecomposition dec(inst);
    return build_aux(i, j, layout, inst, dec, nullptr).net;
}

GraphLayout cut_to_layout(const CutResult& cut, ServerId i, ServerId j,
                          const GraphLayout& prev) {
    GraphLayout out = prev;
    size_t node = 2;
    for (VertexId v = 0; v < static_cast<VertexId>(prev.assignment.size()); ++v) {
        const ServerId s = prev.server_of(v);
        if (s != i && s != j) continue;
        if (node >= cut.source_side.size())
            throw ValidationError("cut does not match the layout's member set");
        out.assign(v, cut.source_side[node] ? j : i);
        ++node;
    }
    if (node != cut.source_side.size())
        throw ValidationError("cut does not match the layout's member set");
    return out;
}

namespace {

// Exact cost delta of moving `moves` (already restricted to changed vertices)
// from `layout`, using the decomposition tables. Returns kUnreachableWeight
// or more when the candidate would cross a missing connection.
double move_delta(const std::vector<std::pair<VertexId, ServerId>>& moves,
                  const GraphLayout& layout, const Instance& inst,
                  const CostDecomposition& dec, std::vector<ServerId>& next_scratch,
                  std::vector<uint8_t>& moved_scratch) {
    auto pair_cost = [&](ServerId a, ServerId b) -> double {
        if (a == b) return 0.0;
        const auto c = dec.pairwise(a, b);
        return c ? *c : kUnreachableWeight;
    };
    for (const auto& [v, s] : moves) {
        next_scratch[v] = s;
        moved_scratch[v] = 1;
    }
    double delta = 0.0;
    for (const auto& [v, s] : moves) {
        const ServerId old_v = layout.server_of(v);
        delta += dec.unary(v, s) - dec.unary(v, old_v);
        for (VertexId u : inst.graph.neighbors(v)) {
            if (moved_scratch[u] && u > v) continue;  // count each link once
            const ServerId old_u = layout.server_of(u);
            const ServerId new_u = moved_scratch[u] ? next_scratch[u] : old_u;
            delta += pair_cost(s, new_u) - pair_cost(old_v, old_u);
        }
    }
    for (const auto& [v, s] : moves) {
        (void)s;
        moved_scratch[v] = 0;
    }
    return delta;
}

}  // namespace

GladResult optimize_layout(const Instance& inst, GraphLayout start,
                           const std::vector<uint8_t>& movable, const GladConfig& cfg) {
    cfg.validate();
    inst.validate();
    {
        const LayoutValidation val = validate_layout(start, inst);
        if (!val.ok) throw ValidationError("starting layout is not total/valid");
    }

    GladResult res;
    res.layout = std::move(start);
    res.log.initial_cost = total_cost(res.layout, inst).total;  // throws if infeasible

    const int d = inst.network.size();
    if (d <= 1 || inst.graph.vertex_count() == 0) return res;

    const CostDecomposition dec(inst);
    VisitCounter visits(inst.network);
    if (visits.pairs().empty()) throw NoConnectedPairsError();

    Rng tie_rng = Rng(cfg.seed).child("pair-tie");
    Rng* tie = cfg.tie_break == PairTieBreak::SeededRandom ? &tie_rng : nullptr;

    std::vector<ServerId> next_scratch(inst.graph.capacity(), GraphLayout::kUnassigned);
    std::vector<uint8_t> moved_scratch(inst.graph.capacity(), 0);
    std::vector<std::pair<VertexId, ServerId>> moves;

    double current = res.log.initial_cost;
    int r = 0;
    long iter = 0;
    while (r < cfg.r_max) {
        if (cfg.max_iterations > 0 && iter >= cfg.max_iterations) break;
        const auto [i, j] = select_pair(visits, cfg.tie_break, tie);

        const AuxBuild aux = build_aux(i, j, res.layout, inst, dec, &movable);
        const CutResult cut = min_st_cut(aux.net);

        moves.clear();
        for (size_t k = 0; k < aux.members.size(); ++k) {
            const VertexId v = aux.members[k];
            const ServerId target = cut.source_side[2 + k] ? j : i;
            if (target != res.layout.server_of(v)) moves.emplace_back(v, target);
        }

        const double delta =
            move_delta(moves, res.layout, inst, dec, next_scratch, moved_scratch);
        ++iter;

        IterationRecord rec;
        rec.iteration = iter;
        rec.pair_i = i;
        rec.pair_j = j;
        rec.candidate_cost = current + delta;
        if (delta < 0.0) {
            for (const auto& [v, s] : moves) res.layout.assign(v, s);
            current += delta;
            r = 0;
            rec.accepted = true;
        } else {
            ++r;
            rec.accepted = false;
        }
        rec.best_cost = current;
        rec.r = r;
        res.log.records.push_back(rec);
    }
    return res;
}

GladResult glad_s(const Instance& inst, const GladConfig& cfg) {
    GraphLayout start = init_layout(inst, cfg);
    std::vector<uint8_t> movable(inst.graph.capacity(), 0);
    for (VertexId v = 0; v < inst.graph.capacity(); ++v)
        if (inst.graph.has_vertex(v)) movable[v] = 1;
    return optimize_layout(inst, std::move(start), movable, cfg);
}

}  // namespace glad
