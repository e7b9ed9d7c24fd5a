#include "glad/mincut.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <queue>

namespace glad {

FlowNetwork::FlowNetwork(int node_count, int source, int sink)
    : n_(node_count), s_(source), t_(sink) {
    if (node_count < 2) throw ValidationError("flow network needs at least two nodes");
    if (source < 0 || source >= node_count || sink < 0 || sink >= node_count)
        throw ValidationError("source/sink out of range");
    if (source == sink) throw ValidationError("source and sink must differ");
}

int FlowNetwork::add_arc(int tail, int head, double capacity) {
    if (tail < 0 || tail >= n_ || head < 0 || head >= n_)
        throw ValidationError("arc endpoint out of range");
    if (tail == head) throw ValidationError("self-loop arcs are not allowed");
    if (!std::isfinite(capacity) || capacity < 0.0)
        throw ValidationError("arc capacities must be finite and >= 0");
    arcs_.push_back({tail, head, capacity});
    return static_cast<int>(arcs_.size()) - 1;
}

namespace {

struct Dinic {
    struct E {
        int to;
        double cap;
        int rev;        // index of the reverse edge in g[to]
        int arc_idx;  // original arc index, -1 for residual companions
    };

    explicit Dinic(int n) : g(n), level(n), it(n) {}

    void add(int a, int b, double cap, int idx) {
        g[a].push_back({b, cap, static_cast<int>(g[b].size()), idx});
        g[b].push_back({a, 0.0, static_cast<int>(g[a].size()) - 1, -1});
    }

    bool bfs(int s, int t) {
        std::fill(level.begin(), level.end(), -1);
        std::queue<int> q;
        level[s] = 0;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (const E& e : g[v]) {
                if (e.cap > 0.0 && level[e.to] < 0) {
                    level[e.to] = level[v] + 1;
                    q.push(e.to);
                }
            }
        }
        return level[t] >= 0;
    }

    double dfs(int v, int t, double f) {
        if (v == t) return f;
        for (int& i = it[v]; i < static_cast<int>(g[v].size()); ++i) {
            E& e = g[v][i];
            if (e.cap > 0.0 && level[v] < level[e.to]) {
                double d = dfs(e.to, t, std::min(f, e.cap));
                if (d > 0.0) {
                    e.cap -= d;
                    g[e.to][e.rev].cap += d;
                    return d;
                }
            }
        }
        return 0.0;
    }

    double run(int s, int t) {
        double flow = 0.0;
        while (bfs(s, t)) {
            std::fill(it.begin(), it.end(), 0);
            for (;;) {
                double f = dfs(s, t, std::numeric_limits<double>::infinity());
                if (f <= 0.0) break;
                flow += f;
            }
        }
        return flow;
    }

    std::vector<std::vector<E>> g;
    std::vector<int> level;
    std::vector<int> it;
};

}  // namespace

CutResult min_st_cut(const FlowNetwork& net) {
    Dinic solver(net.node_count());
    for (size_t i = 0; i < net.arcs().size(); ++i) {
        const FlowArc& a = net.arcs()[i];
        solver.add(a.tail, a.head, a.capacity, static_cast<int>(i));
    }

    CutResult out;
    out.flow_value = solver.run(net.source(), net.sink());

    // Source side = residual reachability from s.
    out.source_side.assign(net.node_count(), 0);
    std::queue<int> q;
    q.push(net.source());
    out.source_side[net.source()] = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (const Dinic::E& e : solver.g[v]) {
            if (e.cap > 0.0 && !out.source_side[e.to]) {
                out.source_side[e.to] = 1;
                q.push(e.to);
            }
        }
    }

    out.arc_flows.assign(net.arcs().size(), 0.0);
    for (int v = 0; v < net.node_count(); ++v) {
        for (const Dinic::E& e : solver.g[v]) {
            if (e.arc_idx < 0) continue;
            const double f = net.arcs()[e.arc_idx].capacity - e.cap;
            out.arc_flows[e.arc_idx] = f > 0.0 ? f : 0.0;
        }
    }

    for (size_t i = 0; i < net.arcs().size(); ++i) {
        const FlowArc& a = net.arcs()[i];
        if (a.capacity > 0.0 && out.source_side[a.tail] && !out.source_side[a.head])
            out.cut_arcs.push_back(static_cast<int>(i));
    }
    return out;
}

void dump_dimacs(const FlowNetwork& net, std::ostream& os) {
    os << "p max " << net.node_count() << ' ' << net.arcs().size() << '\n';
    os << "n " << net.source() + 1 << " s\n";
    os << "n " << net.sink() + 1 << " t\n";
    for (const FlowArc& a : net.arcs())
        os << "a " << a.tail + 1 << ' ' << a.head + 1 << ' ' << a.capacity << '\n';
}

}  // namespace glad
