#include "glad/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <string>
#include <utility>

#include "glad/errors.hpp"
#include "glad/rng.hpp"

namespace glad {

namespace {

double dist2d(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    const double dx = a[0] - b[0];
    const double dy = a[1] - b[1];
    return std::sqrt(dx * dx + dy * dy);
}

bool contains(const std::vector<VertexId>& xs, VertexId v) {
    return std::find(xs.begin(), xs.end(), v) != xs.end();
}

std::vector<Link> erdos_renyi_links(int n, double p, Rng& rng) {
    std::vector<Link> links;
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) links.push_back({u, v});
    return links;
}

// Barabasi-Albert growth with a path seed. A fractional m attaches
// floor(m)+1 links with probability frac(m), so the expected link count is
// (n - m0) * m plus the seed path.
std::vector<Link> preferential_attachment_links(int n, double m, Rng& rng) {
    const int mfloor = static_cast<int>(std::floor(m));
    const double frac = m - static_cast<double>(mfloor);
    const int m0 = std::min(n, mfloor + 1);

    std::vector<Link> links;
    std::vector<VertexId> targets;  // one entry per incident link endpoint
    for (VertexId v = 1; v < m0; ++v) {
        links.push_back({static_cast<VertexId>(v - 1), v});
        targets.push_back(v - 1);
        targets.push_back(v);
    }

    std::vector<VertexId> chosen;
    for (VertexId v = m0; v < n; ++v) {
        int mv = mfloor + ((frac > 0.0 && rng.bernoulli(frac)) ? 1 : 0);
        mv = std::min<int>(mv, v);
        chosen.clear();
        int misses = 0;
        while (static_cast<int>(chosen.size()) < mv) {
            VertexId u;
            if (targets.empty()) {
                u = static_cast<VertexId>(rng.below(static_cast<uint64_t>(v)));
            } else {
                u = targets[rng.below(targets.size())];
            }
            if (!contains(chosen, u)) {
                chosen.push_back(u);
                misses = 0;
            } else if (++misses > 64) {
                // Degenerate degree distribution; fall back to the lowest
                // id not yet attached.
                for (VertexId w = 0; w < v; ++w) {
                    if (!contains(chosen, w)) {
                        chosen.push_back(w);
                        break;
                    }
                }
                misses = 0;
            }
        }
        for (VertexId u : chosen) {
            links.push_back({std::min(u, v), std::max(u, v)});
            targets.push_back(u);
            targets.push_back(v);
        }
    }
    return links;
}

ClassParams params_for(const SynthesisConfig& cfg, MachineClass c) {
    switch (c) {
        case MachineClass::A: return cfg.class_a;
        case MachineClass::B: return cfg.class_b;
        case MachineClass::C: return cfg.class_c;
    }
    return cfg.class_a;
}

}  // namespace

void SynthesisConfig::validate() const {
    if (n_vertices < 1) throw ValidationError("n_vertices must be positive");
    if (n_servers < 1) throw ValidationError("n_servers must be positive");
    if (n_servers > n_vertices)
        throw ValidationError("n_servers may not exceed n_vertices (server pivots are vertex cluster centers)");
    GnnModelSpec{layer_dims}.validate();
    if (!(upload_cost_factor >= 0.0)) throw ValidationError("upload_cost_factor must be >= 0");
    if (!(traffic_cost_factor >= 0.0)) throw ValidationError("traffic_cost_factor must be >= 0");
    if (link_model.kind == LinkModel::Kind::ErdosRenyi) {
        if (!(link_model.p >= 0.0 && link_model.p <= 1.0))
            throw ValidationError("link model p must lie in [0, 1]");
    } else {
        if (!(link_model.m >= 0.0)) throw ValidationError("link model m must be >= 0");
    }
    if (!(maintenance.rho_std >= 0.0) || !(maintenance.eps_std >= 0.0))
        throw ValidationError("maintenance stddevs must be >= 0");
    if (connectivity.kind == ConnectivityModel::Kind::KNearest &&
        (connectivity.k < 1 || connectivity.k >= n_servers))
        throw ValidationError("k-nearest connectivity needs 1 <= k < n_servers");
    for (const ClassParams* cp : {&class_a, &class_b, &class_c})
        if (!(cp->alpha >= 0.0) || !(cp->beta >= 0.0) || !(cp->gamma >= 0.0))
            throw ValidationError("machine class cost rates must be >= 0");
}

void ChurnConfig::validate() const {
    if (!(link_change_pct >= 0.0 && link_change_pct <= 1.0))
        throw ValidationError("link_change_pct must lie in [0, 1]");
    if (!(vertex_change_pct >= 0.0 && vertex_change_pct <= 1.0))
        throw ValidationError("vertex_change_pct must lie in [0, 1]");
    if (n_slots < 1) throw ValidationError("n_slots must be >= 1");
    if (!(upload_cost_factor >= 0.0)) throw ValidationError("upload_cost_factor must be >= 0");
    if (new_vertex_links < 0) throw ValidationError("new_vertex_links must be >= 0");
    if (insert_retry_cap < 1) throw ValidationError("insert_retry_cap must be >= 1");
}

std::vector<std::array<double, 2>> kmeans_pivots(
    const std::vector<std::array<double, 2>>& points, int k, uint64_t seed) {
    const size_t n = points.size();
    if (k < 1) throw ValidationError("kmeans k must be positive");
    if (static_cast<size_t>(k) > n) throw ValidationError("kmeans k exceeds point count");

    Rng rng(seed);
    std::vector<std::array<double, 2>> centroids;
    centroids.reserve(k);
    for (size_t idx : rng.sample_indices(n, static_cast<size_t>(k)))
        centroids.push_back(points[idx]);

    std::vector<int> owner(n, 0);
    for (int round = 0; round < 100; ++round) {
        for (size_t p = 0; p < n; ++p) {
            double best = std::numeric_limits<double>::infinity();
            int arg = 0;
            for (int c = 0; c < k; ++c) {
                const double d = dist2d(points[p], centroids[c]);
                if (d < best) {
                    best = d;
                    arg = c;
                }
            }
            owner[p] = arg;
        }
        std::vector<std::array<double, 2>> sums(k, {0.0, 0.0});
        std::vector<int> counts(k, 0);
        for (size_t p = 0; p < n; ++p) {
            sums[owner[p]][0] += points[p][0];
            sums[owner[p]][1] += points[p][1];
            ++counts[owner[p]];
        }
        double shift = 0.0;
        for (int c = 0; c < k; ++c) {
            std::array<double, 2> next;
            if (counts[c] > 0) {
                next = {sums[c][0] / counts[c], sums[c][1] / counts[c]};
            } else {
                // Reseed an emptied cluster to the point farthest from it.
                size_t far = 0;
                double far_d = -1.0;
                for (size_t p = 0; p < n; ++p) {
                    const double d = dist2d(points[p], centroids[c]);
                    if (d > far_d) {
                        far_d = d;
                        far = p;
                    }
                }
                next = points[far];
            }
            shift = std::max(shift, dist2d(centroids[c], next));
            centroids[c] = next;
        }
        if (shift < 1e-6) break;
    }
    return centroids;
}

Instance synthesize_instance(const SynthesisConfig& cfg) {
    cfg.validate();
    Rng root(cfg.seed);

    auto coord_rng = root.child("coords");
    std::vector<std::array<double, 2>> pts(cfg.n_vertices);
    for (auto& p : pts) {
        p[0] = coord_rng.unit();
        p[1] = coord_rng.unit();
    }

    auto link_rng = root.child("links");
    std::vector<Link> links =
        cfg.link_model.kind == LinkModel::Kind::ErdosRenyi
            ? erdos_renyi_links(cfg.n_vertices, cfg.link_model.p, link_rng)
            : preferential_attachment_links(cfg.n_vertices, cfg.link_model.m, link_rng);

    const auto pivots = kmeans_pivots(pts, cfg.n_servers, cfg.seed);

    // Class counts split into (near-)thirds, remainder to A then B.
    const int ns = cfg.n_servers;
    const int third = ns / 3;
    const int rem = ns % 3;
    const int n_a = third + (rem > 0 ? 1 : 0);
    const int n_b = third + (rem > 1 ? 1 : 0);

    auto maint_rng = root.child("maintenance");
    std::vector<EdgeServer> servers(ns);
    for (int i = 0; i < ns; ++i) {
        EdgeServer& s = servers[i];
        s.id = i;
        s.coords = pivots[i];
        s.machine_class = i < n_a ? MachineClass::A : (i < n_a + n_b ? MachineClass::B : MachineClass::C);
        const ClassParams cp = params_for(cfg, s.machine_class);
        s.alpha = cp.alpha;
        s.beta = cp.beta;
        s.gamma = cp.gamma;
        s.rho = std::max(0.0, maint_rng.normal(cfg.maintenance.rho_mean, cfg.maintenance.rho_std));
        s.epsilon = std::max(0.0, maint_rng.normal(cfg.maintenance.eps_mean, cfg.maintenance.eps_std));
    }

    std::vector<std::vector<double>> traffic(ns, std::vector<double>(ns, 0.0));
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < ns; ++j)
            if (i != j) traffic[i][j] = cfg.traffic_cost_factor * dist2d(pivots[i], pivots[j]);

    EdgeNetwork network;
    if (cfg.connectivity.kind == ConnectivityModel::Kind::FullMesh) {
        network = EdgeNetwork::full_mesh(std::move(servers), std::move(traffic));
    } else {
        const int k = std::min(cfg.connectivity.k, ns - 1);
        std::vector<std::vector<uint8_t>> conn(ns, std::vector<uint8_t>(ns, 0));
        std::vector<std::pair<double, int>> order;
        for (int i = 0; i < ns; ++i) {
            order.clear();
            for (int j = 0; j < ns; ++j)
                if (j != i) order.emplace_back(dist2d(pivots[i], pivots[j]), j);
            std::sort(order.begin(), order.end());
            for (int t = 0; t < k; ++t) {
                conn[i][order[t].second] = 1;
                conn[order[t].second][i] = 1;  // symmetrized by union
            }
        }
        for (int i = 0; i < ns; ++i) conn[i][i] = 1;
        network = EdgeNetwork(std::move(servers), std::move(conn), std::move(traffic));
    }

    DataGraph graph = DataGraph::from_links(cfg.n_vertices, links);
    for (VertexId v = 0; v < cfg.n_vertices; ++v) graph.set_coords(v, pts[v]);

    std::vector<std::vector<double>> upload(cfg.n_vertices, std::vector<double>(ns, 0.0));
    for (VertexId v = 0; v < cfg.n_vertices; ++v)
        for (int i = 0; i < ns; ++i)
            upload[v][i] = cfg.upload_cost_factor * dist2d(pts[v], pivots[i]);

    Instance inst{std::move(network), std::move(graph), GnnModelSpec{cfg.layer_dims},
                  std::move(upload)};
    inst.validate();
    return inst;
}

namespace {

int draw_event_count(Rng& rng, double pct, int base) {
    const double mean = pct * static_cast<double>(base);
    if (mean <= 0.0) return 0;
    const double raw = rng.normal(mean, mean / 2.0);
    return std::max(0, static_cast<int>(std::llround(raw)));
}

}  // namespace

std::vector<SlotTrace> generate_trace(const Instance& inst, const ChurnConfig& churn) {
    churn.validate();
    inst.validate();

    Rng root(churn.seed);
    auto count_rng = root.child("counts");
    auto mix_rng = root.child("mix");
    auto ev_rng = root.child("events");

    DataGraph working = inst.graph;
    const auto& servers = inst.network.servers();

    std::vector<SlotTrace> trace;
    trace.reserve(churn.n_slots);
    for (int slot = 1; slot <= churn.n_slots; ++slot) {
        SlotTrace st;
        st.slot = slot;

        const int n_link_events = draw_event_count(count_rng, churn.link_change_pct, working.link_count());
        const int n_vertex_events =
            draw_event_count(count_rng, churn.vertex_change_pct, working.vertex_count());

        int link_ins = 0;
        for (int e = 0; e < n_link_events; ++e)
            if (mix_rng.coin()) ++link_ins;
        const int link_del = n_link_events - link_ins;
        int vert_ins = 0;
        for (int e = 0; e < n_vertex_events; ++e)
            if (mix_rng.coin()) ++vert_ins;
        const int vert_del = n_vertex_events - vert_ins;

        // Insertions first, deletions last.
        std::vector<VertexId> present = working.vertices();
        for (int e = 0; e < vert_ins; ++e) {
            VertexInsert ins;
            ins.vertex = working.capacity();
            ins.coords = {ev_rng.unit(), ev_rng.unit()};
            ins.upload_row.resize(servers.size());
            for (size_t i = 0; i < servers.size(); ++i)
                ins.upload_row[i] = churn.upload_cost_factor * dist2d(ins.coords, servers[i].coords);
            const size_t want = std::min<size_t>(churn.new_vertex_links, present.size());
            for (size_t idx : ev_rng.sample_indices(present.size(), want))
                ins.links.push_back(present[idx]);
            std::sort(ins.links.begin(), ins.links.end());

            working.insert_vertex(ins.vertex);
            working.set_coords(ins.vertex, ins.coords);
            for (VertexId u : ins.links) working.insert_link(u, ins.vertex);
            present.push_back(ins.vertex);
            st.events.emplace_back(std::move(ins));
        }

        for (int e = 0; e < link_ins; ++e) {
            if (present.size() < 2) break;
            for (int attempt = 0; attempt < churn.insert_retry_cap; ++attempt) {
                const VertexId u = present[ev_rng.below(present.size())];
                const VertexId v = present[ev_rng.below(present.size())];
                if (u == v || working.has_link(u, v)) continue;
                working.insert_link(u, v);
                st.events.emplace_back(LinkInsert{std::min(u, v), std::max(u, v)});
                break;
            }
        }

        {
            const std::vector<Link> live = working.links();
            const size_t want = std::min<size_t>(link_del, live.size());
            auto picks = ev_rng.sample_indices(live.size(), want);
            std::sort(picks.begin(), picks.end());
            for (size_t idx : picks) {
                working.remove_link(live[idx].u, live[idx].v);
                st.events.emplace_back(LinkDelete{live[idx].u, live[idx].v});
            }
        }

        {
            const std::vector<VertexId> live = working.vertices();
            const size_t want = std::min<size_t>(vert_del, live.size());
            auto picks = ev_rng.sample_indices(live.size(), want);
            std::sort(picks.begin(), picks.end());
            for (size_t idx : picks) {
                working.remove_vertex(live[idx]);
                st.events.emplace_back(VertexDelete{live[idx]});
            }
        }

        trace.push_back(std::move(st));
    }
    return trace;
}

DataGraph load_graph_stream(std::istream& edge_list, std::istream* coords) {
    std::vector<std::pair<long long, long long>> raw_links;
    std::string line;
    long line_no = 0;
    while (std::getline(edge_list, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        long long a = 0, b = 0;
        if (!(ls >> a)) continue;  // blank or comment-only line
        if (!(ls >> b)) throw ParseError("edge list line has a single endpoint", line_no);
        long long extra;
        if (ls >> extra) throw ParseError("edge list line has more than two fields", line_no);
        if (a < 0 || b < 0) throw ParseError("vertex ids must be non-negative", line_no);
        if (a == b) throw ParseError("self loop", line_no);
        raw_links.emplace_back(a, b);
    }

    // Dense ids by ascending raw id.
    std::vector<long long> ids;
    ids.reserve(raw_links.size() * 2);
    for (const auto& [a, b] : raw_links) {
        ids.push_back(a);
        ids.push_back(b);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    auto dense = [&ids](long long raw) {
        return static_cast<VertexId>(std::lower_bound(ids.begin(), ids.end(), raw) - ids.begin());
    };

    std::vector<Link> links;
    links.reserve(raw_links.size());
    for (const auto& [a, b] : raw_links) {
        const VertexId u = dense(a), v = dense(b);
        links.push_back({std::min(u, v), std::max(u, v)});
    }
    std::sort(links.begin(), links.end(), [](const Link& x, const Link& y) {
        return x.u != y.u ? x.u < y.u : x.v < y.v;
    });
    links.erase(std::unique(links.begin(), links.end()), links.end());

    DataGraph graph = DataGraph::from_links(static_cast<VertexId>(ids.size()), links);
    for (size_t i = 0; i < ids.size(); ++i)
        graph.set_external_id(static_cast<VertexId>(i), std::to_string(ids[i]));

    if (coords != nullptr) {
        long cline = 0;
        while (std::getline(*coords, line)) {
            ++cline;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.resize(hash);
            if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
            std::replace(line.begin(), line.end(), ',', ' ');
            std::istringstream ls(line);
            long long raw = 0;
            double x = 0.0, y = 0.0;
            if (!(ls >> raw >> x >> y)) throw ParseError("coords line must be id,x,y", cline);
            const auto it = std::lower_bound(ids.begin(), ids.end(), raw);
            if (it == ids.end() || *it != raw)
                throw ParseError("coords reference unknown vertex id " + std::to_string(raw), cline);
            graph.set_coords(static_cast<VertexId>(it - ids.begin()), {x, y});
        }
    }
    return graph;
}

DataGraph load_graph(const std::string& edge_list_path,
                     const std::optional<std::string>& coords_path) {
    std::ifstream in(edge_list_path);
    if (!in) throw ParseError("cannot open " + edge_list_path, 0);
    if (coords_path) {
        std::ifstream cin_(*coords_path);
        if (!cin_) throw ParseError("cannot open " + *coords_path, 0);
        return load_graph_stream(in, &cin_);
    }
    return load_graph_stream(in, nullptr);
}

}  // namespace glad
