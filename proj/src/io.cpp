#include "glad/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <utility>

#include "glad/errors.hpp"

namespace glad {

namespace {

using nlohmann::json;

json coords_json(const std::array<double, 2>& c) { return json::array({c[0], c[1]}); }

std::array<double, 2> coords_from(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ParseError("coords must be [x, y]", 0);
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

json instance_to_json(const Instance& inst) {
    json j;
    j["format"] = "glad-instance";
    j["version"] = 1;

    json servers = json::array();
    for (const EdgeServer& s : inst.network.servers()) {
        servers.push_back({{"id", s.id},
                           {"coords", coords_json(s.coords)},
                           {"class", to_string(s.machine_class)},
                           {"alpha", s.alpha},
                           {"beta", s.beta},
                           {"gamma", s.gamma},
                           {"rho", s.rho},
                           {"epsilon", s.epsilon}});
    }
    j["servers"] = std::move(servers);

    const int d = inst.network.size();
    json conn = json::array();
    json traffic = json::array();
    for (int i = 0; i < d; ++i) {
        json crow = json::array();
        json trow = json::array();
        for (int k = 0; k < d; ++k) {
            const bool c = inst.network.connected(i, k);
            crow.push_back(c ? 1 : 0);
            if (i == k) {
                trow.push_back(0.0);
            } else if (auto tau = inst.network.traffic_unit_cost(i, k)) {
                trow.push_back(*tau);
            } else {
                trow.push_back(nullptr);
            }
        }
        conn.push_back(std::move(crow));
        traffic.push_back(std::move(trow));
    }
    j["connectivity"] = std::move(conn);
    j["traffic"] = std::move(traffic);

    json vertices = json::array();
    json upload = json::array();
    for (VertexId v : inst.graph.vertices()) {
        json jv{{"id", v}};
        const std::string ext = inst.graph.external_id(v);
        if (ext != std::to_string(v)) jv["ext"] = ext;
        if (auto c = inst.graph.coords(v)) jv["coords"] = coords_json(*c);
        vertices.push_back(std::move(jv));
        upload.push_back(inst.upload_cost[v]);
    }
    j["vertices"] = std::move(vertices);

    json links = json::array();
    for (const Link& l : inst.graph.links()) links.push_back(json::array({l.u, l.v}));
    j["links"] = std::move(links);

    j["layer_dims"] = inst.model.layer_dims;
    j["upload_cost"] = std::move(upload);
    return j;
}

Instance instance_from_json(const json& j) {
    if (j.value("format", "") != std::string("glad-instance"))
        throw ParseError("not a glad-instance document", 0);

    std::vector<EdgeServer> servers;
    for (const json& js : j.at("servers")) {
        EdgeServer s;
        s.id = js.at("id").get<ServerId>();
        if (js.contains("coords")) s.coords = coords_from(js.at("coords"));
        s.machine_class = machine_class_from_string(js.value("class", "A"));
        s.alpha = js.at("alpha").get<double>();
        s.beta = js.at("beta").get<double>();
        s.gamma = js.at("gamma").get<double>();
        s.rho = js.at("rho").get<double>();
        s.epsilon = js.at("epsilon").get<double>();
        servers.push_back(s);
    }
    const int d = static_cast<int>(servers.size());
    for (int i = 0; i < d; ++i)
        if (servers[i].id != i) throw ParseError("server ids must be 0..n-1 in order", 0);

    const json& jconn = j.at("connectivity");
    const json& jtraffic = j.at("traffic");
    if (static_cast<int>(jconn.size()) != d || static_cast<int>(jtraffic.size()) != d)
        throw ParseError("connectivity/traffic must be square over servers", 0);
    std::vector<std::vector<uint8_t>> conn(d, std::vector<uint8_t>(d, 0));
    std::vector<std::vector<double>> traffic(d, std::vector<double>(d, 0.0));
    for (int i = 0; i < d; ++i) {
        if (static_cast<int>(jconn[i].size()) != d || static_cast<int>(jtraffic[i].size()) != d)
            throw ParseError("connectivity/traffic must be square over servers", 0);
        for (int k = 0; k < d; ++k) {
            conn[i][k] = jconn[i][k].get<int>() != 0 ? 1 : 0;
            if (!jtraffic[i][k].is_null()) traffic[i][k] = jtraffic[i][k].get<double>();
        }
    }

    std::vector<VertexId> present;
    for (const json& jv : j.at("vertices")) present.push_back(jv.at("id").get<VertexId>());
    const VertexId capacity =
        present.empty() ? 0 : *std::max_element(present.begin(), present.end()) + 1;

    std::vector<Link> links;
    for (const json& jl : j.at("links")) {
        if (!jl.is_array() || jl.size() != 2) throw ParseError("links must be [u, v] pairs", 0);
        const VertexId u = jl[0].get<VertexId>();
        const VertexId v = jl[1].get<VertexId>();
        links.push_back({std::min(u, v), std::max(u, v)});
    }

    DataGraph graph = DataGraph::from_links(capacity, links);
    {
        std::vector<uint8_t> listed(capacity, 0);
        for (VertexId v : present) {
            if (v < 0 || v >= capacity || listed[v])
                throw ParseError("vertex ids must be unique and non-negative", 0);
            listed[v] = 1;
        }
        for (VertexId v = 0; v < capacity; ++v)
            if (!listed[v]) graph.remove_vertex(v);
    }

    std::vector<std::vector<double>> upload(capacity, std::vector<double>(d, 0.0));
    const json& jup = j.at("upload_cost");
    if (jup.size() != j.at("vertices").size())
        throw ParseError("upload_cost must have one row per vertex", 0);
    for (size_t k = 0; k < present.size(); ++k) {
        const json& jv = j.at("vertices")[k];
        if (jv.contains("ext")) graph.set_external_id(present[k], jv.at("ext").get<std::string>());
        if (jv.contains("coords")) graph.set_coords(present[k], coords_from(jv.at("coords")));
        upload[present[k]] = jup[k].get<std::vector<double>>();
    }

    Instance inst{EdgeNetwork(std::move(servers), std::move(conn), std::move(traffic)),
                  std::move(graph), GnnModelSpec{j.at("layer_dims").get<std::vector<int>>()},
                  std::move(upload)};
    inst.validate();
    return inst;
}

json layout_to_json(const GraphLayout& layout, const Instance& inst) {
    json j = json::object();
    for (VertexId v : inst.graph.vertices()) j[std::to_string(v)] = layout.server_of(v);
    return j;
}

GraphLayout layout_from_json(const json& j) {
    const json& map = j.contains("assignment") ? j.at("assignment") : j;
    if (!map.is_object()) throw ParseError("layout must be a map from vertex id to server id", 0);
    GraphLayout layout;
    for (const auto& [key, val] : map.items()) {
        long v = -1;
        size_t pos = 0;
        try {
            v = std::stol(key, &pos);
        } catch (const std::exception&) {
            throw ParseError("bad vertex id key '" + key + "'", 0);
        }
        if (pos != key.size() || v < 0) throw ParseError("bad vertex id key '" + key + "'", 0);
        layout.assign(static_cast<VertexId>(v), val.get<ServerId>());
    }
    return layout;
}

json trace_to_json(const std::vector<SlotTrace>& trace) {
    json slots = json::array();
    for (const SlotTrace& st : trace) {
        json events = json::array();
        for (const EvolutionEvent& ev : st.events) {
            events.push_back(std::visit(
                [](const auto& e) -> json {
                    using T = std::decay_t<decltype(e)>;
                    if constexpr (std::is_same_v<T, VertexInsert>) {
                        json je{{"kind", "vertex_insert"},
                                {"vertex", e.vertex},
                                {"coords", coords_json(e.coords)},
                                {"upload_row", e.upload_row}};
                        je["links"] = e.links;
                        return je;
                    } else if constexpr (std::is_same_v<T, VertexDelete>) {
                        return json{{"kind", "vertex_delete"}, {"vertex", e.vertex}};
                    } else if constexpr (std::is_same_v<T, LinkInsert>) {
                        return json{{"kind", "link_insert"}, {"u", e.u}, {"v", e.v}};
                    } else {
                        return json{{"kind", "link_delete"}, {"u", e.u}, {"v", e.v}};
                    }
                },
                ev));
        }
        slots.push_back({{"slot", st.slot}, {"events", std::move(events)}});
    }
    return slots;
}

std::vector<SlotTrace> trace_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("trace must be a list of slots", 0);
    std::vector<SlotTrace> trace;
    for (const json& js : j) {
        SlotTrace st;
        st.slot = js.at("slot").get<int>();
        for (const json& je : js.at("events")) {
            const std::string kind = je.at("kind").get<std::string>();
            if (kind == "vertex_insert") {
                VertexInsert e;
                e.vertex = je.at("vertex").get<VertexId>();
                if (je.contains("coords")) e.coords = coords_from(je.at("coords"));
                e.upload_row = je.at("upload_row").get<std::vector<double>>();
                if (je.contains("links")) e.links = je.at("links").get<std::vector<VertexId>>();
                st.events.emplace_back(std::move(e));
            } else if (kind == "vertex_delete") {
                st.events.emplace_back(VertexDelete{je.at("vertex").get<VertexId>()});
            } else if (kind == "link_insert") {
                st.events.emplace_back(
                    LinkInsert{je.at("u").get<VertexId>(), je.at("v").get<VertexId>()});
            } else if (kind == "link_delete") {
                st.events.emplace_back(
                    LinkDelete{je.at("u").get<VertexId>(), je.at("v").get<VertexId>()});
            } else {
                throw ParseError("unknown event kind '" + kind + "'", 0);
            }
        }
        trace.push_back(std::move(st));
    }
    return trace;
}

void save_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path + " for writing", 0);
    out << j.dump(2) << '\n';
    if (!out) throw ParseError("failed writing " + path, 0);
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path, 0);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what(), 0);
    }
}

Instance load_instance(const std::string& path) {
    try {
        return instance_from_json(load_json(path));
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what(), 0);
    }
}

GraphLayout load_layout(const std::string& path) {
    try {
        return layout_from_json(load_json(path));
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what(), 0);
    }
}

std::vector<SlotTrace> load_trace(const std::string& path) {
    try {
        return trace_from_json(load_json(path));
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what(), 0);
    }
}

std::string csv_double(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string breakdown_csv_row(const std::string& instance_id, const std::string& layout_id,
                              const CostBreakdown& cost) {
    return instance_id + "," + layout_id + "," + csv_double(cost.c_u) + "," +
           csv_double(cost.c_p) + "," + csv_double(cost.c_t) + "," + csv_double(cost.c_m) + "," +
           csv_double(cost.total);
}

void write_iteration_csv(std::ostream& out, const IterationLog& log) {
    out << "iteration,pair_i,pair_j,candidate_cost,accepted,best_cost,r\n";
    for (const IterationRecord& rec : log.records) {
        out << rec.iteration << ',' << rec.pair_i << ',' << rec.pair_j << ','
            << csv_double(rec.candidate_cost) << ',' << (rec.accepted ? 1 : 0) << ','
            << csv_double(rec.best_cost) << ',' << rec.r << '\n';
    }
}

void write_timeline_csv(std::ostream& out, const TimelineReport& report) {
    out << "slot,policy,decision,c_u,c_p,c_t,c_m,total,est_drift,migrations,wall_ms\n";
    for (const SlotRecord& row : report.rows) {
        out << row.slot << ',' << row.policy << ',' << row.decision << ','
            << csv_double(row.cost.c_u) << ',' << csv_double(row.cost.c_p) << ','
            << csv_double(row.cost.c_t) << ',' << csv_double(row.cost.c_m) << ','
            << csv_double(row.cost.total) << ',' << csv_double(row.est_drift) << ','
            << row.migrations << ',' << csv_double(row.wall_ms) << '\n';
    }
}

json make_manifest(const std::string& command, uint64_t seed, const json& config,
                   const std::vector<std::string>& outputs) {
    return json{{"format", "glad-manifest"},
                {"version", 1},
                {"command", command},
                {"seed", seed},
                {"config", config},
                {"outputs", outputs}};
}

}  // namespace glad
