#include "glad/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace glad {

const char* to_string(MachineClass c) {
    switch (c) {
        case MachineClass::A: return "A";
        case MachineClass::B: return "B";
        case MachineClass::C: return "C";
    }
    return "?";
}

MachineClass machine_class_from_string(const std::string& s) {
    if (s == "A") return MachineClass::A;
    if (s == "B") return MachineClass::B;
    if (s == "C") return MachineClass::C;
    throw ValidationError("unknown machine class '" + s + "'");
}

// ---------------------------------------------------------------- EdgeNetwork

EdgeNetwork::EdgeNetwork(std::vector<EdgeServer> servers,
                         std::vector<std::vector<uint8_t>> connectivity,
                         std::vector<std::vector<double>> traffic)
    : servers_(std::move(servers)) {
    const size_t n = servers_.size();
    if (n == 0) throw ValidationError("edge network needs at least one server");
    if (connectivity.size() != n || traffic.size() != n)
        throw ValidationError("connectivity/traffic matrices must be |D| x |D|");
    for (size_t i = 0; i < n; ++i) {
        if (connectivity[i].size() != n || traffic[i].size() != n)
            throw ValidationError("connectivity/traffic matrices must be square");
        servers_[i].id = static_cast<ServerId>(i);
    }
    connected_.assign(n * n, 0);
    traffic_.assign(n * n, std::numeric_limits<double>::quiet_NaN());
    for (size_t i = 0; i < n; ++i) {
        connected_[i * n + i] = 1;
        traffic_[i * n + i] = 0.0;
        for (size_t j = i + 1; j < n; ++j) {
            if ((connectivity[i][j] != 0) != (connectivity[j][i] != 0))
                throw ValidationError("connectivity matrix is not symmetric");
            if (!connectivity[i][j]) continue;
            const double t = traffic[i][j];
            if (!(t == traffic[j][i]))
                throw ValidationError("traffic matrix is not symmetric");
            if (!std::isfinite(t) || t < 0.0)
                throw ValidationError("traffic costs must be finite and >= 0");
            connected_[i * n + j] = connected_[j * n + i] = 1;
            traffic_[i * n + j] = traffic_[j * n + i] = t;
            connected_pairs_.emplace_back(static_cast<ServerId>(i), static_cast<ServerId>(j));
        }
    }
    for (size_t i = 0; i < n; ++i) {
        if (traffic[i][i] != 0.0)
            throw ValidationError("traffic diagonal must be zero");
    }
}

EdgeNetwork EdgeNetwork::full_mesh(std::vector<EdgeServer> servers,
                                   std::vector<std::vector<double>> traffic) {
    const size_t n = servers.size();
    std::vector<std::vector<uint8_t>> all(n, std::vector<uint8_t>(n, 1));
    return EdgeNetwork(std::move(servers), std::move(all), std::move(traffic));
}

void EdgeNetwork::check_server_id(ServerId i) const {
    if (i < 0 || i >= size())
        throw ValidationError("unknown server id " + std::to_string(i));
}

const EdgeServer& EdgeNetwork::server(ServerId i) const {
    check_server_id(i);
    return servers_[i];
}

bool EdgeNetwork::connected(ServerId i, ServerId j) const {
    check_server_id(i);
    check_server_id(j);
    return connected_[static_cast<size_t>(i) * servers_.size() + j] != 0;
}

std::optional<double> EdgeNetwork::traffic_unit_cost(ServerId i, ServerId j) const {
    if (!connected(i, j)) return std::nullopt;
    return traffic_[static_cast<size_t>(i) * servers_.size() + j];
}

// ------------------------------------------------------------------ DataGraph

DataGraph DataGraph::from_links(VertexId n_vertices, const std::vector<Link>& links) {
    if (n_vertices < 0) throw ValidationError("vertex count must be >= 0");
    DataGraph g;
    g.present_.assign(n_vertices, 1);
    g.adj_.assign(n_vertices, {});
    g.coords_.assign(n_vertices, {std::numeric_limits<double>::quiet_NaN(),
                                  std::numeric_limits<double>::quiet_NaN()});
    g.ext_ids_.assign(n_vertices, {});
    g.n_present_ = n_vertices;
    for (const Link& l : links) g.insert_link(l.u, l.v);
    return g;
}

void DataGraph::check_present(VertexId v) const {
    if (!has_vertex(v))
        throw ValidationError("vertex " + std::to_string(v) + " is not present");
}

bool DataGraph::has_vertex(VertexId v) const {
    return v >= 0 && v < capacity() && present_[v] != 0;
}

bool DataGraph::has_link(VertexId u, VertexId v) const {
    if (!has_vertex(u) || !has_vertex(v)) return false;
    const auto& nb = adj_[u];
    return std::binary_search(nb.begin(), nb.end(), v);
}

const std::vector<VertexId>& DataGraph::neighbors(VertexId v) const {
    check_present(v);
    return adj_[v];
}

int DataGraph::degree(VertexId v) const {
    check_present(v);
    return static_cast<int>(adj_[v].size());
}

std::vector<VertexId> DataGraph::vertices() const {
    std::vector<VertexId> out;
    out.reserve(n_present_);
    for (VertexId v = 0; v < capacity(); ++v)
        if (present_[v]) out.push_back(v);
    return out;
}

std::vector<Link> DataGraph::links() const {
    std::vector<Link> out;
    out.reserve(n_links_);
    for (VertexId u = 0; u < capacity(); ++u) {
        if (!present_[u]) continue;
        for (VertexId v : adj_[u])
            if (v > u) out.push_back({u, v});
    }
    return out;
}

std::optional<std::array<double, 2>> DataGraph::coords(VertexId v) const {
    check_present(v);
    const auto& c = coords_[v];
    if (std::isnan(c[0]) || std::isnan(c[1])) return std::nullopt;
    return c;
}

void DataGraph::set_coords(VertexId v, std::array<double, 2> xy) {
    check_present(v);
    coords_[v] = xy;
}

std::string DataGraph::external_id(VertexId v) const {
    check_present(v);
    return ext_ids_[v].empty() ? std::to_string(v) : ext_ids_[v];
}

void DataGraph::set_external_id(VertexId v, std::string ext) {
    check_present(v);
    ext_ids_[v] = std::move(ext);
}

void DataGraph::insert_vertex(VertexId v) {
    if (v < 0) throw ValidationError("vertex ids must be >= 0");
    if (v < capacity() && present_[v])
        throw ValidationError("vertex " + std::to_string(v) + " already present");
    if (v >= capacity()) {
        present_.resize(v + 1, 0);
        adj_.resize(v + 1);
        coords_.resize(v + 1, {std::numeric_limits<double>::quiet_NaN(),
                               std::numeric_limits<double>::quiet_NaN()});
        ext_ids_.resize(v + 1);
    }
    present_[v] = 1;
    coords_[v] = {std::numeric_limits<double>::quiet_NaN(),
                  std::numeric_limits<double>::quiet_NaN()};
    ext_ids_[v].clear();
    ++n_present_;
}

void DataGraph::remove_vertex(VertexId v) {
    check_present(v);
    for (VertexId u : adj_[v]) {
        auto& nb = adj_[u];
        nb.erase(std::lower_bound(nb.begin(), nb.end(), v));
        --n_links_;
    }
    adj_[v].clear();
    present_[v] = 0;
    --n_present_;
}

void DataGraph::insert_link(VertexId u, VertexId v) {
    if (u == v)
        throw ValidationError("self loop on vertex " + std::to_string(u));
    check_present(u);
    check_present(v);
    auto& nu = adj_[u];
    auto it = std::lower_bound(nu.begin(), nu.end(), v);
    if (it != nu.end() && *it == v)
        throw ValidationError("duplicate link {" + std::to_string(u) + ", " +
                              std::to_string(v) + "}");
    nu.insert(it, v);
    auto& nv = adj_[v];
    nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
    ++n_links_;
}

void DataGraph::remove_link(VertexId u, VertexId v) {
    check_present(u);
    check_present(v);
    auto& nu = adj_[u];
    auto it = std::lower_bound(nu.begin(), nu.end(), v);
    if (it == nu.end() || *it != v)
        throw ValidationError("missing link {" + std::to_string(u) + ", " +
                              std::to_string(v) + "}");
    nu.erase(it);
    auto& nv = adj_[v];
    nv.erase(std::lower_bound(nv.begin(), nv.end(), u));
    --n_links_;
}

// -------------------------------------------------------------- GnnModelSpec

void GnnModelSpec::validate() const {
    if (layer_dims.size() < 2)
        throw ValidationError("model needs at least input and output dimensions");
    for (int d : layer_dims)
        if (d <= 0) throw ValidationError("layer dimensions must be positive");
}

// ------------------------------------------------------------------- Instance

void Instance::validate() const {
    model.validate();
    const int d = network.size();
    if (static_cast<int>(upload_cost.size()) < graph.capacity())
        throw ValidationError("upload cost matrix has too few rows");
    for (VertexId v = 0; v < graph.capacity(); ++v) {
        if (!graph.has_vertex(v)) continue;
        if (static_cast<int>(upload_cost[v].size()) != d)
            throw ValidationError("upload cost row " + std::to_string(v) +
                                  " must have one entry per server");
        for (double c : upload_cost[v])
            if (!std::isfinite(c) || c < 0.0)
                throw ValidationError("upload costs must be finite and >= 0");
    }
}

// ----------------------------------------------------------- layout utilities

LayoutValidation validate_layout(const GraphLayout& layout, const Instance& inst) {
    LayoutValidation out;
    const int d = inst.network.size();
    for (VertexId v = 0; v < inst.graph.capacity(); ++v) {
        if (!inst.graph.has_vertex(v)) continue;
        if (!layout.assigned(v)) {
            out.issues.push_back({LayoutIssue::Kind::MissingVertex, v, -1});
        } else if (ServerId s = layout.server_of(v); s < 0 || s >= d) {
            out.issues.push_back({LayoutIssue::Kind::UnknownServer, v, s});
        }
    }
    out.ok = out.issues.empty();
    return out;
}

std::vector<VertexId> resident_vertices(const GraphLayout& layout, ServerId server,
                                        const Instance& inst) {
    if (server < 0 || server >= inst.network.size())
        throw ValidationError("unknown server id " + std::to_string(server));
    std::vector<VertexId> out;
    for (VertexId v = 0; v < inst.graph.capacity(); ++v)
        if (inst.graph.has_vertex(v) && layout.server_of(v) == server) out.push_back(v);
    return out;
}

std::vector<CrossLink> cross_links(const GraphLayout& layout, const DataGraph& graph) {
    std::vector<CrossLink> out;
    for (const Link& l : graph.links()) {
        const ServerId a = layout.server_of(l.u);
        const ServerId b = layout.server_of(l.v);
        if (a != b) out.push_back({l, a, b});
    }
    return out;
}

}  // namespace glad
