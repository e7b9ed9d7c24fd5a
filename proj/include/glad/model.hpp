#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "glad/errors.hpp"

namespace glad {

using VertexId = int32_t;
using ServerId = int32_t;

enum class MachineClass : uint8_t { A, B, C };

const char* to_string(MachineClass c);
MachineClass machine_class_from_string(const std::string& s);

struct EdgeServer {
    ServerId id = 0;
    std::array<double, 2> coords{0.0, 0.0};
    MachineClass machine_class = MachineClass::A;
    double alpha = 0.0;    // cost per aggregated element
    double beta = 0.0;     // cost per multiply in the dense transform
    double gamma = 0.0;    // cost per activation element
    double rho = 0.0;      // maintenance cost per resident vertex
    double epsilon = 0.0;  // one-shot maintenance cost
};

// Edge servers plus pairwise connectivity and unit traffic costs.
// Unreachable pairs carry no traffic value at all (absent entry), so nothing
// downstream can mistake them for an expensive-but-payable route.
class EdgeNetwork {
public:
    EdgeNetwork() = default;
    // connectivity/traffic are square matrices over server ids; traffic
    // entries for unconnected pairs are ignored. Diagonals are forced to
    // connected/zero. Throws ValidationError on asymmetry or bad values.
    EdgeNetwork(std::vector<EdgeServer> servers,
                std::vector<std::vector<uint8_t>> connectivity,
                std::vector<std::vector<double>> traffic);

    static EdgeNetwork full_mesh(std::vector<EdgeServer> servers,
                                 std::vector<std::vector<double>> traffic);

    int size() const { return static_cast<int>(servers_.size()); }
    const EdgeServer& server(ServerId i) const;
    const std::vector<EdgeServer>& servers() const { return servers_; }

    bool connected(ServerId i, ServerId j) const;
    // Unit traffic cost tau_ij; nullopt when the pair is unreachable.
    std::optional<double> traffic_unit_cost(ServerId i, ServerId j) const;

    // All pairs (i, j), i < j, with a connection; lexicographic order.
    const std::vector<std::pair<ServerId, ServerId>>& connected_pairs() const {
        return connected_pairs_;
    }

private:
    void check_server_id(ServerId i) const;
    std::vector<EdgeServer> servers_;
    std::vector<uint8_t> connected_;  // n*n, row major
    std::vector<double> traffic_;     // n*n, valid only where connected_
    std::vector<std::pair<ServerId, ServerId>> connected_pairs_;
};

struct Link {
    VertexId u = 0;
    VertexId v = 0;  // normalized u < v
    friend bool operator==(const Link&, const Link&) = default;
};

// Undirected data graph with dense integer vertex ids. Ids are assigned
// 0-based at load time; evolution may retire ids (they are never reused) and
// append new ones, so "capacity" can exceed the live vertex count.
class DataGraph {
public:
    DataGraph() = default;
    static DataGraph from_links(VertexId n_vertices, const std::vector<Link>& links);

    int capacity() const { return static_cast<int>(present_.size()); }
    int vertex_count() const { return n_present_; }
    int link_count() const { return n_links_; }

    bool has_vertex(VertexId v) const;
    bool has_link(VertexId u, VertexId v) const;

    const std::vector<VertexId>& neighbors(VertexId v) const;  // sorted
    int degree(VertexId v) const;

    std::vector<VertexId> vertices() const;  // present ids, ascending
    std::vector<Link> links() const;         // sorted (u, v), u < v

    std::optional<std::array<double, 2>> coords(VertexId v) const;
    void set_coords(VertexId v, std::array<double, 2> xy);

    // External (file) id for a vertex; defaults to the decimal of the id.
    std::string external_id(VertexId v) const;
    void set_external_id(VertexId v, std::string ext);

    // Mutators used by constructors, the scenario generator and trace
    // application; everything else treats a DataGraph as immutable.
    void insert_vertex(VertexId v);
    void remove_vertex(VertexId v);  // drops incident links
    void insert_link(VertexId u, VertexId v);
    void remove_link(VertexId u, VertexId v);

private:
    void check_present(VertexId v) const;
    std::vector<uint8_t> present_;
    std::vector<std::vector<VertexId>> adj_;
    std::vector<std::array<double, 2>> coords_;  // NaN pair = unknown
    std::vector<std::string> ext_ids_;           // empty string = default
    int n_present_ = 0;
    int n_links_ = 0;
};

struct GnnModelSpec {
    std::vector<int> layer_dims;  // s_0 .. s_K, input first

    int depth() const { return static_cast<int>(layer_dims.size()) - 1; }
    void validate() const;
};

// A deployable problem: the network, the data graph, the model shape and the
// per-vertex per-server upload costs (row per vertex id, column per server).
struct Instance {
    EdgeNetwork network;
    DataGraph graph;
    GnnModelSpec model;
    std::vector<std::vector<double>> upload_cost;

    void validate() const;
};

// Assignment of vertices to servers, indexed by vertex id.
struct GraphLayout {
    static constexpr ServerId kUnassigned = -1;
    std::vector<ServerId> assignment;

    GraphLayout() = default;
    explicit GraphLayout(int capacity) : assignment(capacity, kUnassigned) {}

    bool assigned(VertexId v) const {
        return v >= 0 && v < static_cast<VertexId>(assignment.size()) &&
               assignment[v] != kUnassigned;
    }
    ServerId server_of(VertexId v) const {
        return assigned(v) ? assignment[v] : kUnassigned;
    }
    void assign(VertexId v, ServerId s) {
        if (v >= static_cast<VertexId>(assignment.size()))
            assignment.resize(v + 1, kUnassigned);
        assignment[v] = s;
    }
};

struct LayoutIssue {
    enum class Kind { MissingVertex, UnknownServer } kind;
    VertexId vertex;
    ServerId server;  // meaningful for UnknownServer
};

struct LayoutValidation {
    bool ok = true;
    std::vector<LayoutIssue> issues;
};

// ok iff the layout assigns every present vertex to a valid server id.
LayoutValidation validate_layout(const GraphLayout& layout, const Instance& inst);

// Present vertices assigned to `server`, ascending. Throws ValidationError on
// an unknown server id.
std::vector<VertexId> resident_vertices(const GraphLayout& layout, ServerId server,
                                        const Instance& inst);

struct CrossLink {
    Link link;
    ServerId server_u;
    ServerId server_v;
};

// Links whose endpoints sit on different servers, with the server pair in
// endpoint order; sorted by link.
std::vector<CrossLink> cross_links(const GraphLayout& layout, const DataGraph& graph);

}  // namespace glad
