#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "glad/glad_dynamic.hpp"
#include "glad/model.hpp"

namespace glad {

struct ClassParams {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
};

struct LinkModel {
    enum class Kind { ErdosRenyi, PreferentialAttachment };
    Kind kind = Kind::PreferentialAttachment;
    double p = 0.0;  // ErdosRenyi
    double m = 2.0;  // PreferentialAttachment; fractional parts attach probabilistically
};

struct ConnectivityModel {
    enum class Kind { FullMesh, KNearest };
    Kind kind = Kind::FullMesh;
    int k = 0;  // KNearest
};

struct MaintenanceModel {
    double rho_mean = 0.5;
    double rho_std = 0.2;
    double eps_mean = 5.0;
    double eps_std = 2.0;
};

struct SynthesisConfig {
    int n_vertices = 0;
    int n_servers = 0;
    LinkModel link_model;
    std::vector<int> layer_dims{52, 16, 2};
    double upload_cost_factor = 1.0;
    double traffic_cost_factor = 2.0;
    // Machine classes in descending cost per element: A weak, B mid, C strong.
    ClassParams class_a{1.8e-3, 2.2e-3, 1.5e-3};
    ClassParams class_b{1.1e-3, 1.3e-3, 0.9e-3};
    ClassParams class_c{5.0e-4, 6.0e-4, 4.0e-4};
    MaintenanceModel maintenance;
    ConnectivityModel connectivity;
    uint64_t seed = 1;

    void validate() const;
};

struct ChurnConfig {
    double link_change_pct = 0.01;
    double vertex_change_pct = 0.0;
    int n_slots = 200;
    uint64_t seed = 1;
    // Parameters for synthesized vertex-insertion events.
    double upload_cost_factor = 1.0;
    int new_vertex_links = 1;
    int insert_retry_cap = 32;

    void validate() const;
};

// Lloyd's iterations from a seeded sample of k distinct points; converges on
// max centroid shift < 1e-6 or 100 rounds. An emptied cluster is reseeded to
// the point farthest from its current centroid.
std::vector<std::array<double, 2>> kmeans_pivots(
    const std::vector<std::array<double, 2>>& points, int k, uint64_t seed);

// Full synthetic problem: vertices uniform in the unit square, servers at
// k-means pivots of the vertex cloud, machine classes split evenly with the
// remainder going A then B, upload/traffic costs proportional to distance,
// maintenance costs Gaussian clamped at zero.
Instance synthesize_instance(const SynthesisConfig& cfg);

// Churn trace against an instance. Per slot the event count is drawn from
// Normal(pct * current_size, half that) clamped at zero; each event is an
// insertion or deletion with equal probability, applied against a working
// copy so the trace replays cleanly. Within a slot insertions come first.
std::vector<SlotTrace> generate_trace(const Instance& inst, const ChurnConfig& churn);

// Edge-list file: one "u v" pair per line, '#' starts a comment, blank lines
// ignored; duplicate links collapse, self loops are an error (with line
// number). Ids may be arbitrary non-negative integers; they are remapped to
// dense 0-based ids in ascending order of the original id, which is kept as
// the external id. The optional coords file is CSV "id,x,y".
DataGraph load_graph(const std::string& edge_list_path,
                     const std::optional<std::string>& coords_path = std::nullopt);

DataGraph load_graph_stream(std::istream& edge_list, std::istream* coords);

}  // namespace glad
