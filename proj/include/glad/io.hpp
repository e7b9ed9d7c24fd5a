#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "glad/cost.hpp"
#include "glad/glad_dynamic.hpp"
#include "glad/glad_static.hpp"
#include "glad/model.hpp"

namespace glad {

// Instance files are self-describing JSON with sections `servers`,
// `connectivity`, `traffic` (null = unreachable), `vertices`, `links`,
// `layer_dims`, `upload_cost` (rows aligned with `vertices`). An optional
// `provenance` object records the generating seed and config hash.
nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);

// Layout files are a JSON map from vertex id to server id.
nlohmann::json layout_to_json(const GraphLayout& layout, const Instance& inst);
GraphLayout layout_from_json(const nlohmann::json& j);

// Trace files are a JSON list of slots, each with an ordered event array of
// {"kind": "link_insert", "u": ..., "v": ...} style records.
nlohmann::json trace_to_json(const std::vector<SlotTrace>& trace);
std::vector<SlotTrace> trace_from_json(const nlohmann::json& j);

// File helpers; loaders rethrow JSON failures as ParseError.
void save_json(const nlohmann::json& j, const std::string& path);
nlohmann::json load_json(const std::string& path);

Instance load_instance(const std::string& path);
GraphLayout load_layout(const std::string& path);
std::vector<SlotTrace> load_trace(const std::string& path);

// CSV emitters. Numeric columns use max_digits10 so files round-trip.
std::string csv_double(double x);

constexpr const char* kBreakdownCsvHeader = "instance,layout,c_u,c_p,c_t,c_m,total";
std::string breakdown_csv_row(const std::string& instance_id, const std::string& layout_id,
                              const CostBreakdown& cost);

void write_iteration_csv(std::ostream& out, const IterationLog& log);
void write_timeline_csv(std::ostream& out, const TimelineReport& report);

// Run manifest: command name, master seed, effective config, output files.
nlohmann::json make_manifest(const std::string& command, uint64_t seed,
                             const nlohmann::json& config,
                             const std::vector<std::string>& outputs);

}  // namespace glad
