// Command-line front end: synthesize instances, optimize layouts, replay
// evolution traces, sweep parameters, validate files.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "glad/baselines.hpp"
#include "glad/cost.hpp"
#include "glad/errors.hpp"
#include "glad/glad_dynamic.hpp"
#include "glad/glad_static.hpp"
#include "glad/io.hpp"
#include "glad/mincut.hpp"
#include "glad/model.hpp"
#include "glad/rng.hpp"
#include "glad/scenario.hpp"

namespace {

using glad::Instance;
using nlohmann::json;

double wall_ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw glad::ParseError("cannot open " + path + " for writing", 0);
    return out;
}

void write_manifest(const std::string& command, uint64_t seed, const json& config,
                    const std::vector<std::string>& outputs, const std::string& primary_out) {
    glad::save_json(glad::make_manifest(command, seed, config, outputs),
                    primary_out + ".manifest.json");
}

std::vector<std::string> split_csv_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(tok);
    }
    return out;
}

// ------------------------------------------------------------------ configs

glad::LinkModel parse_link_model(const json& j) {
    glad::LinkModel lm;
    const std::string kind = j.value("kind", "preferential-attachment");
    if (kind == "erdos-renyi" || kind == "er") {
        lm.kind = glad::LinkModel::Kind::ErdosRenyi;
        lm.p = j.at("p").get<double>();
    } else if (kind == "preferential-attachment" || kind == "pa") {
        lm.kind = glad::LinkModel::Kind::PreferentialAttachment;
        lm.m = j.value("m", 2.0);
    } else {
        throw glad::ValidationError("link_model.kind must be erdos-renyi or preferential-attachment");
    }
    return lm;
}

glad::ConnectivityModel parse_connectivity(const json& j) {
    glad::ConnectivityModel cm;
    const std::string kind = j.value("kind", "full-mesh");
    if (kind == "full-mesh") {
        cm.kind = glad::ConnectivityModel::Kind::FullMesh;
    } else if (kind == "k-nearest") {
        cm.kind = glad::ConnectivityModel::Kind::KNearest;
        cm.k = j.at("k").get<int>();
    } else {
        throw glad::ValidationError("connectivity.kind must be full-mesh or k-nearest");
    }
    return cm;
}

void parse_class_params(const json& j, glad::ClassParams& cp) {
    cp.alpha = j.value("alpha", cp.alpha);
    cp.beta = j.value("beta", cp.beta);
    cp.gamma = j.value("gamma", cp.gamma);
}

glad::SynthesisConfig parse_synthesis_config(const json& j) {
    glad::SynthesisConfig cfg;
    cfg.n_vertices = j.at("n_vertices").get<int>();
    cfg.n_servers = j.at("n_servers").get<int>();
    if (j.contains("link_model")) cfg.link_model = parse_link_model(j.at("link_model"));
    if (j.contains("layer_dims")) cfg.layer_dims = j.at("layer_dims").get<std::vector<int>>();
    cfg.upload_cost_factor = j.value("upload_cost_factor", cfg.upload_cost_factor);
    cfg.traffic_cost_factor = j.value("traffic_cost_factor", cfg.traffic_cost_factor);
    if (j.contains("machine_classes")) {
        const json& mc = j.at("machine_classes");
        if (mc.contains("A")) parse_class_params(mc.at("A"), cfg.class_a);
        if (mc.contains("B")) parse_class_params(mc.at("B"), cfg.class_b);
        if (mc.contains("C")) parse_class_params(mc.at("C"), cfg.class_c);
    }
    if (j.contains("maintenance")) {
        const json& m = j.at("maintenance");
        cfg.maintenance.rho_mean = m.value("rho_mean", cfg.maintenance.rho_mean);
        cfg.maintenance.rho_std = m.value("rho_std", cfg.maintenance.rho_std);
        cfg.maintenance.eps_mean = m.value("eps_mean", cfg.maintenance.eps_mean);
        cfg.maintenance.eps_std = m.value("eps_std", cfg.maintenance.eps_std);
    }
    if (j.contains("connectivity")) cfg.connectivity = parse_connectivity(j.at("connectivity"));
    cfg.seed = j.value("seed", cfg.seed);
    return cfg;
}

glad::ChurnConfig parse_churn_config(const json& j, uint64_t fallback_seed) {
    glad::ChurnConfig churn;
    churn.link_change_pct = j.value("link_change_pct", churn.link_change_pct);
    churn.vertex_change_pct = j.value("vertex_change_pct", churn.vertex_change_pct);
    churn.n_slots = j.value("n_slots", churn.n_slots);
    churn.seed = j.value("seed", fallback_seed);
    churn.upload_cost_factor = j.value("upload_cost_factor", churn.upload_cost_factor);
    churn.new_vertex_links = j.value("new_vertex_links", churn.new_vertex_links);
    churn.insert_retry_cap = j.value("insert_retry_cap", churn.insert_retry_cap);
    return churn;
}

json synthesis_config_to_json(const glad::SynthesisConfig& cfg) {
    json lm;
    if (cfg.link_model.kind == glad::LinkModel::Kind::ErdosRenyi)
        lm = {{"kind", "erdos-renyi"}, {"p", cfg.link_model.p}};
    else
        lm = {{"kind", "preferential-attachment"}, {"m", cfg.link_model.m}};
    json conn;
    if (cfg.connectivity.kind == glad::ConnectivityModel::Kind::FullMesh)
        conn = {{"kind", "full-mesh"}};
    else
        conn = {{"kind", "k-nearest"}, {"k", cfg.connectivity.k}};
    return json{
        {"n_vertices", cfg.n_vertices},
        {"n_servers", cfg.n_servers},
        {"link_model", lm},
        {"layer_dims", cfg.layer_dims},
        {"upload_cost_factor", cfg.upload_cost_factor},
        {"traffic_cost_factor", cfg.traffic_cost_factor},
        {"machine_classes",
         {{"A", {{"alpha", cfg.class_a.alpha}, {"beta", cfg.class_a.beta}, {"gamma", cfg.class_a.gamma}}},
          {"B", {{"alpha", cfg.class_b.alpha}, {"beta", cfg.class_b.beta}, {"gamma", cfg.class_b.gamma}}},
          {"C", {{"alpha", cfg.class_c.alpha}, {"beta", cfg.class_c.beta}, {"gamma", cfg.class_c.gamma}}}}},
        {"maintenance",
         {{"rho_mean", cfg.maintenance.rho_mean},
          {"rho_std", cfg.maintenance.rho_std},
          {"eps_mean", cfg.maintenance.eps_mean},
          {"eps_std", cfg.maintenance.eps_std}}},
        {"connectivity", conn},
        {"seed", cfg.seed}};
}

json churn_config_to_json(const glad::ChurnConfig& c) {
    return json{{"link_change_pct", c.link_change_pct},
                {"vertex_change_pct", c.vertex_change_pct},
                {"n_slots", c.n_slots},
                {"seed", c.seed},
                {"upload_cost_factor", c.upload_cost_factor},
                {"new_vertex_links", c.new_vertex_links},
                {"insert_retry_cap", c.insert_retry_cap}};
}

int parse_r_value(const std::string& s, const glad::EdgeNetwork& network) {
    if (s == "exhaustive") return glad::exhaustive_r(network);
    try {
        size_t pos = 0;
        const int r = std::stoi(s, &pos);
        if (pos != s.size() || r < 1) throw std::invalid_argument(s);
        return r;
    } catch (const std::exception&) {
        throw glad::ValidationError("--R expects a positive integer or 'exhaustive', got '" + s +
                                    "'");
    }
}

glad::TimelinePolicy parse_policy(const std::string& s) {
    if (s == "no-adjustment") return glad::TimelinePolicy::NoAdjustment;
    if (s == "greedy-online") return glad::TimelinePolicy::GreedyOnline;
    if (s == "glad-e-only") return glad::TimelinePolicy::GladEOnly;
    if (s == "adaptive") return glad::TimelinePolicy::Adaptive;
    if (s == "glad-s-only") return glad::TimelinePolicy::GladSOnly;
    throw glad::ValidationError("unknown policy '" + s + "'");
}

glad::InitKind parse_init(const std::string& s) {
    if (s == "random") return glad::InitKind::Random;
    if (s == "upload-first") return glad::InitKind::UploadFirst;
    if (s == "warm") return glad::InitKind::WarmStart;
    throw glad::ValidationError("--init expects random, upload-first or warm");
}

// ------------------------------------------------------------- subcommands

struct SynthArgs {
    std::string config_path;
    std::string out_path;
    std::string trace_out;
    std::optional<uint64_t> seed;
    std::optional<int> n_vertices;
    std::optional<int> n_servers;
};

int run_synth(const SynthArgs& a) {
    json jcfg = json::object();
    if (!a.config_path.empty()) jcfg = glad::load_json(a.config_path);
    if (a.n_vertices) jcfg["n_vertices"] = *a.n_vertices;
    if (a.n_servers) jcfg["n_servers"] = *a.n_servers;
    if (!jcfg.contains("n_vertices") || !jcfg.contains("n_servers"))
        throw glad::ValidationError("synth needs n_vertices and n_servers (config file or flags)");
    if (a.seed) jcfg["seed"] = *a.seed;

    const glad::SynthesisConfig cfg = parse_synthesis_config(jcfg);
    const Instance inst = glad::synthesize_instance(cfg);

    json effective = synthesis_config_to_json(cfg);
    json jinst = glad::instance_to_json(inst);
    jinst["provenance"] = {{"seed", cfg.seed},
                           {"config_hash", glad::fnv1a64(effective.dump())}};
    glad::save_json(jinst, a.out_path);
    std::vector<std::string> outputs{a.out_path};

    if (!a.trace_out.empty()) {
        glad::ChurnConfig churn =
            parse_churn_config(jcfg.value("churn", json::object()), cfg.seed);
        const auto trace = glad::generate_trace(inst, churn);
        glad::save_json(glad::trace_to_json(trace), a.trace_out);
        effective["churn"] = churn_config_to_json(churn);
        outputs.push_back(a.trace_out);
    }
    write_manifest("synth", cfg.seed, effective, outputs, a.out_path);

    std::cout << "instance: " << inst.graph.vertex_count() << " vertices, "
              << inst.graph.link_count() << " links, " << inst.network.size() << " servers -> "
              << a.out_path << "\n";
    return 0;
}

struct OptimizeArgs {
    std::string instance_path;
    std::string algo = "glad-s";
    std::string r_text = "3";
    uint64_t seed = 1;
    std::string init = "random";
    std::string warm_path;
    std::string tie_break = "lowest-index";
    long max_iterations = 0;
    long long max_states = 20'000'000;
    std::string out_path;
    std::string report_path;
    std::string iterations_path;
    std::string dump_aux;  // "i,j"
    std::string dump_aux_out;
};

int run_optimize(const OptimizeArgs& a) {
    const Instance inst = glad::load_instance(a.instance_path);

    glad::GladConfig cfg;
    cfg.r_max = parse_r_value(a.r_text, inst.network);
    cfg.seed = a.seed;
    cfg.init = parse_init(a.init);
    cfg.max_iterations = a.max_iterations;
    if (a.tie_break == "seeded-random")
        cfg.tie_break = glad::PairTieBreak::SeededRandom;
    else if (a.tie_break != "lowest-index")
        throw glad::ValidationError("--tie-break expects lowest-index or seeded-random");
    if (!a.warm_path.empty()) {
        cfg.init = glad::InitKind::WarmStart;
        cfg.warm_start = glad::load_layout(a.warm_path);
    }

    if (!a.dump_aux.empty()) {
        const auto parts = split_csv_list(a.dump_aux);
        if (parts.size() != 2) throw glad::ValidationError("--dump-aux expects 'i,j'");
        if (a.dump_aux_out.empty())
            throw glad::ValidationError("--dump-aux needs --dump-aux-out");
        const auto i = static_cast<glad::ServerId>(std::stoi(parts[0]));
        const auto j = static_cast<glad::ServerId>(std::stoi(parts[1]));
        const glad::GraphLayout start = glad::init_layout(inst, cfg);
        auto dump = open_out(a.dump_aux_out);
        glad::dump_dimacs(glad::build_auxiliary_graph(i, j, start, inst), dump);
    }

    const auto t0 = std::chrono::steady_clock::now();
    glad::GraphLayout layout;
    glad::CostBreakdown cost;
    long iterations = 0;
    if (a.algo == "glad-s") {
        glad::GladResult res = glad::glad_s(inst, cfg);
        layout = std::move(res.layout);
        iterations = static_cast<long>(res.log.records.size());
        cost = glad::total_cost(layout, inst);
        if (!a.iterations_path.empty()) {
            auto out = open_out(a.iterations_path);
            glad::write_iteration_csv(out, res.log);
        }
    } else if (a.algo == "greedy") {
        layout = glad::greedy_layout(inst);
        cost = glad::total_cost(layout, inst);
    } else if (a.algo == "random") {
        layout = glad::random_layout(inst, cfg.seed);
        cost = glad::total_cost(layout, inst);
    } else if (a.algo == "oracle") {
        glad::OracleResult res = glad::brute_force_optimal(inst, a.max_states);
        layout = std::move(res.optimal_layout);
        cost = res.optimal_cost;
        iterations = static_cast<long>(res.states_examined);
    } else {
        throw glad::ValidationError("--algo expects glad-s, greedy, random or oracle");
    }
    const double wall = wall_ms_since(t0);

    glad::save_json(glad::layout_to_json(layout, inst), a.out_path);
    std::vector<std::string> outputs{a.out_path};
    if (!a.report_path.empty()) {
        auto out = open_out(a.report_path);
        out << glad::kBreakdownCsvHeader << '\n'
            << glad::breakdown_csv_row(a.instance_path, a.out_path, cost) << '\n';
        outputs.push_back(a.report_path);
    }
    if (!a.iterations_path.empty()) outputs.push_back(a.iterations_path);

    const json config{{"instance", a.instance_path}, {"algo", a.algo},
                      {"R", a.r_text},               {"seed", a.seed},
                      {"init", a.init},              {"max_iterations", a.max_iterations}};
    write_manifest("optimize", a.seed, config, outputs, a.out_path);

    std::cout << a.algo << ": total " << cost.total << " (c_u=" << cost.c_u
              << ", c_p=" << cost.c_p << ", c_t=" << cost.c_t << ", c_m=" << cost.c_m
              << "), iterations=" << iterations << ", wall_ms=" << wall << "\n";
    return 0;
}

struct EvolveArgs {
    std::string instance_path;
    std::string trace_path;
    std::string policy = "adaptive";
    double theta = 0.0;
    std::string r_text = "3";
    uint64_t seed = 1;
    std::string init = "random";
    std::string out_path;
};

int run_evolve(const EvolveArgs& a) {
    const Instance inst = glad::load_instance(a.instance_path);
    const auto trace = glad::load_trace(a.trace_path);

    glad::TimelineOptions opt;
    opt.policy = parse_policy(a.policy);
    opt.theta = a.theta;
    opt.glad.r_max = parse_r_value(a.r_text, inst.network);
    opt.glad.seed = a.seed;
    opt.glad.init = parse_init(a.init);

    const auto t0 = std::chrono::steady_clock::now();
    const glad::TimelineReport report = glad::run_timeline(inst, trace, opt);
    const double wall = wall_ms_since(t0);

    {
        auto out = open_out(a.out_path);
        glad::write_timeline_csv(out, report);
    }
    long glad_s_count = 0;
    for (const auto& row : report.rows)
        if (row.decision == "glad-s") ++glad_s_count;

    const json config{{"instance", a.instance_path}, {"trace", a.trace_path},
                      {"policy", a.policy},          {"theta", a.theta},
                      {"R", a.r_text},               {"seed", a.seed}};
    write_manifest("evolve", a.seed, config, {a.out_path}, a.out_path);

    std::cout << a.policy << ": " << report.rows.size() << " rows, final total "
              << report.rows.back().cost.total << ", glad-s invocations " << glad_s_count
              << ", wall_ms=" << wall << "\n";
    return 0;
}

struct SweepArgs {
    std::string instance_path;
    std::string trace_path;
    std::string param;  // R | theta
    std::string values_text;
    std::string r_text = "3";
    uint64_t seed = 1;
    std::string init = "random";
    std::string out_path;
};

int run_sweep(const SweepArgs& a) {
    const Instance inst = glad::load_instance(a.instance_path);
    const auto values = split_csv_list(a.values_text);
    if (values.empty()) throw glad::ValidationError("--values list is empty");

    auto out = open_out(a.out_path);
    if (a.param == "R") {
        out << "param,value,final_cost,iterations,wall_ms\n";
        for (const std::string& v : values) {
            glad::GladConfig cfg;
            cfg.r_max = parse_r_value(v, inst.network);
            cfg.seed = a.seed;
            cfg.init = parse_init(a.init);
            const auto t0 = std::chrono::steady_clock::now();
            const glad::GladResult res = glad::glad_s(inst, cfg);
            const double wall = wall_ms_since(t0);
            const double final_cost = glad::total_cost(res.layout, inst).total;
            out << "R," << v << ',' << glad::csv_double(final_cost) << ','
                << res.log.records.size() << ',' << glad::csv_double(wall) << '\n';
        }
    } else if (a.param == "theta") {
        if (a.trace_path.empty())
            throw glad::ValidationError("theta sweep needs --trace");
        const auto trace = glad::load_trace(a.trace_path);
        out << "param,value,avg_cost,glad_s_invocations,wall_ms\n";
        for (const std::string& v : values) {
            double theta = 0.0;
            if (v == "inf") {
                theta = std::numeric_limits<double>::infinity();
            } else {
                try {
                    size_t pos = 0;
                    theta = std::stod(v, &pos);
                    if (pos != v.size()) throw std::invalid_argument(v);
                } catch (const std::exception&) {
                    throw glad::ValidationError("theta value '" + v + "' is not a number");
                }
            }
            glad::TimelineOptions opt;
            opt.policy = glad::TimelinePolicy::Adaptive;
            opt.theta = theta;
            opt.glad.r_max = parse_r_value(a.r_text, inst.network);
            opt.glad.seed = a.seed;
            opt.glad.init = parse_init(a.init);
            const auto t0 = std::chrono::steady_clock::now();
            const glad::TimelineReport report = glad::run_timeline(inst, trace, opt);
            const double wall = wall_ms_since(t0);
            double sum = 0.0;
            long invocations = 0;
            for (const auto& row : report.rows) {
                sum += row.cost.total;
                if (row.decision == "glad-s") ++invocations;
            }
            out << "theta," << v << ','
                << glad::csv_double(sum / static_cast<double>(report.rows.size())) << ','
                << invocations << ',' << glad::csv_double(wall) << '\n';
        }
    } else {
        throw glad::ValidationError("--param expects R or theta");
    }

    const json config{{"instance", a.instance_path}, {"param", a.param},
                      {"values", a.values_text},     {"seed", a.seed},
                      {"trace", a.trace_path}};
    write_manifest("sweep", a.seed, config, {a.out_path}, a.out_path);
    std::cout << "sweep " << a.param << " over " << values.size() << " values -> " << a.out_path
              << "\n";
    return 0;
}

struct ValidateArgs {
    std::string instance_path;
    std::string layout_path;
    std::string trace_path;
};

int run_validate(const ValidateArgs& a) {
    const Instance inst = glad::load_instance(a.instance_path);
    std::cout << a.instance_path << ": ok (" << inst.graph.vertex_count() << " vertices, "
              << inst.graph.link_count() << " links, " << inst.network.size() << " servers)\n";

    if (!a.layout_path.empty()) {
        const glad::GraphLayout layout = glad::load_layout(a.layout_path);
        const glad::LayoutValidation check = glad::validate_layout(layout, inst);
        if (!check.ok) {
            std::ostringstream msg;
            msg << a.layout_path << ": " << check.issues.size() << " issue(s); first: ";
            const auto& issue = check.issues.front();
            if (issue.kind == glad::LayoutIssue::Kind::MissingVertex)
                msg << "vertex " << issue.vertex << " unassigned";
            else
                msg << "vertex " << issue.vertex << " on unknown server " << issue.server;
            throw glad::ValidationError(msg.str());
        }
        const glad::CostBreakdown cost = glad::total_cost(layout, inst);
        std::cout << a.layout_path << ": ok (total cost " << cost.total << ")\n";
    }

    if (!a.trace_path.empty()) {
        const auto trace = glad::load_trace(a.trace_path);
        Instance current = inst;
        for (const auto& slot : trace) current = glad::apply_slot(current, slot);
        std::cout << a.trace_path << ": ok (" << trace.size() << " slots, final "
                  << current.graph.vertex_count() << " vertices, "
                  << current.graph.link_count() << " links)\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cost-driven placement of GNN data graphs across edge servers"};
    app.require_subcommand(1);

    SynthArgs synth;
    auto* synth_cmd = app.add_subcommand("synth", "Synthesize an instance (and optional trace)");
    synth_cmd->add_option("--config", synth.config_path, "Config JSON file");
    synth_cmd->add_option("--out", synth.out_path, "Instance output path")->required();
    synth_cmd->add_option("--trace-out", synth.trace_out, "Also generate an evolution trace");
    synth_cmd->add_option("--seed", synth.seed, "Override the config seed");
    synth_cmd->add_option("--n-vertices", synth.n_vertices, "Override n_vertices");
    synth_cmd->add_option("--n-servers", synth.n_servers, "Override n_servers");

    OptimizeArgs optimize;
    auto* opt_cmd = app.add_subcommand("optimize", "Compute a layout for an instance");
    opt_cmd->add_option("--instance", optimize.instance_path, "Instance JSON")->required();
    opt_cmd->add_option("--algo", optimize.algo, "glad-s | greedy | random | oracle");
    opt_cmd->add_option("--R", optimize.r_text, "Convergence measurement (int or 'exhaustive')");
    opt_cmd->add_option("--seed", optimize.seed, "Master seed");
    opt_cmd->add_option("--init", optimize.init, "random | upload-first | warm");
    opt_cmd->add_option("--warm", optimize.warm_path, "Warm-start layout JSON (implies --init warm)");
    opt_cmd->add_option("--tie-break", optimize.tie_break, "lowest-index | seeded-random");
    opt_cmd->add_option("--max-iters", optimize.max_iterations, "Hard iteration cap (0 = none)");
    opt_cmd->add_option("--max-states", optimize.max_states, "Oracle state guard");
    opt_cmd->add_option("--out", optimize.out_path, "Layout output path")->required();
    opt_cmd->add_option("--report", optimize.report_path, "Cost breakdown CSV");
    opt_cmd->add_option("--iterations", optimize.iterations_path, "Iteration log CSV (glad-s)");
    opt_cmd->add_option("--dump-aux", optimize.dump_aux,
                        "Dump the auxiliary flow network for server pair 'i,j'");
    opt_cmd->add_option("--dump-aux-out", optimize.dump_aux_out, "DIMACS output path");

    EvolveArgs evolve;
    auto* evo_cmd = app.add_subcommand("evolve", "Replay an evolution trace under a policy");
    evo_cmd->add_option("--instance", evolve.instance_path, "Instance JSON")->required();
    evo_cmd->add_option("--trace", evolve.trace_path, "Trace JSON")->required();
    evo_cmd->add_option("--policy", evolve.policy,
                        "no-adjustment | greedy-online | glad-e-only | adaptive | glad-s-only");
    evo_cmd->add_option("--theta", evolve.theta, "Drift budget for adaptive");
    evo_cmd->add_option("--R", evolve.r_text, "Convergence measurement");
    evo_cmd->add_option("--seed", evolve.seed, "Master seed");
    evo_cmd->add_option("--init", evolve.init, "Initial layout rule for slot 0");
    evo_cmd->add_option("--out", evolve.out_path, "Timeline CSV output")->required();

    SweepArgs sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Sweep R or theta");
    sweep_cmd->add_option("--instance", sweep.instance_path, "Instance JSON")->required();
    sweep_cmd->add_option("--trace", sweep.trace_path, "Trace JSON (theta sweep)");
    sweep_cmd->add_option("--param", sweep.param, "R | theta")->required();
    sweep_cmd->add_option("--values", sweep.values_text, "Comma-separated values")->required();
    sweep_cmd->add_option("--R", sweep.r_text, "Base R for theta sweep");
    sweep_cmd->add_option("--seed", sweep.seed, "Master seed");
    sweep_cmd->add_option("--init", sweep.init, "Initial layout rule");
    sweep_cmd->add_option("--out", sweep.out_path, "Sweep CSV output")->required();

    ValidateArgs validate;
    auto* val_cmd = app.add_subcommand("validate", "Validate instance/layout/trace files");
    val_cmd->add_option("--instance", validate.instance_path, "Instance JSON")->required();
    val_cmd->add_option("--layout", validate.layout_path, "Layout JSON");
    val_cmd->add_option("--trace", validate.trace_path, "Trace JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (synth_cmd->parsed()) return run_synth(synth);
        if (opt_cmd->parsed()) return run_optimize(optimize);
        if (evo_cmd->parsed()) return run_evolve(evolve);
        if (sweep_cmd->parsed()) return run_sweep(sweep);
        if (val_cmd->parsed()) return run_validate(validate);
    } catch (const glad::UnreachablePairError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 3;
    } catch (const glad::TooLargeError& e) {
        std::cerr << "resource guard: " << e.what() << "\n";
        return 4;
    } catch (const glad::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
