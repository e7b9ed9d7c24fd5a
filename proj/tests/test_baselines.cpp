#include <doctest.h>

#include <cmath>
#include <vector>

#include "glad/baselines.hpp"
#include "glad/cost.hpp"
#include "glad/errors.hpp"
#include "glad/glad_static.hpp"
#include "glad/model.hpp"
#include "test_util.hpp"

using namespace glad;

namespace {

Instance explicit_instance(int n_servers, int n_vertices, const std::vector<Link>& links,
                           std::vector<std::vector<double>> upload, double tau,
                           const std::vector<double>& rho = {},
                           const std::vector<double>& eps = {}) {
    std::vector<EdgeServer> servers(n_servers);
    std::vector<std::vector<double>> traffic(n_servers, std::vector<double>(n_servers, tau));
    for (int i = 0; i < n_servers; ++i) {
        servers[i].id = i;
        if (!rho.empty()) servers[i].rho = rho[i];
        if (!eps.empty()) servers[i].epsilon = eps[i];
        traffic[i][i] = 0.0;
    }
    Instance inst{EdgeNetwork::full_mesh(std::move(servers), std::move(traffic)),
                  DataGraph::from_links(n_vertices, links), GnnModelSpec{{3, 2}},
                  std::move(upload)};
    inst.validate();
    return inst;
}

// From-scratch enumeration in plain odometer order; no shared code with the
// Gray-code walk beyond the public cost functions.
std::pair<GraphLayout, double> odometer_best(const Instance& inst) {
    const auto verts = inst.graph.vertices();
    const int n = static_cast<int>(verts.size());
    const int d = inst.network.size();
    std::vector<int> digits(n, 0);
    GraphLayout best;
    double best_cost = std::numeric_limits<double>::infinity();
    for (;;) {
        GraphLayout layout(inst.graph.capacity());
        for (int k = 0; k < n; ++k) layout.assign(verts[k], digits[k]);
        if (const auto c = total_cost_if_feasible(layout, inst)) {
            if (c->total < best_cost) {
                best_cost = c->total;
                best = layout;
            }
        }
        int k = n - 1;
        while (k >= 0 && digits[k] == d - 1) digits[k--] = 0;
        if (k < 0) break;
        ++digits[k];
    }
    return {best, best_cost};
}

}  // namespace

TEST_CASE("exhaustive search places a lone vertex at its cheapest server") {
    const Instance inst = explicit_instance(2, 1, {}, {{3, 5}}, 1.0);
    const OracleResult res = brute_force_optimal(inst);
    CHECK(res.optimal_layout.server_of(0) == 0);
    CHECK(res.optimal_cost.total == doctest::Approx(3.0));
    CHECK(res.states_examined == 2);
}

TEST_CASE("exhaustive search co-locates a pair under crushing traffic prices") {
    const Instance inst =
        explicit_instance(2, 2, {{0, 1}}, {{0, 1}, {1, 0}}, 1e6);
    const OracleResult res = brute_force_optimal(inst);
    CHECK(res.optimal_layout.server_of(0) == res.optimal_layout.server_of(1));
    CHECK(res.optimal_cost.total == doctest::Approx(1.0));
}

TEST_CASE("exhaustive ties resolve to the lexicographically smallest layout") {
    // Perfectly symmetric servers: every layout ties with its mirror image.
    const Instance inst =
        explicit_instance(2, 3, {{0, 1}, {1, 2}}, {{2, 2}, {2, 2}, {2, 2}}, 1.0);
    const OracleResult res = brute_force_optimal(inst);
    for (VertexId v = 0; v < 3; ++v) CHECK(res.optimal_layout.server_of(v) == 0);
}

TEST_CASE("exhaustive search refuses oversized state spaces") {
    const Instance inst =
        explicit_instance(2, 3, {}, {{1, 1}, {1, 1}, {1, 1}}, 1.0);
    CHECK_THROWS_AS(brute_force_optimal(inst, 7), TooLargeError);
    CHECK_NOTHROW(brute_force_optimal(inst, 8));
}

TEST_CASE("exhaustive search visits every assignment exactly once") {
    const Instance inst = testutil::make_instance(
        {.n_vertices = 5, .n_servers = 2, .link_p = 0.5, .seed = 41});
    CHECK(brute_force_optimal(inst).states_examined == 32);

    const Instance three = testutil::make_instance(
        {.n_vertices = 4, .n_servers = 3, .link_p = 0.5, .seed = 42});
    CHECK(brute_force_optimal(three).states_examined == 81);
}

TEST_CASE("gray-code walk agrees with an independent odometer enumeration") {
    for (uint64_t seed = 1; seed <= 50; ++seed) {
        testutil::TinyOptions opt;
        opt.n_vertices = 4 + static_cast<int>(seed % 5);  // 4..8
        opt.n_servers = 2 + static_cast<int>(seed % 2);   // 2..3
        opt.link_p = 0.5;
        opt.connect_p = seed % 3 == 0 ? 0.7 : 1.0;
        opt.seed = 900 + seed;
        const Instance inst = testutil::make_instance(opt);

        const OracleResult fast = brute_force_optimal(inst);
        const auto [slow_layout, slow_cost] = odometer_best(inst);
        CHECK(fast.optimal_cost.total ==
              doctest::Approx(slow_cost).epsilon(1e-9));
        for (VertexId v : inst.graph.vertices())
            CHECK(fast.optimal_layout.server_of(v) == slow_layout.server_of(v));
    }
}

TEST_CASE("random layouts are reproducible and exhaustive over present vertices") {
    const Instance inst = testutil::make_instance(
        {.n_vertices = 9, .n_servers = 3, .link_p = 0.3, .seed = 51});
    const GraphLayout a = random_layout(inst, 7);
    const GraphLayout b = random_layout(inst, 7);
    const GraphLayout c = random_layout(inst, 8);
    bool same = true, differ = false;
    for (VertexId v : inst.graph.vertices()) {
        CHECK(a.assigned(v));
        same = same && a.server_of(v) == b.server_of(v);
        differ = differ || a.server_of(v) != c.server_of(v);
    }
    CHECK(same);
    CHECK(differ);
    CHECK(validate_layout(a, inst).issues.empty());
}

TEST_CASE("a single server leaves random placement no choice") {
    const Instance inst = testutil::make_instance(
        {.n_vertices = 5, .n_servers = 1, .link_p = 0.5, .seed = 52});
    const GraphLayout layout = random_layout(inst, 99);
    for (VertexId v : inst.graph.vertices()) CHECK(layout.server_of(v) == 0);
}

TEST_CASE("random placement spreads evenly at scale") {
    const int n = 10000;
    std::vector<std::vector<double>> upload(n, std::vector<double>(4, 0.0));
    const Instance inst = explicit_instance(4, n, {}, std::move(upload), 1.0);
    const GraphLayout layout = random_layout(inst, 13);
    std::vector<int> share(4, 0);
    for (VertexId v = 0; v < n; ++v) ++share[layout.server_of(v)];
    for (int i = 0; i < 4; ++i) {
        // binomial mean 2500, five sigma ~ 217
        CHECK(share[i] > 2283);
        CHECK(share[i] < 2717);
    }
}

TEST_CASE("greedy placement minimizes the per-vertex unary price") {
    const Instance inst = explicit_instance(
        3, 2, {}, {{5, 1, 2}, {4, 4, 3}}, 1.0, {0.0, 0.0, 0.0});
    const GraphLayout layout = greedy_layout(inst);
    CHECK(layout.server_of(0) == 1);
    CHECK(layout.server_of(1) == 2);

    // per-vertex maintenance participates in the greedy score
    const Instance tilted = explicit_instance(
        2, 1, {}, {{1.0, 1.2}}, 1.0, {0.5, 0.0});
    CHECK(greedy_layout(tilted).server_of(0) == 1);

    // ties go to the lowest server id
    const Instance tie = explicit_instance(2, 1, {}, {{2, 2}}, 1.0);
    CHECK(greedy_layout(tie).server_of(0) == 0);
}

TEST_CASE("greedy is exact when traffic is free") {
    for (uint64_t seed = 1; seed <= 25; ++seed) {
        testutil::TinyOptions opt;
        opt.n_vertices = 7;
        opt.n_servers = 3;
        opt.link_p = 0.5;
        opt.zero_traffic_p = 1.0;  // every pair connected at zero price
        opt.seed = 700 + seed;
        const Instance inst = testutil::make_instance(opt);

        const OracleResult oracle = brute_force_optimal(inst);
        const GraphLayout greedy = greedy_layout(inst);
        CHECK(total_cost(greedy, inst).total ==
              doctest::Approx(oracle.optimal_cost.total).epsilon(1e-9));
    }
}

TEST_CASE("greedy pays for ignoring dominant traffic") {
    const Instance inst =
        explicit_instance(2, 2, {{0, 1}}, {{0, 1}, {1, 0}}, 10.0);
    const GraphLayout greedy = greedy_layout(inst);
    CHECK(greedy.server_of(0) == 0);
    CHECK(greedy.server_of(1) == 1);
    CHECK(total_cost(greedy, inst).total == doctest::Approx(20.0));

    GladConfig cfg;
    cfg.seed = 3;
    const GladResult res = glad_s(inst, cfg);
    CHECK(total_cost(res.layout, inst).total == doctest::Approx(1.0));
}

TEST_CASE("baselines never beat the exhaustive optimum") {
    for (uint64_t seed = 1; seed <= 20; ++seed) {
        const Instance inst = testutil::make_instance(
            {.n_vertices = 6, .n_servers = 3, .link_p = 0.4, .seed = 800 + seed});
        const double opt = brute_force_optimal(inst).optimal_cost.total;
        CHECK(total_cost(greedy_layout(inst), inst).total >= opt - 1e-9);
        if (const auto r = total_cost_if_feasible(random_layout(inst, seed), inst))
            CHECK(r->total >= opt - 1e-9);
    }
}
