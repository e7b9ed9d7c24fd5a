#include <doctest.h>

#include <algorithm>

#include "glad/errors.hpp"
#include "glad/model.hpp"
#include "test_util.hpp"

using namespace glad;

namespace {

EdgeNetwork two_servers() {
    std::vector<EdgeServer> servers(2);
    servers[0].id = 0;
    servers[1].id = 1;
    return EdgeNetwork::full_mesh(std::move(servers), {{0.0, 1.0}, {1.0, 0.0}});
}

Instance tiny_instance(int n_vertices, const std::vector<Link>& links) {
    Instance inst;
    inst.network = two_servers();
    inst.graph = DataGraph::from_links(n_vertices, links);
    inst.model = GnnModelSpec{{3, 2}};
    inst.upload_cost.assign(n_vertices, std::vector<double>(2, 0.0));
    return inst;
}

}  // namespace

TEST_CASE("edge network rejects malformed matrices") {
    std::vector<EdgeServer> servers(2);
    servers[0].id = 0;
    servers[1].id = 1;

    CHECK_THROWS_AS(EdgeNetwork(servers, {{1, 1}, {0, 1}}, {{0, 1}, {1, 0}}),
                    ValidationError);  // asymmetric connectivity
    CHECK_THROWS_AS(EdgeNetwork(servers, {{1, 1}, {1, 1}}, {{0, 1}, {2, 0}}),
                    ValidationError);  // asymmetric traffic
    CHECK_THROWS_AS(EdgeNetwork(servers, {{1, 1}, {1, 1}}, {{0, -1}, {-1, 0}}),
                    ValidationError);  // negative traffic
    CHECK_THROWS_AS(EdgeNetwork(servers, {{1, 1}}, {{0, 1}, {1, 0}}),
                    ValidationError);  // non-square
}

TEST_CASE("edge network keeps unreachable pairs absent, not expensive") {
    std::vector<EdgeServer> servers(3);
    for (int i = 0; i < 3; ++i) servers[i].id = i;
    std::vector<std::vector<uint8_t>> conn{{1, 1, 0}, {1, 1, 0}, {0, 0, 1}};
    std::vector<std::vector<double>> tau{{0, 2, 99}, {2, 0, 99}, {99, 99, 0}};
    EdgeNetwork net(servers, conn, tau);

    CHECK(net.connected(0, 1));
    CHECK_FALSE(net.connected(0, 2));
    CHECK(net.traffic_unit_cost(0, 1) == 2.0);
    CHECK_FALSE(net.traffic_unit_cost(0, 2).has_value());
    CHECK_FALSE(net.traffic_unit_cost(2, 1).has_value());
    CHECK(net.traffic_unit_cost(1, 1) == 0.0);

    const auto pairs = net.connected_pairs();
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0] == std::pair<ServerId, ServerId>{0, 1});
}

TEST_CASE("full mesh factory connects every pair lexicographically") {
    std::vector<EdgeServer> servers(3);
    for (int i = 0; i < 3; ++i) servers[i].id = i;
    EdgeNetwork net = EdgeNetwork::full_mesh(
        servers, {{0, 1, 2}, {1, 0, 3}, {2, 3, 0}});
    const auto pairs = net.connected_pairs();
    REQUIRE(pairs.size() == 3);
    CHECK(pairs[0] == std::pair<ServerId, ServerId>{0, 1});
    CHECK(pairs[1] == std::pair<ServerId, ServerId>{0, 2});
    CHECK(pairs[2] == std::pair<ServerId, ServerId>{1, 2});
    CHECK(net.traffic_unit_cost(2, 1) == 3.0);
}

TEST_CASE("data graph adjacency is symmetric and sorted") {
    DataGraph g = DataGraph::from_links(4, {{2, 3}, {0, 2}, {0, 1}});
    CHECK(g.vertex_count() == 4);
    CHECK(g.link_count() == 3);
    CHECK(g.neighbors(0) == std::vector<VertexId>{1, 2});
    CHECK(g.neighbors(2) == std::vector<VertexId>{0, 3});
    CHECK(g.degree(2) == 2);
    CHECK(g.has_link(3, 2));
    CHECK_FALSE(g.has_link(1, 3));
    CHECK(g.links() == std::vector<Link>{{0, 1}, {0, 2}, {2, 3}});
}

TEST_CASE("data graph rejects self loops and duplicates") {
    CHECK_THROWS_AS(DataGraph::from_links(3, {{1, 1}}), ValidationError);
    CHECK_THROWS_AS(DataGraph::from_links(3, {{0, 1}, {1, 0}}), ValidationError);
    CHECK_THROWS_AS(DataGraph::from_links(2, {{0, 5}}), ValidationError);
}

TEST_CASE("vertex removal drops incident links; ids are never reused") {
    DataGraph g = DataGraph::from_links(3, {{0, 1}, {1, 2}});
    g.remove_vertex(1);
    CHECK(g.vertex_count() == 2);
    CHECK(g.link_count() == 0);
    CHECK_FALSE(g.has_vertex(1));
    CHECK(g.vertices() == std::vector<VertexId>{0, 2});
    CHECK_THROWS_AS(g.neighbors(1), ValidationError);

    g.insert_vertex(3);  // append past the current capacity
    CHECK(g.has_vertex(3));
    g.insert_link(0, 3);
    CHECK(g.has_link(0, 3));
    CHECK_THROWS_AS(g.insert_vertex(0), ValidationError);   // already present
    CHECK_THROWS_AS(g.insert_link(0, 3), ValidationError);  // duplicate
    CHECK_THROWS_AS(g.remove_link(2, 3), ValidationError);  // missing
}

TEST_CASE("coords and external ids are optional extras") {
    DataGraph g = DataGraph::from_links(2, {{0, 1}});
    CHECK_FALSE(g.coords(0).has_value());
    g.set_coords(0, {0.5, 0.25});
    REQUIRE(g.coords(0).has_value());
    CHECK((*g.coords(0))[1] == 0.25);
    CHECK(g.external_id(1) == "1");
    g.set_external_id(1, "client-42");
    CHECK(g.external_id(1) == "client-42");
}

TEST_CASE("gnn model spec needs at least input and output dims") {
    CHECK_THROWS_AS((GnnModelSpec{{52}}.validate()), ValidationError);
    CHECK_THROWS_AS((GnnModelSpec{{4, 0}}.validate()), ValidationError);
    GnnModelSpec ok{{52, 16, 2}};
    ok.validate();
    CHECK(ok.depth() == 2);
}

TEST_CASE("layout validation flags missing vertices and unknown servers") {
    Instance inst = tiny_instance(3, {{0, 1}});

    GraphLayout all_zero(3);
    for (VertexId v = 0; v < 3; ++v) all_zero.assign(v, 0);
    CHECK(validate_layout(all_zero, inst).ok);

    GraphLayout missing(3);
    missing.assign(0, 0);
    missing.assign(1, 0);
    const auto r1 = validate_layout(missing, inst);
    REQUIRE_FALSE(r1.ok);
    REQUIRE(r1.issues.size() == 1);
    CHECK(r1.issues[0].kind == LayoutIssue::Kind::MissingVertex);
    CHECK(r1.issues[0].vertex == 2);

    GraphLayout bad(3);
    bad.assign(0, 0);
    bad.assign(1, 9);
    bad.assign(2, 0);
    const auto r2 = validate_layout(bad, inst);
    REQUIRE_FALSE(r2.ok);
    CHECK(r2.issues[0].kind == LayoutIssue::Kind::UnknownServer);
    CHECK(r2.issues[0].vertex == 1);
    CHECK(r2.issues[0].server == 9);
}

TEST_CASE("resident vertices partition the graph") {
    Instance inst = tiny_instance(3, {});
    GraphLayout layout(3);
    layout.assign(0, 0);
    layout.assign(1, 1);
    layout.assign(2, 1);

    CHECK(resident_vertices(layout, 0, inst) == std::vector<VertexId>{0});
    CHECK(resident_vertices(layout, 1, inst) == std::vector<VertexId>{1, 2});
    CHECK_THROWS_AS(resident_vertices(layout, 7, inst), ValidationError);

    GraphLayout all_zero(3);
    for (VertexId v = 0; v < 3; ++v) all_zero.assign(v, 0);
    CHECK(resident_vertices(all_zero, 0, inst) == std::vector<VertexId>{0, 1, 2});
    CHECK(resident_vertices(all_zero, 1, inst).empty());
}

TEST_CASE("resident vertices cover every vertex exactly once") {
    const Instance inst = testutil::make_instance({.n_vertices = 20, .n_servers = 4, .seed = 3});
    const GraphLayout layout = testutil::random_valid_layout(inst, 11);
    std::vector<VertexId> seen;
    for (ServerId i = 0; i < 4; ++i)
        for (VertexId v : resident_vertices(layout, i, inst)) seen.push_back(v);
    std::sort(seen.begin(), seen.end());
    CHECK(seen == inst.graph.vertices());
}

TEST_CASE("cross links report only split links") {
    DataGraph triangle = DataGraph::from_links(3, {{0, 1}, {1, 2}, {0, 2}});
    GraphLayout same(3);
    for (VertexId v = 0; v < 3; ++v) same.assign(v, 0);
    CHECK(cross_links(same, triangle).empty());

    DataGraph one = DataGraph::from_links(2, {{0, 1}});
    GraphLayout split(2);
    split.assign(0, 0);
    split.assign(1, 1);
    const auto xs = cross_links(split, one);
    REQUIRE(xs.size() == 1);
    CHECK(xs[0].link == Link{0, 1});
    CHECK(xs[0].server_u == 0);
    CHECK(xs[0].server_v == 1);

    DataGraph path = DataGraph::from_links(3, {{0, 1}, {1, 2}});
    GraphLayout zigzag(3);
    zigzag.assign(0, 0);
    zigzag.assign(1, 1);
    zigzag.assign(2, 0);
    CHECK(cross_links(zigzag, path).size() == 2);
}

TEST_CASE("instance validation checks upload rows for present vertices only") {
    Instance inst = tiny_instance(3, {{0, 1}});
    inst.validate();

    Instance short_row = inst;
    short_row.upload_cost[1] = {1.0};
    CHECK_THROWS_AS(short_row.validate(), ValidationError);

    Instance negative = inst;
    negative.upload_cost[2][0] = -0.5;
    CHECK_THROWS_AS(negative.validate(), ValidationError);

    // A retired vertex's stale row no longer matters.
    Instance retired = inst;
    retired.graph.remove_vertex(1);
    retired.upload_cost[1] = {};
    retired.validate();
}
