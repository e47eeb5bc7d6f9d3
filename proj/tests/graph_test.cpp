#include <doctest.h>

#include <cmath>
#include <sstream>

#include "vicinity/errors.hpp"
#include "vicinity/graph.hpp"

using namespace vicinity;

namespace {

Graph parse(const std::string& text, ParseOptions opt = {}) {
    std::istringstream in(text);
    return parse_edge_list(in, opt).graph;
}

}  // namespace

TEST_CASE("parse: smallest path graph") {
    const Graph g = parse("0 1\n1 2");
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 2);
    CHECK_FALSE(g.weighted());
    CHECK(g.degree(1) == 2);
}

TEST_CASE("parse: comments, duplicate collapse, id remap") {
    const Graph g = parse("# comment\n% another\n5 7\n7 5");
    CHECK(g.node_count() == 2);
    CHECK(g.edge_count() == 1);
}

TEST_CASE("parse: zero weight is legal, weights stored") {
    ParseOptions opt;
    opt.weighted = true;
    const Graph g = parse("0 1 2.5\n1 2 0.0", opt);
    CHECK(g.weighted());
    REQUIRE(g.neighbors(0).size() == 1);
    CHECK(g.neighbor_weights(0)[0] == 2.5);
    CHECK(g.neighbor_weights(2)[0] == 0.0);
}

TEST_CASE("parse: duplicate weighted edges keep the minimum") {
    ParseOptions opt;
    opt.weighted = true;
    const Graph g = parse("0 1 3.0\n1 0 1.5\n0 1 2.0", opt);
    CHECK(g.edge_count() == 1);
    CHECK(g.neighbor_weights(0)[0] == 1.5);
}

TEST_CASE("parse: malformed line reports its number") {
    CHECK_THROWS_AS(parse("0 1\nbogus line\n2 3"), ParseError);
    try {
        parse("0 1\nbogus line\n2 3");
    } catch (const ParseError& e) {
        CHECK(e.line_number == 2);
    }
}

TEST_CASE("parse: negative weight rejected") {
    ParseOptions opt;
    opt.weighted = true;
    CHECK_THROWS_AS(parse("0 1 -2.0", opt), ValidationError);
}

TEST_CASE("parse: weighted mode requires the weight column") {
    ParseOptions opt;
    opt.weighted = true;
    CHECK_THROWS_AS(parse("0 1", opt), ParseError);
}

TEST_CASE("parse: self loops dropped") {
    const Graph g = parse("0 0\n0 1");
    CHECK(g.node_count() == 2);
    CHECK(g.edge_count() == 1);
}

TEST_CASE("parse: pre-symmetrized mode validates both directions") {
    ParseOptions opt;
    opt.treat_as_undirected = false;
    CHECK_NOTHROW(parse("0 1\n1 0", opt));
    CHECK_THROWS_AS(parse("0 1\n1 2\n2 1", opt), ValidationError);
}

TEST_CASE("largest component: tie broken by smallest original id") {
    // two disjoint triangles
    const Graph g(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}}, false);
    const LccResult r = largest_connected_component(g);
    CHECK(r.graph.node_count() == 3);
    CHECK(r.original_of_new == std::vector<NodeId>{0, 1, 2});
    CHECK(r.components.component_sizes == std::vector<std::uint32_t>{3, 3});
}

TEST_CASE("largest component: connected graph survives unchanged") {
    const Graph g = parse("0 1\n1 2\n2 0\n2 3");
    const LccResult r = largest_connected_component(g);
    CHECK(r.graph.node_count() == g.node_count());
    CHECK(r.graph.edge_count() == g.edge_count());
    CHECK(r.graph.fingerprint() == g.fingerprint());
}

TEST_CASE("largest component: drops isolated node") {
    const Graph g(4, {{0, 1}, {1, 2}}, false);
    const LccResult r = largest_connected_component(g);
    CHECK(r.graph.node_count() == 3);
    CHECK(r.graph.edge_count() == 2);
}

TEST_CASE("largest component: empty graph rejected") {
    CHECK_THROWS_AS(largest_connected_component(Graph{}), ValidationError);
}

TEST_CASE("component map partitions the node set") {
    const Graph g(7, {{0, 1}, {2, 3}, {3, 4}}, false);
    const ComponentMap cm = connected_components(g);
    std::uint64_t total = 0;
    for (auto s : cm.component_sizes) total += s;
    CHECK(total == g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) CHECK(cm.component_id[u] < cm.component_sizes.size());
}

TEST_CASE("barabasi-albert: deterministic, connected, heavy-tailed") {
    const Graph a = gen_barabasi_albert(10, 2, 1);
    const Graph b = gen_barabasi_albert(10, 2, 1);
    CHECK(a.fingerprint() == b.fingerprint());
    for (NodeId u = 0; u < a.node_count(); ++u) {
        REQUIRE(a.degree(u) == b.degree(u));
        const auto na = a.neighbors(u);
        const auto nb = b.neighbors(u);
        CHECK(std::equal(na.begin(), na.end(), nb.begin(), nb.end()));
    }

    const Graph big = gen_barabasi_albert(1000, 5, 7);
    CHECK(connected_components(big).component_sizes.size() == 1);
    // m close to n*k
    CHECK(big.edge_count() > 4 * 1000u);
    CHECK(big.edge_count() < 6 * 1000u);
    std::uint32_t max_deg = 0;
    for (NodeId u = 0; u < big.node_count(); ++u) max_deg = std::max(max_deg, big.degree(u));
    CHECK(max_deg > 4 * 5);

    CHECK_THROWS_AS(gen_barabasi_albert(3, 3, 1), ValidationError);
    CHECK_THROWS_AS(gen_barabasi_albert(5, 0, 1), ValidationError);
}

TEST_CASE("erdos-renyi: degenerate probabilities") {
    const Graph empty = gen_erdos_renyi(5, 0.0, 9);
    CHECK(empty.node_count() == 5);
    CHECK(empty.edge_count() == 0);
    const Graph complete = gen_erdos_renyi(5, 1.0, 9);
    CHECK(complete.edge_count() == 10);
    CHECK_THROWS_AS(gen_erdos_renyi(5, -0.1, 9), ValidationError);
    CHECK_THROWS_AS(gen_erdos_renyi(5, 1.1, 9), ValidationError);
}

TEST_CASE("erdos-renyi: edge count within 3 sigma of the binomial mean") {
    const double n = 200, p = 0.05;
    const double pairs = n * (n - 1) / 2;
    const double mean = pairs * p;                        // 995
    const double sigma = std::sqrt(pairs * p * (1 - p));  // ~30.7
    const Graph g = gen_erdos_renyi(200, p, 3);
    CHECK(std::abs(static_cast<double>(g.edge_count()) - mean) <= 3 * sigma);
}

TEST_CASE("degree sums: sum deg(u) == 2m") {
    for (std::uint64_t seed : {1, 2, 3}) {
        const Graph g = gen_barabasi_albert(500, 3, seed);
        std::uint64_t total = 0;
        for (NodeId u = 0; u < g.node_count(); ++u) {
            CHECK(g.degree(u) == g.neighbors(u).size());
            total += g.degree(u);
        }
        CHECK(total == 2 * g.edge_count());
    }
}

TEST_CASE("round trip: serialize then reparse is the identity on dense graphs") {
    const Graph g = gen_barabasi_albert(300, 4, 11);
    std::ostringstream out;
    write_edge_list(out, g);
    const Graph h = parse(out.str());
    REQUIRE(h.node_count() == g.node_count());
    REQUIRE(h.edge_count() == g.edge_count());
    CHECK(h.fingerprint() == g.fingerprint());
    for (NodeId u = 0; u < g.node_count(); ++u) {
        const auto a = g.neighbors(u);
        const auto b = h.neighbors(u);
        REQUIRE(a.size() == b.size());
        CHECK(std::equal(a.begin(), a.end(), b.begin(), b.end()));
    }
}

TEST_CASE("round trip: weighted graph preserves weights exactly") {
    const Graph g(4, {{0, 1, 0.125}, {1, 2, 3.75}, {2, 3, 1e-3}, {0, 3, 7.0}}, true);
    std::ostringstream out;
    write_edge_list(out, g);
    ParseOptions opt;
    opt.weighted = true;
    const Graph h = parse(out.str(), opt);
    REQUIRE(h.edge_count() == g.edge_count());
    for (NodeId u = 0; u < g.node_count(); ++u) {
        const auto wa = g.neighbor_weights(u);
        const auto wb = h.neighbor_weights(u);
        REQUIRE(wa.size() == wb.size());
        for (std::size_t i = 0; i < wa.size(); ++i) CHECK(wa[i] == wb[i]);
    }
}

TEST_CASE("id mapping output is two columns ascending") {
    std::istringstream in("42 7\n7 13");
    const ParsedGraph p = parse_edge_list(in);
    CHECK(p.original_ids == std::vector<std::uint64_t>{7, 13, 42});
    std::ostringstream out;
    write_id_mapping(out, p.original_ids);
    CHECK(out.str() == "7 0\n13 1\n42 2\n");
}
