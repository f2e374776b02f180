#include <random>

#include "doctest.h"
#include "locator/graph.hpp"
#include "locator/graph_io.hpp"
#include "locator/subdivided_graph.hpp"
#include "oracles.hpp"

using namespace locator;

TEST_CASE("K4 with m=12: opposite thread interiors are 24 apart") {
    const auto sg = SubdividedGraph::uniform(graphs::complete(4), 12);
    const Vertex a = sg.id(VertexRef::make_inner(0, 1, 6));
    const Vertex b = sg.id(VertexRef::make_inner(2, 3, 6));
    CHECK(sg.distance(a, b) == 24);
    const auto x = oracle::expand(sg.base(), sg.lengths());
    CHECK(x.dist[a][b] == 24);
}

TEST_CASE("vertex ids follow the documented thread layout") {
    const Graph g = graphs::paw();
    const std::vector<int> l = {3, 1, 4, 2};
    const SubdividedGraph sg(g, l);
    CHECK(sg.vertex_count() == 4 + 2 + 0 + 3 + 1);
    Vertex next = 4;
    for (std::size_t j = 0; j < g.edges().size(); ++j)
        for (int i = 1; i < l[j]; ++i) {
            CHECK(sg.thread_vertex(g.edges()[j].u, g.edges()[j].v, i) == next);
            CHECK(sg.thread_vertex(g.edges()[j].v, g.edges()[j].u, l[j] - i) == next);
            ++next;
        }
}

TEST_CASE("distance and neighbours agree with the expanded graph") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        const int n = std::uniform_int_distribution<int>(1, 6)(rng);
        const Graph g = oracle::random_connected(n, 0.4, rng);
        std::vector<int> l;
        for (std::size_t j = 0; j < g.edge_count(); ++j) l.push_back(std::uniform_int_distribution<int>(1, 7)(rng));
        const SubdividedGraph sg(g, l);
        const auto x = oracle::expand(g, l);
        REQUIRE(x.adj.size() == sg.vertex_count());
        for (Vertex a = 0; a < sg.vertex_count(); ++a) {
            auto nb = sg.neighbors(a);
            std::vector<Vertex> want(x.adj[a].begin(), x.adj[a].end());
            std::sort(nb.begin(), nb.end());
            std::sort(want.begin(), want.end());
            CHECK(nb == want);
            for (Vertex b = 0; b < sg.vertex_count(); ++b) CHECK(sg.distance(a, b) == x.dist[a][b]);
        }
    }
}

TEST_CASE("textual vertex form round-trips") {
    const auto sg = SubdividedGraph::uniform(graphs::cycle(4), 5);
    for (Vertex v = 0; v < sg.vertex_count(); ++v) CHECK(sg.parse_vertex(sg.format_vertex(v)) == v);
}

TEST_CASE("minimum maximal matching matches exhaustive search") {
    CHECK(min_maximal_matching(graphs::cycle(6)).size() == 2);
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 60; ++rep) {
        const int n = std::uniform_int_distribution<int>(1, 8)(rng);
        const Graph g = oracle::random_connected(n, 0.35, rng);
        const Matching m = min_maximal_matching(g);
        CHECK(m.is_maximal(g));
        CHECK(m.size() == oracle::brute_mmm(g));
    }
}

TEST_CASE("graph text format") {
    const GraphFile f = parse_graph_text("# paw\n4\n0 1 3\n1 2 1\n0 2 4\n0 3 2\n");
    CHECK(f.graph == graphs::paw());
    REQUIRE(f.lengths);
    CHECK(parse_graph_text(format_graph_text(f.graph, &*f.lengths)).lengths == f.lengths);
    CHECK_THROWS_AS(parse_graph_text("3\n0 1\n1 7\n"), ParseError);
    try {
        parse_graph_text("3\n0 1\nfoo\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}
