#include "doctest.h"
#include "locator/game.hpp"
#include "locator/matching_strategy.hpp"
#include "locator/verification.hpp"

using namespace locator;

namespace {

int metric(const Verdict& v, const std::string& name) {
    auto it = v.metric_maxima.find(name);
    return it == v.metric_maxima.end() ? INT_MIN : it->second;
}

/// Inner vertices of thread a-b at the given offsets from a.
void add_offsets(VertexSet& s, const SubdividedGraph& g, int a, int b, std::initializer_list<int> offsets) {
    for (int i : offsets) s.insert(g.thread_vertex(a, b, i));
}

Verdict run_routine(const Graph& g, const std::vector<Edge>& m_edges, int m, const RoutineStart& start, const VertexSet& belief) {
    auto ctx = make_matching_context(g, Matching(g, m_edges), m);
    auto s = MatchingStrategy::starting_in(ctx, start, belief);
    VerifyOptions o;
    o.initial_belief = belief;
    return adversarial_verify(ctx->sg, *s, o);
}

}  // namespace

TEST_CASE("build rejects bounds it cannot meet") {
    const Graph k4 = graphs::complete(4);
    CHECK_THROWS_WITH_AS(build_matching_strategy(k4, min_maximal_matching(k4), 11), "m >= 12 violated (m = 11)", std::invalid_argument);
    const Graph k5 = graphs::complete(5);
    CHECK_THROWS_AS(build_matching_strategy(k5, min_maximal_matching(k5), 2), std::invalid_argument);
    const Graph p3 = graphs::path(3);
    CHECK_THROWS_WITH_AS(build_matching_strategy(p3, Matching(p3, {}), 12), "matching is not maximal", std::invalid_argument);
    CHECK_THROWS_WITH_AS(build_matching_strategy(Graph(2), Matching(Graph(2), {}), 12), "graph is not connected", std::invalid_argument);
}

TEST_CASE("reduction cases") {
    const Graph g = graphs::path(5);
    const Matching m(g, {Edge(0, 1), Edge(2, 3)});
    CHECK(classify_reduction(m, {4}) == ReductionCase::I);
    CHECK(classify_reduction(m, {0, 4}) == ReductionCase::II);
    CHECK(classify_reduction(m, {0, 1, 4}) == ReductionCase::II);
    CHECK(classify_reduction(m, {0, 2}) == ReductionCase::III);
}

TEST_CASE("off-midpoint only when m = k + 1") {
    const Graph p3 = graphs::path(3);
    auto loose = make_matching_context(p3, min_maximal_matching(p3), 13);
    VertexSet b(loose->sg.vertex_count());
    b.insert(loose->sg.thread_vertex(0, 1, 5));
    b.insert(loose->sg.thread_vertex(0, 1, 6));
    CHECK_FALSE(NoturnbackSchedule::use_off_midpoint(*loose, 6, b));

    const Graph p24 = graphs::path(24);
    std::vector<Edge> every_other;
    for (int i = 0; i < 24; i += 2) every_other.emplace_back(i, i + 1);
    auto tight = make_matching_context(p24, Matching(p24, every_other), 13);
    REQUIRE(tight->k == 12);
    REQUIRE(tight->t == 6);
    VertexSet both(tight->sg.vertex_count());
    both.insert(tight->sg.thread_vertex(0, 1, 5));
    both.insert(tight->sg.thread_vertex(4, 5, 6));
    CHECK(NoturnbackSchedule::use_off_midpoint(*tight, 6, both));
    CHECK_FALSE(NoturnbackSchedule::use_off_midpoint(*tight, 5, both));
    VertexSet one(tight->sg.vertex_count());
    one.insert(tight->sg.thread_vertex(0, 1, 5));
    CHECK_FALSE(NoturnbackSchedule::use_off_midpoint(*tight, 6, one));
    CHECK(tight->sg.off_midpoint(0, 1) == tight->sg.thread_vertex(0, 1, 5));
}

TEST_CASE("a schedule with one staged edge and no branch visit makes one probe per stage") {
    const Graph g = graphs::complete(4);
    auto ctx = make_matching_context(g, Matching(g, {Edge(0, 1), Edge(2, 3)}), 12);
    NoturnbackSchedule s(0, {Edge(2, 3)});
    VertexSet b(ctx->sg.vertex_count());
    add_offsets(b, ctx->sg, 0, 2, {1});
    add_offsets(b, ctx->sg, 0, 3, {1});
    int probes = 0;
    while (auto p = s.next(*ctx, b)) {
        ++probes;
        b = refine(ctx->sg, ctx->sg.expand(b), *p, ctx->sg.distance(*p, ctx->sg.thread_vertex(0, 2, 2)));
    }
    CHECK(s.finished());
    CHECK(probes == s.probes_used());
    CHECK(probes <= 2 * 2 - 3 + 1);
}

/// K4 on {0,1,2,3} with 4 and 5 joined to all of it; M = {01, 23}, X = {4, 5}.
Graph two_outside() {
    Graph g(6);
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) g.add_edge(a, b);
    g.add_edge(0, 4), g.add_edge(1, 4), g.add_edge(2, 4), g.add_edge(3, 4);
    g.add_edge(0, 5), g.add_edge(1, 5), g.add_edge(2, 5), g.add_edge(3, 5);
    return g;
}

TEST_CASE("routine A*: robber on a thread from u toward Z") {
    for (int m : {12, 13}) {
        const Graph g = two_outside();
        const auto sg = SubdividedGraph::uniform(g, m);
        VertexSet b(sg.vertex_count());
        for (int z : {4, 5})
            for (int i = 1; i < m; ++i) b.insert(sg.thread_vertex(0, z, i));
        const Verdict v = run_routine(g, {Edge(0, 1), Edge(2, 3)}, m, {Routine::AStar, 0, {4, 5}}, b);
        CHECK(v.kind == VerdictKind::AllCaptured);
        CHECK(metric(v, "excess:lemma-astar") <= 0);
    }
}

TEST_CASE("routine Gamma: robber next to Z on a thread to a matched vertex") {
    for (int m : {12, 13}) {
        const Graph g = two_outside();
        const auto sg = SubdividedGraph::uniform(g, m);
        VertexSet b(sg.vertex_count());
        for (int z : {4, 5})
            for (int x : {1, 2, 3}) add_offsets(b, sg, z, x, {1});
        const Verdict v = run_routine(g, {Edge(0, 1), Edge(2, 3)}, m, {Routine::Gamma, 0, {4, 5}}, b);
        CHECK(v.kind == VerdictKind::AllCaptured);
        CHECK(metric(v, "excess:lemma-gamma") <= 0);
    }
}

TEST_CASE("routine Delta: robber next to a off its matching edge") {
    for (int m : {12, 13}) {
        const Graph g = graphs::complete(5);
        const auto sg = SubdividedGraph::uniform(g, m);
        VertexSet b(sg.vertex_count());
        for (int x : {2, 3, 4}) add_offsets(b, sg, 0, x, {1});
        const Verdict v = run_routine(g, {Edge(0, 1), Edge(2, 3)}, m, {Routine::Delta, 0, {}}, b);
        CHECK(v.kind == VerdictKind::AllCaptured);
        CHECK(metric(v, "excess:lemma-delta") <= 0);
        CHECK(metric(v, "excess:lemma-noturnback") <= 0);
    }
}

TEST_CASE("routine preconditions are checked") {
    const Graph g = graphs::complete(4);
    auto ctx = make_matching_context(g, Matching(g, {Edge(0, 1), Edge(2, 3)}), 12);
    VertexSet b(ctx->sg.vertex_count());
    add_offsets(b, ctx->sg, 0, 1, {1});
    CHECK_THROWS_AS(MatchingStrategy::starting_in(ctx, {Routine::Delta, 0, {}}, b), StrategyError);
    b.insert(0);
    CHECK_THROWS_AS(MatchingStrategy::starting_in(ctx, {Routine::AStar, 0, {1}}, b), StrategyError);
}

TEST_CASE("whole strategy on small graphs") {
    for (const Graph& g : {graphs::path(2), graphs::star(3), graphs::cycle(5), graphs::complete(4)}) {
        for (int m : {12, 13}) {
            auto s = build_matching_strategy(g, min_maximal_matching(g), m);
            const auto sg = SubdividedGraph::uniform(g, m);
            const Verdict v = adversarial_verify(sg, *s);
            CAPTURE(g.to_string());
            CHECK(v.kind == VerdictKind::AllCaptured);
            CHECK(metric(v, "reduction_probes") <= g.n() + 2);
            CHECK(metric(v, "reductions") <= std::max(g.n() - 1, 0));
        }
    }
}
