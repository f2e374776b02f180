#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "locator/game.hpp"
#include "locator/simple_strategies.hpp"
#include "locator/verification.hpp"
#include "oracles.hpp"

using namespace locator;

namespace {

std::string fixture(const std::string& name) {
    std::ifstream in(std::string(LOCATOR_FIXTURE_DIR) + "/" + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("refine keeps exactly the candidates at the observed distance") {
    const auto sg = SubdividedGraph::uniform(graphs::path(4), 1);
    const VertexSet b = refine(sg, sg.all_vertices(), 1, 1);
    CHECK(b.to_vector() == std::vector<Vertex>{0, 2});
    CHECK_THROWS_AS(refine(sg, VertexSet::of(4, {0}), 3, 0), ProtocolError);
}

TEST_CASE("one-vertex graph is captured at round 0") {
    const auto sg = SubdividedGraph::uniform(graphs::path(1), 1);
    AlwaysProbe s(0);
    RandomRobber r(1);
    const GameTrace t = play(sg, s, r, 10);
    CHECK(t.outcome == Outcome::Captured);
    CHECK(t.outcome_rounds == 0);
    CHECK(t.rounds.empty());
}

TEST_CASE("illegal robber moves are rejected") {
    const auto sg = SubdividedGraph::uniform(graphs::path(4), 1);
    AlwaysProbe s(1);
    CallbackRobber r(0, [](const RobberView&) { return Vertex{3}; });
    CHECK_THROWS_AS(play(sg, s, r, 5), std::invalid_argument);
}

TEST_CASE("the robber sees the next probe") {
    const auto sg = SubdividedGraph::uniform(graphs::path(3), 1);
    AlwaysProbe s(2);
    std::vector<Vertex> seen;
    CallbackRobber r(1, [&](const RobberView& v) {
        seen.push_back(v.next_probe);
        return v.position;
    });
    play(sg, s, r, 3);
    CHECK(seen == std::vector<Vertex>{2});
}

TEST_CASE("claw against a centre-only cop evades") {
    const auto sg = SubdividedGraph::uniform(graphs::star(3), 1);
    const Verdict v = adversarial_verify(sg, AlwaysProbe(0));
    REQUIRE(v.kind == VerdictKind::EvasionFound);
    REQUIRE(v.cycle_start);
    const GameTrace t = replay_witness(sg, AlwaysProbe(0), v);
    CHECK(t.outcome == Outcome::Evaded);
}

TEST_CASE("five-vertex path against an endpoint cop") {
    const auto sg = SubdividedGraph::uniform(graphs::path(5), 1);
    const Verdict v = adversarial_verify(sg, AlwaysProbe(0));
    CHECK(v.kind == VerdictKind::AllCaptured);
    CHECK(v.max_rounds == 1);
}

TEST_CASE("evasion witnesses replay as evasions") {
    std::mt19937_64 rng(5);
    int evasions = 0;
    for (int rep = 0; rep < 40; ++rep) {
        const Graph g = oracle::random_connected(std::uniform_int_distribution<int>(2, 5)(rng), 0.4, rng);
        const auto sg = SubdividedGraph::uniform(g, std::uniform_int_distribution<int>(1, 3)(rng));
        std::vector<Vertex> order;
        for (int i = 0; i < 3; ++i) order.push_back(std::uniform_int_distribution<Vertex>(0, static_cast<Vertex>(sg.vertex_count() - 1))(rng));
        const RoundRobinProbe s(order);
        const Verdict v = adversarial_verify(sg, s);
        if (v.kind != VerdictKind::EvasionFound) continue;
        ++evasions;
        const GameTrace t = replay_witness(sg, s, v);
        CHECK(t.outcome == Outcome::Evaded);
        for (const auto& round : t.rounds) CHECK(round.belief_size > 1);
    }
    CHECK(evasions > 0);
}

TEST_CASE("golden trace: round-robin cop on the paw") {
    const SubdividedGraph sg(graphs::paw(), {2, 2, 2, 3});
    RoundRobinProbe s({0, 3, 4});
    ScriptedRobber r({sg.parse_vertex("b:1"), sg.parse_vertex("i:0/1/1"), sg.parse_vertex("b:0"), sg.parse_vertex("i:0/2/1")});
    const GameTrace t = play(sg, s, r, 12);
    CHECK(trace_to_jsonl(sg, t) == fixture("paw_round_robin.jsonl"));
}

TEST_CASE("golden trace: adversarial witness on the claw") {
    const auto sg = SubdividedGraph::uniform(graphs::star(3), 2);
    const Verdict v = adversarial_verify(sg, AlwaysProbe(0));
    REQUIRE(v.kind == VerdictKind::EvasionFound);
    CHECK(verdict_to_json(sg, v) + "\n" == fixture("claw_center_verdict.json"));
}
