#include <random>

#include "doctest.h"
#include "locator/unequal_strategy.hpp"
#include "locator/verification.hpp"

using namespace locator;

TEST_CASE("lengths below 2n are refused") {
    CHECK_THROWS_WITH_AS(build_unequal_strategy(graphs::complete(3), {6, 6, 5}), "edge 1-2 has length 5 < 2n = 6", std::invalid_argument);
}

TEST_CASE("candidate probes sit d'+n-1 along each thread from u") {
    const SubdividedGraph sg(graphs::star(2), {4, 9});
    const auto c = candidate_probes(sg, 0, 3);
    REQUIRE(c.size() == 1);
    CHECK(c[0] == sg.thread_vertex(0, 2, 5));
}

TEST_CASE("unequal strategy on a triangle with lengths 6..9") {
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 6; ++rep) {
        std::vector<int> l;
        for (int j = 0; j < 3; ++j) l.push_back(std::uniform_int_distribution<int>(6, 9)(rng));
        auto s = build_unequal_strategy(graphs::complete(3), l);
        const Verdict v = adversarial_verify(SubdividedGraph(graphs::complete(3), l), *s);
        CHECK(v.kind == VerdictKind::AllCaptured);
        CHECK(v.metric_maxima.at("excess:unequal") <= 0);
    }
}
