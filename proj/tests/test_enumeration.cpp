#include <random>
#include <set>

#include "doctest.h"
#include "locator/enumeration.hpp"

using namespace locator;

TEST_CASE("connected class counts") {
    const std::vector<std::size_t> want = {1, 1, 2, 6, 21, 112, 853};
    for (int v = 1; v <= 7; ++v) CHECK(enumerate_connected_graphs(v).size() == want[v - 1]);
}

TEST_CASE("labelled enumeration collapses to the classes") {
    for (int v = 1; v <= 5; ++v) {
        std::set<std::string> codes;
        for (const Graph& g : enumerate_connected_graphs(v, false)) codes.insert(adjacency_bits(canonical_form(g)));
        CHECK(codes.size() == enumerate_connected_graphs(v).size());
    }
    CHECK(enumerate_connected_graphs(4, false).size() == 38);
}

TEST_CASE("canonical form is invariant under relabelling") {
    std::mt19937_64 rng(2);
    for (const Graph& g : enumerate_connected_graphs(6)) {
        std::vector<int> p(6);
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        Graph h(6);
        for (const Edge& e : g.edges()) h.add_edge(p[e.u], p[e.v]);
        CHECK(canonical_form(h) == g);
    }
}

TEST_CASE("matching lemma extremal sets") {
    auto names = [](int r) {
        std::set<std::string> s;
        for (const auto& e : check_mmm_lemma(r).extremal) s.insert(e.name);
        return s;
    };
    CHECK(names(1) == std::set<std::string>{"K_2 = K_{1,1}"});
    CHECK(names(2) == std::set<std::string>{"K_4", "K_{2,2}"});
    CHECK(check_mmm_lemma(2).holds);
    CHECK_THROWS_AS(check_mmm_lemma(5), std::invalid_argument);
}
