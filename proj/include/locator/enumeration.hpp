#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "locator/graph.hpp"

namespace locator {

/// Canonical relabelling: the adjacency matrix whose upper triangle, read
/// row by row, is lexicographically smallest among labellings that order
/// vertices by their colour-refinement class. Isomorphic graphs map to
/// identical results.
Graph canonical_form(const Graph& g);

/// Upper triangle of the adjacency matrix, row by row, as a bit string.
std::string adjacency_bits(const Graph& g);
/// Rows of the adjacency matrix as '0'/'1' strings.
std::vector<std::string> adjacency_rows(const Graph& g);

/// Connected graphs on `v` vertices. With iso_classes, one canonical
/// representative per isomorphism class (v <= 8); otherwise every labelled
/// graph (v <= 7). Throws std::invalid_argument when v is out of range.
std::vector<Graph> enumerate_connected_graphs(int v, bool iso_classes = true);

struct ExtremalGraph {
    std::string name;
    std::vector<std::string> adjacency;
};

struct MmmLemmaReport {
    int r = 0;
    std::size_t classes_checked = 0;
    /// Every class on 2r vertices whose minimum maximal matching has size r.
    std::vector<ExtremalGraph> extremal;
    /// Exactly K_{2r} and K_{r,r} attain r.
    bool holds = false;
};

/// Checks that among connected graphs on 2r vertices only K_{2r} and K_{r,r}
/// have no maximal matching smaller than r (1 <= r <= 4).
MmmLemmaReport check_mmm_lemma(int r);

std::string mmm_report_to_json(const MmmLemmaReport& report);

}  // namespace locator
