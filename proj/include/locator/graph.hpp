#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace locator {

/// Undirected edge between base vertices, stored with `u < v`.
struct Edge {
    int u = 0;
    int v = 0;

    Edge() = default;
    Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {}

    bool has(int x) const { return u == x || v == x; }
    int other(int x) const { return x == u ? v : u; }

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

class GraphError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Simple undirected graph on vertices 0..n-1. Edges are kept sorted.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);
    Graph(int n, const std::vector<std::pair<int, int>>& edges);

    int n() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }

    /// Throws GraphError on loops, parallel edges, or out-of-range ids.
    void add_edge(int a, int b);
    bool adjacent(int a, int b) const;
    const std::vector<int>& neighbors(int x) const { return adj_[static_cast<std::size_t>(x)]; }
    int degree(int x) const { return static_cast<int>(adj_[static_cast<std::size_t>(x)].size()); }

    /// Index of edge {a,b} in edges(), or -1.
    int edge_index(int a, int b) const;

    bool connected() const;

    /// Canonical textual form "n: u-v u-v ..." for reports and debugging.
    std::string to_string() const;

    friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
};

namespace graphs {
Graph path(int n);
Graph cycle(int n);
Graph complete(int n);
Graph complete_bipartite(int r, int s);
Graph star(int leaves);
/// Triangle with a pendant vertex attached to vertex 0.
Graph paw();
}  // namespace graphs

/// A set of pairwise disjoint edges of a graph, with the unmatched vertices X.
class Matching {
public:
    Matching() = default;
    /// Throws GraphError if the edges are not in `g` or share endpoints.
    Matching(const Graph& g, std::vector<Edge> edges);

    const std::vector<Edge>& edges() const { return edges_; }
    int size() const { return static_cast<int>(edges_.size()); }
    const std::vector<int>& unmatched() const { return unmatched_; }
    /// Partner of x, or -1 when x is unmatched.
    int mate(int x) const { return mate_[static_cast<std::size_t>(x)]; }
    bool matched(int x) const { return mate(x) >= 0; }

    /// Maximal iff the unmatched vertices form an independent set of `g`.
    bool is_maximal(const Graph& g) const;

private:
    std::vector<Edge> edges_;
    std::vector<int> mate_;
    std::vector<int> unmatched_;
};

/// Scans `order` and keeps every edge whose endpoints are both still free.
/// Edges of `g` missing from `order` are appended in canonical order, so the
/// result is always maximal.
Matching greedy_maximal_matching(const Graph& g, const std::vector<Edge>& order);
Matching greedy_maximal_matching(const Graph& g);

/// A maximal matching of minimum size (the quantity mmm(G)). Exhaustive
/// branch and bound; intended for graphs of at most ~12 vertices.
Matching min_maximal_matching(const Graph& g);

}  // namespace locator
