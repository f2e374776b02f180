#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "locator/graph.hpp"
#include "locator/vertex_set.hpp"

namespace locator {

/// Coordinates of a vertex of a subdivided graph. A branch vertex is the
/// image of base vertex `u`; an inner vertex lies on the thread of base edge
/// {u,v} (u < v) at distance `offset` from u, 0 < offset < length.
struct VertexRef {
    bool branch = true;
    int u = 0;
    int v = -1;
    int offset = 0;

    static VertexRef make_branch(int b) { return {true, b, -1, 0}; }
    static VertexRef make_inner(int a, int b, int i);

    friend bool operator==(const VertexRef&, const VertexRef&) = default;
};

/// G^{1/l}: every base edge e replaced by a path (thread) of length l(e).
///
/// Vertices are never materialised as an adjacency structure. Ids are dense:
/// branch vertex b has id b; inner vertex i of thread j has id
/// n + first_inner(j) + (i - 1), so each thread interior is a contiguous range.
/// Distances use precomputed weighted branch-to-branch distances plus
/// arithmetic along the threads.
class SubdividedGraph {
public:
    /// Throws GraphError when `base` is disconnected or a length is < 1.
    SubdividedGraph(Graph base, std::vector<int> lengths);
    static SubdividedGraph uniform(Graph base, int m);

    const Graph& base() const { return base_; }
    int base_n() const { return base_.n(); }
    const std::vector<int>& lengths() const { return lengths_; }
    int length(int edge_index) const { return lengths_[static_cast<std::size_t>(edge_index)]; }
    /// Common thread length, or nullopt for unequal subdivisions.
    std::optional<int> uniform_length() const { return uniform_; }

    std::size_t vertex_count() const { return vertex_count_; }

    bool is_branch(Vertex x) const { return x < static_cast<Vertex>(base_.n()); }
    VertexRef ref(Vertex x) const;
    /// Inverse of ref(); canonicalises Inner(v,u,i) to Inner(u,v,l-i) and
    /// maps offsets 0 / l to branch vertices.
    Vertex id(const VertexRef& r) const;

    /// Edge index of the thread holding inner vertex x, or -1 for branch vertices.
    int thread_of(Vertex x) const;
    /// Offset of inner vertex x from the lower endpoint of its thread.
    int offset_of(Vertex x) const;
    /// Distance from x to its nearest branch vertex.
    int branch_distance(Vertex x) const;

    /// The vertex on thread u..v at distance i from u (0 <= i <= l(uv)).
    Vertex thread_vertex(int u, int v, int i) const;
    /// Distance t from u for odd lengths (t = (l-1)/2), l/2 for even lengths.
    Vertex midpoint(int u, int v) const;
    /// Distance t-1 from u and t+2 from v; only defined for odd lengths.
    Vertex off_midpoint(int u, int v) const;

    /// First / last inner vertex ids of thread j (valid when l(j) >= 2).
    Vertex first_inner(int j) const { return static_cast<Vertex>(base_.n()) + inner_start_[static_cast<std::size_t>(j)]; }
    Vertex last_inner(int j) const { return first_inner(j) + static_cast<Vertex>(length(j) - 2); }

    /// Exact shortest-path distance.
    int distance(Vertex x, Vertex y) const;
    int branch_distance_between(int a, int b) const { return bdist_[static_cast<std::size_t>(a) * static_cast<std::size_t>(base_.n()) + static_cast<std::size_t>(b)]; }

    std::vector<Vertex> neighbors(Vertex x) const;

    /// Closed neighbourhood N[S] of a vertex set.
    VertexSet expand(const VertexSet& s) const;

    VertexSet all_vertices() const { return VertexSet::full(vertex_count_); }
    const VertexSet& branch_vertices() const { return branch_mask_; }

    /// "b:<id>" or "i:<u>/<v>/<i>".
    std::string format_vertex(Vertex x) const;
    /// Parses the textual vertex form; throws GraphError on malformed input.
    Vertex parse_vertex(const std::string& text) const;

private:
    void check_vertex(Vertex x) const;

    Graph base_;
    std::vector<int> lengths_;
    std::optional<int> uniform_;
    std::vector<int> inner_start_;
    std::size_t vertex_count_ = 0;
    std::vector<int> bdist_;
    // Per inner id (index x - n): thread index.
    std::vector<int> thread_index_;
    VertexSet branch_mask_;
    VertexSet shift_up_ok_;
    VertexSet shift_down_ok_;
    VertexSet thread_ends_;
};

/// Dense all-pairs distance matrix built from the thread-arithmetic oracle.
/// The hot loops of the solver and the adversary search read rows of it.
class DistanceTable {
public:
    explicit DistanceTable(const SubdividedGraph& g);
    int operator()(Vertex x, Vertex y) const { return data_[static_cast<std::size_t>(x) * n_ + y]; }
    const std::uint16_t* row(Vertex x) const { return data_.data() + static_cast<std::size_t>(x) * n_; }

private:
    std::size_t n_;
    std::vector<std::uint16_t> data_;
};

}  // namespace locator
