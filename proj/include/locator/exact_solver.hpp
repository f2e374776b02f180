#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "locator/game.hpp"
#include "locator/subdivided_graph.hpp"
#include "locator/vertex_set.hpp"

namespace locator {

struct SolverOptions {
    /// Refuse graphs with more subdivided vertices unless override_budget is set.
    std::size_t max_vertices = 64;
    bool override_budget = false;
    /// Hard cap on distinct non-singleton beliefs explored.
    std::size_t max_states = 4'000'000;
};

/// Reachable belief graph with attractor ranks. Rank 0 is a singleton, rank
/// r > 0 means some probe sends every distance class to rank < r; beliefs
/// outside the attractor have no rank.
class SolvedGame {
public:
    SolvedGame(SubdividedGraph graph, std::vector<VertexSet> beliefs, std::vector<int> ranks);

    const SubdividedGraph& graph() const { return graph_; }
    const DistanceTable& distances() const { return dist_; }
    std::size_t size() const { return beliefs_.size(); }
    const VertexSet& belief(std::size_t i) const { return beliefs_[i]; }
    /// -1 when the cop cannot force a win from belief i.
    int rank_at(std::size_t i) const { return ranks_[i]; }

    /// 0 for singletons; nullopt for losing or unexplored beliefs.
    std::optional<int> rank(const VertexSet& b) const;
    bool explored(const VertexSet& b) const { return b.count() <= 1 || index_.count(b) > 0; }

    /// Lowest probe whose worst distance class has rank exactly rank(b) - 1.
    std::optional<Vertex> optimal_probe(const VertexSet& b) const;

private:
    SubdividedGraph graph_;
    DistanceTable dist_;
    std::vector<VertexSet> beliefs_;
    std::vector<int> ranks_;
    std::unordered_map<VertexSet, std::size_t, VertexSetHash> index_;
};

struct SolveResult {
    bool locatable = false;
    /// Worst-case capture round under optimal play.
    std::optional<int> capture_bound;
    std::size_t states_explored = 0;
    std::shared_ptr<const SolvedGame> game;
};

/// Least fixpoint over beliefs reachable from V. Throws ResourceError when
/// the vertex or state budget is exceeded.
SolveResult decide_locatable(const SubdividedGraph& g, const SolverOptions& options = {});

/// Probe-selecting strategy whose state is the current belief. Throws
/// std::invalid_argument on a non-locatable result.
std::unique_ptr<CopStrategy> extract_strategy(const SolveResult& result);

/// Witness of non-locatability: beliefs of size >= 2 such that against any
/// probe some distance class of the expanded belief contains a member.
struct SafeFamily {
    std::vector<VertexSet> beliefs;
};

/// The inclusion-minimal non-winning reachable beliefs. Throws
/// std::invalid_argument on a locatable result.
SafeFamily evasion_certificate(const SolveResult& result);

/// Re-checks a family directly from graph distances: nonempty, every member
/// has >= 2 vertices, and for every member B and probe p some distance class
/// of N[B] contains a member. Any B ⊆ V then gives the robber a safe start.
bool verify_certificate(const SubdividedGraph& g, const SafeFamily& family);

/// One belief per line, vertices sorted by id in textual form.
std::string format_certificate(const SubdividedGraph& g, const SafeFamily& family);

}  // namespace locator
