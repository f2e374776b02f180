#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "locator/game.hpp"
#include "locator/subdivided_graph.hpp"

namespace locator {

struct VerifyOptions {
    /// Longest play explored before giving up with ResourceError.
    int bound = 10'000;
    /// Distinct (strategy state, belief, robber position) states before ResourceError.
    std::size_t max_states = 10'000'000;
    bool override_budget = false;
    /// Belief right after some probe; the robber starts anywhere in it. Defaults to V.
    std::optional<VertexSet> initial_belief;
};

enum class VerdictKind { AllCaptured, EvasionFound, StrategyErrorFound };

const char* verdict_name(VerdictKind k);

struct Verdict {
    VerdictKind kind = VerdictKind::AllCaptured;
    /// Worst-case capture round over every robber play (AllCaptured only).
    int max_rounds = 0;
    std::size_t states_explored = 0;
    /// Robber positions: start, then the position after each round. For
    /// EvasionFound the tail from cycle_start repeats forever (see ScriptedRobber).
    std::vector<Vertex> witness;
    std::optional<std::size_t> cycle_start;
    std::string error;
    /// Maximum of every strategy metric over all explored states.
    std::map<std::string, int> metric_maxima;
};

/// Exhaustive search over every robber play against a deterministic
/// strategy. Equal (strategy state, belief, position) triples are merged,
/// so a triple that recurs on the current play proves an infinite evasion.
/// Throws ResourceError when the depth or state budget runs out.
Verdict adversarial_verify(const SubdividedGraph& g, const CopStrategy& strategy, const VerifyOptions& options = {});

/// Replays a witness through the engine (initial belief V only).
GameTrace replay_witness(const SubdividedGraph& g, const CopStrategy& strategy, const Verdict& verdict);

/// {kind, max_rounds, states_explored[, witness_trace][, error], metrics}
std::string verdict_to_json(const SubdividedGraph& g, const Verdict& verdict);

}  // namespace locator
