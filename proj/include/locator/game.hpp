#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "locator/subdivided_graph.hpp"
#include "locator/vertex_set.hpp"

namespace locator {

/// A probe result that no candidate position can produce.
class ProtocolError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by a strategy whose case analysis does not cover the situation it
/// finds itself in, or which exceeds one of its probe budgets.
class StrategyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configured state or depth budget was exhausted before an answer.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DistanceClass {
    int distance = 0;
    VertexSet members;
};

/// Robber positions after one more robber move: N[belief].
inline VertexSet expand(const SubdividedGraph& g, const VertexSet& belief) { return g.expand(belief); }

/// Candidates at distance `d` from `probe`. Throws ProtocolError when empty.
VertexSet refine(const SubdividedGraph& g, const VertexSet& expanded, Vertex probe, int d);

/// Splits `candidates` by distance from `probe`, ordered by distance.
std::vector<DistanceClass> partition_by_distance(const DistanceTable& dist, const VertexSet& candidates, Vertex probe);

struct StrategyMetric {
    std::string name;
    int value = 0;
};

/// Deterministic probe selector. The engine owns the belief and detects
/// wins; a strategy only chooses probes. `belief` arguments are the robber
/// positions consistent with all results so far, which is public knowledge.
///
/// serialize() must be canonical: two instances that will behave identically
/// from now on for every future result produce equal bytes, and equal bytes
/// imply identical behaviour. The adversary search relies on this.
class CopStrategy {
public:
    virtual ~CopStrategy() = default;
    virtual std::unique_ptr<CopStrategy> clone() const = 0;

    virtual Vertex next_probe(const VertexSet& belief) = 0;
    /// `belief` is the refined belief after the probe.
    virtual void observe(Vertex probe, int distance, const VertexSet& belief) = 0;

    virtual void serialize(std::string& out) const = 0;
    virtual std::string name() const = 0;
    /// Short tag of the active phase, written into trace lines.
    virtual std::string phase() const { return {}; }
    /// Counters the adversary search folds into maxima (probe budgets etc.).
    virtual std::vector<StrategyMetric> metrics() const { return {}; }
};

struct RobberView {
    int round;
    Vertex position;
    const VertexSet& belief;
    Vertex next_probe;
    const SubdividedGraph& graph;
};

class RobberPolicy {
public:
    virtual ~RobberPolicy() = default;
    virtual Vertex initial(const SubdividedGraph& g) = 0;
    /// Must return the current position or one of its neighbours.
    virtual Vertex move(const RobberView& view) = 0;
};

/// positions[0] is the start, positions[r] the position after the move of
/// round r. With `cycle_start` set, the tail from that index repeats forever
/// (the last listed position must equal positions[cycle_start - 1] or be
/// adjacent to positions[cycle_start]); otherwise the robber stays put.
class ScriptedRobber : public RobberPolicy {
public:
    explicit ScriptedRobber(std::vector<Vertex> positions, std::optional<std::size_t> cycle_start = std::nullopt);
    Vertex initial(const SubdividedGraph& g) override;
    Vertex move(const RobberView& view) override;

private:
    std::vector<Vertex> positions_;
    std::optional<std::size_t> cycle_start_;
};

/// Uniform start, then uniform choice among staying and each neighbour.
class RandomRobber : public RobberPolicy {
public:
    explicit RandomRobber(std::uint64_t seed) : rng_(seed) {}
    Vertex initial(const SubdividedGraph& g) override;
    Vertex move(const RobberView& view) override;

private:
    std::mt19937_64 rng_;
};

class CallbackRobber : public RobberPolicy {
public:
    using MoveFn = std::function<Vertex(const RobberView&)>;
    CallbackRobber(Vertex start, MoveFn fn) : start_(start), fn_(std::move(fn)) {}
    Vertex initial(const SubdividedGraph&) override { return start_; }
    Vertex move(const RobberView& view) override { return fn_(view); }

private:
    Vertex start_;
    MoveFn fn_;
};

struct TraceRound {
    int round = 0;
    std::optional<Vertex> robber;
    Vertex probe = 0;
    int distance = 0;
    std::size_t belief_size = 0;
    std::string phase;
};

enum class Outcome { Captured, Evaded, StrategyError };

struct GameTrace {
    std::vector<TraceRound> rounds;
    Outcome outcome = Outcome::Evaded;
    /// Capture round, or the round limit for Evaded, or rounds played before an error.
    int outcome_rounds = 0;
    std::optional<Vertex> located;
    std::string error;
};

const char* outcome_name(Outcome o);

struct PlayOptions {
    /// Record the robber's position in each trace round.
    bool record_robber = true;
    /// Assert the robber is a member of the tracked belief every round.
    bool check_soundness = true;
};

/// Rounds: robber move, probe, refine. Initial belief is every vertex; a
/// one-vertex graph is captured at round 0. Throws std::invalid_argument on
/// an illegal robber move.
GameTrace play(const SubdividedGraph& g, CopStrategy& strategy, RobberPolicy& robber, int max_rounds,
               const PlayOptions& options = {});

/// One JSON object per line: {round, probe, dist, belief_size[, robber][, phase]}
/// followed by {outcome, rounds, located[, error]}.
std::string trace_to_jsonl(const SubdividedGraph& g, const GameTrace& trace);

}  // namespace locator
