#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "locator/game.hpp"
#include "locator/graph.hpp"
#include "locator/subdivided_graph.hpp"

namespace locator {

/// Immutable data shared by every instance of a matching strategy: the base
/// graph G, a maximal matching M of size k, the unmatched set X, and the
/// equal subdivision G^{1/m}.
struct MatchingContext {
    MatchingContext(Graph g, Matching matching, int m);

    Graph graph;
    Matching matching;
    SubdividedGraph sg;
    int n;
    int k;
    int m;
    /// (m-1)/2; meaningful only for odd m.
    int t;
    std::vector<int> unmatched;

    bool in_x(int b) const { return !matching.matched(b); }
    /// The matching edge containing matched vertex b.
    Edge edge_of(int b) const { return Edge(b, matching.mate(b)); }
};

enum class ReductionCase { I, II, III };

/// (i) no matched vertex in S; (ii) S's matched part is one vertex or one
/// matching edge; (iii) anything else.
ReductionCase classify_reduction(const Matching& matching, const std::vector<int>& branch_set);

/// Probe schedule that follows a robber known to be adjacent to an unknown
/// branch vertex x: probe v, then per staged matching edge w_i w_i' either a
/// (off-)midpoint or, when a branch visit is possible, both endpoints.
class NoturnbackSchedule {
public:
    NoturnbackSchedule() = default;
    NoturnbackSchedule(int v, std::vector<Edge> staged);

    /// Next probe for the current belief, or nullopt once every stage is done.
    std::optional<Vertex> next(const MatchingContext& ctx, const VertexSet& belief);

    /// 0 after v was probed, i >= 1 after a probe of stage i, -1 before any probe.
    int last_stage() const { return last_stage_; }
    int probes_used() const { return probes_; }
    bool finished() const { return stage_ > static_cast<int>(staged_.size()); }
    const std::vector<Edge>& staged() const { return staged_; }
    int v() const { return v_; }
    bool last_was_off_midpoint() const { return off_midpoint_; }
    /// True between the two endpoint probes of a stage.
    bool mid_stage() const { return second_endpoint_; }
    /// Branch vertices probed by the last stage: {v} or {w_i, w_i'}.
    std::vector<int> last_probed_set() const;

    void serialize(std::string& out) const;

    /// Whether stage i uses the off-midpoint given the belief after the
    /// previous probe: m odd, m = k + 1, i = t, and the belief admits
    /// positions at distance t-1 and t from the nearest branch vertex.
    static bool use_off_midpoint(const MatchingContext& ctx, int stage, const VertexSet& previous_belief);

private:
    int v_ = -1;
    std::vector<Edge> staged_;
    int stage_ = 0;
    bool second_endpoint_ = false;
    int last_stage_ = -1;
    int probes_ = 0;
    bool off_midpoint_ = false;
};

enum class Routine : std::uint8_t { CaseI, CaseII, CaseIII, AStar, Gamma, Delta };

const char* routine_name(Routine r);

/// A routine started in isolation (used to exercise a lemma on its own).
struct RoutineStart {
    Routine kind = Routine::AStar;
    /// u for AStar, a for Gamma and Delta.
    int anchor = -1;
    /// Z for AStar and Gamma.
    std::vector<int> targets;
};

/// Cop strategy for G^{1/m} with a maximal matching of size k, m >= k+1,
/// m >= 12: an initial branch-vertex sweep, then repeated reductions of the
/// set of branch vertices the robber may occupy.
///
/// Every probe is chosen by the case analysis; the tracked belief is used
/// only to decide which case applies and to check that the case analysis
/// covers what happened. Any mismatch, and any probe budget overrun, raises
/// StrategyError instead of a silent wrong probe.
class MatchingStrategy : public CopStrategy {
public:
    struct Frame;

    explicit MatchingStrategy(std::shared_ptr<const MatchingContext> ctx);
    /// Starts inside one routine; `belief` must satisfy its precondition.
    static std::unique_ptr<MatchingStrategy> starting_in(std::shared_ptr<const MatchingContext> ctx, const RoutineStart& start,
                                                         const VertexSet& belief);
    ~MatchingStrategy() override;
    MatchingStrategy(const MatchingStrategy&);
    MatchingStrategy& operator=(const MatchingStrategy&) = delete;

    std::unique_ptr<CopStrategy> clone() const override { return std::make_unique<MatchingStrategy>(*this); }
    Vertex next_probe(const VertexSet& belief) override;
    void observe(Vertex probe, int distance, const VertexSet& belief) override;
    void serialize(std::string& out) const override;
    std::string name() const override { return "matching"; }
    std::string phase() const override;
    std::vector<StrategyMetric> metrics() const override;

    const MatchingContext& context() const { return *ctx_; }
    int reductions() const { return reductions_; }

private:
    enum class Mode : std::uint8_t { Sweep, Reduce };

    void start_reduction(const VertexSet& belief);
    void check_exit(const VertexSet& belief) const;
    void check_precondition(const Frame& f, const VertexSet& belief) const;
    Vertex charge(Vertex probe);

    struct Action;
    Action step(Frame& f, const VertexSet& belief);
    Action step_case_i(Frame& f, const VertexSet& belief);
    Action step_case_ii(Frame& f, const VertexSet& belief);
    Action step_case_iii(Frame& f, const VertexSet& belief);
    Action step_astar(Frame& f, const VertexSet& belief);
    Action step_gamma(Frame& f, const VertexSet& belief);
    Action step_delta(Frame& f, const VertexSet& belief);
    [[noreturn]] void fail(const std::string& what) const;

    std::shared_ptr<const MatchingContext> ctx_;
    Mode mode_ = Mode::Sweep;
    int sweep_next_ = 0;
    int sweeps_ = 0;
    bool fallback_ = false;
    int reductions_ = 0;
    int last_distance_ = -1;
    std::vector<Frame> frames_;
};

/// Validates m >= 12, m >= k+1, and maximality of the matching; throws
/// std::invalid_argument naming the failed bound.
std::unique_ptr<MatchingStrategy> build_matching_strategy(const Graph& g, const Matching& matching, int m);

/// Shared context for building many strategy instances of the same game.
std::shared_ptr<const MatchingContext> make_matching_context(const Graph& g, const Matching& matching, int m);

}  // namespace locator
