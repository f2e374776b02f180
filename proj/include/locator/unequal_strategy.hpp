#pragma once

#include <memory>
#include <string>
#include <vector>

#include "locator/game.hpp"
#include "locator/graph.hpp"
#include "locator/subdivided_graph.hpp"

namespace locator {

/// For every neighbour y of u (ascending) with d' + n - 1 <= l(uy), the
/// vertex at distance d' + n - 1 from u on u..y.
std::vector<Vertex> candidate_probes(const SubdividedGraph& g, int u, int d_prime);

/// Cop strategy for G^{1/l} with every l(e) >= 2n: probe every branch vertex
/// once, pick the pair (u,v) minimising (d_u, d_v), probe v, then u, then
/// scan one vertex per thread at u.
class UnequalStrategy : public CopStrategy {
public:
    enum class Phase : std::uint8_t { SweepAll, ProbedV, ProbedU, CandidateScan };

    explicit UnequalStrategy(std::shared_ptr<const SubdividedGraph> g);

    std::unique_ptr<CopStrategy> clone() const override { return std::make_unique<UnequalStrategy>(*this); }
    Vertex next_probe(const VertexSet& belief) override;
    void observe(Vertex probe, int distance, const VertexSet& belief) override;
    void serialize(std::string& out) const override;
    std::string name() const override { return "unequal"; }
    std::string phase() const override;
    std::vector<StrategyMetric> metrics() const override;

    int u() const { return u_; }
    int v() const { return v_; }
    const std::vector<int>& sweep_distances() const { return d_; }

private:
    void choose_pair();
    void check_position_claims(const VertexSet& belief) const;

    std::shared_ptr<const SubdividedGraph> g_;
    Phase phase_ = Phase::SweepAll;
    std::vector<int> d_;
    int u_ = -1;
    int v_ = -1;
    int d_prime_ = -1;
    std::vector<Vertex> candidates_;
    int cursor_ = 0;
    int probes_ = 0;
};

/// Throws std::invalid_argument naming the first edge with l(e) < 2n.
std::unique_ptr<UnequalStrategy> build_unequal_strategy(const Graph& g, const std::vector<int>& lengths);

}  // namespace locator
