#include "locator/unequal_strategy.hpp"

#include <algorithm>
#include <stdexcept>

namespace locator {

namespace {

template <class T>
void put(std::string& out, T value) {
    out.append(reinterpret_cast<const char*>(&value), sizeof(value));
}

}  // namespace

std::vector<Vertex> candidate_probes(const SubdividedGraph& g, int u, int d_prime) {
    const int n = g.base_n();
    std::vector<Vertex> out;
    for (int y : g.base().neighbors(u)) {
        const int off = d_prime + n - 1;
        if (off <= g.length(g.base().edge_index(u, y))) out.push_back(g.thread_vertex(u, y, off));
    }
    return out;
}

UnequalStrategy::UnequalStrategy(std::shared_ptr<const SubdividedGraph> g) : g_(std::move(g)) {}

std::string UnequalStrategy::phase() const {
    switch (phase_) {
        case Phase::SweepAll: return "sweep-all";
        case Phase::ProbedV: return "probed-v";
        case Phase::ProbedU: return "probed-u";
        case Phase::CandidateScan: return "candidate-scan";
    }
    return "?";
}

std::vector<StrategyMetric> UnequalStrategy::metrics() const {
    const int n = g_->base_n();
    return {{"probes", probes_}, {"excess:unequal", probes_ - (n + 2 + n - 1)}};
}

void UnequalStrategy::serialize(std::string& out) const {
    put(out, static_cast<std::uint8_t>(phase_));
    put(out, static_cast<std::uint16_t>(d_.size()));
    for (int d : d_) put(out, static_cast<std::int32_t>(d));
    put(out, static_cast<std::int16_t>(u_));
    put(out, static_cast<std::int16_t>(v_));
    put(out, static_cast<std::int32_t>(d_prime_));
    put(out, static_cast<std::int16_t>(cursor_));
    put(out, static_cast<std::int16_t>(probes_));
}

void UnequalStrategy::choose_pair() {
    const int n = g_->base_n();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            if (u_ < 0 || std::pair(d_[a], d_[b]) < std::pair(d_[u_], d_[v_])) {
                u_ = a;
                v_ = b;
            }
        }
}

void UnequalStrategy::check_position_claims(const VertexSet& belief) const {
    const auto& g = *g_;
    const auto& edges = g.base().edges();
    g.expand(belief).for_each([&](Vertex c) {
        bool ok;
        if (g.is_branch(c)) {
            const int b = static_cast<int>(c);
            ok = b == u_ || (b == v_ && g.base().adjacent(u_, v_) &&
                             g.length(g.base().edge_index(u_, v_)) == g.branch_distance_between(u_, v_));
        } else {
            const Edge& e = edges[static_cast<std::size_t>(g.thread_of(c))];
            ok = e.has(u_);
            if (ok) {
                const int off_u = e.u == u_ ? g.offset_of(c) : g.length(g.thread_of(c)) - g.offset_of(c);
                const int w = e.other(u_);
                const int off_w = g.length(g.thread_of(c)) - off_u;
                ok = g.distance(static_cast<Vertex>(u_), c) == off_u && (off_u <= off_w || w == v_);
            }
        }
        if (!ok) throw StrategyError("sweep-all: candidate " + g.format_vertex(c) + " contradicts the position claims for (u,v)");
    });
}

Vertex UnequalStrategy::next_probe(const VertexSet& belief) {
    ++probes_;
    const int n = g_->base_n();
    switch (phase_) {
        case Phase::SweepAll:
            if (static_cast<int>(d_.size()) < n) return static_cast<Vertex>(d_.size());
            choose_pair();
            check_position_claims(belief);
            phase_ = Phase::ProbedV;
            return static_cast<Vertex>(v_);
        case Phase::ProbedV:
            phase_ = Phase::ProbedU;
            return static_cast<Vertex>(u_);
        case Phase::ProbedU:
        case Phase::CandidateScan:
            if (cursor_ >= static_cast<int>(candidates_.size())) throw StrategyError("candidate-scan: list exhausted");
            return candidates_[static_cast<std::size_t>(cursor_++)];
    }
    throw StrategyError("unknown phase");
}

void UnequalStrategy::observe(Vertex, int distance, const VertexSet& belief) {
    const int n = g_->base_n();
    switch (phase_) {
        case Phase::SweepAll:
            d_.push_back(distance);
            break;
        case Phase::ProbedV:
            if (distance <= n && belief.count() > 1) throw StrategyError("probed-v: result <= n without locating the robber");
            break;
        case Phase::ProbedU:
            d_prime_ = distance;
            candidates_ = candidate_probes(*g_, u_, d_prime_);
            cursor_ = 0;
            phase_ = Phase::CandidateScan;
            break;
        case Phase::CandidateScan:
            if (distance <= std::min(2 * (n - 1), d_prime_ + n - 1) && belief.count() > 1)
                throw StrategyError("candidate-scan: hit without locating the robber");
            break;
    }
}

std::unique_ptr<UnequalStrategy> build_unequal_strategy(const Graph& g, const std::vector<int>& lengths) {
    if (lengths.size() != g.edge_count()) throw std::invalid_argument("one length per edge required");
    for (std::size_t j = 0; j < lengths.size(); ++j)
        if (lengths[j] < 2 * g.n())
            throw std::invalid_argument("edge " + std::to_string(g.edges()[j].u) + "-" + std::to_string(g.edges()[j].v) + " has length " +
                                        std::to_string(lengths[j]) + " < 2n = " + std::to_string(2 * g.n()));
    return std::make_unique<UnequalStrategy>(std::make_shared<const SubdividedGraph>(g, lengths));
}

}  // namespace locator
