#include "locator/game.hpp"

#include <algorithm>
#include <map>

#include "json.hpp"

namespace locator {

VertexSet refine(const SubdividedGraph& g, const VertexSet& expanded, Vertex probe, int d) {
    VertexSet out(expanded.universe());
    expanded.for_each([&](Vertex x) {
        if (g.distance(probe, x) == d) out.insert(x);
    });
    if (out.empty())
        throw ProtocolError("no candidate at distance " + std::to_string(d) + " from " + g.format_vertex(probe));
    return out;
}

std::vector<DistanceClass> partition_by_distance(const DistanceTable& dist, const VertexSet& candidates, Vertex probe) {
    const std::uint16_t* row = dist.row(probe);
    std::map<int, VertexSet> classes;
    candidates.for_each([&](Vertex x) {
        auto [it, inserted] = classes.try_emplace(row[x], candidates.universe());
        it->second.insert(x);
    });
    std::vector<DistanceClass> out;
    out.reserve(classes.size());
    for (auto& [d, members] : classes) out.push_back({d, std::move(members)});
    return out;
}

ScriptedRobber::ScriptedRobber(std::vector<Vertex> positions, std::optional<std::size_t> cycle_start)
    : positions_(std::move(positions)), cycle_start_(cycle_start) {
    if (positions_.empty()) throw std::invalid_argument("robber script is empty");
    if (cycle_start_) {
        if (*cycle_start_ + 1 >= positions_.size() || positions_[*cycle_start_] != positions_.back())
            throw std::invalid_argument("robber script cycle must end where it starts");
    }
}

Vertex ScriptedRobber::initial(const SubdividedGraph& g) {
    if (positions_.front() >= g.vertex_count()) throw std::invalid_argument("robber script starts outside the graph");
    return positions_.front();
}

Vertex ScriptedRobber::move(const RobberView& view) {
    const auto r = static_cast<std::size_t>(view.round);
    const std::size_t last = positions_.size() - 1;
    if (r <= last) return positions_[r];
    if (!cycle_start_) return view.position;
    const std::size_t c = *cycle_start_;
    const std::size_t period = last - c;
    return positions_[c + 1 + (r - last - 1) % period];
}

Vertex RandomRobber::initial(const SubdividedGraph& g) {
    std::uniform_int_distribution<std::size_t> pick(0, g.vertex_count() - 1);
    return static_cast<Vertex>(pick(rng_));
}

Vertex RandomRobber::move(const RobberView& view) {
    auto options = view.graph.neighbors(view.position);
    options.push_back(view.position);
    std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
    return options[pick(rng_)];
}

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Captured: return "captured";
        case Outcome::Evaded: return "evaded";
        case Outcome::StrategyError: return "strategy_error";
    }
    return "?";
}

GameTrace play(const SubdividedGraph& g, CopStrategy& strategy, RobberPolicy& robber, int max_rounds,
               const PlayOptions& options) {
    GameTrace trace;
    VertexSet belief = g.all_vertices();
    Vertex position = robber.initial(g);
    if (position >= g.vertex_count()) throw std::invalid_argument("robber starts outside the graph");
    if (belief.count() == 1) {
        trace.outcome = Outcome::Captured;
        trace.outcome_rounds = 0;
        trace.located = belief.first();
        return trace;
    }
    for (int round = 1; round <= max_rounds; ++round) {
        Vertex probe = 0;
        try {
            probe = strategy.next_probe(belief);
            if (probe >= g.vertex_count()) throw StrategyError("probe outside the graph");
        } catch (const StrategyError& e) {
            trace.outcome = Outcome::StrategyError;
            trace.outcome_rounds = round - 1;
            trace.error = e.what();
            return trace;
        }
        const Vertex next = robber.move(RobberView{round, position, belief, probe, g});
        if (next != position) {
            const auto nb = g.neighbors(position);
            if (!std::binary_search(nb.begin(), nb.end(), next))
                throw std::invalid_argument("illegal robber move from " + g.format_vertex(position) + " to " +
                                            (next < g.vertex_count() ? g.format_vertex(next) : std::to_string(next)));
        }
        position = next;
        const int d = g.distance(probe, position);
        belief = refine(g, expand(g, belief), probe, d);
        if (options.check_soundness && !belief.contains(position))
            throw std::logic_error("belief lost the robber at round " + std::to_string(round));

        TraceRound tr;
        tr.round = round;
        if (options.record_robber) tr.robber = position;
        tr.probe = probe;
        tr.distance = d;
        tr.belief_size = belief.count();
        tr.phase = strategy.phase();
        trace.rounds.push_back(std::move(tr));

        if (belief.count() == 1) {
            trace.outcome = Outcome::Captured;
            trace.outcome_rounds = round;
            trace.located = belief.first();
            return trace;
        }
        try {
            strategy.observe(probe, d, belief);
        } catch (const StrategyError& e) {
            trace.outcome = Outcome::StrategyError;
            trace.outcome_rounds = round;
            trace.error = e.what();
            return trace;
        }
    }
    trace.outcome = Outcome::Evaded;
    trace.outcome_rounds = max_rounds;
    return trace;
}

std::string trace_to_jsonl(const SubdividedGraph& g, const GameTrace& trace) {
    using json = nlohmann::ordered_json;
    std::string out;
    for (const auto& r : trace.rounds) {
        json line;
        line["round"] = r.round;
        line["probe"] = g.format_vertex(r.probe);
        line["dist"] = r.distance;
        line["belief_size"] = r.belief_size;
        if (r.robber) line["robber"] = g.format_vertex(*r.robber);
        if (!r.phase.empty()) line["phase"] = r.phase;
        out += line.dump();
        out += '\n';
    }
    json end;
    end["outcome"] = outcome_name(trace.outcome);
    end["rounds"] = trace.outcome_rounds;
    end["located"] = trace.located ? json(g.format_vertex(*trace.located)) : json(nullptr);
    if (!trace.error.empty()) end["error"] = trace.error;
    out += end.dump();
    out += '\n';
    return out;
}

}  // namespace locator
