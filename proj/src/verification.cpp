#include "locator/verification.hpp"

#include <algorithm>
#include <memory>
#include <unordered_map>

#include "json.hpp"

namespace locator {

namespace {

constexpr std::int32_t kUnknown = -2;
constexpr std::int32_t kSingleton = -1;
constexpr std::int32_t kError = -3;

struct Node {
    std::unique_ptr<CopStrategy> strategy;  // after choosing `probe`; released once every child exists
    Vertex probe = 0;
    std::vector<int> dists;
    std::vector<VertexSet> classes;
    std::vector<std::int32_t> child;
    std::vector<std::string> errors;
    std::size_t pending = 0;
};

class Search {
public:
    Search(const SubdividedGraph& g, const VerifyOptions& options) : g_(g), dist_(g), options_(options) {}

    Verdict run(const CopStrategy& strategy) {
        Verdict v;
        VertexSet start = options_.initial_belief ? *options_.initial_belief : g_.all_vertices();
        if (start.count() == 1) {
            v.max_rounds = 0;
            return v;
        }
        auto s = strategy.clone();
        std::string err;
        const std::int32_t root = make_node(std::move(s), start, err);
        if (root == kError) {
            v.kind = VerdictKind::StrategyErrorFound;
            v.error = err;
            v.witness = {start.first()};
            return v;
        }

        int best = 0;
        bool done = false;
        start.for_each([&](Vertex y) {
            if (done) return;
            const int r = explore(static_cast<std::uint32_t>(root), y, v);
            if (r < 0) {
                done = true;
                return;
            }
            best = std::max(best, r);
        });
        v.states_explored = memo_.size();
        v.metric_maxima = maxima_;
        if (!done) v.max_rounds = best;
        return v;
    }

private:
    static std::uint64_t key(std::uint32_t node, Vertex pos) { return (static_cast<std::uint64_t>(node) << 32) | pos; }

    /// Interns (strategy, belief); computes the probe. Returns kError on StrategyError.
    std::int32_t make_node(std::unique_ptr<CopStrategy> s, const VertexSet& belief, std::string& err) {
        std::string k;
        s->serialize(k);
        belief.append_bytes(k);
        if (auto it = index_.find(k); it != index_.end()) return static_cast<std::int32_t>(it->second);
        Node n;
        try {
            n.probe = s->next_probe(belief);
            if (n.probe >= g_.vertex_count()) throw StrategyError("probe outside the graph");
        } catch (const StrategyError& e) {
            err = e.what();
            return kError;
        }
        for (const auto& m : s->metrics()) {
            auto [it, inserted] = maxima_.try_emplace(m.name, m.value);
            if (!inserted) it->second = std::max(it->second, m.value);
        }
        for (auto& c : partition_by_distance(dist_, g_.expand(belief), n.probe)) {
            n.dists.push_back(c.distance);
            const bool single = c.members.count() == 1;
            n.classes.push_back(std::move(c.members));
            n.child.push_back(single ? kSingleton : kUnknown);
            n.errors.emplace_back();
            if (!single) ++n.pending;
        }
        n.strategy = std::move(s);
        if (nodes_.size() >= options_.max_states && !options_.override_budget)
            throw ResourceError("verification exceeded " + std::to_string(options_.max_states) + " belief states");
        nodes_.push_back(std::move(n));
        const auto id = static_cast<std::uint32_t>(nodes_.size() - 1);
        index_.emplace(std::move(k), id);
        return static_cast<std::int32_t>(id);
    }

    std::size_t class_of(const Node& n, Vertex z) const {
        const int d = dist_(n.probe, z);
        return static_cast<std::size_t>(std::lower_bound(n.dists.begin(), n.dists.end(), d) - n.dists.begin());
    }

    std::int32_t child_of(std::uint32_t id, std::size_t c) {
        Node& n = nodes_[id];
        if (n.child[c] != kUnknown) return n.child[c];
        auto s = n.strategy->clone();
        std::string err;
        std::int32_t cid;
        try {
            s->observe(n.probe, n.dists[c], n.classes[c]);
            cid = make_node(std::move(s), n.classes[c], err);
        } catch (const StrategyError& e) {
            err = e.what();
            cid = kError;
        }
        Node& n2 = nodes_[id];  // make_node may reallocate
        n2.child[c] = cid;
        if (cid == kError) n2.errors[c] = err;
        if (--n2.pending == 0) n2.strategy.reset();
        return cid;
    }

    struct Entry {
        std::uint32_t node;
        Vertex pos;
        std::vector<Vertex> moves;
        std::size_t next = 0;
        int best = 0;
    };

    Entry enter(std::uint32_t node, Vertex pos) {
        Entry e{node, pos, g_.neighbors(pos), 0, 0};
        e.moves.push_back(pos);
        std::sort(e.moves.begin(), e.moves.end());
        memo_[key(node, pos)] = 0;
        if (memo_.size() > options_.max_states && !options_.override_budget)
            throw ResourceError("verification exceeded " + std::to_string(options_.max_states) + " memo states");
        return e;
    }

    std::vector<Vertex> path_positions(const std::vector<Entry>& stack) const {
        std::vector<Vertex> out;
        for (const auto& e : stack) out.push_back(e.pos);
        return out;
    }

    /// Worst-case rounds to capture from (node, pos), or -1 once a witness is recorded.
    int explore(std::uint32_t root, Vertex start, Verdict& v) {
        if (auto it = memo_.find(key(root, start)); it != memo_.end()) return it->second;
        std::vector<Entry> stack;
        stack.push_back(enter(root, start));
        while (!stack.empty()) {
            Entry& top = stack.back();
            if (top.next == top.moves.size()) {
                memo_[key(top.node, top.pos)] = top.best;
                const int r = top.best;
                stack.pop_back();
                if (!stack.empty()) stack.back().best = std::max(stack.back().best, r + 1);
                else return r;
                continue;
            }
            const Vertex z = top.moves[top.next++];
            const std::size_t c = class_of(nodes_[top.node], z);
            const std::int32_t cid = child_of(top.node, c);
            if (cid == kSingleton) {
                top.best = std::max(top.best, 1);
                continue;
            }
            if (cid == kError) {
                v.kind = VerdictKind::StrategyErrorFound;
                v.error = nodes_[top.node].errors[c];
                v.witness = path_positions(stack);
                v.witness.push_back(z);
                return -1;
            }
            const auto child = static_cast<std::uint32_t>(cid);
            if (auto it = memo_.find(key(child, z)); it != memo_.end()) {
                if (it->second == 0) {
                    v.kind = VerdictKind::EvasionFound;
                    v.witness = path_positions(stack);
                    std::size_t j = 0;
                    while (!(stack[j].node == child && stack[j].pos == z)) ++j;
                    v.witness.push_back(z);
                    v.cycle_start = j;
                    return -1;
                }
                top.best = std::max(top.best, it->second + 1);
                continue;
            }
            if (static_cast<int>(stack.size()) > options_.bound)
                throw ResourceError("play length bound of " + std::to_string(options_.bound) + " exceeded without a repeat");
            stack.push_back(enter(child, z));
        }
        return 0;
    }

    const SubdividedGraph& g_;
    DistanceTable dist_;
    VerifyOptions options_;
    std::vector<Node> nodes_;
    std::unordered_map<std::string, std::uint32_t> index_;
    std::unordered_map<std::uint64_t, std::int32_t> memo_;
    std::map<std::string, int> maxima_;
};

}  // namespace

const char* verdict_name(VerdictKind k) {
    switch (k) {
        case VerdictKind::AllCaptured: return "AllCaptured";
        case VerdictKind::EvasionFound: return "EvasionFound";
        case VerdictKind::StrategyErrorFound: return "StrategyErrorFound";
    }
    return "?";
}

Verdict adversarial_verify(const SubdividedGraph& g, const CopStrategy& strategy, const VerifyOptions& options) {
    Search search(g, options);
    return search.run(strategy);
}

GameTrace replay_witness(const SubdividedGraph& g, const CopStrategy& strategy, const Verdict& verdict) {
    if (verdict.witness.empty()) throw std::invalid_argument("verdict has no witness");
    auto s = strategy.clone();
    ScriptedRobber robber(verdict.witness, verdict.cycle_start);
    int rounds = static_cast<int>(verdict.witness.size()) - 1;
    if (verdict.cycle_start) rounds += 2 * (rounds - static_cast<int>(*verdict.cycle_start)) + 4;
    return play(g, *s, robber, std::max(rounds, 1));
}

std::string verdict_to_json(const SubdividedGraph& g, const Verdict& verdict) {
    nlohmann::ordered_json j;
    j["kind"] = verdict_name(verdict.kind);
    j["max_rounds"] = verdict.max_rounds;
    j["states_explored"] = verdict.states_explored;
    if (!verdict.witness.empty()) {
        nlohmann::ordered_json w;
        auto& pos = w["positions"] = nlohmann::ordered_json::array();
        for (Vertex x : verdict.witness) pos.push_back(g.format_vertex(x));
        if (verdict.cycle_start) w["cycle_start"] = *verdict.cycle_start;
        j["witness_trace"] = w;
    }
    if (!verdict.error.empty()) j["error"] = verdict.error;
    auto& m = j["metrics"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : verdict.metric_maxima) m[k] = v;
    return j.dump();
}

}  // namespace locator
