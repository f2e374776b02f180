#include "locator/exact_solver.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

namespace locator {

namespace {

constexpr int kLosing = -1;

class SolverStrategy : public CopStrategy {
public:
    explicit SolverStrategy(std::shared_ptr<const SolvedGame> game)
        : game_(std::move(game)), belief_(game_->graph().all_vertices()) {}

    std::unique_ptr<CopStrategy> clone() const override { return std::make_unique<SolverStrategy>(*this); }

    Vertex next_probe(const VertexSet& belief) override {
        belief_ = belief;
        auto p = game_->optimal_probe(belief);
        if (!p) throw StrategyError("belief outside the solved attractor");
        return *p;
    }
    void observe(Vertex, int, const VertexSet& belief) override { belief_ = belief; }
    void serialize(std::string& out) const override { belief_.append_bytes(out); }
    std::string name() const override { return "optimal"; }

private:
    std::shared_ptr<const SolvedGame> game_;
    VertexSet belief_;
};

}  // namespace

SolvedGame::SolvedGame(SubdividedGraph graph, std::vector<VertexSet> beliefs, std::vector<int> ranks)
    : graph_(std::move(graph)), dist_(graph_), beliefs_(std::move(beliefs)), ranks_(std::move(ranks)) {
    index_.reserve(beliefs_.size());
    for (std::size_t i = 0; i < beliefs_.size(); ++i) index_.emplace(beliefs_[i], i);
}

std::optional<int> SolvedGame::rank(const VertexSet& b) const {
    if (b.count() == 1) return 0;
    auto it = index_.find(b);
    if (it == index_.end() || ranks_[it->second] == kLosing) return std::nullopt;
    return ranks_[it->second];
}

std::optional<Vertex> SolvedGame::optimal_probe(const VertexSet& b) const {
    const auto r = rank(b);
    if (!r || *r == 0) return std::nullopt;
    const VertexSet e = graph_.expand(b);
    for (Vertex p = 0; p < graph_.vertex_count(); ++p) {
        int worst = 0;
        for (const auto& cls : partition_by_distance(dist_, e, p)) {
            const auto cr = rank(cls.members);
            if (!cr) {
                worst = std::numeric_limits<int>::max();
                break;
            }
            worst = std::max(worst, *cr);
        }
        if (worst + 1 == *r) return p;
    }
    return std::nullopt;
}

SolveResult decide_locatable(const SubdividedGraph& g, const SolverOptions& options) {
    const std::size_t nv = g.vertex_count();
    if (nv > options.max_vertices && !options.override_budget)
        throw ResourceError("graph has " + std::to_string(nv) + " vertices; the exact solver refuses more than " +
                            std::to_string(options.max_vertices) + " without an override");

    const DistanceTable dist(g);
    std::vector<VertexSet> beliefs;
    std::unordered_map<VertexSet, std::uint32_t, VertexSetHash> index;

    // Moves are (belief, probe) pairs; a move resolves once every
    // non-singleton distance class it can produce is resolved.
    std::vector<std::uint32_t> move_owner;
    std::vector<std::uint32_t> move_pending;
    std::vector<std::vector<std::uint32_t>> parents;

    const VertexSet start = g.all_vertices();
    if (start.count() == 1) {
        SolveResult r;
        r.locatable = true;
        r.capture_bound = 0;
        r.game = std::make_shared<SolvedGame>(g, std::vector<VertexSet>{}, std::vector<int>{});
        return r;
    }

    auto intern = [&](const VertexSet& b) -> std::uint32_t {
        auto [it, inserted] = index.try_emplace(b, static_cast<std::uint32_t>(beliefs.size()));
        if (inserted) {
            if (beliefs.size() >= options.max_states)
                throw ResourceError("belief budget of " + std::to_string(options.max_states) + " states exceeded");
            beliefs.push_back(b);
            parents.emplace_back();
        }
        return it->second;
    };

    intern(start);
    std::vector<std::uint32_t> immediate;  // moves with no open class
    for (std::size_t i = 0; i < beliefs.size(); ++i) {
        const VertexSet e = g.expand(beliefs[i]);
        for (Vertex p = 0; p < nv; ++p) {
            const auto mv = static_cast<std::uint32_t>(move_owner.size());
            std::uint32_t pending = 0;
            bool self_loop = false;
            for (auto& cls : partition_by_distance(dist, e, p)) {
                if (cls.members.count() < 2) continue;
                const std::uint32_t c = intern(cls.members);
                if (c == i) self_loop = true;
                parents[c].push_back(mv);
                ++pending;
            }
            move_owner.push_back(static_cast<std::uint32_t>(i));
            // A class equal to the belief itself can never resolve first.
            move_pending.push_back(self_loop ? std::numeric_limits<std::uint32_t>::max() / 2 : pending);
            if (pending == 0) immediate.push_back(mv);
        }
    }

    std::vector<int> rank(beliefs.size(), kLosing);
    std::deque<std::uint32_t> queue;
    for (auto mv : immediate) {
        const auto o = move_owner[mv];
        if (rank[o] == kLosing) {
            rank[o] = 1;
            queue.push_back(o);
        }
    }
    while (!queue.empty()) {
        const auto b = queue.front();
        queue.pop_front();
        for (auto mv : parents[b]) {
            if (--move_pending[mv] != 0) continue;
            const auto o = move_owner[mv];
            if (rank[o] == kLosing) {
                rank[o] = rank[b] + 1;
                queue.push_back(o);
            }
        }
    }

    SolveResult r;
    r.states_explored = beliefs.size();
    r.locatable = rank[0] != kLosing;
    if (r.locatable) r.capture_bound = rank[0];
    r.game = std::make_shared<SolvedGame>(g, std::move(beliefs), std::move(rank));
    return r;
}

std::unique_ptr<CopStrategy> extract_strategy(const SolveResult& result) {
    if (!result.locatable || !result.game) throw std::invalid_argument("extract_strategy requires a locatable result");
    return std::make_unique<SolverStrategy>(result.game);
}

SafeFamily evasion_certificate(const SolveResult& result) {
    if (result.locatable || !result.game) throw std::invalid_argument("evasion_certificate requires a non-locatable result");
    const SolvedGame& game = *result.game;
    std::vector<const VertexSet*> losing;
    for (std::size_t i = 0; i < game.size(); ++i)
        if (game.rank_at(i) < 0) losing.push_back(&game.belief(i));
    std::sort(losing.begin(), losing.end(), [](const VertexSet* a, const VertexSet* b) {
        const auto ca = a->count(), cb = b->count();
        if (ca != cb) return ca < cb;
        return a->words() < b->words();
    });
    SafeFamily fam;
    for (const VertexSet* b : losing) {
        const bool dominated = std::any_of(fam.beliefs.begin(), fam.beliefs.end(), [&](const VertexSet& m) { return m.is_subset_of(*b); });
        if (!dominated) fam.beliefs.push_back(*b);
    }
    return fam;
}

bool verify_certificate(const SubdividedGraph& g, const SafeFamily& family) {
    if (family.beliefs.empty()) return false;
    const std::size_t nv = g.vertex_count();
    for (const auto& b : family.beliefs)
        if (b.universe() != nv || b.count() < 2) return false;

    for (const auto& b : family.beliefs) {
        VertexSet reach(nv);
        b.for_each([&](Vertex x) {
            reach.insert(x);
            for (Vertex y : g.neighbors(x)) reach.insert(y);
        });
        for (Vertex p = 0; p < nv; ++p) {
            std::vector<std::pair<int, VertexSet>> classes;
            reach.for_each([&](Vertex x) {
                const int d = g.distance(p, x);
                auto it = std::find_if(classes.begin(), classes.end(), [&](const auto& c) { return c.first == d; });
                if (it == classes.end()) {
                    classes.emplace_back(d, VertexSet(nv));
                    it = classes.end() - 1;
                }
                it->second.insert(x);
            });
            const bool safe = std::any_of(classes.begin(), classes.end(), [&](const auto& c) {
                return std::any_of(family.beliefs.begin(), family.beliefs.end(),
                                   [&](const VertexSet& m) { return m.is_subset_of(c.second); });
            });
            if (!safe) return false;
        }
    }
    return true;
}

std::string format_certificate(const SubdividedGraph& g, const SafeFamily& family) {
    std::string out;
    for (const auto& b : family.beliefs) {
        bool first = true;
        b.for_each([&](Vertex x) {
            if (!first) out += ' ';
            out += g.format_vertex(x);
            first = false;
        });
        out += '\n';
    }
    return out;
}

}  // namespace locator
