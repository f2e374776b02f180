#include "locator/matching_strategy.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace locator {

namespace {

template <class T>
void put(std::string& out, T value) {
    out.append(reinterpret_cast<const char*>(&value), sizeof(value));
}

void put_ints(std::string& out, const std::vector<int>& xs) {
    put(out, static_cast<std::uint16_t>(xs.size()));
    for (int x : xs) put(out, static_cast<std::int16_t>(x));
}

constexpr int kInTurn = 100;

bool all_inner(const SubdividedGraph& g, const VertexSet& b) { return !b.intersects(g.branch_vertices()); }

/// Sorted edge indices of threads holding an inner candidate.
std::vector<int> threads_of(const SubdividedGraph& g, const VertexSet& b) {
    std::vector<int> out;
    b.for_each([&](Vertex x) {
        if (!g.is_branch(x)) out.push_back(g.thread_of(x));
    });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool all_nbd(const SubdividedGraph& g, const VertexSet& b, bool (*pred)(int)) {
    bool ok = true;
    b.for_each([&](Vertex x) { ok = ok && pred(g.branch_distance(x)); });
    return ok;
}

/// Distance of inner vertex x from endpoint `end` of its thread.
int from_end(const SubdividedGraph& g, Vertex x, int end) {
    const Edge& e = g.base().edges()[static_cast<std::size_t>(g.thread_of(x))];
    return end == e.u ? g.offset_of(x) : g.length(g.thread_of(x)) - g.offset_of(x);
}

bool meets(const Edge& e, const std::vector<int>& set) {
    return std::find(set.begin(), set.end(), e.u) != set.end() || std::find(set.begin(), set.end(), e.v) != set.end();
}

bool contains(const std::vector<int>& set, int x) { return std::find(set.begin(), set.end(), x) != set.end(); }

std::string list(const std::vector<int>& xs) {
    std::string s = "{";
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
    return s + "}";
}

}  // namespace

MatchingContext::MatchingContext(Graph g, Matching m_, int m_len)
    : graph(std::move(g)), matching(std::move(m_)), sg(SubdividedGraph::uniform(graph, m_len)), n(graph.n()),
      k(matching.size()), m(m_len), t((m_len - 1) / 2), unmatched(matching.unmatched()) {}

ReductionCase classify_reduction(const Matching& matching, const std::vector<int>& branch_set) {
    std::vector<int> a;
    for (int b : branch_set)
        if (matching.matched(b)) a.push_back(b);
    if (a.empty()) return ReductionCase::I;
    if (a.size() == 1 || (a.size() == 2 && matching.mate(a[0]) == a[1])) return ReductionCase::II;
    return ReductionCase::III;
}

// ---------------------------------------------------------------------------

NoturnbackSchedule::NoturnbackSchedule(int v, std::vector<Edge> staged) : v_(v), staged_(std::move(staged)) {}

bool NoturnbackSchedule::use_off_midpoint(const MatchingContext& ctx, int stage, const VertexSet& previous_belief) {
    if (ctx.m % 2 == 0 || ctx.m != ctx.k + 1 || stage != ctx.t) return false;
    bool near = false, far = false;
    previous_belief.for_each([&](Vertex x) {
        const int d = ctx.sg.branch_distance(x);
        near = near || d == ctx.t - 1;
        far = far || d == ctx.t;
    });
    return near && far;
}

std::optional<Vertex> NoturnbackSchedule::next(const MatchingContext& ctx, const VertexSet& belief) {
    off_midpoint_ = false;
    if (stage_ == 0) {
        stage_ = 1;
        last_stage_ = 0;
        ++probes_;
        return static_cast<Vertex>(v_);
    }
    if (finished()) return std::nullopt;
    const Edge& w = staged_[static_cast<std::size_t>(stage_ - 1)];
    last_stage_ = stage_;
    ++probes_;
    if (second_endpoint_) {
        second_endpoint_ = false;
        ++stage_;
        return static_cast<Vertex>(w.v);
    }
    if (ctx.sg.expand(belief).intersects(ctx.sg.branch_vertices())) {
        second_endpoint_ = true;
        return static_cast<Vertex>(w.u);
    }
    const int i = stage_++;
    if (use_off_midpoint(ctx, i, belief)) {
        off_midpoint_ = true;
        return ctx.sg.off_midpoint(w.u, w.v);
    }
    return ctx.sg.midpoint(w.u, w.v);
}

std::vector<int> NoturnbackSchedule::last_probed_set() const {
    if (last_stage_ < 0) return {};
    if (last_stage_ == 0) return {v_};
    const Edge& w = staged_[static_cast<std::size_t>(last_stage_ - 1)];
    return {w.u, w.v};
}

void NoturnbackSchedule::serialize(std::string& out) const {
    put(out, static_cast<std::int16_t>(v_));
    put(out, static_cast<std::int16_t>(stage_));
    put(out, static_cast<std::int16_t>(last_stage_));
    put(out, static_cast<std::int16_t>(probes_));
    put(out, static_cast<std::uint8_t>(second_endpoint_));
    put(out, static_cast<std::uint16_t>(staged_.size()));
    for (const Edge& e : staged_) {
        put(out, static_cast<std::int16_t>(e.u));
        put(out, static_cast<std::int16_t>(e.v));
    }
}

// ---------------------------------------------------------------------------

const char* routine_name(Routine r) {
    switch (r) {
        case Routine::CaseI: return "case-i";
        case Routine::CaseII: return "case-ii";
        case Routine::CaseIII: return "case-iii";
        case Routine::AStar: return "lemma-astar";
        case Routine::Gamma: return "lemma-gamma";
        case Routine::Delta: return "lemma-delta";
    }
    return "?";
}

struct MatchingStrategy::Frame {
    Routine kind = Routine::AStar;
    int step = 0;
    int a = -1, a2 = -1, b = -1, b2 = -1, c = -1, c2 = -1;
    /// S for reduction frames, Z for AStar and Gamma.
    std::vector<int> set;
    std::vector<int> queue;
    int cursor = 0;
    bool has_schedule = false;
    NoturnbackSchedule schedule;
    int used = 0;
    int budget = 0;

    void serialize(std::string& out) const {
        put(out, static_cast<std::uint8_t>(kind));
        put(out, static_cast<std::int16_t>(step));
        for (int x : {a, a2, b, b2, c, c2}) put(out, static_cast<std::int16_t>(x));
        put_ints(out, set);
        put_ints(out, queue);
        put(out, static_cast<std::int16_t>(cursor));
        put(out, static_cast<std::int16_t>(used));
        put(out, static_cast<std::uint8_t>(has_schedule));
        if (has_schedule) schedule.serialize(out);
    }
};

struct MatchingStrategy::Action {
    std::optional<Vertex> probe;
    std::optional<Frame> push;

    static Action probe_at(Vertex v) { return {v, std::nullopt}; }
    static Action call(Frame f) { return {std::nullopt, std::move(f)}; }
};

namespace {

MatchingStrategy::Frame make_frame(Routine kind, int anchor, std::vector<int> targets) {
    MatchingStrategy::Frame f;
    f.kind = kind;
    f.a = anchor;
    std::sort(targets.begin(), targets.end());
    f.set = std::move(targets);
    return f;
}

/// |Z| for A*, 2k-2+|Z| for Gamma, 2k-2+|X| for Delta (whose set is X).
int lemma_budget(const MatchingContext& ctx, const MatchingStrategy::Frame& f) {
    const int z = static_cast<int>(f.set.size());
    return f.kind == Routine::AStar ? z : 2 * ctx.k - 2 + z;
}

}  // namespace

MatchingStrategy::MatchingStrategy(std::shared_ptr<const MatchingContext> ctx) : ctx_(std::move(ctx)) {}
MatchingStrategy::~MatchingStrategy() = default;
MatchingStrategy::MatchingStrategy(const MatchingStrategy&) = default;

std::unique_ptr<MatchingStrategy> MatchingStrategy::starting_in(std::shared_ptr<const MatchingContext> ctx, const RoutineStart& start,
                                                                const VertexSet& belief) {
    if (start.kind != Routine::AStar && start.kind != Routine::Gamma && start.kind != Routine::Delta)
        throw std::invalid_argument("only lemma routines can be started in isolation");
    auto s = std::make_unique<MatchingStrategy>(std::move(ctx));
    Frame f = make_frame(start.kind, start.anchor, start.targets);
    if (f.kind == Routine::Delta) f.set = s->ctx_->unmatched;
    s->check_precondition(f, belief);
    f.budget = lemma_budget(*s->ctx_, f);
    s->mode_ = Mode::Reduce;
    s->frames_.push_back(std::move(f));
    return s;
}

void MatchingStrategy::fail(const std::string& what) const {
    std::string where = frames_.empty() ? "sweep" : routine_name(frames_.back().kind);
    throw StrategyError(where + ": " + what);
}

std::string MatchingStrategy::phase() const {
    if (mode_ == Mode::Sweep) return fallback_ ? "sweep-fallback" : "sweep";
    const Frame& f = frames_.back();
    std::string p = routine_name(f.kind);
    if (f.has_schedule && !f.schedule.finished() && f.step == 2) p += "/noturnback";
    if (f.step == kInTurn) p += "/in-turn";
    return p;
}

std::vector<StrategyMetric> MatchingStrategy::metrics() const {
    std::vector<StrategyMetric> out;
    out.push_back({"reductions", reductions_});
    if (!frames_.empty()) {
        out.push_back({"reduction_probes", frames_.front().used});
        for (const Frame& f : frames_) {
            if (f.kind == Routine::CaseI || f.kind == Routine::CaseII || f.kind == Routine::CaseIII)
                out.push_back({"excess:reduction", f.used - f.budget});
            else
                out.push_back({std::string("excess:") + routine_name(f.kind), f.used - f.budget});
            if (f.has_schedule) out.push_back({"excess:lemma-noturnback", f.schedule.probes_used() - (2 * ctx_->k - 3)});
        }
    }
    out.push_back({"sweep_fallback", fallback_ ? 1 : 0});
    return out;
}

void MatchingStrategy::serialize(std::string& out) const {
    put(out, static_cast<std::uint8_t>(mode_));
    put(out, static_cast<std::uint8_t>(fallback_));
    put(out, static_cast<std::int16_t>(reductions_));
    if (mode_ == Mode::Sweep) {
        put(out, static_cast<std::int16_t>(sweep_next_));
        put(out, static_cast<std::int16_t>(sweeps_));
        return;
    }
    put(out, static_cast<std::int16_t>(last_distance_));
    put(out, static_cast<std::uint16_t>(frames_.size()));
    for (const Frame& f : frames_) f.serialize(out);
}

Vertex MatchingStrategy::charge(Vertex probe) {
    for (Frame& f : frames_) {
        if (++f.used > f.budget)
            fail(std::string(routine_name(f.kind)) + " probe budget of " + std::to_string(f.budget) + " exceeded");
    }
    return probe;
}

Vertex MatchingStrategy::next_probe(const VertexSet& belief) {
    const auto& g = ctx_->sg;
    if (mode_ == Mode::Sweep) {
        if (sweeps_ >= 2 * ctx_->n) {
            const auto threads = threads_of(g, belief);
            if (!all_inner(g, belief) || threads.size() != 1) fail("sweep did not pin the robber to one thread");
            fallback_ = true;
            return static_cast<Vertex>(g.base().edges()[static_cast<std::size_t>(threads[0])].u);
        }
        const Vertex q = static_cast<Vertex>(sweep_next_);
        if (++sweep_next_ == ctx_->n) {
            sweep_next_ = 0;
            ++sweeps_;
        }
        return q;
    }
    for (int guard = 0; guard < 64; ++guard) {
        Action act = step(frames_.back(), belief);
        if (act.probe) return charge(*act.probe);
        Frame child = std::move(*act.push);
        check_precondition(child, belief);
        child.budget = lemma_budget(*ctx_, child);
        frames_.push_back(std::move(child));
    }
    fail("routine dispatch did not produce a probe");
}

void MatchingStrategy::observe(Vertex, int distance, const VertexSet& belief) {
    last_distance_ = distance;
    const auto& g = ctx_->sg;
    const bool has_branch = belief.intersects(g.branch_vertices());
    if (has_branch && !all_inner(g, belief) && !belief.is_subset_of(g.branch_vertices()))
        fail("probe did not reveal whether the robber is at a branch vertex");
    if (belief.count() <= 1 || !has_branch) return;
    if (mode_ == Mode::Reduce) check_exit(belief);
    start_reduction(belief);
}

void MatchingStrategy::start_reduction(const VertexSet& belief) {
    if (++reductions_ > ctx_->n - 1) fail("more than n-1 reductions");
    std::vector<int> s;
    belief.for_each([&](Vertex x) { s.push_back(static_cast<int>(x)); });
    Frame f;
    switch (classify_reduction(ctx_->matching, s)) {
        case ReductionCase::I: f.kind = Routine::CaseI; break;
        case ReductionCase::II: f.kind = Routine::CaseII; break;
        case ReductionCase::III: f.kind = Routine::CaseIII; break;
    }
    f.set = std::move(s);
    f.budget = ctx_->n + 2;
    frames_.clear();
    frames_.push_back(std::move(f));
    mode_ = Mode::Reduce;
}

void MatchingStrategy::check_exit(const VertexSet& belief) const {
    std::vector<int> s;
    belief.for_each([&](Vertex x) { s.push_back(static_cast<int>(x)); });
    auto subset = [&](const std::vector<int>& of) {
        return std::all_of(s.begin(), s.end(), [&](int x) { return contains(of, x); });
    };
    for (auto it = frames_.rbegin(); it != frames_.rend(); ++it) {
        const Frame& f = *it;
        switch (f.kind) {
            case Routine::AStar:
            case Routine::Gamma:
                if (!subset(f.set)) fail("robber revealed at " + list(s) + ", outside Z = " + list(f.set));
                break;
            case Routine::Delta:
            case Routine::CaseII:
                if (!subset(ctx_->unmatched)) fail("robber revealed at " + list(s) + ", not inside X");
                break;
            case Routine::CaseI:
                if (!subset(f.set) || s.size() >= f.set.size()) fail("revealed set " + list(s) + " is not a proper subset of Y = " + list(f.set));
                break;
            case Routine::CaseIII: {
                if (classify_reduction(ctx_->matching, s) != ReductionCase::III) break;
                std::vector<int> a_old, a_new;
                for (int x : f.set)
                    if (ctx_->matching.matched(x)) a_old.push_back(x);
                for (int x : s)
                    if (ctx_->matching.matched(x)) a_new.push_back(x);
                const bool shrinks = a_new.size() < a_old.size() && subset(f.set);
                if (!shrinks) fail("revealed set " + list(s) + " does not reduce " + list(f.set));
                break;
            }
        }
    }
}

void MatchingStrategy::check_precondition(const Frame& f, const VertexSet& belief) const {
    const auto& g = ctx_->sg;
    const auto& edges = g.base().edges();
    if (!all_inner(g, belief)) fail(std::string("precondition of ") + routine_name(f.kind) + ": belief holds a branch vertex");
    bool ok = true;
    belief.for_each([&](Vertex x) {
        const Edge& e = edges[static_cast<std::size_t>(g.thread_of(x))];
        switch (f.kind) {
            case Routine::AStar:
                ok = ok && e.has(f.a) && contains(f.set, e.other(f.a));
                break;
            case Routine::Gamma: {
                const int z = contains(f.set, e.u) ? e.u : (contains(f.set, e.v) ? e.v : -1);
                ok = ok && z >= 0 && from_end(g, x, z) == 1 && ctx_->matching.matched(e.other(z)) && e.other(z) != f.a;
                break;
            }
            case Routine::Delta:
                ok = ok && e.has(f.a) && from_end(g, x, f.a) == 1 && e.other(f.a) != ctx_->matching.mate(f.a);
                break;
            default: break;
        }
    });
    if (!ok) fail(std::string("precondition of ") + routine_name(f.kind) + " not met by the belief");
}

MatchingStrategy::Action MatchingStrategy::step(Frame& f, const VertexSet& belief) {
    if (f.step == kInTurn) {
        if (f.cursor >= static_cast<int>(f.queue.size())) fail("probe list exhausted without a win or a reveal");
        return Action::probe_at(static_cast<Vertex>(f.queue[static_cast<std::size_t>(f.cursor++)]));
    }
    switch (f.kind) {
        case Routine::CaseI: return step_case_i(f, belief);
        case Routine::CaseII: return step_case_ii(f, belief);
        case Routine::CaseIII: return step_case_iii(f, belief);
        case Routine::AStar: return step_astar(f, belief);
        case Routine::Gamma: return step_gamma(f, belief);
        case Routine::Delta: return step_delta(f, belief);
    }
    fail("unknown routine");
}

namespace {

MatchingStrategy::Frame astar(int u, std::vector<int> z) { return make_frame(Routine::AStar, u, std::move(z)); }
MatchingStrategy::Frame gamma(int a, std::vector<int> z) { return make_frame(Routine::Gamma, a, std::move(z)); }

}  // namespace

MatchingStrategy::Action MatchingStrategy::step_astar(Frame& f, const VertexSet&) {
    for (int z : f.set)
        if (ctx_->graph.adjacent(f.a, z)) f.queue.push_back(z);
    f.step = kInTurn;
    f.cursor = 0;
    if (f.queue.empty()) fail("no vertex of Z is joined to the anchor");
    return Action::probe_at(static_cast<Vertex>(f.queue[static_cast<std::size_t>(f.cursor++)]));
}

MatchingStrategy::Action MatchingStrategy::step_case_i(Frame& f, const VertexSet&) {
    const auto& g = ctx_->sg;
    const int m = ctx_->m;
    if (f.step == 0) {
        const int y = f.set.front();
        f.b = y;
        f.a = ctx_->graph.neighbors(y).front();
        f.step = 1;
        return Action::probe_at(g.thread_vertex(y, f.a, 1));
    }
    if (f.step != 1) fail("no further probes in this case");
    f.step = 2;
    const int r = last_distance_;
    std::vector<int> rest;
    for (int y : f.set)
        if (y != f.b) rest.push_back(y);
    if (r == 2) return Action::call(gamma(f.a, {f.b}));
    if (r == 2 * m - 2) return Action::call(astar(f.a, rest));
    const int rm = r % m;
    if (r > 2 * m - 2 && (rm == 0 || rm == 2 || rm == m - 2)) return Action::call(gamma(f.a, rest));
    fail("result " + std::to_string(r) + " outside the case analysis");
}

MatchingStrategy::Action MatchingStrategy::step_case_ii(Frame& f, const VertexSet&) {
    const auto& g = ctx_->sg;
    const int m = ctx_->m;
    if (f.step == 0) {
        for (int x : f.set)
            if (ctx_->matching.matched(x)) {
                f.a = x;
                break;
            }
        f.a2 = ctx_->matching.mate(f.a);
        f.step = 1;
        return Action::probe_at(g.thread_vertex(f.a, f.a2, 2));
    }
    if (f.step != 1) fail("no further probes in this case");
    f.step = 2;
    const int r = last_distance_;
    std::vector<int> y;
    for (int x : f.set)
        if (!ctx_->matching.matched(x)) y.push_back(x);
    if (r == 3) return Action::call(make_frame(Routine::Delta, f.a, ctx_->unmatched));
    if (r == m - 1) return Action::call(make_frame(Routine::Delta, f.a2, ctx_->unmatched));
    if (r == m + 1) return Action::call(astar(f.a, y));
    const int rm = r % m;
    if (r > m + 1 && rm != 2 && rm != m - 2) return Action::call(gamma(f.a, y));
    fail("result " + std::to_string(r) + " outside the case analysis");
}

MatchingStrategy::Action MatchingStrategy::step_gamma(Frame& f, const VertexSet& belief) {
    const auto& g = ctx_->sg;
    const auto& edges = g.base().edges();
    const int m = ctx_->m;
    const auto& M = ctx_->matching;
    if (f.step == 0) {
        f.a2 = M.mate(f.a);
        if (ctx_->k == 1) {
            f.step = 99;
            return Action::call(astar(f.a2, f.set));
        }
        const Edge aa = ctx_->edge_of(f.a);
        std::vector<Edge> staged;
        for (const Edge& e : M.edges()) {
            if (e == aa) continue;
            if (f.b < 0) {
                f.b = e.u;
                f.b2 = e.v;
            } else {
                staged.push_back(e);
            }
        }
        f.schedule = NoturnbackSchedule(f.a2, std::move(staged));
        f.has_schedule = true;
        f.step = 2;
        return Action::probe_at(*f.schedule.next(*ctx_, belief));
    }
    if (f.step == 2) {
        const auto probed = f.schedule.last_probed_set();
        const auto threads = threads_of(g, belief);
        const bool adjacent = std::all_of(threads.begin(), threads.end(), [&](int j) { return meets(edges[static_cast<std::size_t>(j)], probed); });
        if (adjacent) {
            if (f.schedule.last_stage() == 0) {
                f.c = std::min(f.a, f.a2);
                f.c2 = std::max(f.a, f.a2);
            } else {
                f.c = probed[0];
                f.c2 = probed[1];
            }
            f.step = 3;
        } else if (auto p = f.schedule.next(*ctx_, belief)) {
            if (f.schedule.probes_used() > 2 * ctx_->k - 3) fail("no-turn-back schedule exceeded 2k-3 probes");
            return Action::probe_at(*p);
        } else {
            f.c = f.b;
            f.c2 = f.b2;
            f.step = 3;
        }
    }
    if (f.step == 3) {
        bool ok = true;
        belief.for_each([&](Vertex x) {
            const Edge& e = edges[static_cast<std::size_t>(g.thread_of(x))];
            const bool z_end = contains(f.set, e.u) || contains(f.set, e.v);
            const int other = contains(f.set, e.u) ? e.v : e.u;
            ok = ok && z_end && (other == f.c || other == f.c2);
        });
        if (!ok) fail("robber not on a thread from Z to {" + std::to_string(f.c) + "," + std::to_string(f.c2) + "}");
        if (all_nbd(g, belief, [](int d) { return d >= 2; })) {
            f.step = 4;
            return Action::probe_at(static_cast<Vertex>(f.c));
        }
        f.step = 5;
        return Action::probe_at(g.thread_vertex(f.c, f.c2, 4));
    }
    if (f.step == 4) {
        std::set<int> ends;
        for (int j : threads_of(g, belief)) {
            const Edge& e = edges[static_cast<std::size_t>(j)];
            ends.insert(contains(f.set, e.u) ? e.v : e.u);
        }
        if (ends.size() != 1) fail("probing c did not separate c from c'");
        f.step = 99;
        return Action::call(astar(*ends.begin(), f.set));
    }
    if (f.step == 5) {
        const int r = last_distance_;
        f.step = 99;
        for (int q : {5, 6, 7, m + 1, m + 2, m + 3})
            if (r == q) return Action::call(astar(f.c, f.set));
        for (int q : {m - 3, m - 2, m - 1, m + 5, m + 6, m + 7, 2 * m - 7, 2 * m - 6, 2 * m - 5})
            if (r == q) return Action::call(astar(f.c2, f.set));
        fail("distance-4 probe returned " + std::to_string(r) + ", outside the case analysis");
    }
    fail("no further probes in this routine");
}

MatchingStrategy::Action MatchingStrategy::step_delta(Frame& f, const VertexSet& belief) {
    const auto& g = ctx_->sg;
    const auto& edges = g.base().edges();
    const int m = ctx_->m;
    const auto& M = ctx_->matching;
    if (f.step == 0) {
        f.a2 = M.mate(f.a);
        if (ctx_->k == 1) {
            f.step = 99;
            return Action::call(astar(f.a, ctx_->unmatched));
        }
        const Edge aa = ctx_->edge_of(f.a);
        std::vector<Edge> staged;
        for (const Edge& e : M.edges()) {
            if (e == aa) continue;
            if (f.b < 0) {
                f.b = e.u;
                f.b2 = e.v;
            } else {
                staged.push_back(e);
            }
        }
        f.schedule = NoturnbackSchedule(f.b, std::move(staged));
        f.has_schedule = true;
        f.step = 2;
        return Action::probe_at(*f.schedule.next(*ctx_, belief));
    }
    if (f.step == 2) {
        const auto probed = f.schedule.last_probed_set();
        const auto threads = threads_of(g, belief);
        const bool adjacent = std::all_of(threads.begin(), threads.end(), [&](int j) { return meets(edges[static_cast<std::size_t>(j)], probed); });
        if (threads.size() == 1) {
            f.queue = {edges[static_cast<std::size_t>(threads[0])].u};
            f.step = kInTurn;
            f.cursor = 0;
            return step(f, belief);
        }
        if (adjacent && probed.size() == 2 && !f.schedule.mid_stage()) {
            f.queue = {probed[0], f.a};
            f.step = kInTurn;
            f.cursor = 0;
            return step(f, belief);
        }
        if (auto p = f.schedule.next(*ctx_, belief)) {
            if (f.schedule.probes_used() > 2 * ctx_->k - 3) fail("no-turn-back schedule exceeded 2k-3 probes");
            return Action::probe_at(*p);
        }
        f.step = 3;
    }
    if (f.step == 3) {
        bool to_b2 = false, ok = true;
        for (int j : threads_of(g, belief)) {
            const Edge& e = edges[static_cast<std::size_t>(j)];
            const int other = e.other(f.a);
            if (!e.has(f.a)) ok = false;
            else if (other == f.b2) to_b2 = true;
            else if (!ctx_->in_x(other)) ok = false;
        }
        if (!ok) fail("robber not on a thread from a to b' or X");
        if (!ctx_->graph.adjacent(f.a, f.b2)) {
            f.step = 99;
            return Action::call(astar(f.a, ctx_->unmatched));
        }
        (void)to_b2;
        if (all_nbd(g, belief, [](int d) { return d >= 2; })) {
            f.step = 4;
            return Action::probe_at(static_cast<Vertex>(f.b2));
        }
        f.step = 5;
        return Action::probe_at(g.thread_vertex(f.a, f.b2, 3));
    }
    if (f.step == 4) {
        f.step = 99;
        return Action::call(astar(f.a, ctx_->unmatched));
    }
    if (f.step == 5) {
        const int r = last_distance_;
        std::vector<int> ok = {4, 5, m + 1, m + 2};
        if (m % 2 == 1) ok.insert(ok.end(), {6, m});
        f.step = 99;
        if (contains(ok, r)) return Action::call(astar(f.a, ctx_->unmatched));
        fail("distance-3 probe returned " + std::to_string(r) + ", outside the case analysis");
    }
    fail("no further probes in this routine");
}

MatchingStrategy::Action MatchingStrategy::step_case_iii(Frame& f, const VertexSet& belief) {
    const auto& g = ctx_->sg;
    const auto& edges = g.base().edges();
    const int m = ctx_->m;
    const auto& M = ctx_->matching;
    auto in_turn = [&](std::vector<int> q) {
        f.queue = std::move(q);
        f.cursor = 0;
        f.step = kInTurn;
        return step(f, belief);
    };
    if (f.step == 0) {
        for (const Edge& e : M.edges()) {
            if (contains(f.set, e.u) || contains(f.set, e.v)) {
                f.a = contains(f.set, e.u) ? e.u : e.v;
                f.a2 = e.other(f.a);
                break;
            }
        }
        f.step = 1;
        return Action::probe_at(static_cast<Vertex>(f.a));
    }
    if (f.step == 1) {
        if (!all_nbd(g, belief, [](int d) { return d == 1; })) fail("after probing a the robber is not known to be next to a branch vertex");
        const Edge aa = ctx_->edge_of(f.a);
        std::vector<Edge> staged;
        for (const Edge& e : M.edges()) {
            if (e == aa) continue;
            if (f.b < 0) {
                f.b = e.u;
                f.b2 = e.v;
            } else {
                staged.push_back(e);
            }
        }
        f.schedule = NoturnbackSchedule(f.a2, std::move(staged));
        f.has_schedule = true;
        f.step = 2;
        return Action::probe_at(*f.schedule.next(*ctx_, belief));
    }
    if (f.step == 2) {
        const auto threads = threads_of(g, belief);
        if (threads.size() == 1) return in_turn({edges[static_cast<std::size_t>(threads[0])].u});
        const int s = f.schedule.last_stage();
        // Interrupts are decided once every probe of the stage is in.
        if (s >= 1 && !f.schedule.mid_stage()) {
            const auto p = f.schedule.last_probed_set();
            const bool all_meet = std::all_of(threads.begin(), threads.end(), [&](int j) { return meets(edges[static_cast<std::size_t>(j)], p); });
            if (all_meet) {
                std::set<int> others;
                bool one_end = true;
                for (int j : threads) {
                    const Edge& e = edges[static_cast<std::size_t>(j)];
                    if (contains(p, e.u) && contains(p, e.v)) one_end = false;
                    others.insert(contains(p, e.u) ? e.v : e.u);
                }
                if (one_end && others.size() == 1) return in_turn({p[0], *others.begin()});
                if (one_end) {
                    const auto& staged = f.schedule.staged();
                    for (int j = 0; j + 1 < s; ++j) {
                        const std::vector<int> pj = {staged[static_cast<std::size_t>(j)].u, staged[static_cast<std::size_t>(j)].v};
                        if (!std::all_of(others.begin(), others.end(), [&](int x) { return contains(pj, x); })) continue;
                        bool far_now = true, far_then = true;
                        belief.for_each([&](Vertex x) {
                            const Edge& e = edges[static_cast<std::size_t>(g.thread_of(x))];
                            const int end_now = contains(p, e.u) ? e.u : e.v;
                            far_now = far_now && from_end(g, x, end_now) > 2;
                            far_then = far_then && from_end(g, x, e.other(end_now)) > 2;
                        });
                        if (far_now) return in_turn({pj[0], p[0], p[1]});
                        if (far_then) return in_turn({p[0], pj[0], pj[1]});
                        fail("cannot tell which end of a thread between staged pairs the robber is near");
                    }
                }
            }
        }
        if (auto q = f.schedule.next(*ctx_, belief)) {
            if (f.schedule.probes_used() > 2 * ctx_->k - 3) fail("no-turn-back schedule exceeded 2k-3 probes");
            return Action::probe_at(*q);
        }
        f.step = 3;
    }
    if (f.step == 3) {
        std::vector<int> q = {f.b, f.b2};
        q.insert(q.end(), ctx_->unmatched.begin(), ctx_->unmatched.end());
        std::sort(q.begin(), q.end());
        const auto threads = threads_of(g, belief);
        if (std::all_of(threads.begin(), threads.end(), [&](int j) {
                const Edge& e = edges[static_cast<std::size_t>(j)];
                return contains(q, e.u) && contains(q, e.v);
            }))
            return in_turn(q);
        // Case (b): one end in some matched pair cc', the other in q.
        for (int j : threads) {
            const Edge& e = edges[static_cast<std::size_t>(j)];
            if (!contains(q, e.u)) {
                f.c = e.u;
                break;
            }
            if (!contains(q, e.v)) {
                f.c = e.v;
                break;
            }
        }
        f.c2 = M.mate(f.c);
        if (f.c2 < f.c) std::swap(f.c, f.c2);
        const std::vector<int> cc = {f.c, f.c2};
        for (int j : threads) {
            const Edge& e = edges[static_cast<std::size_t>(j)];
            const bool fit = (contains(cc, e.u) && contains(q, e.v)) || (contains(cc, e.v) && contains(q, e.u));
            if (!fit) fail("after the stages the robber's thread fits neither terminal case");
        }
        if (all_nbd(g, belief, [](int d) { return d >= 2; })) {
            f.step = 20;
            return Action::probe_at(g.midpoint(f.b, f.b2));
        }
        f.step = 30;
        return Action::probe_at(g.thread_vertex(f.b, f.b2, 3));
    }
    const std::vector<int> bb = {f.b, f.b2};
    const std::vector<int> cc = {f.c, f.c2};
    auto c_side = [&]() {
        std::vector<int> q = cc;
        q.insert(q.end(), ctx_->unmatched.begin(), ctx_->unmatched.end());
        std::sort(q.begin(), q.end());
        return q;
    };
    if (f.step == 20) {
        const auto threads = threads_of(g, belief);
        const bool all_b = std::all_of(threads.begin(), threads.end(), [&](int j) { return meets(edges[static_cast<std::size_t>(j)], bb); });
        const bool no_b = std::none_of(threads.begin(), threads.end(), [&](int j) { return meets(edges[static_cast<std::size_t>(j)], bb); });
        if (no_b) return in_turn(c_side());
        if (!all_b) fail("midpoint of b..b' did not separate threads meeting {b,b'}");
        bool far_b = true, far_c = true;
        belief.for_each([&](Vertex x) {
            const Edge& e = edges[static_cast<std::size_t>(g.thread_of(x))];
            const int end_b = contains(bb, e.u) ? e.u : e.v;
            far_b = far_b && from_end(g, x, end_b) >= 2;
            far_c = far_c && from_end(g, x, e.other(end_b)) >= 2;
        });
        if (far_b) return in_turn({f.c, f.b, f.b2});
        if (far_c) return in_turn({f.b, f.c, f.c2});
        fail("midpoint of b..b' left the robber possibly near both ends");
    }
    if (f.step == 30) {
        const int r = last_distance_;
        for (int q : {4, 5, 6, m + 1, m + 2, m - 2, m - 1})
            if (r == q) return in_turn({f.c});
        if (r == m) return in_turn({f.b, f.c});
        if (r == 3 || r == m - 3 || (r > 3 && (r % m == 3 || r % m == m - 3)))
            fail("distance-3 probe returned " + std::to_string(r) + " without a reveal");
        f.step = 31;
        return Action::probe_at(static_cast<Vertex>(f.b2));
    }
    if (f.step == 31) {
        const auto threads = threads_of(g, belief);
        if (std::all_of(threads.begin(), threads.end(), [&](int j) { return edges[static_cast<std::size_t>(j)].has(f.b2); }))
            return in_turn({f.c});
        if (std::none_of(threads.begin(), threads.end(), [&](int j) { return meets(edges[static_cast<std::size_t>(j)], bb); }))
            return in_turn(c_side());
        fail("probing b' did not settle the robber's thread");
    }
    fail("no further probes in this case");
}

// ---------------------------------------------------------------------------

std::shared_ptr<const MatchingContext> make_matching_context(const Graph& g, const Matching& matching, int m) {
    if (!g.connected()) throw std::invalid_argument("graph is not connected");
    if (!matching.is_maximal(g)) throw std::invalid_argument("matching is not maximal");
    if (m < 12) throw std::invalid_argument("m >= 12 violated (m = " + std::to_string(m) + ")");
    if (m < matching.size() + 1)
        throw std::invalid_argument("m >= k+1 violated (m = " + std::to_string(m) + ", k = " + std::to_string(matching.size()) + ")");
    return std::make_shared<const MatchingContext>(g, matching, m);
}

std::unique_ptr<MatchingStrategy> build_matching_strategy(const Graph& g, const Matching& matching, int m) {
    return std::make_unique<MatchingStrategy>(make_matching_context(g, matching, m));
}

}  // namespace locator
