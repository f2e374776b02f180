#include "locator/subdivided_graph.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

namespace locator {

namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

int parse_int(std::string_view s, const std::string& whole) {
    int value = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || p != s.data() + s.size()) throw GraphError("malformed vertex '" + whole + "'");
    return value;
}

}  // namespace

VertexRef VertexRef::make_inner(int a, int b, int i) {
    VertexRef r;
    r.branch = false;
    r.u = a;
    r.v = b;
    r.offset = i;
    return r;
}

SubdividedGraph::SubdividedGraph(Graph base, std::vector<int> lengths) : base_(std::move(base)), lengths_(std::move(lengths)) {
    const int n = base_.n();
    if (n < 1) throw GraphError("graph has no vertices");
    if (!base_.connected()) throw GraphError("graph is not connected");
    if (lengths_.size() != base_.edge_count())
        throw GraphError("expected " + std::to_string(base_.edge_count()) + " thread lengths, got " + std::to_string(lengths_.size()));
    for (std::size_t j = 0; j < lengths_.size(); ++j) {
        if (lengths_[j] < 1) {
            const auto& e = base_.edges()[j];
            throw GraphError("nonpositive length " + std::to_string(lengths_[j]) + " on edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
        }
    }
    if (!lengths_.empty() && std::all_of(lengths_.begin(), lengths_.end(), [&](int l) { return l == lengths_.front(); }))
        uniform_ = lengths_.front();

    inner_start_.resize(lengths_.size());
    int next = 0;
    for (std::size_t j = 0; j < lengths_.size(); ++j) {
        inner_start_[j] = next;
        next += lengths_[j] - 1;
    }
    vertex_count_ = static_cast<std::size_t>(n + next);
    thread_index_.resize(static_cast<std::size_t>(next));
    for (std::size_t j = 0; j < lengths_.size(); ++j)
        for (int i = 0; i < lengths_[j] - 1; ++i) thread_index_[static_cast<std::size_t>(inner_start_[j] + i)] = static_cast<int>(j);

    // Weighted all-pairs distances between branch vertices.
    const auto un = static_cast<std::size_t>(n);
    bdist_.assign(un * un, kInf);
    for (std::size_t a = 0; a < un; ++a) bdist_[a * un + a] = 0;
    for (std::size_t j = 0; j < lengths_.size(); ++j) {
        const auto& e = base_.edges()[j];
        const auto u = static_cast<std::size_t>(e.u), v = static_cast<std::size_t>(e.v);
        bdist_[u * un + v] = bdist_[v * un + u] = lengths_[j];
    }
    for (std::size_t k = 0; k < un; ++k)
        for (std::size_t a = 0; a < un; ++a)
            for (std::size_t b = 0; b < un; ++b)
                bdist_[a * un + b] = std::min(bdist_[a * un + b], bdist_[a * un + k] + bdist_[k * un + b]);

    branch_mask_ = VertexSet(vertex_count_);
    shift_up_ok_ = VertexSet(vertex_count_);
    shift_down_ok_ = VertexSet(vertex_count_);
    thread_ends_ = VertexSet(vertex_count_);
    for (int b = 0; b < n; ++b) {
        branch_mask_.insert(static_cast<Vertex>(b));
        thread_ends_.insert(static_cast<Vertex>(b));
    }
    for (std::size_t j = 0; j < lengths_.size(); ++j) {
        const int l = lengths_[j];
        for (int i = 1; i < l; ++i) {
            const Vertex x = first_inner(static_cast<int>(j)) + static_cast<Vertex>(i - 1);
            if (i >= 2) shift_up_ok_.insert(x);
            if (i <= l - 2) shift_down_ok_.insert(x);
            if (i == 1 || i == l - 1) thread_ends_.insert(x);
        }
    }
}

SubdividedGraph SubdividedGraph::uniform(Graph base, int m) {
    std::vector<int> lengths(base.edge_count(), m);
    return SubdividedGraph(std::move(base), std::move(lengths));
}

void SubdividedGraph::check_vertex(Vertex x) const {
    if (x >= vertex_count_) throw GraphError("invalid vertex id " + std::to_string(x));
}

int SubdividedGraph::thread_of(Vertex x) const {
    check_vertex(x);
    if (is_branch(x)) return -1;
    return thread_index_[x - static_cast<Vertex>(base_.n())];
}

int SubdividedGraph::offset_of(Vertex x) const {
    const int j = thread_of(x);
    if (j < 0) return 0;
    return static_cast<int>(x - first_inner(j)) + 1;
}

int SubdividedGraph::branch_distance(Vertex x) const {
    const int j = thread_of(x);
    if (j < 0) return 0;
    const int i = offset_of(x);
    return std::min(i, length(j) - i);
}

VertexRef SubdividedGraph::ref(Vertex x) const {
    const int j = thread_of(x);
    if (j < 0) return VertexRef::make_branch(static_cast<int>(x));
    const auto& e = base_.edges()[static_cast<std::size_t>(j)];
    return VertexRef::make_inner(e.u, e.v, offset_of(x));
}

Vertex SubdividedGraph::id(const VertexRef& r) const {
    if (r.branch) {
        if (r.u < 0 || r.u >= base_.n()) throw GraphError("invalid branch vertex " + std::to_string(r.u));
        return static_cast<Vertex>(r.u);
    }
    return thread_vertex(r.u, r.v, r.offset);
}

Vertex SubdividedGraph::thread_vertex(int u, int v, int i) const {
    const int j = base_.edge_index(u, v);
    if (j < 0) throw GraphError("no thread between " + std::to_string(u) + " and " + std::to_string(v));
    const int l = length(j);
    if (i < 0 || i > l) throw GraphError("offset " + std::to_string(i) + " outside thread of length " + std::to_string(l));
    if (i == 0) return static_cast<Vertex>(u);
    if (i == l) return static_cast<Vertex>(v);
    const int from_lower = u < v ? i : l - i;
    return first_inner(j) + static_cast<Vertex>(from_lower - 1);
}

Vertex SubdividedGraph::midpoint(int u, int v) const {
    const int j = base_.edge_index(u, v);
    if (j < 0) throw GraphError("no thread between " + std::to_string(u) + " and " + std::to_string(v));
    const int l = length(j);
    return thread_vertex(u, v, l % 2 == 0 ? l / 2 : (l - 1) / 2);
}

Vertex SubdividedGraph::off_midpoint(int u, int v) const {
    const int j = base_.edge_index(u, v);
    if (j < 0) throw GraphError("no thread between " + std::to_string(u) + " and " + std::to_string(v));
    const int l = length(j);
    if (l % 2 == 0 || l < 3) throw GraphError("off-midpoint requires an odd thread length >= 3");
    return thread_vertex(u, v, (l - 1) / 2 - 1);
}

int SubdividedGraph::distance(Vertex x, Vertex y) const {
    check_vertex(x);
    check_vertex(y);
    if (x == y) return 0;
    struct End {
        int b;
        int d;
    };
    auto ends = [&](Vertex z, End (&out)[2]) -> int {
        const int j = thread_of(z);
        if (j < 0) {
            out[0] = {static_cast<int>(z), 0};
            return 1;
        }
        const auto& e = base_.edges()[static_cast<std::size_t>(j)];
        const int i = offset_of(z);
        out[0] = {e.u, i};
        out[1] = {e.v, length(j) - i};
        return 2;
    };
    End ex[2], ey[2];
    const int cx = ends(x, ex), cy = ends(y, ey);
    int best = kInf;
    for (int a = 0; a < cx; ++a)
        for (int b = 0; b < cy; ++b) best = std::min(best, ex[a].d + branch_distance_between(ex[a].b, ey[b].b) + ey[b].d);
    const int jx = thread_of(x);
    if (jx >= 0 && jx == thread_of(y)) best = std::min(best, std::abs(offset_of(x) - offset_of(y)));
    return best;
}

std::vector<Vertex> SubdividedGraph::neighbors(Vertex x) const {
    check_vertex(x);
    std::vector<Vertex> out;
    const int j = thread_of(x);
    if (j < 0) {
        const int b = static_cast<int>(x);
        for (int w : base_.neighbors(b)) out.push_back(thread_vertex(b, w, 1));
    } else {
        const int i = offset_of(x);
        const auto& e = base_.edges()[static_cast<std::size_t>(j)];
        out.push_back(thread_vertex(e.u, e.v, i - 1));
        out.push_back(thread_vertex(e.u, e.v, i + 1));
    }
    std::sort(out.begin(), out.end());
    return out;
}

VertexSet SubdividedGraph::expand(const VertexSet& s) const {
    VertexSet out = s;
    out |= s.shifted_up() & shift_up_ok_;
    out |= s.shifted_down() & shift_down_ok_;
    (s & thread_ends_).for_each([&](Vertex x) {
        for (Vertex y : neighbors(x)) out.insert(y);
    });
    return out;
}

std::string SubdividedGraph::format_vertex(Vertex x) const {
    const VertexRef r = ref(x);
    if (r.branch) return "b:" + std::to_string(r.u);
    return "i:" + std::to_string(r.u) + "/" + std::to_string(r.v) + "/" + std::to_string(r.offset);
}

Vertex SubdividedGraph::parse_vertex(const std::string& text) const {
    if (text.size() > 2 && text.compare(0, 2, "b:") == 0)
        return id(VertexRef::make_branch(parse_int(std::string_view(text).substr(2), text)));
    if (text.size() > 2 && text.compare(0, 2, "i:") == 0) {
        std::string_view rest = std::string_view(text).substr(2);
        const auto s1 = rest.find('/');
        const auto s2 = s1 == std::string_view::npos ? s1 : rest.find('/', s1 + 1);
        if (s2 == std::string_view::npos) throw GraphError("malformed vertex '" + text + "'");
        const int u = parse_int(rest.substr(0, s1), text);
        const int v = parse_int(rest.substr(s1 + 1, s2 - s1 - 1), text);
        const int i = parse_int(rest.substr(s2 + 1), text);
        const int j = base_.edge_index(u, v);
        if (j < 0) throw GraphError("no thread between " + std::to_string(u) + " and " + std::to_string(v));
        if (i <= 0 || i >= length(j)) throw GraphError("inner offset out of range in '" + text + "'");
        return thread_vertex(u, v, i);
    }
    throw GraphError("malformed vertex '" + text + "'");
}

DistanceTable::DistanceTable(const SubdividedGraph& g) : n_(g.vertex_count()), data_(n_ * n_) {
    for (Vertex x = 0; x < n_; ++x)
        for (Vertex y = x; y < n_; ++y) {
            const auto d = static_cast<std::uint16_t>(g.distance(x, y));
            data_[x * n_ + y] = d;
            data_[y * n_ + x] = d;
        }
}

}  // namespace locator
