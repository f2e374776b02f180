#include "locator/graph.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace locator {

Graph::Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n)) {
    if (n < 0) throw GraphError("negative vertex count");
}

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges) : Graph(n) {
    for (auto [a, b] : edges) add_edge(a, b);
}

void Graph::add_edge(int a, int b) {
    if (a < 0 || b < 0 || a >= n_ || b >= n_)
        throw GraphError("edge " + std::to_string(a) + "-" + std::to_string(b) + " out of range for n=" + std::to_string(n_));
    if (a == b) throw GraphError("loop at vertex " + std::to_string(a));
    Edge e(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it != edges_.end() && *it == e)
        throw GraphError("parallel edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
    edges_.insert(it, e);
    auto& na = adj_[static_cast<std::size_t>(a)];
    auto& nb = adj_[static_cast<std::size_t>(b)];
    na.insert(std::lower_bound(na.begin(), na.end(), b), b);
    nb.insert(std::lower_bound(nb.begin(), nb.end(), a), a);
}

bool Graph::adjacent(int a, int b) const {
    if (a < 0 || a >= n_) return false;
    const auto& na = adj_[static_cast<std::size_t>(a)];
    return std::binary_search(na.begin(), na.end(), b);
}

int Graph::edge_index(int a, int b) const {
    if (a == b) return -1;
    Edge e(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e) return -1;
    return static_cast<int>(it - edges_.begin());
}

bool Graph::connected() const {
    if (n_ <= 1) return true;
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : neighbors(x)) {
            if (!seen[static_cast<std::size_t>(y)]) {
                seen[static_cast<std::size_t>(y)] = 1;
                ++reached;
                stack.push_back(y);
            }
        }
    }
    return reached == n_;
}

std::string Graph::to_string() const {
    std::ostringstream os;
    os << n_ << ":";
    for (const auto& e : edges_) os << ' ' << e.u << '-' << e.v;
    return os.str();
}

namespace graphs {

Graph path(int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

Graph cycle(int n) {
    Graph g = path(n);
    if (n >= 3) g.add_edge(0, n - 1);
    return g;
}

Graph complete(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

Graph complete_bipartite(int r, int s) {
    Graph g(r + s);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < s; ++j) g.add_edge(i, r + j);
    return g;
}

Graph star(int leaves) { return complete_bipartite(1, leaves); }

Graph paw() { return Graph(4, {{0, 1}, {1, 2}, {0, 2}, {0, 3}}); }

}  // namespace graphs

Matching::Matching(const Graph& g, std::vector<Edge> edges) : edges_(std::move(edges)), mate_(static_cast<std::size_t>(g.n()), -1) {
    std::sort(edges_.begin(), edges_.end());
    for (const auto& e : edges_) {
        if (!g.adjacent(e.u, e.v))
            throw GraphError("matching edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " is not an edge of the graph");
        if (mate_[static_cast<std::size_t>(e.u)] >= 0 || mate_[static_cast<std::size_t>(e.v)] >= 0)
            throw GraphError("matching edges share a vertex");
        mate_[static_cast<std::size_t>(e.u)] = e.v;
        mate_[static_cast<std::size_t>(e.v)] = e.u;
    }
    for (int x = 0; x < g.n(); ++x)
        if (mate_[static_cast<std::size_t>(x)] < 0) unmatched_.push_back(x);
}

bool Matching::is_maximal(const Graph& g) const {
    for (const auto& e : g.edges())
        if (!matched(e.u) && !matched(e.v)) return false;
    return true;
}

Matching greedy_maximal_matching(const Graph& g, const std::vector<Edge>& order) {
    std::vector<char> used(static_cast<std::size_t>(g.n()), 0);
    std::vector<Edge> chosen;
    auto take = [&](const Edge& e) {
        if (g.edge_index(e.u, e.v) < 0) throw GraphError("ordering contains a non-edge");
        if (!used[static_cast<std::size_t>(e.u)] && !used[static_cast<std::size_t>(e.v)]) {
            used[static_cast<std::size_t>(e.u)] = used[static_cast<std::size_t>(e.v)] = 1;
            chosen.push_back(e);
        }
    };
    for (const auto& e : order) take(e);
    for (const auto& e : g.edges()) take(e);
    return Matching(g, std::move(chosen));
}

Matching greedy_maximal_matching(const Graph& g) { return greedy_maximal_matching(g, g.edges()); }

Matching min_maximal_matching(const Graph& g) {
    const int n = g.n();
    std::vector<int> mate(static_cast<std::size_t>(n), -1);
    std::vector<Edge> current;
    std::vector<Edge> best = greedy_maximal_matching(g).edges();

    // Any maximal matching must cover an endpoint of every edge, so branch on
    // the first uncovered edge: match its lower end, or match its upper end.
    std::function<void()> search = [&]() {
        if (current.size() >= best.size()) return;
        const Edge* open = nullptr;
        for (const auto& e : g.edges()) {
            if (mate[static_cast<std::size_t>(e.u)] < 0 && mate[static_cast<std::size_t>(e.v)] < 0) {
                open = &e;
                break;
            }
        }
        if (!open) {
            best = current;
            return;
        }
        if (current.size() + 1 >= best.size()) return;
        const Edge e = *open;
        for (int end : {e.u, e.v}) {
            for (int w : g.neighbors(end)) {
                if (mate[static_cast<std::size_t>(w)] >= 0) continue;
                // Skip duplicates: matching e.v to e.u is covered by the first branch.
                if (end == e.v && w == e.u) continue;
                mate[static_cast<std::size_t>(end)] = w;
                mate[static_cast<std::size_t>(w)] = end;
                current.emplace_back(end, w);
                search();
                current.pop_back();
                mate[static_cast<std::size_t>(end)] = mate[static_cast<std::size_t>(w)] = -1;
            }
        }
    };
    search();
    return Matching(g, best);
}

}  // namespace locator
