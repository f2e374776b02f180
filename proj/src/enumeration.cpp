#include "locator/enumeration.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace locator {

namespace {

using Adj = std::vector<std::uint32_t>;  // row bitmasks

Adj rows_of(const Graph& g) {
    Adj a(static_cast<std::size_t>(g.n()), 0);
    for (const Edge& e : g.edges()) {
        a[static_cast<std::size_t>(e.u)] |= 1U << e.v;
        a[static_cast<std::size_t>(e.v)] |= 1U << e.u;
    }
    return a;
}

/// Stable colour refinement with isomorphism-invariant colour ids.
std::vector<int> refine_colours(const Adj& a) {
    const int n = static_cast<int>(a.size());
    std::vector<int> colour(static_cast<std::size_t>(n), 0);
    for (int round = 0; round <= n; ++round) {
        std::vector<std::pair<int, std::vector<int>>> sig(static_cast<std::size_t>(n));
        for (int x = 0; x < n; ++x) {
            sig[x].first = colour[x];
            for (int y = 0; y < n; ++y)
                if (a[x] >> y & 1U) sig[x].second.push_back(colour[y]);
            std::sort(sig[x].second.begin(), sig[x].second.end());
        }
        std::vector<std::pair<int, std::vector<int>>> distinct(sig.begin(), sig.end());
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        std::vector<int> next(static_cast<std::size_t>(n));
        for (int x = 0; x < n; ++x)
            next[x] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), sig[x]) - distinct.begin());
        if (next == colour) break;
        colour = std::move(next);
    }
    return colour;
}

/// Upper-triangle code of `a` under labelling perm (new index i holds old vertex perm[i]).
std::uint64_t code(const Adj& a, const std::vector<int>& perm) {
    const int n = static_cast<int>(perm.size());
    std::uint64_t c = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) c = (c << 1) | (a[perm[i]] >> perm[j] & 1U);
    return c;
}

std::vector<int> canonical_perm(const Adj& a) {
    const int n = static_cast<int>(a.size());
    const auto colour = refine_colours(a);
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return colour[x] < colour[y]; });
    // Cells: maximal runs of equal colour; permute within each.
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < n;) {
        int j = i;
        while (j < n && colour[order[j]] == colour[order[i]]) ++j;
        cells.emplace_back(i, j);
        i = j;
    }
    std::vector<int> best = order;
    std::uint64_t best_code = code(a, order);
    std::vector<int> cur = order;
    // Odometer over per-cell permutations.
    for (auto& [s, e] : cells) std::sort(cur.begin() + s, cur.begin() + e);
    while (true) {
        const std::uint64_t c = code(a, cur);
        if (c < best_code) {
            best_code = c;
            best = cur;
        }
        std::size_t k = 0;
        for (; k < cells.size(); ++k) {
            auto [s, e] = cells[k];
            if (std::next_permutation(cur.begin() + s, cur.begin() + e)) break;
        }
        if (k == cells.size()) break;
    }
    return best;
}

Graph relabel(const Graph& g, const std::vector<int>& perm) {
    std::vector<int> pos(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) pos[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
    std::vector<std::pair<int, int>> edges;
    for (const Edge& e : g.edges()) edges.emplace_back(pos[static_cast<std::size_t>(e.u)], pos[static_cast<std::size_t>(e.v)]);
    std::sort(edges.begin(), edges.end(), [](auto x, auto y) { return std::minmax(x.first, x.second) < std::minmax(y.first, y.second); });
    return Graph(g.n(), edges);
}

bool is_complete(const Graph& g) { return static_cast<int>(g.edge_count()) == g.n() * (g.n() - 1) / 2; }

bool is_balanced_complete_bipartite(const Graph& g) {
    const int n = g.n();
    if (n % 2) return false;
    const int r = n / 2;
    if (static_cast<int>(g.edge_count()) != r * r) return false;
    std::vector<int> side(static_cast<std::size_t>(n), -1);
    side[0] = 0;
    for (bool changed = true; changed;) {
        changed = false;
        for (const Edge& e : g.edges()) {
            if (side[e.u] >= 0 && side[e.v] < 0) side[e.v] = 1 - side[e.u], changed = true;
            if (side[e.v] >= 0 && side[e.u] < 0) side[e.u] = 1 - side[e.v], changed = true;
        }
    }
    int left = 0;
    for (int s : side) {
        if (s < 0) return false;
        left += s == 0;
    }
    if (left != r) return false;
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            if (side[x] != side[y] && !g.adjacent(x, y)) return false;
    return true;
}

}  // namespace

Graph canonical_form(const Graph& g) {
    if (g.n() > 8) throw std::invalid_argument("canonical_form supports at most 8 vertices");
    return relabel(g, canonical_perm(rows_of(g)));
}

std::string adjacency_bits(const Graph& g) {
    std::string s;
    for (int i = 0; i < g.n(); ++i)
        for (int j = i + 1; j < g.n(); ++j) s += g.adjacent(i, j) ? '1' : '0';
    return s;
}

std::vector<std::string> adjacency_rows(const Graph& g) {
    std::vector<std::string> rows;
    for (int i = 0; i < g.n(); ++i) {
        std::string r;
        for (int j = 0; j < g.n(); ++j) r += g.adjacent(i, j) ? '1' : '0';
        rows.push_back(r);
    }
    return rows;
}

std::vector<Graph> enumerate_connected_graphs(int v, bool iso_classes) {
    if (v < 1) throw std::invalid_argument("vertex count must be positive");
    if (iso_classes && v > 8) throw std::invalid_argument("isomorphism classes are enumerated for at most 8 vertices");
    if (!iso_classes && v > 7) throw std::invalid_argument("labelled graphs are enumerated for at most 7 vertices");

    if (!iso_classes) {
        std::vector<std::pair<int, int>> slots;
        for (int i = 0; i < v; ++i)
            for (int j = i + 1; j < v; ++j) slots.emplace_back(i, j);
        std::vector<Graph> out;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
            std::vector<std::pair<int, int>> edges;
            for (std::size_t b = 0; b < slots.size(); ++b)
                if (mask >> b & 1U) edges.push_back(slots[b]);
            Graph g(v, edges);
            if (g.connected()) out.push_back(std::move(g));
        }
        return out;
    }

    // Every connected graph has a vertex whose removal leaves it connected,
    // so extending each class on v-1 vertices by one vertex reaches all classes.
    std::vector<Graph> level = {Graph(1)};
    for (int n = 2; n <= v; ++n) {
        std::map<std::string, Graph> next;
        for (const Graph& h : level) {
            for (std::uint32_t nb = 1; nb < (1U << (n - 1)); ++nb) {
                Graph g(n);
                for (const Edge& e : h.edges()) g.add_edge(e.u, e.v);
                for (int x = 0; x < n - 1; ++x)
                    if (nb >> x & 1U) g.add_edge(x, n - 1);
                Graph c = canonical_form(g);
                next.try_emplace(adjacency_bits(c), std::move(c));
            }
        }
        level.clear();
        for (auto& [k, g] : next) level.push_back(std::move(g));
    }
    return level;
}

MmmLemmaReport check_mmm_lemma(int r) {
    if (r < 1 || r > 4) throw std::invalid_argument("r must be between 1 and 4");
    MmmLemmaReport rep;
    rep.r = r;
    const auto classes = enumerate_connected_graphs(2 * r);
    rep.classes_checked = classes.size();
    bool complete_seen = false, bipartite_seen = false, other_seen = false;
    for (const Graph& g : classes) {
        if (min_maximal_matching(g).size() != r) continue;
        ExtremalGraph e;
        const bool kc = is_complete(g), kb = is_balanced_complete_bipartite(g);
        e.name = kc && kb ? "K_2 = K_{1,1}" : kc ? "K_" + std::to_string(2 * r) : kb ? "K_{" + std::to_string(r) + "," + std::to_string(r) + "}" : "other";
        complete_seen = complete_seen || kc;
        bipartite_seen = bipartite_seen || kb;
        other_seen = other_seen || (!kc && !kb);
        e.adjacency = adjacency_rows(g);
        rep.extremal.push_back(std::move(e));
    }
    rep.holds = complete_seen && bipartite_seen && !other_seen;
    return rep;
}

std::string mmm_report_to_json(const MmmLemmaReport& report) {
    nlohmann::ordered_json j;
    j["r"] = report.r;
    j["classes_checked"] = report.classes_checked;
    j["holds"] = report.holds;
    auto& list = j["extremal"] = nlohmann::ordered_json::array();
    for (const auto& e : report.extremal) list.push_back({{"name", e.name}, {"adjacency", e.adjacency}});
    return j.dump();
}

}  // namespace locator
