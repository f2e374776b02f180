#include "locator/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "locator/enumeration.hpp"
#include "locator/exact_solver.hpp"
#include "locator/graph_io.hpp"
#include "locator/matching_strategy.hpp"
#include "locator/simple_strategies.hpp"
#include "locator/unequal_strategy.hpp"
#include "locator/verification.hpp"

namespace locator {

using nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

std::vector<int> parse_lengths(const std::string& arg, const Graph& g) {
    std::vector<int> out;
    if (arg.find_first_not_of("0123456789, ") == std::string::npos) {
        std::stringstream ss(arg);
        std::string item;
        while (std::getline(ss, item, ','))
            if (item.find_first_not_of(' ') != std::string::npos) out.push_back(std::stoi(item));
        if (out.size() != g.edge_count())
            throw ConfigError("--lengths lists " + std::to_string(out.size()) + " values for " + std::to_string(g.edge_count()) + " edges");
        return out;
    }
    std::map<Edge, int> by_edge;
    std::istringstream in(read_file(arg));
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        int u, v, l;
        if (!(ls >> u)) continue;
        if (!(ls >> v >> l)) throw ParseError(lineno, "expected 'u v L'");
        if (!g.adjacent(u, v)) throw ParseError(lineno, "not an edge of the graph");
        by_edge[Edge(u, v)] = l;
    }
    for (const Edge& e : g.edges()) {
        auto it = by_edge.find(e);
        if (it == by_edge.end()) throw ConfigError("no length given for edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
        out.push_back(it->second);
    }
    return out;
}

ordered_json config_json(const RunConfig& c) {
    ordered_json j;
    j["command"] = c.command;
    if (!c.graph_path.empty()) j["graph"] = c.graph_path;
    if (c.m) j["m"] = *c.m;
    if (!c.lengths.empty()) j["lengths"] = c.lengths;
    if (c.command == "simulate" || c.command == "verify") {
        j["strategy"] = c.strategy;
        j["robber"] = c.robber;
    }
    j["bound"] = c.bound;
    j["override_budget"] = c.override_budget;
    if (c.command == "check-mmm-lemma") j["r"] = c.r;
    if (c.command == "sweep") {
        j["max_n"] = c.max_n;
        j["ms"] = c.ms;
    }
    return j;
}

ordered_json lengths_json(const SubdividedGraph& sg) {
    ordered_json j = ordered_json::array();
    for (std::size_t e = 0; e < sg.base().edges().size(); ++e)
        j.push_back({sg.base().edges()[e].u, sg.base().edges()[e].v, sg.lengths()[e]});
    return j;
}

ordered_json edges_json(const std::vector<Edge>& edges) {
    ordered_json j = ordered_json::array();
    for (const Edge& e : edges) j.push_back({e.u, e.v});
    return j;
}

bool is_complete(const Graph& g) { return static_cast<int>(g.edge_count()) == g.n() * (g.n() - 1) / 2; }

bool is_balanced_biclique(const Graph& g) {
    if (g.n() % 2 || g.n() == 0) return false;
    const int r = g.n() / 2;
    if (static_cast<int>(g.edge_count()) != r * r) return false;
    const auto& c = canonical_form(g);
    return c == canonical_form(graphs::complete_bipartite(r, r));
}

ordered_json trace_json(const SubdividedGraph& g, const GameTrace& trace) {
    ordered_json rounds = ordered_json::array();
    std::istringstream in(trace_to_jsonl(g, trace));
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) rounds.push_back(ordered_json::parse(line));
    return rounds;
}

struct Loaded {
    Graph graph;
    std::optional<std::vector<int>> file_lengths;
};

Loaded load_graph(const RunConfig& c) {
    if (c.graph_path.empty()) throw ConfigError("--graph is required for " + c.command);
    GraphFile f = parse_graph_file(c.graph_path);
    return {std::move(f.graph), std::move(f.lengths)};
}

int cmd_solve(const RunConfig& c, ordered_json& result) {
    auto [g, fl] = load_graph(c);
    const SubdividedGraph sg = subdivision_for(c, g, fl);
    SolverOptions opt;
    opt.override_budget = c.override_budget;
    const SolveResult r = decide_locatable(sg, opt);
    result["vertices"] = sg.vertex_count();
    result["locatable"] = r.locatable;
    result["capture_bound"] = r.capture_bound ? ordered_json(*r.capture_bound) : ordered_json(nullptr);
    result["states_explored"] = r.states_explored;
    if (!r.locatable) {
        const SafeFamily fam = evasion_certificate(r);
        result["certificate_verified"] = verify_certificate(sg, fam);
        ordered_json lines = ordered_json::array();
        std::istringstream in(format_certificate(sg, fam));
        std::string line;
        while (std::getline(in, line)) lines.push_back(line);
        result["certificate"] = lines;
    }
    return 0;
}

int cmd_simulate(const RunConfig& c, ordered_json& result) {
    auto [g, fl] = load_graph(c);
    const SubdividedGraph sg = subdivision_for(c, g, fl);
    auto strategy = make_strategy(c.strategy, sg, c);
    result["lengths"] = lengths_json(sg);
    GameTrace trace;
    if (starts_with(c.robber, "random:")) {
        RandomRobber robber(std::stoull(c.robber.substr(7)));
        trace = play(sg, *strategy, robber, c.bound);
    } else if (starts_with(c.robber, "script:")) {
        // Positions in textual form; "|" opens a tail that repeats forever and
        // must end on the position written just before it.
        std::istringstream in(read_file(c.robber.substr(7)));
        std::vector<Vertex> pos;
        std::optional<std::size_t> cycle;
        for (std::string line; std::getline(in, line);) {
            if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
            std::istringstream ls(line);
            for (std::string tok; ls >> tok;) {
                if (tok == "|") cycle = pos.empty() ? 0 : pos.size() - 1;
                else pos.push_back(sg.parse_vertex(tok));
            }
        }
        if (pos.empty()) throw ConfigError("robber script lists no positions");
        ScriptedRobber robber(pos, cycle);
        trace = play(sg, *strategy, robber, c.bound);
    } else if (c.robber == "adversarial") {
        VerifyOptions vo;
        vo.bound = c.bound;
        vo.override_budget = c.override_budget;
        const Verdict v = adversarial_verify(sg, *strategy, vo);
        result["verdict"] = verdict_name(v.kind);
        if (v.witness.empty()) return 0;
        trace = replay_witness(sg, *strategy, v);
    } else {
        throw ConfigError("unknown robber selector '" + c.robber + "'");
    }
    result["trace"] = trace_json(sg, trace);
    return trace.outcome == Outcome::StrategyError ? 1 : 0;
}

int cmd_verify(const RunConfig& c, ordered_json& result) {
    auto [g, fl] = load_graph(c);
    const SubdividedGraph sg = subdivision_for(c, g, fl);
    if (c.robber != "adversarial") throw ConfigError("verify explores every robber play; use --robber adversarial");
    auto strategy = make_strategy(c.strategy, sg, c);
    VerifyOptions vo;
    vo.bound = c.bound;
    vo.override_budget = c.override_budget;
    const Verdict v = adversarial_verify(sg, *strategy, vo);
    result["vertices"] = sg.vertex_count();
    result["verdict"] = ordered_json::parse(verdict_to_json(sg, v));
    return v.kind == VerdictKind::AllCaptured ? 0 : 1;
}

int cmd_mmm(const RunConfig& c, ordered_json& result) {
    auto [g, fl] = load_graph(c);
    (void)fl;
    const Matching mm = min_maximal_matching(g);
    result["n"] = g.n();
    result["mmm"] = mm.size();
    result["matching"] = edges_json(mm.edges());
    result["unmatched"] = mm.unmatched();
    if (c.m) {
        const int m = *c.m;
        std::string route;
        if (m >= 12 && m >= mm.size() + 1)
            route = "matching strategy";
        else if ((is_complete(g) || is_balanced_biclique(g)) && 2 * m >= g.n())
            route = "delegated to cited work";
        else
            route = "not covered";
        result["m"] = m;
        result["route"] = route;
    }
    return 0;
}

int cmd_check_mmm_lemma(const RunConfig& c, ordered_json& result) {
    const MmmLemmaReport rep = check_mmm_lemma(c.r);
    result = ordered_json::parse(mmm_report_to_json(rep));
    return rep.holds ? 0 : 1;
}

int cmd_sweep(const RunConfig& c, ordered_json& result) {
    std::vector<int> ms = c.ms;
    if (ms.empty()) ms = c.m ? std::vector<int>{*c.m} : std::vector<int>{12, 13};
    struct Job {
        Graph g;
        int m;
    };
    std::vector<Job> jobs;
    for (int n = 1; n <= c.max_n; ++n)
        for (const Graph& g : enumerate_connected_graphs(n))
            for (int m : ms) jobs.push_back({g, m});

    std::vector<ordered_json> rows(jobs.size());
    std::vector<int> failed(jobs.size(), 0);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < jobs.size();) {
            const Job& job = jobs[i];
            ordered_json row;
            row["graph"] = job.g.to_string();
            row["n"] = job.g.n();
            row["m"] = job.m;
            try {
                const Matching mm = min_maximal_matching(job.g);
                row["k"] = mm.size();
                const SubdividedGraph sg = SubdividedGraph::uniform(job.g, job.m);
                auto s = build_matching_strategy(job.g, mm, job.m);
                VerifyOptions vo;
                vo.bound = c.bound;
                vo.override_budget = c.override_budget;
                const Verdict v = adversarial_verify(sg, *s, vo);
                row["verdict"] = verdict_name(v.kind);
                row["max_rounds"] = v.max_rounds;
                row["states_explored"] = v.states_explored;
                auto& mx = row["metrics"] = ordered_json::object();
                for (const auto& [k, val] : v.metric_maxima) mx[k] = val;
                failed[i] = v.kind != VerdictKind::AllCaptured;
            } catch (const std::exception& e) {
                row["verdict"] = "error";
                row["error"] = e.what();
                failed[i] = 1;
            }
            rows[i] = std::move(row);
        }
    };
    const int nt = std::min<int>(worker_count(c.threads), static_cast<int>(std::max<std::size_t>(jobs.size(), 1)));
    std::vector<std::thread> pool;
    for (int t = 1; t < nt; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    result["rows"] = rows;
    const int bad = static_cast<int>(std::count(failed.begin(), failed.end(), 1));
    result["all_captured"] = bad == 0;
    return bad == 0 ? 0 : 1;
}

}  // namespace

SubdividedGraph subdivision_for(const RunConfig& config, const Graph& g, const std::optional<std::vector<int>>& file_lengths) {
    if (!config.lengths.empty()) return SubdividedGraph(g, parse_lengths(config.lengths, g));
    if (config.m) return SubdividedGraph::uniform(g, *config.m);
    if (file_lengths) return SubdividedGraph(g, *file_lengths);
    throw ConfigError("give --m, --lengths, or per-edge lengths in the graph file");
}

std::unique_ptr<CopStrategy> make_strategy(const std::string& selector, const SubdividedGraph& sg, const RunConfig& config) {
    const Graph& g = sg.base();
    if (selector == "matching") {
        if (!sg.uniform_length()) throw ConfigError("the matching strategy needs an equal subdivision (--m)");
        return build_matching_strategy(g, min_maximal_matching(g), *sg.uniform_length());
    }
    if (selector == "unequal") return build_unequal_strategy(g, sg.lengths());
    if (selector == "optimal") {
        SolverOptions opt;
        opt.override_budget = config.override_budget;
        const SolveResult r = decide_locatable(sg, opt);
        if (!r.locatable) throw ConfigError("no optimal strategy: the graph is not locatable");
        return extract_strategy(r);
    }
    if (starts_with(selector, "always:")) {
        const std::string v = selector.substr(7);
        const Vertex x = v.find(':') != std::string::npos ? sg.parse_vertex(v) : static_cast<Vertex>(std::stoul(v));
        if (x >= sg.vertex_count()) throw ConfigError("probe vertex outside the graph");
        return std::make_unique<AlwaysProbe>(x);
    }
    throw ConfigError("unknown strategy selector '" + selector + "'");
}

int worker_count(int requested) {
    int n = requested > 0 ? requested : static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("LOCATOR_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0) n = std::min(n, cap);
    }
    return std::max(n, 1);
}

int run(const RunConfig& config, std::ostream& out) {
    ordered_json report;
    report["format_version"] = kReportFormatVersion;
    report["config"] = config_json(config);
    ordered_json result;
    int status = 0;
    try {
        if (config.command == "solve") status = cmd_solve(config, result);
        else if (config.command == "simulate") status = cmd_simulate(config, result);
        else if (config.command == "verify") status = cmd_verify(config, result);
        else if (config.command == "mmm") status = cmd_mmm(config, result);
        else if (config.command == "check-mmm-lemma") status = cmd_check_mmm_lemma(config, result);
        else if (config.command == "sweep") status = cmd_sweep(config, result);
        else throw ConfigError("unknown command '" + config.command + "'");
        report["result"] = result;
    } catch (const ResourceError& e) {
        report["error"] = {{"kind", "resource"}, {"message", e.what()}};
        status = 3;
    } catch (const std::exception& e) {
        report["error"] = {{"kind", "input"}, {"message", e.what()}};
        status = 2;
    }
    const std::string text = report.dump(2) + "\n";
    out << text;
    if (!config.json_out.empty()) {
        std::ofstream f(config.json_out);
        if (!f) throw ConfigError("cannot write " + config.json_out);
        f << text;
    }
    return status;
}

}  // namespace locator
