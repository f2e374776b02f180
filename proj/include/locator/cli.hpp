#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "locator/game.hpp"
#include "locator/graph.hpp"
#include "locator/subdivided_graph.hpp"

namespace locator {

inline constexpr int kReportFormatVersion = 1;

struct RunConfig {
    /// solve | simulate | verify | mmm | check-mmm-lemma | sweep
    std::string command;
    std::string graph_path;
    std::optional<int> m;
    /// File of "u v L" lines, or a comma-separated list in edge order.
    std::string lengths;
    /// matching | unequal | optimal | always:<vertex>
    std::string strategy = "matching";
    /// adversarial | random:<seed> | script:<file>
    std::string robber = "adversarial";
    int bound = 10'000;
    std::string json_out;
    bool override_budget = false;
    int r = 0;
    int max_n = 5;
    std::vector<int> ms;
    /// 0 = hardware concurrency, capped by LOCATOR_THREADS.
    int threads = 0;
};

/// Thrown for configurations that cannot run (bad selector, missing input).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Subdivided graph for a config: per-edge lengths from --lengths or the
/// graph file, else constant --m.
SubdividedGraph subdivision_for(const RunConfig& config, const Graph& g, const std::optional<std::vector<int>>& file_lengths);

/// Builds the selected cop strategy for `sg`.
std::unique_ptr<CopStrategy> make_strategy(const std::string& selector, const SubdividedGraph& sg, const RunConfig& config);

/// Worker count: `requested` (0 = hardware), capped by LOCATOR_THREADS.
int worker_count(int requested);

/// Runs one command, writes the JSON report to `out` (and to json_out when
/// set) and returns the process exit status.
int run(const RunConfig& config, std::ostream& out);

}  // namespace locator
