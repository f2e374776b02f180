#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "locator/graph.hpp"

namespace locator {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Parsed graph file. `lengths` is indexed like Graph::edges() and present
/// only when every edge line carries a third column.
struct GraphFile {
    Graph graph;
    std::optional<std::vector<int>> lengths;
};

/// Format: first line "n", then one "u v" or "u v L" per edge, 0-indexed.
/// '#' starts a comment; blank lines are ignored.
GraphFile parse_graph_text(const std::string& text);
GraphFile parse_graph_file(const std::string& path);

/// Inverse of parse_graph_text (lengths written when given).
std::string format_graph_text(const Graph& g, const std::vector<int>* lengths = nullptr);

}  // namespace locator
