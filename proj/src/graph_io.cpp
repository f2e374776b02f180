#include "locator/graph_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace locator {

namespace {

std::vector<long long> split_ints(const std::string& line, int lineno) {
    std::istringstream is(line);
    std::vector<long long> out;
    std::string tok;
    while (is >> tok) {
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(tok, &pos);
        } catch (const std::exception&) {
            throw ParseError(lineno, "expected an integer, got '" + tok + "'");
        }
        if (pos != tok.size()) throw ParseError(lineno, "expected an integer, got '" + tok + "'");
        out.push_back(v);
    }
    return out;
}

}  // namespace

GraphFile parse_graph_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::optional<int> n;
    Graph g;
    std::map<Edge, int> lengths;
    int with_length = 0, without_length = 0;
    int header_line = 0;

    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto fields = split_ints(line, lineno);
        if (fields.empty()) continue;
        if (!n) {
            if (fields.size() != 1 || fields[0] < 1) throw ParseError(lineno, "expected a positive vertex count");
            n = static_cast<int>(fields[0]);
            header_line = lineno;
            g = Graph(*n);
            continue;
        }
        if (fields.size() != 2 && fields.size() != 3) throw ParseError(lineno, "expected 'u v' or 'u v L'");
        const int u = static_cast<int>(fields[0]), v = static_cast<int>(fields[1]);
        try {
            g.add_edge(u, v);
        } catch (const GraphError& e) {
            throw ParseError(lineno, e.what());
        }
        if (fields.size() == 3) {
            if (fields[2] < 1) throw ParseError(lineno, "thread length must be positive");
            lengths[Edge(u, v)] = static_cast<int>(fields[2]);
            ++with_length;
        } else {
            ++without_length;
        }
        if (with_length && without_length) throw ParseError(lineno, "edge lines mix with-length and without-length forms");
    }
    if (!n) throw ParseError(lineno, "missing vertex count");
    if (!g.connected()) throw ParseError(header_line, "graph is not connected");

    GraphFile out{g, std::nullopt};
    if (with_length) {
        std::vector<int> ls;
        ls.reserve(g.edge_count());
        for (const auto& e : g.edges()) ls.push_back(lengths.at(e));
        out.lengths = std::move(ls);
    }
    return out;
}

GraphFile parse_graph_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open graph file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_graph_text(ss.str());
}

std::string format_graph_text(const Graph& g, const std::vector<int>* lengths) {
    std::ostringstream os;
    os << g.n() << '\n';
    for (std::size_t j = 0; j < g.edges().size(); ++j) {
        os << g.edges()[j].u << ' ' << g.edges()[j].v;
        if (lengths) os << ' ' << (*lengths)[j];
        os << '\n';
    }
    return os.str();
}

}  // namespace locator
