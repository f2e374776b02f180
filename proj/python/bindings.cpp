#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "locator/enumeration.hpp"
#include "locator/exact_solver.hpp"
#include "locator/graph_io.hpp"
#include "locator/matching_strategy.hpp"
#include "locator/simple_strategies.hpp"
#include "locator/unequal_strategy.hpp"
#include "locator/verification.hpp"

namespace py = pybind11;
using namespace locator;

namespace {

py::object loads(const std::string& text) { return py::module_::import("json").attr("loads")(text); }

py::dict verdict_dict(const SubdividedGraph& g, const Verdict& v) { return loads(verdict_to_json(g, v)); }

}  // namespace

PYBIND11_MODULE(pylocator, m) {
    m.doc() = "Robber Locating game on graph subdivisions";

    py::register_exception<StrategyError>(m, "StrategyError");
    py::register_exception<ResourceError>(m, "ResourceError");
    py::register_exception<ProtocolError>(m, "ProtocolError");
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    py::class_<Graph>(m, "Graph")
        .def(py::init<int, const std::vector<std::pair<int, int>>&>(), py::arg("n"), py::arg("edges"))
        .def_property_readonly("n", &Graph::n)
        .def_property_readonly("edges", [](const Graph& g) {
            std::vector<std::pair<int, int>> out;
            for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v);
            return out;
        })
        .def("connected", &Graph::connected)
        .def("__repr__", &Graph::to_string);

    m.def("parse_graph", [](const std::string& text) {
        GraphFile f = parse_graph_text(text);
        return py::make_tuple(f.graph, f.lengths);
    });

    py::class_<SubdividedGraph>(m, "SubdividedGraph")
        .def(py::init<Graph, std::vector<int>>(), py::arg("base"), py::arg("lengths"))
        .def_static("uniform", &SubdividedGraph::uniform, py::arg("base"), py::arg("m"))
        .def_property_readonly("vertex_count", &SubdividedGraph::vertex_count)
        .def_property_readonly("lengths", &SubdividedGraph::lengths)
        .def("distance", &SubdividedGraph::distance)
        .def("neighbors", &SubdividedGraph::neighbors)
        .def("format_vertex", &SubdividedGraph::format_vertex)
        .def("parse_vertex", &SubdividedGraph::parse_vertex);

    m.def("min_maximal_matching", [](const Graph& g) {
        std::vector<std::pair<int, int>> out;
        for (const Edge& e : min_maximal_matching(g).edges()) out.emplace_back(e.u, e.v);
        return out;
    });

    m.def(
        "solve",
        [](const SubdividedGraph& g, bool override_budget) {
            SolverOptions o;
            o.override_budget = override_budget;
            SolveResult r;
            {
                py::gil_scoped_release release;
                r = decide_locatable(g, o);
            }
            py::dict d;
            d["locatable"] = r.locatable;
            d["capture_bound"] = r.capture_bound;
            d["states_explored"] = r.states_explored;
            if (!r.locatable) {
                const SafeFamily f = evasion_certificate(r);
                d["certificate"] = format_certificate(g, f);
                d["certificate_verified"] = verify_certificate(g, f);
            }
            return d;
        },
        py::arg("graph"), py::arg("override_budget") = false);

    m.def(
        "verify",
        [](const SubdividedGraph& g, const std::string& strategy, int bound) {
            std::unique_ptr<CopStrategy> s;
            if (strategy == "matching") {
                if (!g.uniform_length()) throw std::invalid_argument("the matching strategy needs an equal subdivision");
                s = build_matching_strategy(g.base(), min_maximal_matching(g.base()), *g.uniform_length());
            } else if (strategy == "unequal") {
                s = build_unequal_strategy(g.base(), g.lengths());
            } else if (strategy == "optimal") {
                s = extract_strategy(decide_locatable(g));
            } else {
                throw std::invalid_argument("unknown strategy '" + strategy + "'");
            }
            VerifyOptions o;
            o.bound = bound;
            Verdict v;
            {
                py::gil_scoped_release release;
                v = adversarial_verify(g, *s, o);
            }
            return verdict_dict(g, v);
        },
        py::arg("graph"), py::arg("strategy") = "matching", py::arg("bound") = 10'000);

    m.def(
        "simulate",
        [](const SubdividedGraph& g, const std::vector<Vertex>& probes, std::uint64_t seed, int max_rounds) {
            RoundRobinProbe cop(probes);
            RandomRobber robber(seed);
            const GameTrace t = play(g, cop, robber, max_rounds);
            return trace_to_jsonl(g, t);
        },
        py::arg("graph"), py::arg("probes"), py::arg("seed") = 0, py::arg("max_rounds") = 100);

    m.def("check_mmm_lemma", [](int r) { return loads(mmm_report_to_json(check_mmm_lemma(r))); }, py::arg("r"));
    m.def("connected_graph_count", [](int v) { return enumerate_connected_graphs(v).size(); }, py::arg("v"));
}
