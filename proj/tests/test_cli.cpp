#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "locator/cli.hpp"

using namespace locator;
using nlohmann::json;

namespace {

std::string temp_graph(const std::string& name, const std::string& text) {
    const std::string path = std::string(LOCATOR_TEST_TMP) + "/" + name;
    std::ofstream(path) << text;
    return path;
}

json run_json(const RunConfig& c, int& status) {
    std::ostringstream out;
    status = run(c, out);
    return json::parse(out.str());
}

}  // namespace

TEST_CASE("solve report") {
    RunConfig c;
    c.command = "solve";
    c.graph_path = temp_graph("claw.txt", "4\n0 1\n0 2\n0 3\n");
    c.m = 1;
    int status = 0;
    const json j = run_json(c, status);
    CHECK(status == 0);
    CHECK(j["format_version"] == kReportFormatVersion);
    CHECK(j["config"]["m"] == 1);
    CHECK(j["result"]["capture_bound"] == 2);
}

TEST_CASE("verify exits nonzero on evasion") {
    RunConfig c;
    c.command = "verify";
    c.graph_path = temp_graph("claw2.txt", "4\n0 1\n0 2\n0 3\n");
    c.m = 1;
    c.strategy = "always:b:0";
    int status = 0;
    const json j = run_json(c, status);
    CHECK(status == 1);
    CHECK(j["result"]["verdict"]["kind"] == "EvasionFound");
}

TEST_CASE("per-edge lengths from a comma list and from the graph file") {
    RunConfig c;
    c.command = "verify";
    c.strategy = "unequal";
    c.graph_path = temp_graph("p3.txt", "3\n0 1 6\n1 2 7\n");
    int status = 0;
    CHECK(run_json(c, status)["result"]["verdict"]["kind"] == "AllCaptured");
    c.lengths = "8,9";
    const json j = run_json(c, status);
    CHECK(status == 0);
    CHECK(j["config"]["lengths"] == "8,9");
}

TEST_CASE("mmm routes") {
    RunConfig c;
    c.command = "mmm";
    c.graph_path = temp_graph("k4.txt", "4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    c.m = 12;
    int status = 0;
    json j = run_json(c, status);
    CHECK(j["result"]["mmm"] == 2);
    CHECK(j["result"]["route"] == "matching strategy");
    c.m = 2;
    CHECK(run_json(c, status)["result"]["route"] == "delegated to cited work");
    c.graph_path = temp_graph("c6.txt", "6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n");
    c.m = 2;
    CHECK(run_json(c, status)["result"]["route"] == "not covered");
}

TEST_CASE("bad input is reported, not thrown") {
    RunConfig c;
    c.command = "simulate";
    c.graph_path = temp_graph("k3.txt", "3\n0 1\n0 2\n1 2\n");
    c.m = 12;
    c.strategy = "nonsense";
    int status = 0;
    const json j = run_json(c, status);
    CHECK(status == 2);
    CHECK(j["error"]["kind"] == "input");
}

TEST_CASE("simulate with a random robber yields a trace") {
    RunConfig c;
    c.command = "simulate";
    c.graph_path = temp_graph("k3b.txt", "3\n0 1\n0 2\n1 2\n");
    c.m = 12;
    c.robber = "random:4";
    int status = 0;
    const json j = run_json(c, status);
    CHECK(status == 0);
    CHECK(j["result"]["trace"].back()["outcome"] == "captured");
    CHECK(j["result"]["lengths"].size() == 3);
}
