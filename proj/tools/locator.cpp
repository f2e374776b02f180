#include <iostream>

#include "CLI11.hpp"
#include "locator/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Robber Locating game on graph subdivisions"};
    app.require_subcommand(1);
    locator::RunConfig cfg;

    auto common = [&](CLI::App* sub, bool subdivision) {
        sub->add_option("--graph", cfg.graph_path, "graph file")->check(CLI::ExistingFile);
        if (subdivision) {
            sub->add_option("--m", cfg.m, "constant thread length");
            sub->add_option("--lengths", cfg.lengths, "per-edge lengths: file of 'u v L' lines or comma list in edge order");
        }
        sub->add_option("--bound", cfg.bound, "round / depth bound");
        sub->add_option("--json-out", cfg.json_out, "also write the report here");
        sub->add_flag("--override-budget", cfg.override_budget, "lift the solver and verifier size budgets");
    };

    auto* solve = app.add_subcommand("solve", "decide locatability exactly");
    common(solve, true);
    auto* simulate = app.add_subcommand("simulate", "play one game and print its trace");
    common(simulate, true);
    simulate->add_option("--strategy", cfg.strategy, "matching | unequal | optimal | always:<vertex>");
    simulate->add_option("--robber", cfg.robber, "adversarial | random:<seed> | script:<file>");
    auto* verify = app.add_subcommand("verify", "check a strategy against every robber play");
    common(verify, true);
    verify->add_option("--strategy", cfg.strategy, "matching | unequal | optimal | always:<vertex>");
    verify->add_option("--robber", cfg.robber, "adversarial");
    auto* mmm = app.add_subcommand("mmm", "minimum maximal matching report");
    common(mmm, false);
    mmm->add_option("--m", cfg.m, "thread length to classify");
    auto* lemma = app.add_subcommand("check-mmm-lemma", "extremal graphs for the matching lemma");
    lemma->add_option("R", cfg.r, "half the vertex count")->required()->check(CLI::Range(1, 4));
    lemma->add_option("--json-out", cfg.json_out, "also write the report here");
    auto* sweep = app.add_subcommand("sweep", "verify the matching strategy on every small connected graph");
    sweep->add_option("--max-n", cfg.max_n, "largest vertex count")->check(CLI::Range(1, 7));
    sweep->add_option("--m", cfg.ms, "thread lengths (repeatable)");
    sweep->add_option("--bound", cfg.bound, "depth bound");
    sweep->add_option("--threads", cfg.threads, "worker threads (0 = all cores)");
    sweep->add_option("--json-out", cfg.json_out, "also write the report here");
    sweep->add_flag("--override-budget", cfg.override_budget, "lift the verifier budget");

    CLI11_PARSE(app, argc, argv);
    cfg.command = app.get_subcommands().front()->get_name();
    try {
        return locator::run(cfg, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
