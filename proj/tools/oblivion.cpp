// Benchmark CLI: seeded sweeps over the estimators, CSV out.
//
//   oblivion run <config.json>        execute a sweep, write the results file
//   oblivion summarize <results.csv>  per-sweep-point medians and success rates
//   oblivion validate <config.json>   parse and check a config
//
// Environment: OBLIVION_THREADS caps the worker pool, OBLIVION_SEED overrides
// the base seed of {base, count} seed blocks.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "oblivion/bench.hpp"

int main(int argc, char** argv) {
    CLI::App app{"oblivion - list-decodable stochastic optimization benchmarks"};
    app.require_subcommand(1);

    std::string run_config;
    auto* run_cmd = app.add_subcommand("run", "run a sweep from a config file");
    run_cmd->add_option("config", run_config, "experiment config (JSON)")->required();

    std::string summarize_path;
    auto* sum_cmd = app.add_subcommand("summarize", "aggregate a results file");
    sum_cmd->add_option("results", summarize_path, "results CSV produced by run")->required();

    std::string validate_config;
    auto* val_cmd = app.add_subcommand("validate", "check a config file");
    val_cmd->add_option("config", validate_config, "experiment config (JSON)")->required();

    CLI11_PARSE(app, argc, argv);

    if (run_cmd->parsed())
        return oblivion::run_experiment_file(run_config, std::cout, std::cerr);
    if (sum_cmd->parsed())
        return oblivion::summarize_file(summarize_path, std::cout, std::cerr);
    return oblivion::validate_file(validate_config, std::cout, std::cerr);
}
