#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "uncprop/cli/run.hpp"

namespace {

using uncprop::cli::Command;
using uncprop::cli::OutputFormat;
using uncprop::cli::PolicyMode;
using uncprop::cli::RunConfig;

PolicyMode parse_policy(const std::string& s) {
    if (s == "truncated") return PolicyMode::Truncated;
    if (s == "both") return PolicyMode::Both;
    return PolicyMode::Complete;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"uncprop: uncertainty budgets for measurement models —\n"
                 "GUM-style propagation, TXRF internal-standard quantification,\n"
                 "Monte Carlo validation, and a coin-flip frequency demo"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "uncprop 0.1.0");

    RunConfig cfg;
    std::string policy = "complete";
    std::string format = "json";

    auto add_common = [&](CLI::App* sub, bool needs_input) {
        if (needs_input)
            sub->add_option("-i,--input", cfg.input_path, "input file (JSON or 'key = value' text)")
                ->required();
        sub->add_option("-o,--output", cfg.output_path, "write the report to this file instead of stdout");
        sub->add_option("--format", format, "report format: json|text")
            ->check(CLI::IsMember({"json", "text"}));
    };
    auto add_policy = [&](CLI::App* sub) {
        sub->add_option("--policy", policy, "sensitivity budget policy: complete|truncated|both")
            ->check(CLI::IsMember({"complete", "truncated", "both"}));
    };
    auto add_sampling = [&](CLI::App* sub) {
        sub->add_option("--seed", cfg.seed, "random seed (default: built-in)");
        sub->add_option("--samples", cfg.samples, "sample count (default: 1000000)");
    };

    CLI::App* propagate =
        app.add_subcommand("propagate", "evaluate a model and assemble its uncertainty budget");
    add_common(propagate, true);

    CLI::App* quantify =
        app.add_subcommand("quantify", "internal-standard quantification with a five-input budget");
    add_common(quantify, true);
    add_policy(quantify);

    CLI::App* calibrate =
        app.add_subcommand("calibrate", "element sensitivity from a calibration sample, with budget");
    add_common(calibrate, true);
    add_policy(calibrate);

    CLI::App* mc_check =
        app.add_subcommand("mc-check", "Monte Carlo check of the linearized uncertainty budget");
    add_common(mc_check, true);
    add_sampling(mc_check);

    CLI::App* coin_demo =
        app.add_subcommand("coin-demo", "flip-sequence frequency table and convergence simulation");
    add_common(coin_demo, false);
    coin_demo->add_option("--n", cfg.coin_n, "flips per enumerated sequence (1..20, default 3)");
    add_sampling(coin_demo);

    CLI::App* replicates =
        app.add_subcommand("replicates", "accuracy/precision statistics of repeated measurements");
    add_common(replicates, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (propagate->parsed()) cfg.command = Command::Propagate;
    if (quantify->parsed()) cfg.command = Command::Quantify;
    if (calibrate->parsed()) cfg.command = Command::Calibrate;
    if (mc_check->parsed()) cfg.command = Command::McCheck;
    if (coin_demo->parsed()) cfg.command = Command::CoinDemo;
    if (replicates->parsed()) cfg.command = Command::Replicates;
    cfg.policy = parse_policy(policy);
    cfg.format = format == "text" ? OutputFormat::Text : OutputFormat::Json;

    return uncprop::cli::run(cfg, std::cout, std::cerr);
}
