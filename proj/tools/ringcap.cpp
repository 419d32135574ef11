// ringcap: sweeps and routing advice from a JSON experiment file.
//
// exit codes: 0 ok, 1 error, 2 bad command line, 3 finished but some point
// did not converge.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "ringcap/experiment.hpp"

namespace {

struct Options {
    std::string config;
    std::vector<std::string> overrides;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::string engine;
    std::string strategy;
    std::optional<int> threads;
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("-c,--config", o.config, "experiment file (JSON)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--set", o.overrides, "override a config key, e.g. --set traffic.beta=0.2");
    cmd->add_option("--seed", o.seed, "random seed");
    cmd->add_option("--engine", o.engine, "analytic, simulate or oracle");
    cmd->add_option("--strategy", o.strategy, "sp, oc, auto or both");
    cmd->add_option("--threads", o.threads, "simulation worker threads")->check(CLI::PositiveNumber);
}

ringcap::ExperimentConfig build(const Options& o) {
    auto j = ringcap::load_json_file(o.config);
    for (const auto& s : o.overrides) ringcap::apply_override(j, s);
    if (o.seed) j["seed"] = *o.seed;
    if (!o.engine.empty()) j["engine"] = o.engine;
    if (!o.strategy.empty()) j["strategy"] = o.strategy;
    if (o.threads) j["stop_rule"]["threads"] = *o.threads;
    if (!o.out.empty()) j["output"] = o.out;
    return ringcap::parse_config(j);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Segment utilization and multicast capacity of a WDM packet ring with a hotspot"};
    app.require_subcommand(1);

    Options sweep_opts;
    auto* sweep = app.add_subcommand("sweep", "run a sweep and write CSV");
    add_common(sweep, sweep_opts);
    sweep->add_option("-o,--out", sweep_opts.out, "CSV output path (default: config output, else stdout)");

    Options advise_opts;
    auto* adv = app.add_subcommand("advise", "report bounds, thresholds and a routing recommendation");
    add_common(adv, advise_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (sweep->parsed()) {
            const auto cfg = build(sweep_opts);
            const auto result = ringcap::run_sweep(cfg);
            if (cfg.output.empty()) {
                ringcap::write_csv(std::cout, result);
            } else {
                std::ofstream f(cfg.output, std::ios::binary);
                if (!f) {
                    std::cerr << "error: cannot write '" << cfg.output << "'\n";
                    return 1;
                }
                ringcap::write_csv(f, result);
            }
            if (result.flagged) {
                std::cerr << "warning: some points did not reach the stop rule (see flags column)\n";
                return 3;
            }
            return 0;
        }
        std::cout << ringcap::advise(build(advise_opts));
        return 0;
    } catch (const ringcap::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
