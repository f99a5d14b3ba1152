// ubq: runs the Monte Carlo experiments described by a JSON config and
// writes one CSV table.
//
//   ubq mse      --config configs/mse_ramp.json --out mse.csv
//   ubq detect   --config configs/detect_ramp.json --trials 2000
//   ubq recovery --config configs/recovery_ramp.json --full
//   ubq gapfit   --config configs/gapfit_sinusoid.json --seed 7

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ubq/csv.hpp"
#include "ubq/error.hpp"
#include "ubq/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct RunArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<int> trials;
    bool full = false;
};

void add_run_options(CLI::App* sub, RunArgs& args) {
    sub->add_option("--config", args.config, "experiment config (JSON)")->required();
    sub->add_option("--seed", args.seed, "master seed, overrides the config");
    sub->add_option("--out", args.out, "output CSV path; '-' writes to stdout");
    sub->add_option("--trials", args.trials, "Monte Carlo trials per grid point")->check(CLI::PositiveNumber);
    sub->add_flag("--full", args.full, "apply the config's full-scale overrides");
}

int run(ubq::ExperimentKind kind, const RunArgs& args) {
    ubq::ExperimentConfig cfg = ubq::load_config(args.config, args.full);
    if (cfg.kind != kind) {
        std::cerr << "ubq: config describes a '" << ubq::to_string(cfg.kind) << "' experiment, not '"
                  << ubq::to_string(kind) << "'\n";
        return kExitConfig;
    }
    if (args.seed) cfg.seed = *args.seed;
    if (args.trials) cfg.trials = *args.trials;
    if (args.out) cfg.output = *args.out;

    const ubq::Table table = ubq::run_experiment(cfg);
    if (cfg.output.empty() || cfg.output == "-") {
        ubq::write_csv(std::cout, table);
    } else {
        ubq::write_csv_file(cfg.output, table);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unlabeled one-bit sensing experiments"};
    app.require_subcommand(1);

    struct Entry {
        const char* name;
        const char* help;
        ubq::ExperimentKind kind;
    };
    const Entry entries[] = {
        {"mse", "MSE of the estimators against N", ubq::ExperimentKind::Mse},
        {"detect", "calibrated detection probability against N", ubq::ExperimentKind::Detection},
        {"recovery", "permutation recovery probability", ubq::ExperimentKind::Recovery},
        {"gapfit", "gap statistics and power-law fit against K", ubq::ExperimentKind::GapFit},
    };
    RunArgs args;
    for (const auto& e : entries) add_run_options(app.add_subcommand(e.name, e.help), args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        for (const auto& e : entries) {
            if (app.got_subcommand(e.name)) return run(e.kind, args);
        }
    } catch (const ubq::Error& e) {
        std::cerr << "ubq: " << e.what() << '\n';
        return e.is_config_error() ? kExitConfig : kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "ubq: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitConfig;
}
