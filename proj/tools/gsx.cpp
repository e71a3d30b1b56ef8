// gsx: experiment runner CLI.
//
//   gsx <experiment> --config <path.json> [--out <dir>] [--seed <u64>] [--trials <n>]
//
// Experiments: energy-vs-shift, energy-shift-vs-fourier, wiener-tap-sweep,
// spectrum-report. Exit codes: 0 success, 2 config error, 3 numerical
// failure. GSX_THREADS caps worker threads.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gsx/gsx.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct SubcommandArgs {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<long> trials;
};

int run(gsx::ExperimentKind kind, const SubcommandArgs& args) {
    gsx::ExperimentConfig cfg;
    try {
        std::ifstream in(args.config_path);
        if (!in) {
            std::cerr << "gsx: cannot open config '" << args.config_path << "'\n";
            return kExitConfig;
        }
        nlohmann::json j;
        in >> j;
        cfg = gsx::config_from_json(j);
        cfg.experiment = kind;
        if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
        if (args.seed) cfg.seed = *args.seed;
        if (args.trials) cfg.trials = static_cast<gsx::Index>(*args.trials);
        gsx::validate(cfg);
    } catch (const gsx::ConfigError& e) {
        std::cerr << "gsx: config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "gsx: config error: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        const auto written = gsx::run_and_write(cfg);
        for (const auto& f : written) std::cout << cfg.out_dir << "/" << f << "\n";
        return 0;
    } catch (const gsx::ConfigError& e) {
        std::cerr << "gsx: config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const gsx::Error& e) {
        std::cerr << "gsx: numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph shift operator experiments"};
    app.require_subcommand(1);

    const std::pair<const char*, gsx::ExperimentKind> kinds[] = {
        {"energy-vs-shift", gsx::ExperimentKind::EnergyVsShift},
        {"energy-shift-vs-fourier", gsx::ExperimentKind::EnergyShiftVsFourier},
        {"wiener-tap-sweep", gsx::ExperimentKind::WienerTapSweep},
        {"spectrum-report", gsx::ExperimentKind::SpectrumReport},
    };

    SubcommandArgs args;
    for (const auto& [name, kind] : kinds) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", args.config_path, "experiment config (JSON)")->required();
        sub->add_option("--out", args.out_dir, "output directory (overrides config)");
        sub->add_option("--seed", args.seed, "run seed (overrides config)");
        sub->add_option("--trials", args.trials, "trial count (overrides config)");
        gsx::ExperimentKind k = kind;
        sub->callback([&args, k] { std::exit(run(k, args)); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }
    return 0;
}
