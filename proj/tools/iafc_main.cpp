#include <CLI11.hpp>

#include <cstdio>
#include <exception>

#include "iafc/errors.hpp"
#include "iafc/run.hpp"

// Exit codes: 0 success, 1 configuration problem, 2 numerical infeasibility.

int main(int argc, char** argv) {
    CLI::App app{"Single-atom frequency-comb quantum memory simulator"};
    app.require_subcommand(1);

    std::string config_path;
    iafc::RunOptions opts;
    std::size_t samples_cap = 0;

    const char* modes[] = {"comb", "echo", "absorption", "sweep", "optimize"};
    const char* descriptions[] = {
        "Build the comb and export its teeth",
        "Propagate a pulse and analyse the echo",
        "Export the normalised absorption spectrum",
        "Sweep one parameter, optionally optimising the pulse width per point",
        "Joint coupling/linewidth optimisation",
    };
    for (size_t i = 0; i < std::size(modes); ++i) {
        CLI::App* sub = app.add_subcommand(modes[i], descriptions[i]);
        sub->add_option("--config", config_path, "JSON config file")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out", opts.output_override, "Output directory (overrides config)");
        sub->add_option("--workers", opts.workers, "Worker threads for sweeps")
            ->check(CLI::PositiveNumber);
        sub->add_option("--samples-cap", samples_cap, "Grid sample budget override")
            ->check(CLI::PositiveNumber);
        sub->add_option("--atomic-data", opts.atomic_data_path,
                        "Atomic constants file (default: $IAFC_ATOMIC_DATA or "
                        "data/atomic_constants.dat)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        iafc::RunConfig cfg = iafc::load_config(config_path);
        cfg.mode = app.get_subcommands().front()->get_name();
        if (samples_cap > 0) opts.samples_cap = samples_cap;
        iafc::run(cfg, opts);
        return 0;
    } catch (const iafc::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
