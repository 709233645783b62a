#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "rsgame/config.hpp"
#include "rsgame/errors.hpp"
#include "rsgame/reports.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Risk-sensitive stochastic game solver"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    long long seed = -1;
    int threads = -1;

    const char* commands[] = {"eigen", "sweep", "nash", "simulate", "check-lyapunov"};
    const char* blurbs[] = {
        "Frozen-opponent semi-linear eigensolve (policy iteration)",
        "Dirichlet eigenvalue sweep over increasing radii",
        "Damped best-response Nash solve with deviation checks",
        "Monte Carlo cost estimate under the equilibrium pair",
        "Foster-Lyapunov drift condition check",
    };
    for (int i = 0; i < 5; ++i) {
        CLI::App* sub = app.add_subcommand(commands[i], blurbs[i]);
        sub->add_option("--config", config_path, "TOML run configuration")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory for reports")->required();
        sub->add_option("--seed", seed, "override the configured seed")
            ->check(CLI::NonNegativeNumber);
        sub->add_option("--threads", threads, "override the thread count (0 = auto)")
            ->check(CLI::NonNegativeNumber);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        rsgame::RunConfig rc = rsgame::load_config(config_path);
        if (seed >= 0) {
            rc.solver.seed = static_cast<unsigned long long>(seed);
            rc.sim.cfg.seed = static_cast<unsigned long long>(seed);
        }
        if (threads >= 0) rc.solver.threads = threads;
        return rsgame::run_command(command, rc, out_dir);
    } catch (const rsgame::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
}
