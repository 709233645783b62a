#pragma once
#include <string>
#include <vector>

#include "rsgame/eigensolve.hpp"
#include "rsgame/grid.hpp"
#include "rsgame/lyapunov.hpp"
#include "rsgame/model.hpp"
#include "rsgame/simulate.hpp"

namespace rsgame {

struct SolverConfig {
    double tol_eig = 1e-10;
    double tol_lambda = 1e-10;
    double tol_strategy = 1e-8;
    double tol_res = 1e-6;
    double tol_dev = 1e-8;
    double damping = 0.5;
    long max_outer = 100;       // policy-iteration cap
    long max_iter = 200;        // best-response cap
    long max_eigen_iter = 50000;
    EigenOptions::Mode eigen_mode = EigenOptions::Mode::Auto;
    int player = 1;             // controlled player for `eigen` and `sweep`
    int deviations = 20;        // random unilateral deviations checked after `nash`
    unsigned long long seed = 0;
    int threads = 0;            // 0 = library default
    double monotonicity_slack = 1e-9;
};

struct SimSection {
    SimConfig cfg;
    std::vector<double> x0;
    bool dump_paths = false;
    // stochastic-representation check, run by `simulate` when enabled
    bool rep_check = false;
    double r_ball = 1.0;
    std::vector<double> rep_x0;
    double rep_T = 20.0;
    long rep_N = 5000;
    std::vector<double> trend_dts;  // coarse steps for the bias probe, descending
};

struct RunConfig {
    GameModel model;
    std::vector<double> radii;  // one entry for single-domain commands
    double h = 0;               // explicit spacing; 0 means use h_denominator
    double h_denominator = 300;  // h = R / this
    SolverConfig solver;
    SimSection sim;
    bool has_lyapunov = false;
    LyapunovSpec lyap;
    double lyap_h_chk = 0;  // 0 means the grid spacing

    double h_for(double R) const { return h > 0 ? h : R / h_denominator; }
    Grid main_grid() const { return build_grid(model.d, radii.back(), h_for(radii.back())); }
};

// Parses, validates, and cross-checks the whole file; error messages name the
// offending key. Also runs validate_model on an automatic probe set.
RunConfig load_config(const std::string& path);

}  // namespace rsgame
