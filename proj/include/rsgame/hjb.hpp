#pragma once
#include <functional>
#include <vector>

#include "rsgame/eigensolve.hpp"
#include "rsgame/grid.hpp"
#include "rsgame/model.hpp"

namespace rsgame {

// Dirac strategy minimizing the discrete Hamiltonian of `player` node by node
// against the opponent mix held in (v1, v2). Ties break to the lowest action
// index; boundary nodes get action 0.
MarkovStrategy improve_strategy(const Grid& g, const GameModel& model, int player,
                                const MarkovStrategy& v1, const MarkovStrategy& v2,
                                const std::vector<double>& psi);

struct SemilinearOptions {
    double tol_eig = 1e-10;
    double tol_lambda = 1e-10;
    long max_outer = 100;
    long max_eigen_iter = 50000;
    EigenOptions::Mode eigen_mode = EigenOptions::Mode::Auto;
    const MarkovStrategy* warm_start = nullptr;  // controlled player; uniform when null
};

enum class SemilinearStop { StrategyFixed, LambdaStalled, MaxIter };

struct SemilinearSolveReport {
    EigenPair eig;            // of the final frozen pair
    MarkovStrategy strategy;  // optimal for the controlled player
    std::vector<double> lambda_history;  // one entry per outer iteration
    SemilinearStop reason = SemilinearStop::StrategyFixed;
    long outer_iterations = 0;
};

// Policy iteration on the frozen-opponent eigenproblem: alternate principal
// eigenpair of the current pair with Hamiltonian argmin improvement until the
// strategy repeats or lambda stops decreasing.
SemilinearSolveReport solve_semilinear_eigen(const Grid& g, const GameModel& model, int player,
                                             const MarkovStrategy& opponent,
                                             const SemilinearOptions& opts = {});

// Builds the opponent strategy on each sweep grid.
using StrategyRule = std::function<MarkovStrategy(const Grid&, int player)>;

StrategyRule uniform_rule(const GameModel& model);

struct HRule {
    double denominator = 300;       // h = R / denominator
    std::vector<double> explicit_h; // overrides when nonempty, one per radius
    double h_for(std::size_t idx, double R) const {
        return explicit_h.empty() ? R / denominator : explicit_h.at(idx);
    }
};

struct SweepEntry {
    double R = 0, h = 0;
    long interior_nodes = 0;
    double lambda = 0;
    long outer_iterations = 0;
};

struct SweepResult {
    std::vector<SweepEntry> entries;
    double lambda_inf = 0;  // last entry, the exhaustion estimate
};

struct SweepOptions {
    SemilinearOptions solve;
    bool warm_start = true;        // carry each radius' strategy to the next grid
    double monotonicity_slack = 1e-9;
};

// Exhaustion sweep: solve per radius on [-R, R]^d, assert lambda_R
// nondecreasing within slack. Throws MonotonicityViolation beyond the slack
// (a discretization bug, not a model property).
SweepResult dirichlet_sweep(const GameModel& model, int player, const StrategyRule& opponent,
                            const std::vector<double>& radii, const HRule& hrule,
                            const SweepOptions& opts = {});

// Nearest-node transfer of a strategy onto another grid.
MarkovStrategy transfer_strategy(const MarkovStrategy& v, const Grid& from, const Grid& to);

}  // namespace rsgame
