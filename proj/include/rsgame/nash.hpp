#pragma once
#include <string>
#include <vector>

#include "rsgame/hjb.hpp"

namespace rsgame {

struct BestResponseResult {
    MarkovStrategy v1, v2;  // responses computed simultaneously from the input pair
    SemilinearSolveReport rep1, rep2;
};

BestResponseResult best_response_map(const Grid& g, const GameModel& model,
                                     const MarkovStrategy& v1, const MarkovStrategy& v2,
                                     const SemilinearOptions& opts = {});

// Sup-norm semi-linear residual of (lambda_i, psi_i) at the pair (v1, v2):
// sup over interior nodes of |min_u H_i(x,u) - lambda psi(x)| / sup|psi|.
double hjb_residual(const Grid& g, const GameModel& model, const MarkovStrategy& v1,
                    const MarkovStrategy& v2, const EigenPair& eig, int player);

struct NashOptions {
    double damping = 0.5;  // omega in (0, 1]
    double tol_strategy = 1e-8;
    double tol_res = 1e-6;
    long max_iter = 200;
    bool random_init = false;    // node-wise random mixtures instead of uniform
    unsigned long long seed = 0; // for random_init
    SemilinearOptions solve;
};

struct NashIterate {
    double lambda1 = 0, lambda2 = 0;
    double strategy_change = 0;  // sup norm across both players, after damping
};

struct DeviationEntry {
    int player = 0;
    std::string id;
    double lambda = 0;   // frozen-pair eigenvalue under the deviation
    double margin = 0;   // lambda - equilibrium lambda of that player
};

struct NashReport {
    MarkovStrategy v1, v2;
    EigenPair eig1, eig2;   // frozen-pair eigenpairs at the returned strategies
    double residual1 = 0, residual2 = 0;
    std::vector<DeviationEntry> deviations;  // filled by verify_nash
    std::vector<NashIterate> trace;
    bool converged = false;
    bool cycle_detected = false;
    long iterations = 0;
};

// Damped simultaneous best response. Non-convergence and cycling are reported
// outcomes, not errors.
NashReport find_nash(const Grid& g, const GameModel& model, const NashOptions& opts = {});

// Unilateral-deviation check: frozen-pair eigenvalue under each deviation must
// be >= the deviating player's equilibrium lambda - tol_dev. Random deviations
// are node-wise uniform Dirac draws. Throws NashViolation on failure; the
// table is also appended to the report.
std::vector<DeviationEntry> verify_nash(const Grid& g, const GameModel& model, NashReport& report,
                                        int n_random, unsigned long long seed,
                                        double tol_dev = 1e-8);
std::vector<DeviationEntry> verify_nash(const Grid& g, const GameModel& model, NashReport& report,
                                        const std::vector<MarkovStrategy>& deviations,
                                        double tol_dev = 1e-8);

}  // namespace rsgame
