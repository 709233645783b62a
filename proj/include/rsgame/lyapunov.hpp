#pragma once
#include <string>
#include <vector>

#include "rsgame/expr.hpp"
#include "rsgame/grid.hpp"
#include "rsgame/model.hpp"

namespace rsgame {

enum class LyapunovCase { Bounded, Unbounded };

struct LyapunovSpec {
    Expr V;                  // candidate, V >= 1
    LyapunovCase kind = LyapunovCase::Unbounded;
    Expr ell;                // unbounded case only; positive outside K_tilde
    double K_radius = 0;     // the compact set is the ball |x| <= K_radius
    double delta = 0;        // bounded case only
};

struct LyapunovReport {
    bool passed = false;
    double alpha = 0;        // minimal feasible alpha-tilde on the grid
    double min_margin = 0;   // worst slack of the drift inequality outside K
    double min_V_on_K = 0;
    double max_psi_over_V = 0;  // diagnostic only, set by callers that have psi
    // per-player ceiling kappa_1 + alpha / min_K V
    double bound[2] = {0, 0};
    long probes = 0;
    std::string notes;       // records the inf-compactness surrogate used
};

// Verifies the drift condition sup_u L^u V <= alpha 1_K - delta V (bounded)
// or <= alpha 1_K - ell V (unbounded) at every interior node, with central
// finite differences of V at step h_chk. Throws SpecInfeasible with a witness
// node and action pair when the inequality fails, when V < 1 somewhere, when
// ell fails positivity outside K, or when the growth surrogate for
// inf-compactness fails. On success fills alpha and the cost bounds.
LyapunovReport check_lyapunov(const GameModel& model, const LyapunovSpec& spec, const Grid& g,
                              double h_chk);

// kappa_1 + alpha / min_K V for the given player, from a passing report.
double cost_bound(const LyapunovReport& rep, int player);

}  // namespace rsgame
