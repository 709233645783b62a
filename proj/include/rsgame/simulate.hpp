#pragma once
#include <vector>

#include "rsgame/eigensolve.hpp"
#include "rsgame/grid.hpp"
#include "rsgame/model.hpp"

namespace rsgame {

struct SimConfig {
    double dt = 1e-3;
    double T = 50;
    long N = 2000;
    unsigned long long seed = 12345;
    // strategy lookups clamp the state to this radius before the nearest-node
    // snap; 0 means the grid box itself
    double R_clamp = 0;
};

struct PathRow {
    long index = 0;
    double S = 0;         // accumulated cost integral of the path
    double tau_or_T = 0;  // hitting time, or the horizon if capped
};

struct CostEstimate {
    double rho = 0;       // (1/T) logmeanexp of the path integrals
    double rho_half = 0;  // same read at T/2, to expose drift in time
    double se = 0;        // delta-method standard error of rho
    long n_paths = 0;
    std::vector<PathRow> paths;  // kept only on request
};

// Euler-Maruyama estimate of the risk-sensitive ergodic cost of `player`
// under the frozen pair. Coefficients use the relaxed drift/cost at the
// nearest grid node's mixtures; no action sampling. Paths use per-index RNG
// substreams (seed + index) and a fixed-order reduction, so results are
// bit-identical for any thread count.
CostEstimate estimate_rho(const Grid& g, const GameModel& model, int player,
                          const MarkovStrategy& v1, const MarkovStrategy& v2,
                          const std::vector<double>& x0, const SimConfig& cfg,
                          bool keep_paths = false);

struct RepCheck {
    double lhs = 0;  // psi at the start node
    double rhs = 0;  // E[exp(integral of r - lambda) psi(X_tau)]
    double se = 0;
    long n_used = 0;
    long n_capped = 0;
    std::vector<PathRow> paths;
};

// Stochastic-representation check of the eigenfunction: paths run from x0
// until first entry into {|x| <= r_ball} (cap at T; capped paths are counted
// and excluded). Throws TooManyCapped when more than 20% cap.
RepCheck check_stochastic_rep(const Grid& g, const GameModel& model, const MarkovStrategy& v1,
                              const MarkovStrategy& v2, int player, const EigenPair& eig,
                              double r_ball, const std::vector<double>& x0, const SimConfig& cfg,
                              bool keep_paths = false);

struct RepTrendLevel {
    double dt = 0;
    double rhs = 0;
    double gap = 0;  // |rhs - lhs|
    double se = 0;
    long n_used = 0, n_capped = 0;
};

struct RepTrend {
    double lhs = 0;
    std::vector<RepTrendLevel> levels;  // cfg.dt is the finest; coarse first
    // paired-noise standard error between adjacent levels, and whether the
    // gap shrank within 3 of it
    std::vector<double> pair_se;
    std::vector<bool> pair_ok;
    bool passed = false;
};

// Discretization-bias probe: reruns the representation check at several step
// sizes driven by one shared Brownian path per index (coarse increments are
// sums of fine ones), and asserts the gap does not grow as dt shrinks, up to
// the paired sampling noise. dts must be descending integer multiples of
// cfg.dt, which is appended as the finest level.
RepTrend stochastic_rep_trend(const Grid& g, const GameModel& model, const MarkovStrategy& v1,
                              const MarkovStrategy& v2, int player, const EigenPair& eig,
                              double r_ball, const std::vector<double>& x0, const SimConfig& cfg,
                              const std::vector<double>& coarse_dts);

void validate(const SimConfig& cfg);

}  // namespace rsgame
