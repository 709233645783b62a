#pragma once
#include <array>
#include <string>
#include <vector>

#include "rsgame/expr.hpp"

namespace rsgame {

// One pure action: a name plus the feature vector bound to a0..a{m-1} in
// expressions when this action is played.
struct Action {
    std::string name;
    std::vector<double> features;
};

struct ActionSet {
    int player = 1;  // 1 or 2
    std::vector<Action> actions;

    int size() const { return static_cast<int>(actions.size()); }
    int feature_len() const {
        return actions.empty() ? 0 : static_cast<int>(actions[0].features.size());
    }
};

// Probability vector over one player's actions.
struct MixedAction {
    std::vector<double> p;

    bool valid(double tol = 1e-12) const;
    static MixedAction uniform(int m);
    static MixedAction dirac(int m, int idx);
};

// Per-grid-node mixed action for one player, flattened node-major.
// Covers every grid node; rows for boundary nodes are carried but unused by
// the discretization.
struct MarkovStrategy {
    int player = 1;
    int m = 0;               // actions per node
    long grid_nodes = 0;     // node count of the grid it lives on
    std::vector<double> p;   // grid_nodes * m

    double* at(long node) { return p.data() + node * m; }
    const double* at(long node) const { return p.data() + node * m; }

    static MarkovStrategy uniform(int player, int m, long nodes);
    // Dirac at one action index per node.
    static MarkovStrategy dirac(int player, int m, long nodes, const std::vector<int>& idx);
    double max_diff(const MarkovStrategy& other) const;
};

// Game datum: additive drift b = b1(x,u1) + b2(x,u2), diagonal diffusion
// sigma(x), additive costs r_i = r_i1(x,u1) + r_i2(x,u2).
struct GameModel {
    int d = 1;  // state dimension, 1 or 2
    ActionSet actions1, actions2;
    std::vector<Expr> drift1, drift2;  // d components each
    std::vector<Expr> sigma;           // d diagonal entries, x only
    // cost[i][j]: player i+1's cost component driven by player j+1's action
    std::array<std::array<Expr, 2>, 2> cost;
    double a_min = 1e-3;  // nondegeneracy floor: sigma_kk^2 >= 2*a_min

    const ActionSet& actions(int player) const { return player == 1 ? actions1 : actions2; }

    // b-bar_1 component k at (x, action u1), and friends
    double drift1_at(int k, const double* x, int u) const {
        return drift1[k].eval(x, d, actions1.actions[u].features.data(),
                              actions1.feature_len());
    }
    double drift2_at(int k, const double* x, int u) const {
        return drift2[k].eval(x, d, actions2.actions[u].features.data(),
                              actions2.feature_len());
    }
    double sigma_at(int k, const double* x) const { return sigma[k].eval(x, d, nullptr, 0); }
    // r-bar_{i,j} at (x, action u of player j)
    double cost_at(int i, int j, const double* x, int u) const {
        const ActionSet& as = j == 1 ? actions1 : actions2;
        return cost[i - 1][j - 1].eval(x, d, as.actions[u].features.data(), as.feature_len());
    }
};

std::vector<double> relaxed_drift(const GameModel& model, const double* x,
                                  const MixedAction& m1, const MixedAction& m2);
double relaxed_cost(const GameModel& model, int i, const double* x,
                    const MixedAction& m1, const MixedAction& m2);

// As above but reading the mixtures from raw rows of a MarkovStrategy.
void relaxed_drift_rows(const GameModel& model, const double* x, const double* row1,
                        const double* row2, double* out);
double relaxed_cost_rows(const GameModel& model, int i, const double* x,
                         const double* row1, const double* row2);

struct ValidationReport {
    double C0 = 0;  // empirical affine-growth constant
    long probes = 0;
};

// Checks cost nonnegativity and nondegeneracy on the probe set and reports the
// empirical affine-growth constant. Throws ValidationFailed listing offenders.
ValidationReport validate_model(const GameModel& model,
                                const std::vector<std::vector<double>>& probes);

}  // namespace rsgame
