#include "rsgame/hjb.hpp"

#include <cmath>

#include "rsgame/errors.hpp"
#include "rsgame/kernels.hpp"
#include "rsgame/stencil.hpp"

namespace rsgame {

namespace {

MarkovStrategy dirac_from_interior(const Grid& g, int player, int m,
                                   const std::vector<int>& interior_idx) {
    std::vector<int> full(g.num_nodes(), 0);
    for (long n = 0; n < g.num_nodes(); ++n) {
        const long ii = g.interior_index(n);
        if (ii >= 0) full[n] = interior_idx[ii];
    }
    return MarkovStrategy::dirac(player, m, g.num_nodes(), full);
}

bool same_choice(const Grid& g, const MarkovStrategy& a, const MarkovStrategy& b) {
    // compares interior rows only; boundary rows never enter the operator
    for (long n = 0; n < g.num_nodes(); ++n) {
        if (g.interior_index(n) < 0) continue;
        const double* pa = a.at(n);
        const double* pb = b.at(n);
        for (int u = 0; u < a.m; ++u)
            if (pa[u] != pb[u]) return false;
    }
    return true;
}

}  // namespace

MarkovStrategy improve_strategy(const Grid& g, const GameModel& model, int player,
                                const MarkovStrategy& v1, const MarkovStrategy& v2,
                                const std::vector<double>& psi) {
    const std::vector<int> idx = kern::improve(g, model, player, v1, v2, psi);
    const int m = model.actions(player).size();
    return dirac_from_interior(g, player, m, idx);
}

SemilinearSolveReport solve_semilinear_eigen(const Grid& g, const GameModel& model, int player,
                                             const MarkovStrategy& opponent,
                                             const SemilinearOptions& opts) {
    const int m = model.actions(player).size();
    MarkovStrategy cur = opts.warm_start
                             ? *opts.warm_start
                             : MarkovStrategy::uniform(player, m, g.num_nodes());
    if (cur.grid_nodes != g.num_nodes() || cur.m != m)
        throw ConfigError("warm-start strategy does not match grid or action set");
    if (opponent.grid_nodes != g.num_nodes())
        throw ConfigError("opponent strategy does not match grid");

    const long x0 = g.origin_interior_index();
    SemilinearSolveReport rep;
    EigenOptions eo;
    eo.tol = opts.tol_eig;
    eo.max_iter = opts.max_eigen_iter;
    eo.mode = opts.eigen_mode;

    for (long k = 0; k < opts.max_outer; ++k) {
        const MarkovStrategy& v1 = (player == 1) ? cur : opponent;
        const MarkovStrategy& v2 = (player == 1) ? opponent : cur;
        const StencilMatrix M = discretize(g, model, player, v1, v2);
        EigenPair eig = principal_eigenpair(M, x0, eo);
        eo.init = eig.psi;  // warm-start the next eigensolve
        rep.lambda_history.push_back(eig.lambda);
        rep.outer_iterations = k + 1;

        MarkovStrategy next = improve_strategy(g, model, player, v1, v2, eig.psi);
        if (same_choice(g, next, cur)) {
            rep.eig = std::move(eig);
            rep.strategy = std::move(next);
            rep.reason = SemilinearStop::StrategyFixed;
            return rep;
        }
        if (k >= 1) {
            const double drop = rep.lambda_history[k - 1] - eig.lambda;
            if (drop < opts.tol_lambda) {
                // improvement no longer moves lambda; re-anchor the eigenpair
                // on the improved strategy so the reported triple is coherent
                const MarkovStrategy& w1 = (player == 1) ? next : opponent;
                const MarkovStrategy& w2 = (player == 1) ? opponent : next;
                const StencilMatrix M2 = discretize(g, model, player, w1, w2);
                rep.eig = principal_eigenpair(M2, x0, eo);
                rep.lambda_history.push_back(rep.eig.lambda);
                rep.strategy = std::move(next);
                rep.reason = SemilinearStop::LambdaStalled;
                return rep;
            }
        }
        cur = std::move(next);
        rep.eig = std::move(eig);
    }
    rep.strategy = std::move(cur);
    rep.reason = SemilinearStop::MaxIter;
    return rep;
}

StrategyRule uniform_rule(const GameModel& model) {
    return [&model](const Grid& g, int player) {
        return MarkovStrategy::uniform(player, model.actions(player).size(), g.num_nodes());
    };
}

MarkovStrategy transfer_strategy(const MarkovStrategy& v, const Grid& from, const Grid& to) {
    MarkovStrategy out;
    out.player = v.player;
    out.m = v.m;
    out.grid_nodes = to.num_nodes();
    out.p.resize(out.grid_nodes * v.m);
    double x[2];
    for (long n = 0; n < to.num_nodes(); ++n) {
        to.position(n, x);
        const long src = from.nearest_node(x);
        const double* row = v.at(src);
        double* dst = out.p.data() + n * v.m;
        for (int u = 0; u < v.m; ++u) dst[u] = row[u];
    }
    return out;
}

SweepResult dirichlet_sweep(const GameModel& model, int player, const StrategyRule& opponent,
                            const std::vector<double>& radii, const HRule& hrule,
                            const SweepOptions& opts) {
    if (radii.empty()) throw ConfigError("sweep needs at least one radius");
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (!(radii[i] > radii[i - 1]))
            throw ConfigError("sweep radii must be strictly increasing");

    SweepResult out;
    const int opp = (player == 1) ? 2 : 1;
    MarkovStrategy carried;
    Grid prev_grid;
    bool have_carry = false;

    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double R = radii[i];
        const Grid g = build_grid(model.d, R, hrule.h_for(i, R));
        SemilinearOptions so = opts.solve;
        MarkovStrategy warm;
        if (opts.warm_start && have_carry) {
            warm = transfer_strategy(carried, prev_grid, g);
            so.warm_start = &warm;
        }
        const MarkovStrategy vopp = opponent(g, opp);
        SemilinearSolveReport rep = solve_semilinear_eigen(g, model, player, vopp, so);

        SweepEntry e;
        e.R = R;
        e.h = g.h;
        e.interior_nodes = g.num_interior();
        e.lambda = rep.eig.lambda;
        e.outer_iterations = rep.outer_iterations;
        if (!out.entries.empty() && e.lambda < out.entries.back().lambda - opts.monotonicity_slack)
            throw MonotonicityViolation(
                "Dirichlet eigenvalue decreased between radii " +
                std::to_string(out.entries.back().R) + " and " + std::to_string(R));
        out.entries.push_back(e);
        carried = std::move(rep.strategy);
        prev_grid = g;
        have_carry = true;
    }
    out.lambda_inf = out.entries.back().lambda;
    return out;
}

}  // namespace rsgame
