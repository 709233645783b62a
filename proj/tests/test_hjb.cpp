#include <doctest.h>

#include <cmath>
#include <vector>

#include "benchmarks.hpp"
#include "rsgame/errors.hpp"
#include "rsgame/hjb.hpp"

using namespace rsgame;

TEST_SUITE("hjb") {

TEST_CASE("improve_strategy wraps the argmin kernel as a Dirac strategy") {
    const GameModel m = bmk::nonsym();
    const Grid g = build_grid(1, 1.0, 0.25);
    const MarkovStrategy v1 = MarkovStrategy::uniform(1, 3, g.num_nodes());
    const MarkovStrategy v2 = MarkovStrategy::uniform(2, 3, g.num_nodes());
    std::vector<double> psi(g.num_interior(), 1.0);
    const std::vector<int> idx = kern::improve(g, m, 1, v1, v2, psi);
    const MarkovStrategy s = improve_strategy(g, m, 1, v1, v2, psi);
    CHECK(s.player == 1);
    CHECK(s.m == 3);
    for (long n = 0; n < g.num_nodes(); ++n) {
        const long ii = g.interior_index(n);
        const double* row = s.at(n);
        const int want = ii >= 0 ? idx[ii] : 0;  // boundary rows default to action 0
        for (int u = 0; u < 3; ++u) CHECK(row[u] == (u == want ? 1.0 : 0.0));
    }
}

TEST_CASE("single-action model solves in one outer iteration") {
    const GameModel m = bmk::lq();
    const Grid g = build_grid(1, 3.0, 0.02);
    const MarkovStrategy opp = MarkovStrategy::uniform(2, 1, g.num_nodes());
    const SemilinearSolveReport rep = solve_semilinear_eigen(g, m, 1, opp);
    CHECK(rep.reason == SemilinearStop::StrategyFixed);
    CHECK(rep.outer_iterations == 1);
    CHECK(rep.lambda_history.size() == 1);
    // cross-check against a direct eigensolve of the same frozen matrix
    const MarkovStrategy v1 = MarkovStrategy::uniform(1, 1, g.num_nodes());
    const StencilMatrix M = discretize(g, m, 1, v1, opp);
    const EigenPair direct = principal_eigenpair(M, g.origin_interior_index());
    CHECK(rep.eig.lambda == doctest::Approx(direct.lambda).epsilon(1e-12));
}

TEST_CASE("policy iteration lands on the pointwise cost argmin when drift is uncontrolled") {
    // player 1's actions move only the cost 0.2 (x - a)^2, so the optimal
    // choice at a node is simply the action nearest x, ties to the lower index
    const GameModel m = bmk::decoupled();
    const Grid g = build_grid(1, 2.0, 0.125);  // dyadic nodes, exact ties at +-0.5
    const MarkovStrategy opp = MarkovStrategy::uniform(2, 3, g.num_nodes());
    const SemilinearSolveReport rep = solve_semilinear_eigen(g, m, 1, opp);
    CHECK(rep.reason == SemilinearStop::StrategyFixed);
    CHECK(rep.outer_iterations <= 3);

    double x;
    for (long n = 0; n < g.num_nodes(); ++n) {
        if (g.interior_index(n) < 0) continue;
        g.position(n, &x);
        const int want = x <= -0.5 ? 0 : (x <= 0.5 ? 1 : 2);
        CHECK(rep.strategy.at(n)[want] == 1.0);
    }

    // player 2 minimizes 0.1 (x + a)^2: mirrored rule
    const MarkovStrategy opp1 = MarkovStrategy::uniform(1, 3, g.num_nodes());
    const SemilinearSolveReport rep2 = solve_semilinear_eigen(g, m, 2, opp1);
    for (long n = 0; n < g.num_nodes(); ++n) {
        if (g.interior_index(n) < 0) continue;
        g.position(n, &x);
        const int want = x < -0.5 ? 2 : (x < 0.5 ? 1 : 0);
        CHECK(rep2.strategy.at(n)[want] == 1.0);
    }
}

TEST_CASE("outer lambda history never increases") {
    for (const GameModel& m : {bmk::decoupled(), bmk::symm(), bmk::nonsym()}) {
        const Grid g = build_grid(1, 3.0, 0.05);
        for (int player : {1, 2}) {
            const int mo = m.actions(player == 1 ? 2 : 1).size();
            const MarkovStrategy opp =
                MarkovStrategy::uniform(player == 1 ? 2 : 1, mo, g.num_nodes());
            const SemilinearSolveReport rep = solve_semilinear_eigen(g, m, player, opp);
            CHECK(rep.reason == SemilinearStop::StrategyFixed);
            for (std::size_t k = 1; k < rep.lambda_history.size(); ++k)
                CHECK(rep.lambda_history[k] <= rep.lambda_history[k - 1] + 1e-10);
        }
    }
}

TEST_CASE("warm start at the fixed point returns immediately") {
    const GameModel m = bmk::symm();
    const Grid g = build_grid(1, 3.0, 0.05);
    const MarkovStrategy opp = MarkovStrategy::uniform(2, 3, g.num_nodes());
    const SemilinearSolveReport cold = solve_semilinear_eigen(g, m, 1, opp);
    SemilinearOptions so;
    so.warm_start = &cold.strategy;
    const SemilinearSolveReport warm = solve_semilinear_eigen(g, m, 1, opp, so);
    CHECK(warm.outer_iterations == 1);
    CHECK(warm.reason == SemilinearStop::StrategyFixed);
    CHECK(warm.eig.lambda == doctest::Approx(cold.eig.lambda).epsilon(1e-12));

    MarkovStrategy mismatched = MarkovStrategy::uniform(1, 3, 7);
    SemilinearOptions bad;
    bad.warm_start = &mismatched;
    CHECK_THROWS_AS(static_cast<void>(solve_semilinear_eigen(g, m, 1, opp, bad)), ConfigError);
}

TEST_CASE("stop reasons: iteration cap and stalled lambda") {
    const GameModel m = bmk::decoupled();
    const Grid g = build_grid(1, 2.0, 0.125);
    const MarkovStrategy opp = MarkovStrategy::uniform(2, 3, g.num_nodes());

    SemilinearOptions capped;
    capped.max_outer = 1;
    const SemilinearSolveReport r1 = solve_semilinear_eigen(g, m, 1, opp, capped);
    CHECK(r1.reason == SemilinearStop::MaxIter);
    CHECK(r1.outer_iterations == 1);

    // a huge tol_lambda turns any second strategy change into a stall; the
    // report must then re-anchor the eigenpair on the improved strategy (one
    // extra history entry). Models whose argmin ignores psi settle after a
    // single change instead, so accept that exit too.
    SemilinearOptions stall;
    stall.tol_lambda = 10.0;
    const GameModel mc = bmk::nonsym();
    const SemilinearSolveReport r2 = solve_semilinear_eigen(g, mc, 1, opp, stall);
    if (r2.reason == SemilinearStop::LambdaStalled) {
        CHECK(r2.lambda_history.size() ==
              static_cast<std::size_t>(r2.outer_iterations) + 1);
        CHECK(r2.lambda_history.back() <= r2.lambda_history.front() + 1e-10);
    } else {
        CHECK(r2.reason == SemilinearStop::StrategyFixed);
        CHECK(r2.outer_iterations <= 2);
    }
}

TEST_CASE("strategy transfer copies nearest rows onto the new grid") {
    const Grid coarse = build_grid(1, 2.0, 0.5);
    const Grid fine = build_grid(1, 2.0, 0.25);
    std::vector<int> idx(coarse.num_nodes());
    for (long n = 0; n < coarse.num_nodes(); ++n) idx[n] = static_cast<int>(n % 3);
    const MarkovStrategy v = MarkovStrategy::dirac(1, 3, coarse.num_nodes(), idx);
    const MarkovStrategy t = transfer_strategy(v, coarse, fine);
    CHECK(t.grid_nodes == fine.num_nodes());
    double x;
    for (long n = 0; n < fine.num_nodes(); ++n) {
        fine.position(n, &x);
        const double* want = v.at(coarse.nearest_node(&x));
        const double* got = t.at(n);
        for (int u = 0; u < 3; ++u) CHECK(got[u] == want[u]);
    }
}

TEST_CASE("exhaustion sweep increases with the radius") {
    const GameModel m = bmk::lq();
    HRule rule;
    rule.denominator = 60;
    const SweepResult sr = dirichlet_sweep(m, 1, uniform_rule(m), {2.0, 3.0, 4.0}, rule);
    REQUIRE(sr.entries.size() == 3);
    CHECK(sr.entries[0].lambda < sr.entries[1].lambda);
    CHECK(sr.entries[1].lambda < sr.entries[2].lambda);
    CHECK(sr.lambda_inf == sr.entries.back().lambda);
    CHECK(sr.entries[0].h == doctest::Approx(2.0 / 60.0));
    CHECK(sr.entries[2].interior_nodes == 119);  // 2R/h - 1 with h = R/60

    // each entry must equal an independent single-radius solve
    const Grid g = build_grid(1, 3.0, 3.0 / 60.0);
    const MarkovStrategy opp = MarkovStrategy::uniform(2, 1, g.num_nodes());
    const SemilinearSolveReport alone = solve_semilinear_eigen(g, m, 1, opp);
    CHECK(sr.entries[1].lambda == doctest::Approx(alone.eig.lambda).epsilon(1e-12));

    CHECK_THROWS_AS(static_cast<void>(dirichlet_sweep(m, 1, uniform_rule(m), {3.0, 2.0}, rule)),
                    ConfigError);
    CHECK_THROWS_AS(static_cast<void>(dirichlet_sweep(m, 1, uniform_rule(m), {}, rule)),
                    ConfigError);
}

TEST_CASE("explicit h list overrides the denominator rule") {
    HRule rule;
    rule.denominator = 300;
    CHECK(rule.h_for(0, 6.0) == 0.02);
    rule.explicit_h = {0.1, 0.05};
    CHECK(rule.h_for(0, 6.0) == 0.1);
    CHECK(rule.h_for(1, 6.0) == 0.05);
}

}  // TEST_SUITE
