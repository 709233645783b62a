#include "rsgame/nash.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <utility>

#include "rsgame/errors.hpp"
#include "rsgame/kernels.hpp"
#include "rsgame/stencil.hpp"

namespace rsgame {

BestResponseResult best_response_map(const Grid& g, const GameModel& model,
                                     const MarkovStrategy& v1, const MarkovStrategy& v2,
                                     const SemilinearOptions& opts) {
    BestResponseResult out;
    // both responses against the input pair, so order does not matter
    SemilinearOptions o1 = opts, o2 = opts;
    o1.warm_start = &v1;
    o2.warm_start = &v2;
    out.rep1 = solve_semilinear_eigen(g, model, 1, v2, o1);
    out.rep2 = solve_semilinear_eigen(g, model, 2, v1, o2);
    out.v1 = out.rep1.strategy;
    out.v2 = out.rep2.strategy;
    return out;
}

double hjb_residual(const Grid& g, const GameModel& model, const MarkovStrategy& v1,
                    const MarkovStrategy& v2, const EigenPair& eig, int player) {
    const std::vector<double> h = kern::hmin(g, model, player, v1, v2, eig.psi);
    double sup_psi = 0, res = 0;
    for (double v : eig.psi)
        if (std::fabs(v) > sup_psi) sup_psi = std::fabs(v);
    for (long i = 0; i < static_cast<long>(h.size()); ++i) {
        const double r = std::fabs(h[i] - eig.lambda * eig.psi[i]);
        if (r > res) res = r;
    }
    return res / sup_psi;
}

namespace {

MarkovStrategy damp(const MarkovStrategy& old_v, const MarkovStrategy& br, double omega) {
    MarkovStrategy out = old_v;
    for (std::size_t k = 0; k < out.p.size(); ++k)
        out.p[k] = (1.0 - omega) * old_v.p[k] + omega * br.p[k];
    return out;
}

MarkovStrategy random_mixtures(int player, int m, long nodes, std::mt19937_64& gen) {
    MarkovStrategy v;
    v.player = player;
    v.m = m;
    v.grid_nodes = nodes;
    v.p.resize(nodes * m);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (long n = 0; n < nodes; ++n) {
        double s = 0;
        double* row = v.p.data() + n * m;
        for (int u = 0; u < m; ++u) {
            row[u] = -std::log(1.0 - unif(gen));  // exponential spacings
            s += row[u];
        }
        for (int u = 0; u < m; ++u) row[u] /= s;
    }
    return v;
}

// frozen-pair eigenpair of player i at (v1, v2)
EigenPair frozen_eigenpair(const Grid& g, const GameModel& model, int player,
                           const MarkovStrategy& v1, const MarkovStrategy& v2,
                           const SemilinearOptions& so) {
    const StencilMatrix M = discretize(g, model, player, v1, v2);
    EigenOptions eo;
    eo.tol = so.tol_eig;
    eo.max_iter = so.max_eigen_iter;
    eo.mode = so.eigen_mode;
    return principal_eigenpair(M, g.origin_interior_index(), eo);
}

}  // namespace

NashReport find_nash(const Grid& g, const GameModel& model, const NashOptions& opts) {
    if (!(opts.damping > 0.0) || opts.damping > 1.0)
        throw ConfigError("damping must lie in (0, 1]");
    NashReport rep;
    const long nodes = g.num_nodes();
    MarkovStrategy v1, v2;
    if (opts.random_init) {
        std::mt19937_64 gen(opts.seed);
        v1 = random_mixtures(1, model.actions1.size(), nodes, gen);
        v2 = random_mixtures(2, model.actions2.size(), nodes, gen);
    } else {
        v1 = MarkovStrategy::uniform(1, model.actions1.size(), nodes);
        v2 = MarkovStrategy::uniform(2, model.actions2.size(), nodes);
    }

    // cycle detection on the rounded (lambda1, lambda2) pair
    std::map<std::pair<std::int64_t, std::int64_t>, long> seen;
    const double res = 1e-9;

    for (long k = 1; k <= opts.max_iter; ++k) {
        const BestResponseResult br = best_response_map(g, model, v1, v2, opts.solve);
        MarkovStrategy n1 = damp(v1, br.v1, opts.damping);
        MarkovStrategy n2 = damp(v2, br.v2, opts.damping);
#ifndef NDEBUG
        for (long n = 0; n < nodes; ++n) {
            MixedAction a;
            a.p.assign(n1.at(n), n1.at(n) + n1.m);
            MixedAction b;
            b.p.assign(n2.at(n), n2.at(n) + n2.m);
            if (!a.valid() || !b.valid()) throw NashViolation("damped iterate left the simplex");
        }
#endif
        const double change = std::max(n1.max_diff(v1), n2.max_diff(v2));
        v1 = std::move(n1);
        v2 = std::move(n2);
        rep.trace.push_back({br.rep1.eig.lambda, br.rep2.eig.lambda, change});
        rep.iterations = k;

        if (change <= opts.tol_strategy) {
            rep.eig1 = frozen_eigenpair(g, model, 1, v1, v2, opts.solve);
            rep.eig2 = frozen_eigenpair(g, model, 2, v1, v2, opts.solve);
            rep.residual1 = hjb_residual(g, model, v1, v2, rep.eig1, 1);
            rep.residual2 = hjb_residual(g, model, v1, v2, rep.eig2, 2);
            if (rep.residual1 <= opts.tol_res && rep.residual2 <= opts.tol_res) {
                rep.converged = true;
                break;
            }
            continue;  // strategies settled but the residual has not; keep going
        }

        const std::pair<std::int64_t, std::int64_t> key(
            std::llround(br.rep1.eig.lambda / res), std::llround(br.rep2.eig.lambda / res));
        auto it = seen.find(key);
        if (it != seen.end() && it->second < k - 1) {
            rep.cycle_detected = true;  // revisited a non-adjacent iterate
            break;
        }
        seen[key] = k;
    }

    rep.v1 = std::move(v1);
    rep.v2 = std::move(v2);
    if (!rep.converged) {
        rep.eig1 = frozen_eigenpair(g, model, 1, rep.v1, rep.v2, opts.solve);
        rep.eig2 = frozen_eigenpair(g, model, 2, rep.v1, rep.v2, opts.solve);
        rep.residual1 = hjb_residual(g, model, rep.v1, rep.v2, rep.eig1, 1);
        rep.residual2 = hjb_residual(g, model, rep.v1, rep.v2, rep.eig2, 2);
    }
    return rep;
}

namespace {

std::vector<DeviationEntry> run_deviations(const Grid& g, const GameModel& model,
                                           NashReport& report,
                                           const std::vector<MarkovStrategy>& devs,
                                           const std::vector<std::string>& ids, double tol_dev) {
    std::vector<DeviationEntry> table;
    SemilinearOptions so;
    const DeviationEntry* worst = nullptr;
    for (std::size_t i = 0; i < devs.size(); ++i) {
        const MarkovStrategy& dv = devs[i];
        const int player = dv.player;
        const double base = (player == 1) ? report.eig1.lambda : report.eig2.lambda;
        EigenPair e = (player == 1) ? frozen_eigenpair(g, model, 1, dv, report.v2, so)
                                    : frozen_eigenpair(g, model, 2, report.v1, dv, so);
        DeviationEntry entry;
        entry.player = player;
        entry.id = ids[i];
        entry.lambda = e.lambda;
        entry.margin = e.lambda - base;
        table.push_back(entry);
    }
    report.deviations.insert(report.deviations.end(), table.begin(), table.end());
    for (const DeviationEntry& e : table)
        if (!worst || e.margin < worst->margin) worst = &e;
    if (worst && worst->margin < -tol_dev)
        throw NashViolation("deviation " + worst->id + " of player " +
                            std::to_string(worst->player) + " lowers lambda by " +
                            std::to_string(-worst->margin));
    return table;
}

}  // namespace

std::vector<DeviationEntry> verify_nash(const Grid& g, const GameModel& model, NashReport& report,
                                        int n_random, unsigned long long seed, double tol_dev) {
    std::vector<MarkovStrategy> devs;
    std::vector<std::string> ids;
    std::mt19937_64 gen(seed);
    for (int t = 0; t < n_random; ++t) {
        const int player = (t % 2) + 1;
        const int m = model.actions(player).size();
        std::uniform_int_distribution<int> pick(0, m - 1);
        std::vector<int> idx(g.num_nodes());
        for (long n = 0; n < g.num_nodes(); ++n) idx[n] = pick(gen);
        devs.push_back(MarkovStrategy::dirac(player, m, g.num_nodes(), idx));
        ids.push_back("random-" + std::to_string(t));
    }
    return run_deviations(g, model, report, devs, ids, tol_dev);
}

std::vector<DeviationEntry> verify_nash(const Grid& g, const GameModel& model, NashReport& report,
                                        const std::vector<MarkovStrategy>& deviations,
                                        double tol_dev) {
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < deviations.size(); ++i) ids.push_back("given-" + std::to_string(i));
    return run_deviations(g, model, report, deviations, ids, tol_dev);
}

}  // namespace rsgame
