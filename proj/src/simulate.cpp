#include "rsgame/simulate.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "rsgame/errors.hpp"
#include "rsgame/kernels.hpp"

namespace rsgame {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Hand-rolled Box-Muller on top of the raw mt19937_64 stream. The standard
// normal_distribution is implementation-defined, which would break
// bit-reproducibility of reports across toolchains.
struct BoxMuller {
    std::mt19937_64 gen;
    double spare = 0;
    bool has_spare = false;
    explicit BoxMuller(unsigned long long seed) : gen(seed) {}
    double uniform() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }  // [0, 1)
    double normal() {
        if (has_spare) {
            has_spare = false;
            return spare;
        }
        const double u1 = uniform(), u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log1p(-u1));
        const double th = kTwoPi * u2;
        spare = r * std::sin(th);
        has_spare = true;
        return r * std::cos(th);
    }
};

struct Kahan {
    double s = 0, c = 0;
    void add(double v) {
        const double y = v - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

double clamp_radius(const Grid& g, const SimConfig& cfg) {
    if (cfg.R_clamp > 0 && cfg.R_clamp < g.R) return cfg.R_clamp;
    return g.R;
}

long lookup_node(const Grid& g, double clampR, const double* x) {
    double xc[2];
    for (int k = 0; k < g.d; ++k) {
        double v = x[k];
        if (v > clampR)
            v = clampR;
        else if (v < -clampR)
            v = -clampR;
        xc[k] = v;
    }
    return g.nearest_node(xc);
}

double norm2(const double* x, int d) {
    double s = 0;
    for (int k = 0; k < d; ++k) s += x[k] * x[k];
    return std::sqrt(s);
}

void check_start(const Grid& g, const GameModel& model, const std::vector<double>& x0) {
    if (static_cast<int>(x0.size()) != model.d)
        throw ConfigError("start point dimension does not match the model");
    for (int k = 0; k < model.d; ++k)
        if (std::fabs(x0[k]) > g.R) throw ConfigError("start point lies outside the grid box");
}

// index-ordered logmeanexp with the running-max shift; also reports the
// delta-method relative spread used for the standard error
struct LogMeanExp {
    double value = 0;     // log of the mean
    double rel_se = 0;    // sd(exp(S - m)) / (sqrt(N) * mean(exp(S - m)))
};

LogMeanExp logmeanexp(const std::vector<double>& S) {
    double m = S[0];
    for (double v : S)
        if (v > m) m = v;
    Kahan sum;
    for (double v : S) sum.add(std::exp(v - m));
    const long n = static_cast<long>(S.size());
    const double mean = sum.s / static_cast<double>(n);
    Kahan var;
    for (double v : S) {
        const double dlt = std::exp(v - m) - mean;
        var.add(dlt * dlt);
    }
    LogMeanExp out;
    out.value = std::log(mean) + m;
    if (n > 1) {
        const double sd = std::sqrt(var.s / static_cast<double>(n - 1));
        out.rel_se = sd / (std::sqrt(static_cast<double>(n)) * mean);
    }
    return out;
}

}  // namespace

void validate(const SimConfig& cfg) {
    if (!(cfg.dt > 0)) throw ConfigError("simulate.dt must be positive");
    if (!(cfg.T >= 100.0 * cfg.dt)) throw ConfigError("simulate.T must be at least 100 dt");
    if (cfg.N < 2) throw ConfigError("simulate.N must be at least 2");
}

CostEstimate estimate_rho(const Grid& g, const GameModel& model, int player,
                          const MarkovStrategy& v1, const MarkovStrategy& v2,
                          const std::vector<double>& x0, const SimConfig& cfg, bool keep_paths) {
    validate(cfg);
    check_start(g, model, x0);
    const double clampR = clamp_radius(g, cfg);
    const long steps = std::llround(cfg.T / cfg.dt);
    const long steps_half = steps / 2;
    const double sqrt_dt = std::sqrt(cfg.dt);

    std::vector<double> S(cfg.N), S_half(cfg.N);
    kern::run_paths(cfg.N, [&](long p) {
        BoxMuller rng(cfg.seed + static_cast<unsigned long long>(p));
        double x[2] = {0, 0}, b[2], xn[2];
        for (int k = 0; k < g.d; ++k) x[k] = x0[k];
        Kahan acc;
        for (long step = 0; step < steps; ++step) {
            const long node = lookup_node(g, clampR, x);
            const double* w1 = v1.at(node);
            const double* w2 = v2.at(node);
            acc.add(relaxed_cost_rows(model, player, x, w1, w2) * cfg.dt);
            relaxed_drift_rows(model, x, w1, w2, b);
            for (int k = 0; k < g.d; ++k)
                xn[k] = x[k] + b[k] * cfg.dt + model.sigma_at(k, x) * sqrt_dt * rng.normal();
            for (int k = 0; k < g.d; ++k) x[k] = xn[k];
            if (step + 1 == steps_half) S_half[p] = acc.s;
        }
        S[p] = acc.s;
    });

    for (long p = 0; p < cfg.N; ++p)
        if (!std::isfinite(S[p]))
            throw NumericalOverflow("path integral overflowed on path " + std::to_string(p));

    const LogMeanExp full = logmeanexp(S);
    const LogMeanExp half = logmeanexp(S_half);
    CostEstimate out;
    out.rho = full.value / cfg.T;
    out.rho_half = half.value / (static_cast<double>(steps_half) * cfg.dt);
    out.se = full.rel_se / cfg.T;
    out.n_paths = cfg.N;
    if (keep_paths) {
        out.paths.resize(cfg.N);
        for (long p = 0; p < cfg.N; ++p) out.paths[p] = {p, S[p], cfg.T};
    }
    return out;
}

namespace {

double psi_at(const Grid& g, const std::vector<double>& psi, const double* x) {
    const long node = g.nearest_node(x);
    const long ii = g.interior_index(node);
    return ii < 0 ? 0.0 : psi[ii];  // Dirichlet outside the interior
}

}  // namespace

RepCheck check_stochastic_rep(const Grid& g, const GameModel& model, const MarkovStrategy& v1,
                              const MarkovStrategy& v2, int player, const EigenPair& eig,
                              double r_ball, const std::vector<double>& x0, const SimConfig& cfg,
                              bool keep_paths) {
    validate(cfg);
    check_start(g, model, x0);
    if (!(norm2(x0.data(), model.d) > r_ball))
        throw ConfigError("start point must lie outside the target ball");
    {
        const long ii0 = g.interior_index(g.nearest_node(x0.data()));
        if (ii0 < 0) throw ConfigError("start point snaps to a boundary node");
    }

    const double clampR = clamp_radius(g, cfg);
    const long steps = std::llround(cfg.T / cfg.dt);
    const double sqrt_dt = std::sqrt(cfg.dt);
    const double nan = std::numeric_limits<double>::quiet_NaN();

    std::vector<double> G(cfg.N, nan), Sint(cfg.N, 0), tau(cfg.N, cfg.T);
    kern::run_paths(cfg.N, [&](long p) {
        BoxMuller rng(cfg.seed + static_cast<unsigned long long>(p));
        double x[2] = {0, 0}, b[2], xn[2];
        for (int k = 0; k < g.d; ++k) x[k] = x0[k];
        Kahan acc;
        for (long step = 0; step < steps; ++step) {
            const long node = lookup_node(g, clampR, x);
            const double* w1 = v1.at(node);
            const double* w2 = v2.at(node);
            acc.add((relaxed_cost_rows(model, player, x, w1, w2) - eig.lambda) * cfg.dt);
            relaxed_drift_rows(model, x, w1, w2, b);
            for (int k = 0; k < g.d; ++k)
                xn[k] = x[k] + b[k] * cfg.dt + model.sigma_at(k, x) * sqrt_dt * rng.normal();
            for (int k = 0; k < g.d; ++k) x[k] = xn[k];
            if (norm2(x, g.d) <= r_ball) {
                G[p] = std::exp(acc.s) * psi_at(g, eig.psi, x);
                tau[p] = static_cast<double>(step + 1) * cfg.dt;
                break;
            }
        }
        Sint[p] = acc.s;
    });

    RepCheck out;
    out.lhs = psi_at(g, eig.psi, x0.data());
    Kahan sum;
    for (long p = 0; p < cfg.N; ++p) {
        if (std::isnan(G[p])) {
            ++out.n_capped;
            continue;
        }
        if (!std::isfinite(G[p]))
            throw NumericalOverflow("representation weight overflowed on path " +
                                    std::to_string(p));
        sum.add(G[p]);
        ++out.n_used;
    }
    if (out.n_capped * 5 > cfg.N)
        throw TooManyCapped(std::to_string(out.n_capped) + " of " + std::to_string(cfg.N) +
                            " paths hit the time cap; run is inconclusive");
    const double mean = sum.s / static_cast<double>(out.n_used);
    Kahan var;
    for (long p = 0; p < cfg.N; ++p) {
        if (std::isnan(G[p])) continue;
        const double d = G[p] - mean;
        var.add(d * d);
    }
    out.rhs = mean;
    if (out.n_used > 1)
        out.se = std::sqrt(var.s / static_cast<double>(out.n_used - 1) /
                           static_cast<double>(out.n_used));
    if (keep_paths) {
        out.paths.resize(cfg.N);
        for (long p = 0; p < cfg.N; ++p) out.paths[p] = {p, Sint[p], tau[p]};
    }
    return out;
}

RepTrend stochastic_rep_trend(const Grid& g, const GameModel& model, const MarkovStrategy& v1,
                              const MarkovStrategy& v2, int player, const EigenPair& eig,
                              double r_ball, const std::vector<double>& x0, const SimConfig& cfg,
                              const std::vector<double>& coarse_dts) {
    validate(cfg);
    check_start(g, model, x0);
    if (!(norm2(x0.data(), model.d) > r_ball))
        throw ConfigError("start point must lie outside the target ball");

    const double dt_f = cfg.dt;
    std::vector<long> ratio;
    for (std::size_t i = 0; i < coarse_dts.size(); ++i) {
        const double q = coarse_dts[i] / dt_f;
        const long m = std::llround(q);
        if (m < 2 || std::fabs(q - static_cast<double>(m)) > 1e-9 * q)
            throw ConfigError("trend step sizes must be integer multiples of the finest dt");
        if (i > 0 && !(coarse_dts[i] < coarse_dts[i - 1]))
            throw ConfigError("trend step sizes must be strictly decreasing");
        ratio.push_back(m);
    }
    ratio.push_back(1);
    const std::size_t L = ratio.size();
    const long steps_fine = std::llround(cfg.T / dt_f);
    for (std::size_t l = 0; l < L; ++l)
        if (steps_fine % ratio[l] != 0)
            throw ConfigError("horizon must be a whole number of steps at every trend level");
    const double clampR = clamp_radius(g, cfg);
    const double sqrt_dtf = std::sqrt(dt_f);
    const double nan = std::numeric_limits<double>::quiet_NaN();

    std::vector<std::vector<double>> G(L, std::vector<double>(cfg.N, nan));
    kern::run_paths(cfg.N, [&](long p) {
        BoxMuller rng(cfg.seed + static_cast<unsigned long long>(p));
        // one Brownian path per index, shared by every level
        std::vector<double> xi(static_cast<std::size_t>(steps_fine) * g.d);
        for (long s = 0; s < steps_fine; ++s)
            for (int k = 0; k < g.d; ++k) xi[s * g.d + k] = rng.normal();

        for (std::size_t l = 0; l < L; ++l) {
            const long m = ratio[l];
            const double dt_l = dt_f * static_cast<double>(m);
            const long csteps = steps_fine / m;
            double x[2] = {0, 0}, b[2], xn[2];
            for (int k = 0; k < g.d; ++k) x[k] = x0[k];
            Kahan acc;
            for (long ck = 0; ck < csteps; ++ck) {
                const long node = lookup_node(g, clampR, x);
                const double* w1 = v1.at(node);
                const double* w2 = v2.at(node);
                acc.add((relaxed_cost_rows(model, player, x, w1, w2) - eig.lambda) * dt_l);
                relaxed_drift_rows(model, x, w1, w2, b);
                for (int k = 0; k < g.d; ++k) {
                    double dw = 0;
                    for (long j = ck * m; j < (ck + 1) * m; ++j) dw += xi[j * g.d + k];
                    xn[k] = x[k] + b[k] * dt_l + model.sigma_at(k, x) * sqrt_dtf * dw;
                }
                for (int k = 0; k < g.d; ++k) x[k] = xn[k];
                if (norm2(x, g.d) <= r_ball) {
                    G[l][p] = std::exp(acc.s) * psi_at(g, eig.psi, x);
                    break;
                }
            }
        }
    });

    RepTrend out;
    out.lhs = psi_at(g, eig.psi, x0.data());
    for (std::size_t l = 0; l < L; ++l) {
        RepTrendLevel lev;
        lev.dt = dt_f * static_cast<double>(ratio[l]);
        Kahan sum;
        for (long p = 0; p < cfg.N; ++p) {
            if (std::isnan(G[l][p])) {
                ++lev.n_capped;
                continue;
            }
            sum.add(G[l][p]);
            ++lev.n_used;
        }
        if (lev.n_capped * 5 > cfg.N)
            throw TooManyCapped("level dt = " + std::to_string(lev.dt) + " capped " +
                                std::to_string(lev.n_capped) + " of " + std::to_string(cfg.N));
        lev.rhs = sum.s / static_cast<double>(lev.n_used);
        Kahan var;
        for (long p = 0; p < cfg.N; ++p) {
            if (std::isnan(G[l][p])) continue;
            const double d = G[l][p] - lev.rhs;
            var.add(d * d);
        }
        if (lev.n_used > 1)
            lev.se = std::sqrt(var.s / static_cast<double>(lev.n_used - 1) /
                               static_cast<double>(lev.n_used));
        lev.gap = std::fabs(lev.rhs - out.lhs);
        out.levels.push_back(lev);
    }

    out.passed = true;
    for (std::size_t l = 0; l + 1 < L; ++l) {
        Kahan dsum;
        long n_pair = 0;
        for (long p = 0; p < cfg.N; ++p) {
            if (std::isnan(G[l][p]) || std::isnan(G[l + 1][p])) continue;
            dsum.add(G[l + 1][p] - G[l][p]);
            ++n_pair;
        }
        const double dmean = n_pair > 0 ? dsum.s / static_cast<double>(n_pair) : 0.0;
        Kahan dvar;
        for (long p = 0; p < cfg.N; ++p) {
            if (std::isnan(G[l][p]) || std::isnan(G[l + 1][p])) continue;
            const double d = (G[l + 1][p] - G[l][p]) - dmean;
            dvar.add(d * d);
        }
        double se_pair = 0;
        if (n_pair > 1)
            se_pair = std::sqrt(dvar.s / static_cast<double>(n_pair - 1) /
                                static_cast<double>(n_pair));
        const bool ok = out.levels[l + 1].gap <= out.levels[l].gap + 3.0 * se_pair;
        out.pair_se.push_back(se_pair);
        out.pair_ok.push_back(ok);
        if (!ok) out.passed = false;
    }
    return out;
}

}  // namespace rsgame
