#include "rsgame/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rsgame/errors.hpp"

namespace rsgame {

namespace {

std::string node_tag(const double* x, int d) {
    std::ostringstream os;
    os << "(";
    for (int k = 0; k < d; ++k) os << (k ? ", " : "") << x[k];
    os << ")";
    return os.str();
}

double ball_norm(const double* x, int d) {
    double s = 0;
    for (int k = 0; k < d; ++k) s += x[k] * x[k];
    return std::sqrt(s);
}

// max over pure action pairs of r_i at x
double sup_cost(const GameModel& model, int i, const double* x) {
    double best = -std::numeric_limits<double>::infinity();
    for (int u1 = 0; u1 < model.actions1.size(); ++u1) {
        const double c1 = model.cost_at(i, 1, x, u1);
        for (int u2 = 0; u2 < model.actions2.size(); ++u2) {
            const double v = c1 + model.cost_at(i, 2, x, u2);
            if (v > best) best = v;
        }
    }
    return best;
}

}  // namespace

LyapunovReport check_lyapunov(const GameModel& model, const LyapunovSpec& spec, const Grid& g,
                              double h_chk) {
    if (!(h_chk > 0) || h_chk > g.h)
        throw ConfigError("lyapunov check step must be positive and at most the grid spacing");
    if (!(spec.K_radius > 0) || spec.K_radius >= g.R)
        throw ConfigError("compact-set radius must lie strictly inside the grid box");
    if (spec.kind == LyapunovCase::Bounded && !(spec.delta > 0))
        throw ConfigError("bounded case needs delta > 0");

    LyapunovReport rep;
    rep.min_margin = std::numeric_limits<double>::infinity();
    rep.min_V_on_K = std::numeric_limits<double>::infinity();
    bool any_inside = false;

    double x[2], xp[2], xm[2], D1[2], D2[2];
    for (long node = 0; node < g.num_nodes(); ++node) {
        if (g.interior_index(node) < 0) continue;
        g.position(node, x);
        ++rep.probes;
        const double V0 = spec.V.eval(x, g.d, nullptr, 0);
        if (!(V0 >= 1.0))
            throw SpecInfeasible("candidate V is below 1 at node " + node_tag(x, g.d));
        for (int k = 0; k < g.d; ++k) {
            for (int j = 0; j < g.d; ++j) xp[j] = xm[j] = x[j];
            xp[k] += h_chk;
            xm[k] -= h_chk;
            const double Vp = spec.V.eval(xp, g.d, nullptr, 0);
            const double Vm = spec.V.eval(xm, g.d, nullptr, 0);
            D1[k] = (Vp - Vm) / (2.0 * h_chk);
            D2[k] = (Vp - 2.0 * V0 + Vm) / (h_chk * h_chk);
        }

        double sup_lv = -std::numeric_limits<double>::infinity();
        int arg1 = 0, arg2 = 0;
        for (int u1 = 0; u1 < model.actions1.size(); ++u1)
            for (int u2 = 0; u2 < model.actions2.size(); ++u2) {
                double lv = 0;
                for (int k = 0; k < g.d; ++k) {
                    const double s = model.sigma_at(k, x);
                    const double b = model.drift1_at(k, x, u1) + model.drift2_at(k, x, u2);
                    lv += 0.5 * s * s * D2[k] + b * D1[k];
                }
                if (lv > sup_lv) {
                    sup_lv = lv;
                    arg1 = u1;
                    arg2 = u2;
                }
            }

        const bool inside = ball_norm(x, g.d) <= spec.K_radius;
        double decay;  // the required -dV term: delta V or ell V
        if (spec.kind == LyapunovCase::Bounded) {
            decay = spec.delta * V0;
        } else {
            const double ell = spec.ell.eval(x, g.d, nullptr, 0);
            if (!inside && !(ell > 0))
                throw SpecInfeasible("ell is not positive outside the compact set at node " +
                                     node_tag(x, g.d));
            decay = ell * V0;
        }

        if (inside) {
            any_inside = true;
            rep.alpha = std::max(rep.alpha, sup_lv + decay);
            rep.min_V_on_K = std::min(rep.min_V_on_K, V0);
        } else {
            const double margin = -decay - sup_lv;
            if (margin < 0)
                throw SpecInfeasible(
                    "drift inequality fails at node " + node_tag(x, g.d) + " under actions (" +
                    model.actions1.actions[arg1].name + ", " + model.actions2.actions[arg2].name +
                    "); margin " + std::to_string(margin));
            rep.min_margin = std::min(rep.min_margin, margin);
        }
    }
    if (!any_inside) throw ConfigError("no interior node lies in the compact set");
    if (rep.alpha < 0) rep.alpha = 0;
    if (!std::isfinite(rep.min_margin)) rep.min_margin = 0;  // every probe inside K

    // cost-side conditions and the kappa_1 constants
    double kappa[2] = {0, 0};
    if (spec.kind == LyapunovCase::Bounded) {
        double sup_r = 0;
        for (long node = 0; node < g.num_nodes(); ++node) {
            if (g.interior_index(node) < 0) continue;
            g.position(node, x);
            for (int i = 1; i <= 2; ++i) {
                const double v = sup_cost(model, i, x);
                kappa[i - 1] = std::max(kappa[i - 1], v);
                sup_r = std::max(sup_r, v);
            }
        }
        if (!(sup_r < spec.delta))
            throw SpecInfeasible("bounded case needs sup |r| < delta, got sup r = " +
                                 std::to_string(sup_r) + " with delta = " +
                                 std::to_string(spec.delta));
        rep.notes = "bounded-cost drift condition with delta " + std::to_string(spec.delta);
    } else {
        for (long node = 0; node < g.num_nodes(); ++node) {
            if (g.interior_index(node) < 0) continue;
            g.position(node, x);
            const double ell = spec.ell.eval(x, g.d, nullptr, 0);
            for (int i = 1; i <= 2; ++i) {
                const double v = sup_cost(model, i, x) - ell;
                if (v > kappa[i - 1]) kappa[i - 1] = v;
            }
        }

        // finite surrogate for inf-compactness: ell - sup_u r_i must grow
        // toward the boundary along each axis line through the origin
        for (int i = 1; i <= 2; ++i) {
            for (int axis = 0; axis < g.d; ++axis) {
                for (int dir = -1; dir <= 1; dir += 2) {
                    double prev = 0;
                    bool have_prev = false;
                    for (long t = 1; t <= g.steps; ++t) {
                        double xt[2] = {0, 0};
                        xt[axis] = dir * static_cast<double>(t) * g.h;
                        if (std::fabs(xt[axis]) > g.R - 0.5 * g.h) break;  // boundary
                        if (std::fabs(xt[axis]) < spec.K_radius) continue;
                        const double phi =
                            spec.ell.eval(xt, g.d, nullptr, 0) - sup_cost(model, i, xt);
                        if (have_prev && phi < prev - 1e-12 * (1.0 + std::fabs(prev)))
                            throw SpecInfeasible(
                                "growth surrogate fails for player " + std::to_string(i) +
                                " at node " + node_tag(xt, g.d) +
                                ": ell - sup r decreased toward the boundary");
                        prev = phi;
                        have_prev = true;
                    }
                }
            }
        }
        rep.notes = "unbounded-cost condition; inf-compactness via monotone growth of "
                    "ell - sup r along grid axes beyond the compact radius (surrogate check)";
    }

    for (int i = 0; i < 2; ++i) rep.bound[i] = kappa[i] + rep.alpha / rep.min_V_on_K;
    rep.passed = true;
    return rep;
}

double cost_bound(const LyapunovReport& rep, int player) {
    if (player < 1 || player > 2) throw ConfigError("player must be 1 or 2");
    return rep.bound[player - 1];
}

}  // namespace rsgame
