#include "rsgame/model.hpp"

#include <cmath>
#include <sstream>

namespace rsgame {

bool MixedAction::valid(double tol) const {
    double sum = 0;
    for (double v : p) {
        if (v < 0) return false;
        sum += v;
    }
    return std::fabs(sum - 1.0) <= tol;
}

MixedAction MixedAction::uniform(int m) {
    MixedAction a;
    a.p.assign(m, 1.0 / m);
    return a;
}

MixedAction MixedAction::dirac(int m, int idx) {
    MixedAction a;
    a.p.assign(m, 0.0);
    a.p[idx] = 1.0;
    return a;
}

MarkovStrategy MarkovStrategy::uniform(int player, int m, long nodes) {
    MarkovStrategy s;
    s.player = player;
    s.m = m;
    s.grid_nodes = nodes;
    s.p.assign(static_cast<std::size_t>(nodes) * m, 1.0 / m);
    return s;
}

MarkovStrategy MarkovStrategy::dirac(int player, int m, long nodes,
                                     const std::vector<int>& idx) {
    MarkovStrategy s;
    s.player = player;
    s.m = m;
    s.grid_nodes = nodes;
    s.p.assign(static_cast<std::size_t>(nodes) * m, 0.0);
    for (long n = 0; n < nodes; ++n) s.p[static_cast<std::size_t>(n) * m + idx[n]] = 1.0;
    return s;
}

double MarkovStrategy::max_diff(const MarkovStrategy& other) const {
    double mx = 0;
    for (std::size_t i = 0; i < p.size(); ++i) mx = std::fmax(mx, std::fabs(p[i] - other.p[i]));
    return mx;
}

void relaxed_drift_rows(const GameModel& model, const double* x, const double* row1,
                        const double* row2, double* out) {
    int m1 = model.actions1.size(), m2 = model.actions2.size();
    for (int k = 0; k < model.d; ++k) {
        double b = 0;
        for (int u = 0; u < m1; ++u)
            if (row1[u] != 0) b += row1[u] * model.drift1_at(k, x, u);
        for (int u = 0; u < m2; ++u)
            if (row2[u] != 0) b += row2[u] * model.drift2_at(k, x, u);
        out[k] = b;
    }
}

double relaxed_cost_rows(const GameModel& model, int i, const double* x,
                         const double* row1, const double* row2) {
    int m1 = model.actions1.size(), m2 = model.actions2.size();
    double r = 0;
    for (int u = 0; u < m1; ++u)
        if (row1[u] != 0) r += row1[u] * model.cost_at(i, 1, x, u);
    for (int u = 0; u < m2; ++u)
        if (row2[u] != 0) r += row2[u] * model.cost_at(i, 2, x, u);
    return r;
}

std::vector<double> relaxed_drift(const GameModel& model, const double* x,
                                  const MixedAction& m1, const MixedAction& m2) {
    std::vector<double> out(model.d);
    relaxed_drift_rows(model, x, m1.p.data(), m2.p.data(), out.data());
    return out;
}

double relaxed_cost(const GameModel& model, int i, const double* x,
                    const MixedAction& m1, const MixedAction& m2) {
    return relaxed_cost_rows(model, i, x, m1.p.data(), m2.p.data());
}

ValidationReport validate_model(const GameModel& model,
                                const std::vector<std::vector<double>>& probes) {
    std::ostringstream viol;
    int violations = 0;
    double C0 = 0;
    int m1 = model.actions1.size(), m2 = model.actions2.size();
    for (const auto& pt : probes) {
        const double* x = pt.data();
        double x2 = 0;
        for (int k = 0; k < model.d; ++k) x2 += x[k] * x[k];
        double sig2 = 0;
        for (int k = 0; k < model.d; ++k) {
            double s = model.sigma_at(k, x);
            sig2 += s * s;
            if (s * s < 2 * model.a_min) {
                if (violations++ < 8)
                    viol << "nondegeneracy: sigma_" << k << "^2 = " << s * s << " < "
                         << 2 * model.a_min << " at x[0]=" << x[0] << "\n";
            }
        }
        // additive cost parts checked separately: each must be >= 0
        for (int i = 1; i <= 2; ++i) {
            for (int j = 1; j <= 2; ++j) {
                int mj = j == 1 ? m1 : m2;
                for (int uj = 0; uj < mj; ++uj) {
                    double rij = model.cost_at(i, j, x, uj);
                    if (rij < 0) {
                        if (violations++ < 8)
                            viol << "cost r" << i << j << " = " << rij << " < 0 at x[0]=" << x[0]
                                 << " action " << uj << "\n";
                    }
                }
            }
        }
        // affine growth: sup over action pairs of <b,x>^+ + |sigma|^2 <= C0 (1+|x|^2)
        for (int u1 = 0; u1 < m1; ++u1) {
            for (int u2 = 0; u2 < m2; ++u2) {
                double dot = 0;
                for (int k = 0; k < model.d; ++k) {
                    double b = model.drift1_at(k, x, u1) + model.drift2_at(k, x, u2);
                    dot += b * x[k];
                }
                double num = (dot > 0 ? dot : 0) + sig2;
                double c = num / (1 + x2);
                if (c > C0) C0 = c;
            }
        }
    }
    if (violations > 0) {
        viol << violations << " violation(s) total";
        throw ValidationFailed(viol.str());
    }
    ValidationReport rep;
    rep.C0 = C0;
    rep.probes = static_cast<long>(probes.size());
    return rep;
}

}  // namespace rsgame
