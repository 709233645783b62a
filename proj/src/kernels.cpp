#include "rsgame/kernels.hpp"

#include <atomic>
#include <cmath>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rsgame {

static std::atomic<int> g_threads{0};

void set_max_threads(int n) { g_threads.store(n < 0 ? 0 : n); }
int max_threads() { return g_threads.load(); }

namespace {

template <class F>
void par_for(long n, F&& f) {
#ifdef _OPENMP
    const int t = max_threads();
    if (t == 1) {
        for (long i = 0; i < n; ++i) f(i);
    } else if (t == 0) {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < n; ++i) f(i);
    } else {
#pragma omp parallel for schedule(static) num_threads(t)
        for (long i = 0; i < n; ++i) f(i);
    }
#else
    for (long i = 0; i < n; ++i) f(i);
#endif
}

// single-element bodies shared by the serial and OpenMP drivers

void coeff_node(const Grid& g, const GameModel& model, int player, const MarkovStrategy& v1,
                const MarkovStrategy& v2, long ii, CoeffField& out) {
    double x[2], b[2];
    g.interior_position(ii, x);
    const long node = g.node_of_interior(ii);
    const double* w1 = v1.at(node);
    const double* w2 = v2.at(node);
    relaxed_drift_rows(model, x, w1, w2, b);
    for (int k = 0; k < g.d; ++k) {
        const double s = model.sigma_at(k, x);
        out.a[ii * g.d + k] = 0.5 * s * s;
        out.b[ii * g.d + k] = b[k];
    }
    out.r[ii] = relaxed_cost_rows(model, player, x, w1, w2);
}

long row_nnz(const Grid& g, long ii) {
    long coords[2];
    g.node_coords(g.node_of_interior(ii), coords);
    long nnz = 1;
    for (int k = 0; k < g.d; ++k) {
        if (coords[k] > 1) ++nnz;
        if (coords[k] < g.steps - 1) ++nnz;
    }
    return nnz;
}

void fill_row(const Grid& g, const CoeffField& f, StencilMatrix& M, long ii) {
    const NodeStencil s = stencil_row(g, ii, &f.a[ii * f.d], &f.b[ii * f.d], f.r[ii]);
    long k = M.row_ptr[ii];
    int o = 0;
    for (; o < s.n_off && s.cols[o] < ii; ++o, ++k) {
        M.col[k] = s.cols[o];
        M.val[k] = s.vals[o];
    }
    M.col[k] = ii;
    M.val[k] = s.diag;
    ++k;
    for (; o < s.n_off; ++o, ++k) {
        M.col[k] = s.cols[o];
        M.val[k] = s.vals[o];
    }
    M.cost_diag[ii] = f.r[ii];
}

void spmv_row(const StencilMatrix& M, const double* x, double* y, long i) {
    double s = 0;
    for (long k = M.row_ptr[i]; k < M.row_ptr[i + 1]; ++k) s += M.val[k] * x[M.col[k]];
    y[i] = s;
}

struct BestAction {
    int idx;
    double value;
};

BestAction improve_node(const Grid& g, const GameModel& model, int player,
                        const MarkovStrategy& v1, const MarkovStrategy& v2,
                        const std::vector<double>& psi, long ii) {
    double x[2];
    g.interior_position(ii, x);
    const long node = g.node_of_interior(ii);
    const MarkovStrategy& opp = (player == 1) ? v2 : v1;
    const ActionSet& own_as = (player == 1) ? model.actions1 : model.actions2;
    const ActionSet& opp_as = (player == 1) ? model.actions2 : model.actions1;
    const double* wo = opp.at(node);

    // opponent part of drift and cost, fixed across candidate actions
    double a[2], b_opp[2];
    const int opp_player = (player == 1) ? 2 : 1;
    for (int k = 0; k < g.d; ++k) {
        const double s = model.sigma_at(k, x);
        a[k] = 0.5 * s * s;
        b_opp[k] = 0;
        for (int u = 0; u < opp_as.size(); ++u) {
            if (wo[u] == 0) continue;
            b_opp[k] += wo[u] * ((player == 1) ? model.drift2_at(k, x, u)
                                               : model.drift1_at(k, x, u));
        }
    }
    double r_opp = 0;
    for (int u = 0; u < opp_as.size(); ++u) {
        if (wo[u] == 0) continue;
        r_opp += wo[u] * model.cost_at(player, opp_player, x, u);
    }

    int best = 0;
    double best_h = 0;
    for (int u = 0; u < own_as.size(); ++u) {
        double b[2];
        for (int k = 0; k < g.d; ++k)
            b[k] = b_opp[k] + ((player == 1) ? model.drift1_at(k, x, u)
                                             : model.drift2_at(k, x, u));
        const double r = r_opp + model.cost_at(player, player, x, u);
        const NodeStencil s = stencil_row(g, ii, a, b, r);
        const double h = stencil_apply(s, ii, psi.data());
        if (u == 0 || h < best_h) {
            best_h = h;
            best = u;
        }
    }
    return {best, best_h};
}

CoeffField coeff_driver(const Grid& g, const GameModel& model, int player,
                        const MarkovStrategy& v1, const MarkovStrategy& v2, bool par) {
    CoeffField f;
    f.d = g.d;
    f.n = g.num_interior();
    f.a.resize(f.n * g.d);
    f.b.resize(f.n * g.d);
    f.r.resize(f.n);
    auto body = [&](long i) { coeff_node(g, model, player, v1, v2, i, f); };
    if (par)
        par_for(f.n, body);
    else
        for (long i = 0; i < f.n; ++i) body(i);
    return f;
}

StencilMatrix assemble_driver(const Grid& g, const CoeffField& f, bool par) {
    StencilMatrix M;
    M.n = f.n;
    M.row_ptr.resize(M.n + 1);
    M.row_ptr[0] = 0;
    for (long i = 0; i < M.n; ++i) M.row_ptr[i + 1] = M.row_ptr[i] + row_nnz(g, i);
    M.col.resize(M.row_ptr[M.n]);
    M.val.resize(M.row_ptr[M.n]);
    M.cost_diag.resize(M.n);
    auto body = [&](long i) { fill_row(g, f, M, i); };
    if (par)
        par_for(M.n, body);
    else
        for (long i = 0; i < M.n; ++i) body(i);
    return M;
}

std::vector<int> improve_driver(const Grid& g, const GameModel& model, int player,
                                const MarkovStrategy& v1, const MarkovStrategy& v2,
                                const std::vector<double>& psi, bool par) {
    std::vector<int> out(g.num_interior());
    auto body = [&](long i) { out[i] = improve_node(g, model, player, v1, v2, psi, i).idx; };
    if (par)
        par_for(g.num_interior(), body);
    else
        for (long i = 0; i < g.num_interior(); ++i) body(i);
    return out;
}

std::vector<double> hmin_driver(const Grid& g, const GameModel& model, int player,
                                const MarkovStrategy& v1, const MarkovStrategy& v2,
                                const std::vector<double>& psi, bool par) {
    std::vector<double> out(g.num_interior());
    auto body = [&](long i) { out[i] = improve_node(g, model, player, v1, v2, psi, i).value; };
    if (par)
        par_for(g.num_interior(), body);
    else
        for (long i = 0; i < g.num_interior(); ++i) body(i);
    return out;
}

}  // namespace

namespace kern {

CoeffField coefficients(const Grid& g, const GameModel& model, int player,
                        const MarkovStrategy& v1, const MarkovStrategy& v2) {
    return coeff_driver(g, model, player, v1, v2, true);
}
StencilMatrix assemble(const Grid& g, const CoeffField& f) { return assemble_driver(g, f, true); }
void spmv(const StencilMatrix& M, const double* x, double* y) {
    par_for(M.n, [&](long i) { spmv_row(M, x, y, i); });
}
std::vector<int> improve(const Grid& g, const GameModel& model, int player,
                         const MarkovStrategy& v1, const MarkovStrategy& v2,
                         const std::vector<double>& psi) {
    return improve_driver(g, model, player, v1, v2, psi, true);
}
std::vector<double> hmin(const Grid& g, const GameModel& model, int player,
                         const MarkovStrategy& v1, const MarkovStrategy& v2,
                         const std::vector<double>& psi) {
    return hmin_driver(g, model, player, v1, v2, psi, true);
}
void run_paths(long n, const std::function<void(long)>& body) {
    par_for(n, [&](long i) { body(i); });
}

namespace serial {
CoeffField coefficients(const Grid& g, const GameModel& model, int player,
                        const MarkovStrategy& v1, const MarkovStrategy& v2) {
    return coeff_driver(g, model, player, v1, v2, false);
}
StencilMatrix assemble(const Grid& g, const CoeffField& f) { return assemble_driver(g, f, false); }
void spmv(const StencilMatrix& M, const double* x, double* y) {
    for (long i = 0; i < M.n; ++i) spmv_row(M, x, y, i);
}
std::vector<int> improve(const Grid& g, const GameModel& model, int player,
                         const MarkovStrategy& v1, const MarkovStrategy& v2,
                         const std::vector<double>& psi) {
    return improve_driver(g, model, player, v1, v2, psi, false);
}
std::vector<double> hmin(const Grid& g, const GameModel& model, int player,
                         const MarkovStrategy& v1, const MarkovStrategy& v2,
                         const std::vector<double>& psi) {
    return hmin_driver(g, model, player, v1, v2, psi, false);
}
void run_paths(long n, const std::function<void(long)>& body) {
    for (long i = 0; i < n; ++i) body(i);
}
}  // namespace serial

}  // namespace kern
}  // namespace rsgame
