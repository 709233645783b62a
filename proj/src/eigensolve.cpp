#include "rsgame/eigensolve.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <cassert>
#include <cfloat>
#include <cmath>
#include <limits>

#include "rsgame/errors.hpp"
#include "rsgame/kernels.hpp"

namespace rsgame {

namespace {

double shift_of(const StencilMatrix& M) {
    double min_diag = std::numeric_limits<double>::infinity();
    for (long i = 0; i < M.n; ++i)
        for (long k = M.row_ptr[i]; k < M.row_ptr[i + 1]; ++k)
            if (M.col[k] == i && M.val[k] < min_diag) min_diag = M.val[k];
    return (min_diag < 0 ? -min_diag : 0.0) + 1.0;
}

// y = (M + cI) psi and the ratio bounds in one pass
std::pair<double, double> bounds_into(const StencilMatrix& M, double c,
                                      const std::vector<double>& psi, std::vector<double>& y) {
    kern::spmv(M, psi.data(), y.data());
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (long i = 0; i < M.n; ++i) {
        if (!(psi[i] > 0)) throw NonPositiveVector("Collatz-Wielandt ratio at nonpositive entry");
        y[i] += c * psi[i];
        const double q = y[i] / psi[i];
        if (q < lo) lo = q;
        if (q > hi) hi = q;
    }
    return {lo - c, hi - c};
}

Eigen::SparseMatrix<double> shifted_negated(const StencilMatrix& M, double mu) {
    // mu*I - M, a nonsingular M-matrix for mu above the principal eigenvalue
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(M.col.size());
    for (long i = 0; i < M.n; ++i)
        for (long k = M.row_ptr[i]; k < M.row_ptr[i + 1]; ++k) {
            const double v = (M.col[k] == i) ? mu - M.val[k] : -M.val[k];
            trips.emplace_back(static_cast<int>(i), static_cast<int>(M.col[k]), v);
        }
    Eigen::SparseMatrix<double> A(M.n, M.n);
    A.setFromTriplets(trips.begin(), trips.end());
    return A;
}

void sup_normalize(std::vector<double>& v) {
    double m = 0;
    for (double x : v)
        if (std::fabs(x) > m) m = std::fabs(x);
    if (m == 0) throw NonPositiveVector("zero iterate");
    for (double& x : v) x /= m;
}

}  // namespace

std::pair<double, double> collatz_wielandt_bounds(const StencilMatrix& M,
                                                  const std::vector<double>& psi) {
    if (static_cast<long>(psi.size()) != M.n)
        throw ConfigError("vector length does not match matrix size");
    std::vector<double> y(M.n);
    return bounds_into(M, shift_of(M), psi, y);
}

EigenPair principal_eigenpair(const StencilMatrix& M, long x0, const EigenOptions& opts) {
    if (M.n <= 0) throw ConfigError("empty matrix");
    if (x0 < 0 || x0 >= M.n) throw ConfigError("anchor index out of range");
    if (!M.pattern_connected())
        throw Reducible("stencil graph is disconnected; no unique principal eigenvector");
    if (M.min_offdiag() < 0)
        throw MonotonicityViolation("negative off-diagonal entry in stencil matrix");

    const double c = shift_of(M);
    // bounds below this are indistinguishable from rounding in the ratios
    const double noise_floor = 32.0 * DBL_EPSILON * (M.inf_norm() + 2.0 * c);

    EigenPair out;
    std::vector<double>& psi = out.psi;
    if (!opts.init.empty()) {
        if (static_cast<long>(opts.init.size()) != M.n)
            throw ConfigError("warm-start vector length does not match matrix size");
        psi = opts.init;
        for (double v : psi)
            if (!(v > 0)) throw NonPositiveVector("warm-start vector must be positive");
        sup_normalize(psi);
    } else {
        psi.assign(M.n, 1.0);
    }

    std::vector<double> y(M.n);
    double lo = 0, hi = 0;
    double prev_gap = std::numeric_limits<double>::infinity();
    int no_progress = 0;
    bool accel = false;
    double mu = 0;
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    // plain steps to take before judging progress in Auto mode
    const long warmup = 20;
    bool converged = false;

    for (long it = 1; it <= opts.max_iter; ++it) {
        std::tie(lo, hi) = bounds_into(M, c, psi, y);
        out.iterations = it;
        if (opts.record_trace) out.bracket_trace.emplace_back(lo, hi);
        const double gap = hi - lo;
        if (gap <= opts.tol) {
            converged = true;
            break;
        }
        if (gap >= 0.95 * prev_gap)
            ++no_progress;
        else
            no_progress = 0;
        prev_gap = gap;
        if (no_progress >= 8 && gap <= std::max(opts.tol, noise_floor)) {
            converged = true;  // stalled at the rounding floor of the ratios
            break;
        }

        if (opts.mode == EigenOptions::Mode::Auto && !accel && it >= warmup) {
            accel = true;
            mu = hi + std::max(gap, opts.tol);
            lu.compute(shifted_negated(M, mu));
            if (lu.info() != Eigen::Success)
                throw NoConvergence("shifted factorization failed", lo, hi);
        } else if (accel && 4.0 * gap < mu - hi) {
            // re-center once the bracket has tightened well past the shift
            mu = hi + std::max(gap, opts.tol);
            lu.compute(shifted_negated(M, mu));
            if (lu.info() != Eigen::Success)
                throw NoConvergence("shifted factorization failed", lo, hi);
        }

        if (accel) {
            Eigen::Map<const Eigen::VectorXd> p(psi.data(), M.n);
            Eigen::VectorXd z = lu.solve(p);
            if (lu.info() != Eigen::Success)
                throw NoConvergence("shifted solve failed", lo, hi);
            for (long i = 0; i < M.n; ++i) psi[i] = z[i];
        } else {
            psi.swap(y);  // y already holds (M + cI) psi
        }
        sup_normalize(psi);
#ifndef NDEBUG
        for (long i = 0; i < M.n; ++i) assert(psi[i] > 0);
#endif
    }
    if (!converged) throw NoConvergence("eigensolver hit the iteration cap", lo, hi);

    out.lo = lo;
    out.hi = hi;
    out.lambda = 0.5 * (lo + hi);
    if (!(psi[x0] > 0)) throw NonPositiveVector("anchor entry not positive");
    const double anchor = psi[x0];
    for (double& v : psi) v /= anchor;

    double sup = 0, res = 0;
    for (double v : psi)
        if (std::fabs(v) > sup) sup = std::fabs(v);
    kern::spmv(M, psi.data(), y.data());
    for (long i = 0; i < M.n; ++i) {
        const double r = std::fabs(y[i] - out.lambda * psi[i]);
        if (r > res) res = r;
    }
    out.residual = res / sup;
    return out;
}

EigenPair principal_eigenpair(const StencilMatrix& M, long x0, double tol, long max_iter) {
    EigenOptions o;
    o.tol = tol;
    o.max_iter = max_iter;
    return principal_eigenpair(M, x0, o);
}

}  // namespace rsgame
