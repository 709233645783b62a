#pragma once
#include <utility>
#include <vector>

#include "rsgame/stencil.hpp"

namespace rsgame {

struct EigenPair {
    double lambda = 0;
    std::vector<double> psi;  // positive over interior nodes, psi[x0] = 1
    double residual = 0;      // sup-norm of (M psi - lambda psi) / sup-norm of psi
    long iterations = 0;
    double lo = 0, hi = 0;    // certified bracket at exit
    std::vector<std::pair<double, double>> bracket_trace;  // filled when requested
};

struct EigenOptions {
    double tol = 1e-10;
    long max_iter = 50000;
    // Power runs plain power iteration only. Auto switches to shift-inverted
    // inverse iteration once plain steps stop paying off; same bracket
    // certificate either way.
    enum class Mode { Auto, Power } mode = Mode::Auto;
    bool record_trace = false;
    std::vector<double> init;  // warm start; all-ones when empty
};

// Certified bracket for the principal eigenvalue: with c = max(0, -min diag)+1
// and y = (M + cI) psi, returns (min_k y_k/psi_k - c, max_k y_k/psi_k - c).
// Contains the true principal eigenvalue for any strictly positive psi.
std::pair<double, double> collatz_wielandt_bounds(const StencilMatrix& M,
                                                  const std::vector<double>& psi);

// Principal eigenpair of M (off-diagonals >= 0, irreducible pattern): the
// unique eigenvalue with a positive eigenvector. x0 is the interior index the
// eigenvector is anchored at. Stops when the bracket width reaches tol, or at
// the floating-point noise floor of the bounds if that is wider. Throws
// Reducible or NoConvergence(lo, hi).
EigenPair principal_eigenpair(const StencilMatrix& M, long x0, const EigenOptions& opts);
EigenPair principal_eigenpair(const StencilMatrix& M, long x0, double tol = 1e-10,
                              long max_iter = 50000);

}  // namespace rsgame
