#pragma once
#include <iosfwd>
#include <vector>

#include "rsgame/grid.hpp"
#include "rsgame/model.hpp"

namespace rsgame {

// Sparse discretization of L^{v1,v2} + diag(r_i) over interior nodes with
// Dirichlet boundary (boundary columns dropped). CSR, columns ascending per row.
struct StencilMatrix {
    long n = 0;
    std::vector<long> row_ptr;    // n+1
    std::vector<long> col;        // nnz
    std::vector<double> val;      // nnz
    std::vector<double> cost_diag;  // the +r_i part sitting on the diagonal

    double min_offdiag() const;
    // row sum of the pure generator part (cost term removed)
    double generator_row_sum(long row) const;
    bool pattern_connected() const;  // BFS over the (symmetric) sparsity pattern
    double inf_norm() const;         // max absolute row sum

    void write_text(std::ostream& os) const;  // "row col value" per nonzero
    std::vector<double> dense() const;        // row-major n*n, for small oracles
};

// Coefficient fields of the frozen-strategy operator, one value per interior
// node (and per axis for a and b).
struct CoeffField {
    int d = 1;
    long n = 0;
    std::vector<double> a;  // n*d, a_kk = sigma_kk^2 / 2
    std::vector<double> b;  // n*d, relaxed drift
    std::vector<double> r;  // n, relaxed cost of the selected player
};

// One interior row of the upwind stencil: central second differences for a,
// upwind first differences for b (forward when b > 0), +r on the diagonal.
// Neighbors on the boundary are dropped.
struct NodeStencil {
    double diag = 0;
    int n_off = 0;
    long cols[4];
    double vals[4];
};

NodeStencil stencil_row(const Grid& g, long interior_idx, const double* a, const double* b,
                        double r);

// Applies the row to a vector over interior nodes (Dirichlet: missing neighbors
// contribute zero).
inline double stencil_apply(const NodeStencil& s, long interior_idx, const double* psi) {
    double y = s.diag * psi[interior_idx];
    for (int k = 0; k < s.n_off; ++k) y += s.vals[k] * psi[s.cols[k]];
    return y;
}

StencilMatrix discretize(const Grid& g, const GameModel& model, int player,
                         const MarkovStrategy& v1, const MarkovStrategy& v2);

}  // namespace rsgame
