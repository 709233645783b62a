#include "rsgame/stencil.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "rsgame/kernels.hpp"

namespace rsgame {

double StencilMatrix::min_offdiag() const {
    double m = 0;
    bool first = true;
    for (long i = 0; i < n; ++i) {
        for (long k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
            if (col[k] == i) continue;
            if (first || val[k] < m) m = val[k];
            first = false;
        }
    }
    return first ? 0.0 : m;
}

double StencilMatrix::generator_row_sum(long row) const {
    double s = -cost_diag[row];
    for (long k = row_ptr[row]; k < row_ptr[row + 1]; ++k) s += val[k];
    return s;
}

bool StencilMatrix::pattern_connected() const {
    if (n == 0) return false;
    std::vector<char> seen(n, 0);
    std::vector<long> stack{0};
    seen[0] = 1;
    long count = 1;
    while (!stack.empty()) {
        long i = stack.back();
        stack.pop_back();
        for (long k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
            long j = col[k];
            if (!seen[j]) {
                seen[j] = 1;
                ++count;
                stack.push_back(j);
            }
        }
    }
    // the stencil pattern is structurally symmetric, one sweep suffices
    return count == n;
}

double StencilMatrix::inf_norm() const {
    double m = 0;
    for (long i = 0; i < n; ++i) {
        double s = 0;
        for (long k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += std::fabs(val[k]);
        if (s > m) m = s;
    }
    return m;
}

void StencilMatrix::write_text(std::ostream& os) const {
    char buf[128];
    for (long i = 0; i < n; ++i) {
        for (long k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
            std::snprintf(buf, sizeof buf, "%ld %ld %.17g\n", i, col[k], val[k]);
            os << buf;
        }
    }
}

std::vector<double> StencilMatrix::dense() const {
    std::vector<double> D(static_cast<size_t>(n) * n, 0.0);
    for (long i = 0; i < n; ++i)
        for (long k = row_ptr[i]; k < row_ptr[i + 1]; ++k) D[i * n + col[k]] = val[k];
    return D;
}

NodeStencil stencil_row(const Grid& g, long interior_idx, const double* a, const double* b,
                        double r) {
    NodeStencil s;
    s.diag = r;
    const double h = g.h, h2 = h * h;
    long coords[2];
    g.node_coords(g.node_of_interior(interior_idx), coords);
    // neighbor interior index offsets per axis (d<=2, axis 0 is the major one)
    const long stride[2] = {g.d == 2 ? g.steps - 1 : 1, 1};
    for (int k = 0; k < g.d; ++k) {
        const double ak = a[k], bk = b[k];
        s.diag += -2.0 * ak / h2 - std::fabs(bk) / h;
        const double wl = ak / h2 + (bk < 0 ? -bk : 0.0) / h;
        const double wr = ak / h2 + (bk > 0 ? bk : 0.0) / h;
        if (coords[k] > 1) {  // left neighbor is interior
            s.cols[s.n_off] = interior_idx - stride[k];
            s.vals[s.n_off] = wl;
            ++s.n_off;
        }
        if (coords[k] < g.steps - 1) {
            s.cols[s.n_off] = interior_idx + stride[k];
            s.vals[s.n_off] = wr;
            ++s.n_off;
        }
    }
    // keep columns ascending for a canonical CSR layout
    for (int i = 1; i < s.n_off; ++i)
        for (int j = i; j > 0 && s.cols[j] < s.cols[j - 1]; --j) {
            std::swap(s.cols[j], s.cols[j - 1]);
            std::swap(s.vals[j], s.vals[j - 1]);
        }
    return s;
}

StencilMatrix discretize(const Grid& g, const GameModel& model, int player,
                         const MarkovStrategy& v1, const MarkovStrategy& v2) {
    return kern::assemble(g, kern::coefficients(g, model, player, v1, v2));
}

}  // namespace rsgame
