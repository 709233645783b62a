#include "rsgame/grid.hpp"

#include <cmath>

namespace rsgame {

Grid build_grid(int d, double R, double h) {
    if (d != 1 && d != 2) throw BadGeometry("dimension must be 1 or 2");
    if (!(R > 0) || !(h > 0)) throw BadGeometry("R and h must be positive");
    double q = 2 * R / h;
    long steps = std::lround(q);
    if (std::fabs(q - steps) > 1e-9 * q) throw BadGeometry("2R/h is not an integer");
    if (steps < 4) throw BadGeometry("grid too coarse: 2R/h must be >= 4");
    Grid g;
    g.d = d;
    g.R = R;
    g.h = h;
    g.steps = steps;
    return g;
}

long Grid::origin_node() const {
    long i0 = std::lround(R / h);  // node index closest to coordinate 0
    if (i0 < 1) i0 = 1;
    if (i0 > steps - 1) i0 = steps - 1;
    long ix[2] = {i0, i0};
    return node_of_coords(ix);
}

long Grid::origin_interior_index() const { return interior_index(origin_node()); }

long Grid::nearest_node(const double* x) const {
    long ix[2];
    for (int k = 0; k < d; ++k) {
        double c = x[k];
        if (c < -R) c = -R;
        if (c > R) c = R;
        long i = std::lround((c + R) / h);
        if (i < 0) i = 0;
        if (i > steps) i = steps;
        ix[k] = i;
    }
    return node_of_coords(ix);
}

}  // namespace rsgame
