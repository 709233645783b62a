#pragma once
#include <vector>

#include "rsgame/errors.hpp"

namespace rsgame {

// Uniform rectangular grid on [-R, R]^d, d in {1, 2}. Node ordering is
// lexicographic in the integer coordinates (i0 major), boundary nodes are those
// with any coordinate at +-R. Interior nodes carry a dense secondary index used
// by the discretization.
struct Grid {
    int d = 1;
    double R = 1;
    double h = 1;
    long steps = 0;  // 2R/h, nodes per axis = steps+1

    long num_nodes() const {
        long n = steps + 1;
        return d == 1 ? n : n * n;
    }
    long num_interior() const {
        long n = steps - 1;
        return d == 1 ? n : n * n;
    }

    // integer coords of a node
    void node_coords(long node, long* ix) const {
        if (d == 1) {
            ix[0] = node;
        } else {
            ix[0] = node / (steps + 1);
            ix[1] = node % (steps + 1);
        }
    }
    long node_of_coords(const long* ix) const {
        return d == 1 ? ix[0] : ix[0] * (steps + 1) + ix[1];
    }
    void position(long node, double* x) const {
        long ix[2];
        node_coords(node, ix);
        for (int k = 0; k < d; ++k) x[k] = -R + h * ix[k];
    }
    bool is_interior(long node) const {
        long ix[2];
        node_coords(node, ix);
        for (int k = 0; k < d; ++k)
            if (ix[k] == 0 || ix[k] == steps) return false;
        return true;
    }

    // dense interior index, -1 for boundary nodes
    long interior_index(long node) const {
        long ix[2];
        node_coords(node, ix);
        for (int k = 0; k < d; ++k)
            if (ix[k] == 0 || ix[k] == steps) return -1;
        return d == 1 ? ix[0] - 1 : (ix[0] - 1) * (steps - 1) + (ix[1] - 1);
    }
    long node_of_interior(long idx) const {
        if (d == 1) return idx + 1;
        long m = steps - 1;
        long i0 = idx / m, i1 = idx % m;
        return (i0 + 1) * (steps + 1) + (i1 + 1);
    }
    void interior_position(long idx, double* x) const { position(node_of_interior(idx), x); }

    long origin_node() const;            // node nearest 0 (guaranteed interior)
    long origin_interior_index() const;  // its interior index

    // nearest node to a continuous point, coordinates clamped to the box
    long nearest_node(const double* x) const;
};

Grid build_grid(int d, double R, double h);

}  // namespace rsgame
