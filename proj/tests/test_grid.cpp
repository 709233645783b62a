#include <doctest.h>

#include <cmath>
#include <vector>

#include "rsgame/errors.hpp"
#include "rsgame/grid.hpp"

using namespace rsgame;

TEST_SUITE("grid") {

TEST_CASE("construction validates geometry") {
    CHECK_THROWS_AS(static_cast<void>(build_grid(3, 1.0, 0.1)), BadGeometry);
    CHECK_THROWS_AS(static_cast<void>(build_grid(1, -1.0, 0.1)), BadGeometry);
    CHECK_THROWS_AS(static_cast<void>(build_grid(1, 1.0, 0.0)), BadGeometry);
    CHECK_THROWS_AS(static_cast<void>(build_grid(1, 1.0, 0.3)), BadGeometry);  // 2R/h = 6.67
    CHECK_THROWS_AS(static_cast<void>(build_grid(1, 1.0, 1.0)), BadGeometry);  // only 2 steps

    const Grid g = build_grid(1, 3.0, 0.01);
    CHECK(g.steps == 600);
    CHECK(g.num_nodes() == 601);
    CHECK(g.num_interior() == 599);
}

TEST_CASE("1d indexing round trip") {
    const Grid g = build_grid(1, 2.0, 0.5);  // nodes at -2, -1.5, ..., 2
    CHECK(g.steps == 8);
    CHECK(g.num_nodes() == 9);
    CHECK(g.num_interior() == 7);

    double x;
    g.position(0, &x);
    CHECK(x == -2.0);
    g.position(3, &x);
    CHECK(x == -0.5);
    g.position(8, &x);
    CHECK(x == 2.0);

    CHECK_FALSE(g.is_interior(0));
    CHECK_FALSE(g.is_interior(8));
    CHECK(g.is_interior(1));
    CHECK(g.interior_index(0) == -1);
    CHECK(g.interior_index(1) == 0);
    CHECK(g.interior_index(7) == 6);
    for (long i = 0; i < g.num_interior(); ++i) CHECK(g.interior_index(g.node_of_interior(i)) == i);

    g.interior_position(0, &x);
    CHECK(x == -1.5);
}

TEST_CASE("2d indexing is row major with i0 as the major axis") {
    const Grid g = build_grid(2, 1.0, 0.5);  // 5x5 nodes
    CHECK(g.steps == 4);
    CHECK(g.num_nodes() == 25);
    CHECK(g.num_interior() == 9);

    long ix[2] = {2, 3};
    const long node = g.node_of_coords(ix);
    CHECK(node == 13);
    long back[2];
    g.node_coords(node, back);
    CHECK(back[0] == 2);
    CHECK(back[1] == 3);

    double x[2];
    g.position(node, x);
    CHECK(x[0] == 0.0);
    CHECK(x[1] == 0.5);

    // interior index walks the (steps-1)^2 inner block densely
    long c11[2] = {1, 1}, c23[2] = {2, 3};
    CHECK(g.interior_index(g.node_of_coords(c11)) == 0);
    CHECK(g.interior_index(g.node_of_coords(c23)) == 5);
    long edge[2] = {0, 2};
    CHECK(g.interior_index(g.node_of_coords(edge)) == -1);
    for (long i = 0; i < g.num_interior(); ++i) CHECK(g.interior_index(g.node_of_interior(i)) == i);
}

TEST_CASE("origin node is the interior node nearest zero") {
    const Grid even = build_grid(1, 2.0, 0.5);
    double x;
    even.position(even.origin_node(), &x);
    CHECK(x == 0.0);
    CHECK(even.origin_interior_index() == even.interior_index(even.origin_node()));
    CHECK(even.origin_interior_index() >= 0);

    const Grid odd = build_grid(1, 1.0, 0.4);  // 5 steps, no node at exactly 0
    odd.position(odd.origin_node(), &x);
    CHECK(std::fabs(x) <= 0.5 * odd.h + 1e-15);
    CHECK(odd.is_interior(odd.origin_node()));

    const Grid g2 = build_grid(2, 1.0, 0.5);
    double y[2];
    g2.position(g2.origin_node(), y);
    CHECK(y[0] == 0.0);
    CHECK(y[1] == 0.0);
}

TEST_CASE("nearest node snaps and clamps") {
    const Grid g = build_grid(1, 2.0, 0.5);
    double x = 0.26;
    double pos;
    g.position(g.nearest_node(&x), &pos);
    CHECK(pos == 0.5);
    x = 0.24;
    g.position(g.nearest_node(&x), &pos);
    CHECK(pos == 0.0);
    x = 17.0;  // outside the box entirely
    g.position(g.nearest_node(&x), &pos);
    CHECK(pos == 2.0);
    x = -17.0;
    g.position(g.nearest_node(&x), &pos);
    CHECK(pos == -2.0);

    const Grid g2 = build_grid(2, 1.0, 0.5);
    double p[2] = {0.76, -3.0}, q[2];
    g2.position(g2.nearest_node(p), q);
    CHECK(q[0] == 1.0);
    CHECK(q[1] == -1.0);
}

}  // TEST_SUITE
