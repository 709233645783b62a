#include <doctest.h>

#include <cmath>
#include <vector>

#include "benchmarks.hpp"
#include "rsgame/errors.hpp"
#include "rsgame/model.hpp"

using namespace rsgame;

TEST_SUITE("model") {

TEST_CASE("mixed actions") {
    MixedAction u = MixedAction::uniform(4);
    CHECK(u.valid());
    CHECK(u.p.size() == 4);
    CHECK(u.p[2] == 0.25);

    MixedAction d = MixedAction::dirac(3, 1);
    CHECK(d.valid());
    CHECK(d.p[0] == 0.0);
    CHECK(d.p[1] == 1.0);

    MixedAction bad;
    bad.p = {0.5, 0.6};
    CHECK_FALSE(bad.valid());
    bad.p = {-0.1, 1.1};
    CHECK_FALSE(bad.valid());
}

TEST_CASE("markov strategies") {
    MarkovStrategy s = MarkovStrategy::uniform(1, 3, 5);
    CHECK(s.p.size() == 15);
    CHECK(s.at(4)[2] == doctest::Approx(1.0 / 3.0));

    MarkovStrategy d = MarkovStrategy::dirac(2, 3, 5, {0, 1, 2, 1, 0});
    CHECK(d.at(2)[2] == 1.0);
    CHECK(d.at(2)[0] == 0.0);

    MarkovStrategy d2 = d;
    CHECK(d.max_diff(d2) == 0.0);
    d2.at(3)[1] = 0.75;
    CHECK(d.max_diff(d2) == doctest::Approx(0.25));
}

TEST_CASE("pointwise coefficient evaluation, hand-checked") {
    const GameModel m = bmk::nonsym();
    const double x = 0.7;
    // b1 = -0.5 x + 0.3 u over u in {-0.5, 0, 0.5}
    CHECK(m.drift1_at(0, &x, 0) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(m.drift1_at(0, &x, 1) == doctest::Approx(-0.35).epsilon(1e-15));
    CHECK(m.drift1_at(0, &x, 2) == doctest::Approx(-0.2).epsilon(1e-15));
    CHECK(m.drift2_at(0, &x, 2) == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(m.sigma_at(0, &x) == 1.0);
    // r11 = 0.2 (x - u)^2
    CHECK(m.cost_at(1, 1, &x, 0) == doctest::Approx(0.288).epsilon(1e-14));
    CHECK(m.cost_at(1, 1, &x, 1) == doctest::Approx(0.098).epsilon(1e-14));
    // r22 = 0.15 (x + u)^2 + 0.02 u^2
    CHECK(m.cost_at(2, 2, &x, 0) == doctest::Approx(0.15 * 0.04 + 0.02 * 0.25).epsilon(1e-14));
}

TEST_CASE("relaxed coefficients mix affinely, hand-checked") {
    const GameModel m = bmk::nonsym();
    const double x = 0.7;
    MixedAction m1, m2;
    m1.p = {0.2, 0.3, 0.5};
    m2.p = {0.6, 0.3, 0.1};
    REQUIRE(m1.valid());
    REQUIRE(m2.valid());

    // worked by hand from the coefficient tables above
    const std::vector<double> b = relaxed_drift(m, &x, m1, m2);
    CHECK(b.size() == 1);
    CHECK(b[0] == doctest::Approx(-0.705).epsilon(1e-14));
    CHECK(relaxed_cost(m, 1, &x, m1, m2) == doctest::Approx(0.09975).epsilon(1e-13));

    // and against the defining sums, on a second point
    const double y = -1.1;
    double bref = 0, rref = 0;
    for (int u = 0; u < 3; ++u) bref += m1.p[u] * m.drift1_at(0, &y, u);
    for (int u = 0; u < 3; ++u) bref += m2.p[u] * m.drift2_at(0, &y, u);
    for (int u = 0; u < 3; ++u)
        rref += m1.p[u] * m.cost_at(2, 1, &y, u) + m2.p[u] * m.cost_at(2, 2, &y, u);
    CHECK(relaxed_drift(m, &y, m1, m2)[0] == doctest::Approx(bref).epsilon(1e-15));
    CHECK(relaxed_cost(m, 2, &y, m1, m2) == doctest::Approx(rref).epsilon(1e-15));
}

TEST_CASE("row variant matches the MixedAction variant") {
    const GameModel m = bmk::symm();
    const double x = -0.4;
    MixedAction m1, m2;
    m1.p = {0.1, 0.1, 0.8};
    m2.p = {0.3, 0.4, 0.3};
    double out[1];
    relaxed_drift_rows(m, &x, m1.p.data(), m2.p.data(), out);
    CHECK(out[0] == relaxed_drift(m, &x, m1, m2)[0]);
    CHECK(relaxed_cost_rows(m, 1, &x, m1.p.data(), m2.p.data()) ==
          relaxed_cost(m, 1, &x, m1, m2));
}

TEST_CASE("dirac rows reproduce pure actions exactly") {
    const GameModel m = bmk::const_cost();
    const double x = 1.3;
    MixedAction d1 = MixedAction::dirac(3, 2), d2 = MixedAction::dirac(3, 0);
    CHECK(relaxed_drift(m, &x, d1, d2)[0] ==
          m.drift1_at(0, &x, 2) + m.drift2_at(0, &x, 0));
    CHECK(relaxed_cost(m, 1, &x, d1, d2) ==
          m.cost_at(1, 1, &x, 2) + m.cost_at(1, 2, &x, 0));
}

TEST_CASE("validation accepts the benchmark models") {
    const std::vector<std::vector<double>> probes = {{-2.0}, {-1.0}, {-0.2}, {0.0},
                                                     {0.2},  {1.0},  {2.0}};
    for (const GameModel& m : {bmk::lq(), bmk::const_cost(), bmk::decoupled(), bmk::symm(),
                               bmk::nonsym(), bmk::stable_ou(), bmk::outward_ou()}) {
        const ValidationReport rep = validate_model(m, probes);
        CHECK(rep.probes == 7);
        CHECK(rep.C0 > 0);
    }
    // lq drift points inward everywhere, so only the diffusion contributes
    CHECK(validate_model(bmk::lq(), probes).C0 == doctest::Approx(1.0));
}

TEST_CASE("validation rejects signed costs and degenerate diffusion") {
    GameModel m = bmk::lq();
    m.cost[0][0] = parse("x0");  // negative at the left probes
    CHECK_THROWS_AS(static_cast<void>(validate_model(m, {{-2.0}, {2.0}})), ValidationFailed);

    GameModel m2 = bmk::lq();
    m2.sigma = {parse("0.01")};  // sigma^2 far below the 2 a_min floor
    CHECK_THROWS_AS(static_cast<void>(validate_model(m2, {{0.0}})), ValidationFailed);

    // the message should name what failed
    try {
        static_cast<void>(validate_model(m2, {{0.0}}));
    } catch (const ValidationFailed& e) {
        CHECK(std::string(e.what()).find("nondegeneracy") != std::string::npos);
    }
}

}  // TEST_SUITE
