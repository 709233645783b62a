// Times the OpenMP kernel drivers against the serial reference loops on a
// medium 2-d problem and checks the outputs agree bit for bit.
#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

#include "rsgame/expr.hpp"
#include "rsgame/grid.hpp"
#include "rsgame/kernels.hpp"
#include "rsgame/model.hpp"

using namespace rsgame;
using clk = std::chrono::steady_clock;

namespace {

GameModel bench_model() {
    GameModel m;
    m.d = 2;
    for (const char* f : {"-0.5", "0.0", "0.5"}) {
        Action a;
        a.name = f;
        a.features = {std::strtod(f, nullptr)};
        m.actions1.actions.push_back(a);
        m.actions2.actions.push_back(a);
    }
    m.actions1.player = 1;
    m.actions2.player = 2;
    m.drift1 = {parse("-x0 + 0.3*a0"), parse("-0.2*x1")};
    m.drift2 = {parse("0.1*a0"), parse("-x1 + 0.2*a0")};
    m.sigma = {parse("1"), parse("1")};
    m.cost[0][0] = parse("0.2*(x0 - a0)^2");
    m.cost[0][1] = parse("0.05*a0^2");
    m.cost[1][0] = parse("0.1*a0^2");
    m.cost[1][1] = parse("0.15*(x1 + a0)^2");
    return m;
}

double ms_since(clk::time_point t0) {
    return std::chrono::duration<double, std::milli>(clk::now() - t0).count();
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() &&
           (a.empty() || std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
}

}  // namespace

int main(int argc, char** argv) {
    const int reps = argc > 1 ? std::atoi(argv[1]) : 5;
    const GameModel model = bench_model();
    const Grid g = build_grid(2, 4.0, 4.0 / 120.0);
    const MarkovStrategy v1 = MarkovStrategy::uniform(1, 3, g.num_nodes());
    const MarkovStrategy v2 = MarkovStrategy::uniform(2, 3, g.num_nodes());
    std::printf("grid: %ld interior nodes, %d reps\n", g.num_interior(), reps);

    CoeffField f_ser, f_par;
    StencilMatrix M_ser, M_par;
    std::vector<double> psi(g.num_interior(), 1.0), y_ser(g.num_interior()),
        y_par(g.num_interior());
    for (long i = 0; i < g.num_interior(); ++i)
        psi[i] = 1.0 + 0.5 * static_cast<double>(i % 7);
    std::vector<int> im_ser, im_par;

    struct Row {
        const char* name;
        double serial_ms, parallel_ms;
        bool equal;
    } rows[4];

    {
        auto t0 = clk::now();
        for (int r = 0; r < reps; ++r) f_ser = kern::serial::coefficients(g, model, 1, v1, v2);
        const double ts = ms_since(t0) / reps;
        t0 = clk::now();
        for (int r = 0; r < reps; ++r) f_par = kern::coefficients(g, model, 1, v1, v2);
        rows[0] = {"coefficients", ts, ms_since(t0) / reps,
                   same_bits(f_ser.a, f_par.a) && same_bits(f_ser.b, f_par.b) &&
                       same_bits(f_ser.r, f_par.r)};
    }
    {
        auto t0 = clk::now();
        for (int r = 0; r < reps; ++r) M_ser = kern::serial::assemble(g, f_ser);
        const double ts = ms_since(t0) / reps;
        t0 = clk::now();
        for (int r = 0; r < reps; ++r) M_par = kern::assemble(g, f_par);
        rows[1] = {"assemble", ts, ms_since(t0) / reps,
                   M_ser.col == M_par.col && same_bits(M_ser.val, M_par.val)};
    }
    {
        auto t0 = clk::now();
        for (int r = 0; r < reps; ++r) kern::serial::spmv(M_ser, psi.data(), y_ser.data());
        const double ts = ms_since(t0) / reps;
        t0 = clk::now();
        for (int r = 0; r < reps; ++r) kern::spmv(M_par, psi.data(), y_par.data());
        rows[2] = {"spmv", ts, ms_since(t0) / reps, same_bits(y_ser, y_par)};
    }
    {
        auto t0 = clk::now();
        for (int r = 0; r < reps; ++r) im_ser = kern::serial::improve(g, model, 1, v1, v2, psi);
        const double ts = ms_since(t0) / reps;
        t0 = clk::now();
        for (int r = 0; r < reps; ++r) im_par = kern::improve(g, model, 1, v1, v2, psi);
        rows[3] = {"improve", ts, ms_since(t0) / reps, im_ser == im_par};
    }

    std::printf("%-14s %12s %12s %10s %s\n", "kernel", "serial ms", "parallel ms", "speedup",
                "bit-equal");
    bool all_equal = true;
    for (const Row& r : rows) {
        std::printf("%-14s %12.3f %12.3f %9.2fx %s\n", r.name, r.serial_ms, r.parallel_ms,
                    r.serial_ms / (r.parallel_ms > 0 ? r.parallel_ms : 1e-9),
                    r.equal ? "yes" : "NO");
        all_equal = all_equal && r.equal;
    }
    return all_equal ? 0 : 1;
}
