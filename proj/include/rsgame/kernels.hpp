#pragma once
#include <functional>
#include <vector>

#include "rsgame/grid.hpp"
#include "rsgame/model.hpp"
#include "rsgame/stencil.hpp"

// Loop drivers. Every kernel writes each output element from exactly one
// iteration (no cross-thread reductions), so results are bit-identical for any
// thread count. kern::serial holds the plain reference loops used by the tests
// and the benchmark; the kern:: entry points add OpenMP on top of the same
// per-element bodies.
namespace rsgame {

// 0 means "use the OpenMP default". Applies to all kern:: entry points.
void set_max_threads(int n);
int max_threads();

namespace kern {

CoeffField coefficients(const Grid& g, const GameModel& model, int player,
                        const MarkovStrategy& v1, const MarkovStrategy& v2);

StencilMatrix assemble(const Grid& g, const CoeffField& f);

void spmv(const StencilMatrix& M, const double* x, double* y);

// Per-node argmin of the discrete Hamiltonian of `player` against the
// opponent mix in (v1, v2). Ties go to the lowest action index. hmin gives
// the minimal value instead.
std::vector<int> improve(const Grid& g, const GameModel& model, int player,
                         const MarkovStrategy& v1, const MarkovStrategy& v2,
                         const std::vector<double>& psi);
std::vector<double> hmin(const Grid& g, const GameModel& model, int player,
                         const MarkovStrategy& v1, const MarkovStrategy& v2,
                         const std::vector<double>& psi);

// One call per path index; the body owns its per-path RNG substream and
// writes only slots belonging to that index.
void run_paths(long n, const std::function<void(long)>& body);

namespace serial {
CoeffField coefficients(const Grid& g, const GameModel& model, int player,
                        const MarkovStrategy& v1, const MarkovStrategy& v2);
StencilMatrix assemble(const Grid& g, const CoeffField& f);
void spmv(const StencilMatrix& M, const double* x, double* y);
std::vector<int> improve(const Grid& g, const GameModel& model, int player,
                         const MarkovStrategy& v1, const MarkovStrategy& v2,
                         const std::vector<double>& psi);
std::vector<double> hmin(const Grid& g, const GameModel& model, int player,
                         const MarkovStrategy& v1, const MarkovStrategy& v2,
                         const std::vector<double>& psi);
void run_paths(long n, const std::function<void(long)>& body);
}  // namespace serial

}  // namespace kern
}  // namespace rsgame
